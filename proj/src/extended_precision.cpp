// Copyright 2026 The ctrlgcl Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctrlgcl/extended_precision.hpp"

#include <limits>

#include <boost/multiprecision/mpfr.hpp>

namespace ctrlgcl {
namespace {
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kExtendedDigits>,
                                           boost::multiprecision::et_off>;
}  // namespace
}  // namespace ctrlgcl

// Boost's own Eigen glue predates Eigen 3.4 (no infinity/quiet_NaN), so the
// traits are spelled out here.
namespace Eigen {
template <>
struct NumTraits<ctrlgcl::Real> : GenericNumTraits<ctrlgcl::Real> {
  using Real = ctrlgcl::Real;
  using NonInteger = ctrlgcl::Real;
  using Nested = ctrlgcl::Real;
  using Literal = ctrlgcl::Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 100,
    AddCost = 100,
    MulCost = 100
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
  static int digits() { return std::numeric_limits<Real>::digits; }
};
}  // namespace Eigen

namespace ctrlgcl {
namespace {

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace

GramianReport<double> gramian_report_extended(const Graph& g, const LeaderConfig& lc) {
  const GramianReport<Real> wide = gramian_report<Real>(g, lc);
  GramianReport<double> out;
  out.W = wide.W.unaryExpr([](const Real& x) { return to_double(x); });
  out.eigenvalues = wide.eigenvalues.unaryExpr([](const Real& x) { return to_double(x); });
  out.threshold = to_double(wide.threshold);
  out.rank = wide.rank;
  out.trace = to_double(wide.trace);
  out.min_nonzero_eig = to_double(wide.min_nonzero_eig);
  out.ld = to_double(wide.ld);
  return out;
}

int controllability_rank_extended(const Graph& g, const LeaderConfig& lc) { return controllability_rank<Real>(g, lc); }

}  // namespace ctrlgcl
