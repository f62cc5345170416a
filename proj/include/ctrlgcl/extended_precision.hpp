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

#pragma once

// The templated controllability routines instantiated on a 120-digit MPFR
// float. The multiprecision type stays inside this module; results are
// rounded back to double. Rank decisions use rank_tolerance at that
// precision (about 1e-60 relative), so they resolve Gramian eigenvalues far
// below the double-precision noise floor.

#include "ctrlgcl/controllability.hpp"
#include "ctrlgcl/graph.hpp"

namespace ctrlgcl {

inline constexpr unsigned kExtendedDigits = 120;

/// gramian_report computed in extended precision. W, eigenvalues and the
/// statistics are rounded to double; rank is the extended-precision count.
GramianReport<double> gramian_report_extended(const Graph& g, const LeaderConfig& lc);

/// controllability_rank computed in extended precision.
int controllability_rank_extended(const Graph& g, const LeaderConfig& lc);

}  // namespace ctrlgcl
