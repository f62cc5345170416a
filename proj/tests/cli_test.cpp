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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "ctrlgcl/tudataset.hpp"
#include "support/oracles.hpp"

namespace ctrlgcl {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = testing::scratch_dir("cli_io");
  const fs::path out = dir / ("o" + std::to_string(counter));
  const fs::path err = dir / ("e" + std::to_string(counter++));
  const std::string cmd = std::string("'") + CTRLGCL_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// Random trees: every edge is a bridge and on the backbone.
fs::path tree_dataset() {
  const fs::path dir = testing::scratch_dir("cli_trees");
  Rng rng(101);
  Dataset ds;
  ds.name = "TREES";
  ds.num_classes = 2;
  ds.class_values = {0, 1};
  for (int i = 0; i < 10; ++i) {
    ds.graphs.push_back(testing::random_tree(rng, 5 + i).with_graph_label(i % 2));
    ds.labels.push_back(i % 2);
  }
  write_tudataset(dir, ds);
  return dir;
}

std::string common(const fs::path& data, const fs::path& out) {
  return "--dataset TREES --data-dir '" + data.string() + "' --out '" + out.string() + "'";
}

void expect_error_line(const CliRun& r, int code, const std::string& kind) {
  EXPECT_EQ(r.code, code) << r.err;
  static const std::regex line(R"(error: code=([a-z]+) message="(?:[^"\\]|\\.)*"\n)");
  std::smatch m;
  ASSERT_TRUE(std::regex_match(r.err, m, line)) << r.err;
  EXPECT_EQ(m[1].str(), kind);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("embed"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  expect_error_line(run("bogus"), 2, "usage");
  expect_error_line(run("embed --no-such-flag"), 2, "usage");
  expect_error_line(run(""), 2, "usage");
}

TEST(Cli, DataAndFormatErrors) {
  const fs::path data = tree_dataset();
  const fs::path out = testing::scratch_dir("cli_err");
  expect_error_line(run("ingest --dataset NOPE --data-dir '" + data.string() + "' --out '" + out.string() + "'"), 3,
                    "data");
  std::ofstream(out / "junk.ckpt") << "not a checkpoint";
  expect_error_line(run("evaluate " + common(data, out) + " --checkpoint '" + (out / "junk.ckpt").string() + "'"), 4,
                    "format");
  expect_error_line(run("embed " + common(data, out) + " --leader-sizes 0"), 6, "invalid");
}

TEST(Cli, EmbedIsReproducible) {
  const fs::path data = tree_dataset();
  const fs::path a = testing::scratch_dir("cli_embed_a");
  const fs::path b = testing::scratch_dir("cli_embed_b");
  const CliRun ra = run("embed " + common(data, a) + " --seed 5");
  const CliRun rb = run("embed " + common(data, b) + " --seed 5");
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_NE(ra.out.find("rows=10 "), std::string::npos) << ra.out;
  EXPECT_NE(ra.out.find("nonfinite=0"), std::string::npos) << ra.out;
  EXPECT_EQ(slurp(a / "embeddings.csv"), slurp(b / "embeddings.csv"));
  const std::string fp = slurp(a / "embed_fingerprint.txt");
  EXPECT_EQ(fp.rfind("command=embed\n", 0), 0u);
  EXPECT_NE(fp.find("seed=5\n"), std::string::npos);
  EXPECT_NE(fp.find("hash="), std::string::npos);
}

TEST(Cli, DeleteOnTreesRemovesNothing) {
  const fs::path data = tree_dataset();
  const fs::path out = testing::scratch_dir("cli_aug");
  const CliRun r = run("augment " + common(data, out) + " --kind delete --k 3");
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out / "augment_audit.csv");
  std::string header;
  std::getline(in, header);
  std::vector<std::string> cols;
  {
    std::stringstream hs(header);
    for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
  }
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
  };
  const std::size_t removed = col("removed");
  const std::size_t passed = col("passed");
  ASSERT_LT(removed, cols.size());
  ASSERT_LT(passed, cols.size());
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) f.push_back(c);
    ASSERT_EQ(f.size(), cols.size()) << line;
    EXPECT_EQ(f[removed], "0") << line;
    EXPECT_EQ(f[passed], "1") << line;
    ++rows;
  }
  EXPECT_EQ(rows, 10);
  EXPECT_EQ(parse_tudataset(out, "TREES_augmented").graphs, parse_tudataset(data, "TREES").graphs);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path data = tree_dataset();
  const fs::path out = testing::scratch_dir("cli_cfg");
  std::ofstream(out / "run.cfg") << "seed=9\nsamples-per-size=2\n";
  const CliRun r = run("embed " + common(data, out) + " --config '" + (out / "run.cfg").string() + "' --seed 4");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string fp = slurp(out / "embed_fingerprint.txt");
  EXPECT_NE(fp.find("seed=4\n"), std::string::npos) << fp;
  EXPECT_NE(fp.find("leaders.samples=2\n"), std::string::npos) << fp;
}

}  // namespace
}  // namespace ctrlgcl
