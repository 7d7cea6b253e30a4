// Copyright 2026 The sparseldr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "sparseldr/error.hpp"

namespace sparseldr::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sparseldr_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  static int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "sparseldr-cli");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    return main_with_args(static_cast<int>(argv.size()), argv.data());
  }

  static std::string Read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenWritesBenchmarkInstance) {
  const std::string inst = Path("inst.json");
  ASSERT_EQ(Run({"gen", "prodinv", "--T", "24", "--E", "3", "--benchmark", "-o", inst}),
            kSuccess);
  const json doc = json::parse(Read(inst));
  EXPECT_FALSE(doc.empty());
  EXPECT_NE(Read(inst).find("prodinv"), std::string::npos);
}

TEST_F(CliTest, SolveMethodsAgree) {
  const std::string inst = Path("inst.json");
  ASSERT_EQ(Run({"gen", "prodinv", "--T", "12", "--E", "3", "--benchmark", "-o", inst}),
            kSuccess);
  ASSERT_EQ(Run({"solve", "--method", "rc", inst, "-o", Path("rc.json")}), kSuccess);
  ASSERT_EQ(Run({"solve", "--method", "activeset", "--seed", "7", inst, "-o",
                 Path("as.json"), "--stats", Path("stats.csv")}),
            kSuccess);
  const json rc = json::parse(Read(Path("rc.json")));
  const json as = json::parse(Read(Path("as.json")));
  const double a = rc["objective"].get<double>();
  const double b = as["objective"].get<double>();
  EXPECT_NEAR(a, b, 1e-6 * std::abs(a));
  EXPECT_TRUE(rc["feasible"].get<bool>());
  EXPECT_TRUE(as["feasible"].get<bool>());
  EXPECT_TRUE(rc["is_vertex"].get<bool>());
  EXPECT_EQ(rc["params_total"].get<int>(), 3 * 13 * 14 / 2);
  const std::string stats = Read(Path("stats.csv"));
  EXPECT_EQ(stats.rfind("iteration,active_size,K_A,objective,max_residual,added,removed,millis", 0),
            0u);
}

TEST_F(CliTest, RobustCounterpartFormsAgree) {
  const std::string inst = Path("inst.json");
  ASSERT_EQ(Run({"gen", "prodinv", "--T", "12", "--E", "3", "--benchmark", "-o", inst}),
            kSuccess);
  ASSERT_EQ(Run({"solve", "--rc-form", "primal", inst, "-o", Path("p.json")}), kSuccess);
  ASSERT_EQ(Run({"solve", "--rc-form", "dual", inst, "-o", Path("d.json")}), kSuccess);
  const json p = json::parse(Read(Path("p.json")));
  const json d = json::parse(Read(Path("d.json")));
  EXPECT_NEAR(p["objective"].get<double>(), d["objective"].get<double>(), 1e-6);
  EXPECT_NEAR(d["objective"].get<double>(), 43844.124046646095, 1e-6 * 43844.0);
  EXPECT_TRUE(p["feasible"].get<bool>());
  EXPECT_TRUE(d["feasible"].get<bool>());
  EXPECT_EQ(Run({"solve", "--rc-form", "both", inst}), kConfigError);
}

TEST_F(CliTest, SparsityCsvRows) {
  const std::string out = Path("fig.csv");
  ASSERT_EQ(Run({"sparsity", "--E", "3", "--T-list", "12,24", "-o", out}), kSuccess);
  std::istringstream in(Read(out));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "T,E,params_total,nnz,pct_nonzero,bound_thm,static_params");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "24");
  EXPECT_EQ(rows[1][2], "900");
  EXPECT_EQ(rows[1][5], "698");
  EXPECT_EQ(rows[1][6], "72");
  for (const auto& r : rows) EXPECT_LE(std::stoll(r[3]), std::stoll(r[5]));
}

TEST_F(CliTest, ExportMpsModels) {
  const std::string inst = Path("inst.json");
  ASSERT_EQ(Run({"gen", "newsvendor", "--T", "3", "--seed", "2", "-o", inst}), kSuccess);
  for (const char* model : {"rc-primal", "rc-dual", "markovian-primal", "markovian-dual"}) {
    const std::string out = Path(std::string(model) + ".mps");
    ASSERT_EQ(Run({"export-mps", inst, "--model", model, "-o", out}), kSuccess) << model;
    const std::string text = Read(out);
    EXPECT_EQ(text.rfind("NAME", 0), 0u);
    EXPECT_NE(text.find("ENDATA"), std::string::npos);
  }
}

TEST_F(CliTest, ConfigErrorsExitWithTwo) {
  EXPECT_EQ(Run({"gen", "prodinv", "--T", "0", "--E", "3", "--benchmark"}), kConfigError);
  EXPECT_EQ(Run({"gen", "nosuchgen", "--T", "4", "--E", "3"}), kConfigError);
  EXPECT_EQ(Run({"gen", "prodinv-leadtime", "--T", "4", "--E", "3", "--benchmark"}),
            kConfigError);
  EXPECT_EQ(Run({"solve", Path("missing.json")}), kConfigError);
  EXPECT_EQ(Run({"frobnicate"}), kConfigError);
  EXPECT_EQ(Run({"sparsity", "--E", "3"}), kConfigError);
}

TEST_F(CliTest, InfeasibleInstanceExitsWithOne) {
  // Demand of up to 2400 in one period exceeds the 1500 storage window.
  const std::string inst = Path("t6.json");
  ASSERT_EQ(Run({"gen", "prodinv", "--T", "6", "--E", "3", "--benchmark", "-o", inst}),
            kSuccess);
  EXPECT_EQ(Run({"solve", "--method", "rc", inst, "-o", Path("out.json")}), kSolverFailure);
}

TEST(SparsityCsvTest, HeaderOnlyAndVertexCheck) {
  EXPECT_EQ(emit_sparsity_csv({}),
            "T,E,params_total,nnz,pct_nonzero,bound_thm,static_params\n");
  SparsityResult r{24, 3, 900, 90, 698, 72, true};
  const std::string text = emit_sparsity_csv({r});
  EXPECT_NE(text.find("24,3,900,90,10.0000,698,72"), std::string::npos);
  r.is_vertex = false;
  EXPECT_THROW(emit_sparsity_csv({r}), Error);
}

}  // namespace
}  // namespace sparseldr::cli
