// Copyright 2026 The corrwitness Authors.
//
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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "corrwitness/cli/commands.hpp"
#include "corrwitness/cli/csv.hpp"
#include "corrwitness/core/errors.hpp"
#include "corrwitness/experiments/experiments.hpp"

namespace fs = std::filesystem;
using namespace corrwitness;
using namespace corrwitness::cli;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() /
                       ("corrwitness_cli_" + std::to_string(static_cast<long>(::getpid())));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run(std::vector<std::string> args) { return run_cli(args); }

/// Exit status of the installed binary, output discarded.
int run_binary(const std::string& args) {
  const std::string cmd = std::string("\"") + CORRWITNESS_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json manifest_of(const fs::path& out) {
  std::ifstream in(out.string() + ".manifest.json");
  return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("number formatting") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, std::numbers::pi}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double(""), InvalidInput);
  CHECK_THROWS_AS(parse_double("1.5x"), InvalidInput);
  CHECK_THROWS_AS(parse_double("1e999"), InvalidInput);
}

TEST_CASE("csv round trip") {
  CsvTable t{{"a", "b"}, {}};
  t.add_row({"1", format_double(0.1)});
  t.add_row({"2", format_double(-3.25)});
  CHECK_THROWS_AS(t.add_row({"3"}), InvalidInput);
  const fs::path p = scratch() / "nested" / "t.csv";
  write_csv(p, t);
  CHECK(slurp(p) == "a,b\n1,0.10000000000000001\n2,-3.25\n");
  const CsvTable back = read_csv(p);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.number(0, "b") == 0.1);
  CHECK(back.column("b") == 1);
  CHECK_THROWS_AS(back.column("c"), InvalidInput);
}

TEST_CASE("usage errors") {
  const std::string out = (scratch() / "u.csv").string();
  CHECK(run({}) == kExitUsage);
  CHECK(run({"bogus"}) == kExitUsage);
  CHECK(run({"spinstar", "--n-bath", "1", "--out", out}) == kExitUsage);
  CHECK(run({"frequency", "--samples", "0", "--out", out}) == kExitUsage);
  CHECK(run({"frequency", "--family", "bogus", "--samples", "2", "--lambda-points", "2",
             "--time-points", "10", "--out", out}) == kExitUsage);
  CHECK(run({"timetrace", "--equal-weights", "--b1-re", "1", "--out", out}) == kExitUsage);
  CHECK(run({"timetrace", "--lambda", "1.5", "--out", out}) == kExitUsage);
  CHECK(run({"timetrace", "--simd", "bogus", "--out", out}) == kExitUsage);
  CHECK(run({"timetrace", "--t-max", "-1", "--out", out}) == kExitUsage);
  CHECK(run({"timetrace", "--b1-re", "0", "--b2-re", "0", "--out", out}) == kExitUsage);
  CHECK(run({"verify", "--suite", "bogus"}) == kExitUsage);
  CHECK(run({"replay", (scratch() / "missing.json").string()}) == kExitUsage);
  CHECK(run({"frequency", "--config", (scratch() / "missing.toml").string()}) == kExitUsage);
  CHECK(run_binary("--help") == kExitOk);
  CHECK(run_binary("frequency --samples 0") == kExitUsage);
}

TEST_CASE("timetrace output") {
  const fs::path out = scratch() / "tt.csv";
  REQUIRE(run({"timetrace", "--lambda", "0,0.1", "--time-points", "50", "--out", out.string()}) ==
          kExitOk);
  const CsvTable t = read_csv(out);
  CHECK(t.header == std::vector<std::string>{"lambda", "t", "delta_T", "delta_B", "delta_H",
                                             "delta_J"});
  REQUIRE(t.rows.size() == 100);
  for (std::size_t r = 0; r < 50; ++r) {
    for (const char* c : {"delta_T", "delta_B", "delta_H", "delta_J"}) CHECK(t.number(r, c) == 0.0);
  }
  const double r = std::numbers::sqrt2 / 2;
  const auto spec = models::family_spec(models::StateFamily::Original, r, r, 0.1);
  const auto expect = experiments::time_traces(dephasing::DephasingParams{}, spec,
                                               experiments::periodic_grid(2 * std::numbers::pi, 50));
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(t.number(50 + i, "delta_T") == expect[0].delta_values[i]);
    CHECK(t.number(50 + i, "delta_J") == expect[3].delta_values[i]);
  }
  const auto m = manifest_of(out);
  CHECK(m["command"] == "timetrace");
  CHECK(m["config"]["lambda"] == "0,0.10000000000000001");
}

TEST_CASE("determinism and replay") {
  const std::string common = " --samples 40 --lambda-points 4 --time-points 300 --seed 9 ";
  const fs::path a = scratch() / "fa.csv", b = scratch() / "fb.csv", c = scratch() / "fc.csv";
  REQUIRE(run_binary("frequency --family haar" + common + "--threads 1 --out " + a.string()) == 0);
  REQUIRE(run_binary("frequency --family haar" + common + "--threads 8 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  REQUIRE(run({"replay", a.string() + ".manifest.json", "--out", c.string()}) == kExitOk);
  CHECK(slurp(a) == slurp(c));

  const fs::path s1 = scratch() / "s1.csv", s2 = scratch() / "s2.csv";
  const std::string star = "spinstar --n-bath 4 --samples 20 --lambda-points 3 --time-points 100 ";
  REQUIRE(run_binary(star + "--threads 1 --out " + s1.string()) == 0);
  REQUIRE(run_binary(star + "--threads 8 --out " + s2.string()) == 0);
  CHECK(slurp(s1) == slurp(s2));
  const CsvTable t = read_csv(s1);
  CHECK(t.header == std::vector<std::string>{"lambda", "f_T", "f_B", "f_H", "f_J", "n_bath", "a0",
                                             "samples", "seed"});
  CHECK(t.rows.size() == 3);
  CHECK(t.rows[0][5] == "4");

  const fs::path m1 = scratch() / "m1.csv", m2 = scratch() / "m2.csv";
  REQUIRE(run({"concurrence", "--lambda-points", "11", "--time-points", "41", "--out",
               m1.string()}) == kExitOk);
  REQUIRE(run({"replay", m1.string() + ".manifest.json", "--out", m2.string()}) == kExitOk);
  CHECK(slurp(m1) == slurp(m2));
  CHECK(slurp(m1.string() + ".summary.txt") == slurp(m2.string() + ".summary.txt"));
  CHECK(slurp(m1.string() + ".summary.txt").find("threshold_lambda") != std::string::npos);

  const fs::path t1 = scratch() / "t1.csv", t2 = scratch() / "t2.csv";
  REQUIRE(run({"timetrace", "--family", "haar", "--seed", "5", "--time-points", "30", "--out",
               t1.string()}) == kExitOk);
  REQUIRE(run({"replay", t1.string() + ".manifest.json", "--out", t2.string()}) == kExitOk);
  CHECK(slurp(t1) == slurp(t2));
}

TEST_CASE("frequency manifest and config precedence") {
  const fs::path cfg = scratch() / "run.toml";
  {
    std::ofstream f(cfg);
    f << "samples = 12\nlambda-points = 3\ntime-points = 50\nfamily = \"swapped\"\n";
  }
  const fs::path out = scratch() / "cfg.csv";
  REQUIRE(run({"frequency", "--config", cfg.string(), "--lambda-points", "2", "--out",
               out.string()}) == kExitOk);
  const auto m = manifest_of(out);
  CHECK(m["command"] == "frequency");
  CHECK(m["config"]["samples"] == "12");
  CHECK(m["config"]["lambda-points"] == "2");
  CHECK(m["config"]["family"] == "swapped");
  CHECK(m["config"]["edge-points"] == "64");
  CHECK(m["master_seed"] == 1);
  const CsvTable t = read_csv(out);
  CHECK(t.rows.size() == 2);
  CHECK(t.number(0, "f_T") == 0.0);
  CHECK(t.number(1, "f_T") == 1.0);
  CHECK(t.number(1, "samples") == 12);

  {
    std::ofstream f(cfg);
    f << "[frequency]\nsamples = 12\n";
  }
  CHECK(run({"frequency", "--config", cfg.string(), "--out", out.string()}) == kExitUsage);
}
