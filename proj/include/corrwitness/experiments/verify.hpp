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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corrwitness::experiments {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
  /// Recorded for information only; never fails the suite.
  bool informational = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

enum class Suite { Oracles, Properties, Bounds, All };

std::optional<Suite> parse_suite(std::string_view text);
std::string_view suite_name(Suite suite);

struct VerifyOptions {
  std::uint64_t seed = 7;
  unsigned threads = 0;
  /// Random specs for the dephasing oracle cross-check, each at `oracle_times` times.
  std::size_t oracle_specs = 100;
  std::size_t oracle_times = 100;
  /// Random specs per bath size for the spin-star cross-check, each at 20 times.
  std::size_t spin_specs = 50;
  /// Random qubit states or pairs per property.
  std::size_t property_samples = 10000;
  /// Specs for the witness sweep (spread over 11 lambdas).
  std::size_t bound_specs = 1001;
  std::size_t bound_times = 128;
};

SuiteReport verify_oracles(const VerifyOptions& options);
SuiteReport verify_properties(const VerifyOptions& options);
SuiteReport verify_bounds(const VerifyOptions& options);

std::vector<SuiteReport> run_verify(Suite suite, const VerifyOptions& options);

/// One line per check: "PASS|FAIL|INFO  <suite>/<name>  <detail>".
std::string format_report(const std::vector<SuiteReport>& reports);

} // namespace corrwitness::experiments
