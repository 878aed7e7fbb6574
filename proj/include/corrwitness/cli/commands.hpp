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

#include <string>
#include <vector>

namespace corrwitness::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Subcommands: timetrace, frequency, concurrence, spinstar, verify, replay.
/// Every CSV command also writes <out>.manifest.json with the fully resolved
/// options; `replay <manifest>` reruns it.
int run_cli(int argc, const char* const* argv);

/// Same as above without the program name.
int run_cli(const std::vector<std::string>& args);

} // namespace corrwitness::cli
