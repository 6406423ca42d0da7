// Copyright 2026 The dwq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef DWQ_CLI_HPP
#define DWQ_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dwq {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFormat = 2,
  kExitNumerical = 3,
};

struct Metric {
  std::string name;
  double value = 0.0;
  /// Metrics without a tolerance are informational.
  std::optional<double> tolerance;

  bool passed() const { return !tolerance || value <= *tolerance; }
};

/// Outcome of one command: FAIL iff some metric exceeds its tolerance.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Metric> metrics;

  bool passed() const;
  /// Single-line JSON object.
  std::string to_json() const;
  /// Aligned human-readable table.
  std::string to_table() const;
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dwq

#endif  // DWQ_CLI_HPP
