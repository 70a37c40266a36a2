// Copyright 2026 The ifa Authors.
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

#ifndef IFA_REPRODUCE_HPP_
#define IFA_REPRODUCE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace ifa {

struct ReproCheck {
  std::string name;
  double target = 0.0;     // NaN for qualitative checks
  double computed = 0.0;
  double tolerance = 0.0;  // NaN for qualitative checks
  bool passed = false;
  std::string note;
};

struct ReproReport {
  std::string target;
  std::vector<ReproCheck> checks;
  bool passed = false;
  // Plot data as "x,y,series" rows; empty when the target has none.
  std::string artifact_name;
  std::string artifact_csv;
  double seconds = 0.0;
};

// Targets: example, table1, fig1, fig2, fig3. Throws ValidationError for an
// unknown target.
ReproReport Reproduce(std::string_view target, int threads = 0);

// Fixed-width pass/fail table, one line per check plus a summary line.
std::string FormatReport(const ReproReport& report);

}  // namespace ifa

#endif  // IFA_REPRODUCE_HPP_
