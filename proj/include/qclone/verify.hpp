// Copyright 2026 The qclone Authors
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

namespace qclone {

struct CriterionResult {
  int id = 0;
  std::string module;
  std::string title;
  bool pass = true;
  std::vector<std::string> failures;  // what did not hold
  std::vector<std::string> notes;     // informational findings
};

struct VerifyOptions {
  double tol = 1e-9;  // tolerance of the exact (non-printed) comparisons
};

// "all" or a module name; see verify_scopes().
std::vector<std::string> verify_scopes();
bool is_verify_scope(const std::string& scope);
// Runs the acceptance criteria of `scope` in id order.
std::vector<CriterionResult> run_verification(const std::string& scope = "all", const VerifyOptions& opt = {});

}  // namespace qclone
