// Copyright 2026 The zoneprep Authors
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

#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace zoneprep::detail {

struct CodeFixture {
  std::string_view name;
  int n;
  int k;
  int d;
  int reference_cz_count;
  std::vector<std::string_view> stabilizers;
  std::vector<std::pair<int, int>> fixture_edges;
  std::vector<int> fixture_hadamards;
};

auto code_fixtures() -> const std::vector<CodeFixture>&;

} // namespace zoneprep::detail
