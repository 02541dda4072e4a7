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

#include "code_fixtures.hpp"

namespace zoneprep::detail {

// surface9 carries a fixture circuit: the lowest-pivot reduction gives a
// 10-edge graph, pivots {0,1,5,6} give the 8-edge one.
auto code_fixtures() -> const std::vector<CodeFixture>& {
  static const std::vector<CodeFixture> fixtures = {
    {"steane", 7, 1, 3, 9,
        {"IZZZZII",
         "ZZIZIZI",
         "ZZZIIIZ",
         "IXXXXII",
         "XXIXIXI",
         "XXXIIIX"},
        {},
        {}},
    {"surface9", 9, 1, 3, 8,
        {"XXIXXIIII",
         "IIIIXXIXX",
         "IXXIIIIII",
         "IIIIIIXXI",
         "IZZIZZIII",
         "IIIZZIZZI",
         "ZIIZIIIII",
         "IIIIIZIIZ"},
        {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {4, 5}, {5, 7}, {5, 8}, {6, 7}},
        {2, 3, 4, 7, 8}},
    {"shor9", 9, 1, 3, 10,
        {"ZZIIIIIII",
         "IZZIIIIII",
         "IIIZZIIII",
         "IIIIZZIII",
         "IIIIIIZZI",
         "IIIIIIIZZ",
         "XXXXXXIII",
         "IIIXXXXXX"},
        {},
        {}},
    {"hamming15", 15, 7, 3, 28,
        {"XIXIXIXIXIXIXIX",
         "IXXIIXXIIXXIIXX",
         "IIIXXXXIIIIXXXX",
         "IIIIIIIXXXXXXXX",
         "ZIZIZIZIZIZIZIZ",
         "IZZIIZZIIZZIIZZ",
         "IIIZZZZIIIIZZZZ",
         "IIIIIIIZZZZZZZZ"},
        {},
        {}},
    {"tetrahedral15", 15, 1, 3, 28,
        {"XIXIXIXIXIXIXIX",
         "IXXIIXXIIXXIIXX",
         "IIIXXXXIIIIXXXX",
         "IIIIIIIXXXXXXXX",
         "ZIZIZIZIZIZIZIZ",
         "IZZIIZZIIZZIIZZ",
         "IIIZZZZIIIIZZZZ",
         "IIIIIIIZZZZZZZZ",
         "IIZIIIZIIIZIIIZ",
         "IIIIZIZIIIIIZIZ",
         "IIIIIIIIZIZIZIZ",
         "IIIIIZZIIIIIIZZ",
         "IIIIIIIIIZZIIZZ",
         "IIIIIIIIIIIZZZZ"},
        {},
        {}},
    {"honeycomb17", 17, 1, 5, 32,
        {"IIIIXIXIIXIIIIIIX",
         "IIIXIIIIIIXIIXIXI",
         "XIXXXIIIXXIIXXIII",
         "IXXIIIXIIXIIIIIII",
         "IXXIIIIIIIIIIXIXI",
         "XIIIIIIXXIIIIIXII",
         "XIIIIXIIXIIXIIIII",
         "XIIIIIIXIIIXXIIII",
         "IIIIZIZIIZIIIIIIZ",
         "IIIZIIIIIIZIIZIZI",
         "ZIZZZIIIZZIIZZIII",
         "IZZIIIZIIZIIIIIII",
         "IZZIIIIIIIIIIZIZI",
         "ZIIIIIIZZIIIIIZII",
         "ZIIIIZIIZIIZIIIII",
         "ZIIIIIIZIIIZZIIII"},
        {},
        {}},
  };
  return fixtures;
}

} // namespace zoneprep::detail
