// Copyright 2026 The entbreak Authors
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

// Plain-text SDP exchange format, one record per line, '#' starts a comment:
//
//   entbreak-sdp 1
//   sense max|min
//   blocks <k> <n_1> ... <n_k>
//   offset <real>
//   trace_bound <real>
//   objective <nnz>
//   <block> <row> <col> <re> <im>        (nnz lines, row <= col)
//   constraints <m>
//   constraint <rhs> <nnz>               (then nnz entry lines; m times)
//   end
//
// Indices are 0-based; only the upper triangle of each Hermitian coefficient
// is stored. Reals are written with 17 significant digits so that a
// dump/load round trip is exact.

#pragma once

#include <iosfwd>
#include <string>

#include "entbreak/sdp.hpp"

namespace entbreak::sdp {

void write_problem(std::ostream& os, const Problem& problem);
Problem read_problem(std::istream& is);

void save_problem(const std::string& path, const Problem& problem);
Problem load_problem(const std::string& path);

}  // namespace entbreak::sdp
