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

#include "entbreak/sdp_io.hpp"

#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

namespace entbreak::sdp {
namespace {

struct Entry {
  int block, row, col;
  Complex value;
};

std::vector<Entry> nonzeros(const std::vector<CMatrix>& mats) {
  std::vector<Entry> out;
  for (int b = 0; b < static_cast<int>(mats.size()); ++b) {
    const CMatrix& m = mats[b];
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = i; j < m.cols(); ++j)
        if (m(i, j) != Complex(0.0)) out.push_back({b, int(i), int(j), m(i, j)});
  }
  return out;
}

void write_entries(std::ostream& os, const std::vector<Entry>& entries) {
  for (const auto& e : entries)
    os << e.block << ' ' << e.row << ' ' << e.col << ' ' << e.value.real() + 0.0 << ' '
       << e.value.imag() + 0.0 << '\n';
}

// Line reader that skips blank lines and comments.
class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}

  std::istringstream next(const std::string& expect) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ss(line);
      ss.imbue(std::locale::classic());
      if (!expect.empty()) {
        std::string key;
        ss >> key;
        if (key != expect) fail("expected '" + expect + "', got '" + key + "'");
      }
      return ss;
    }
    fail("unexpected end of input, expected '" + expect + "'");
    return {};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("SDP file line " + std::to_string(line_no_) + ": " + msg);
  }

  template <typename T>
  T field(std::istringstream& ss, const char* what) const {
    T v{};
    if (!(ss >> v)) fail(std::string("could not read ") + what);
    return v;
  }

 private:
  std::istream& is_;
  int line_no_ = 0;
};

std::vector<CMatrix> read_entries(Reader& r, int count, const std::vector<int>& dims) {
  std::vector<CMatrix> mats;
  for (int d : dims) mats.push_back(CMatrix::Zero(d, d));
  std::vector<bool> touched(dims.size(), false);
  for (int n = 0; n < count; ++n) {
    auto ss = r.next("");
    const int b = r.field<int>(ss, "block");
    const int i = r.field<int>(ss, "row");
    const int j = r.field<int>(ss, "col");
    const double re = r.field<double>(ss, "real part");
    const double im = r.field<double>(ss, "imaginary part");
    if (b < 0 || b >= static_cast<int>(dims.size()) || i < 0 || j < i || j >= dims[b])
      r.fail("entry index out of range or below the diagonal");
    if (i == j && im != 0.0) r.fail("diagonal entry must be real");
    mats[b](i, j) = Complex(re, im);
    mats[b](j, i) = Complex(re, -im);
    touched[b] = true;
  }
  for (std::size_t b = 0; b < mats.size(); ++b)
    if (!touched[b]) mats[b].resize(0, 0);
  return mats;
}

}  // namespace

void write_problem(std::ostream& os, const Problem& p) {
  p.validate();
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17);
  out << "entbreak-sdp 1\n";
  out << "sense " << (p.sense == Sense::kMaximize ? "max" : "min") << '\n';
  out << "blocks " << p.num_blocks();
  for (int d : p.block_dims) out << ' ' << d;
  out << '\n';
  out << "offset " << p.objective_offset + 0.0 << '\n';
  out << "trace_bound " << p.trace_bound + 0.0 << '\n';
  const auto obj = nonzeros(p.objective);
  out << "objective " << obj.size() << '\n';
  write_entries(out, obj);
  out << "constraints " << p.constraints.size() << '\n';
  for (const auto& c : p.constraints) {
    const auto entries = nonzeros(c.coeffs);
    out << "constraint " << c.rhs + 0.0 << ' ' << entries.size() << '\n';
    write_entries(out, entries);
  }
  out << "end\n";
  os << out.str();
}

Problem read_problem(std::istream& is) {
  Reader r(is);
  Problem p;
  {
    auto ss = r.next("entbreak-sdp");
    if (r.field<int>(ss, "version") != 1) r.fail("unsupported version");
  }
  {
    auto ss = r.next("sense");
    const auto s = r.field<std::string>(ss, "sense");
    if (s == "max") p.sense = Sense::kMaximize;
    else if (s == "min") p.sense = Sense::kMinimize;
    else r.fail("sense must be max or min");
  }
  {
    auto ss = r.next("blocks");
    const int k = r.field<int>(ss, "block count");
    if (k < 1) r.fail("need at least one block");
    for (int b = 0; b < k; ++b) p.block_dims.push_back(r.field<int>(ss, "block dimension"));
  }
  {
    auto ss = r.next("offset");
    p.objective_offset = r.field<double>(ss, "offset");
  }
  {
    auto ss = r.next("trace_bound");
    p.trace_bound = r.field<double>(ss, "trace bound");
  }
  {
    auto ss = r.next("objective");
    const int nnz = r.field<int>(ss, "entry count");
    p.objective = read_entries(r, nnz, p.block_dims);
  }
  {
    auto ss = r.next("constraints");
    const int m = r.field<int>(ss, "constraint count");
    for (int i = 0; i < m; ++i) {
      auto cs = r.next("constraint");
      Constraint c;
      c.rhs = r.field<double>(cs, "rhs");
      const int nnz = r.field<int>(cs, "entry count");
      c.coeffs = read_entries(r, nnz, p.block_dims);
      p.constraints.push_back(std::move(c));
    }
  }
  r.next("end");
  p.validate();
  return p;
}

void save_problem(const std::string& path, const Problem& problem) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_problem(os, problem);
  if (!os) throw Error("failed writing '" + path + "'");
}

Problem load_problem(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  return read_problem(is);
}

}  // namespace entbreak::sdp
