// Copyright 2026 The growthlab Authors
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

#include "growthlab/omega.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace growthlab {
namespace {

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  if (q <= 0) throw std::invalid_argument("omega values must be positive");
  return q;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Omega Omega::log() { return Omega(Kind::kLog, "log"); }

Omega Omega::constant(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  if (v <= 0) throw std::invalid_argument("omega constant must be positive");
  Omega o(Kind::kConstant, "const:" + v.get_num().get_str() + "/" +
                               v.get_den().get_str());
  o.constant_ = v;
  return o;
}

Omega Omega::table(std::vector<mpq_class> values, std::string source) {
  if (values.empty()) throw std::invalid_argument("omega table is empty");
  Omega o(Kind::kTable, "file:" + source);
  o.table_ = std::move(values);
  return o;
}

Omega Omega::parse(const std::string& spec) {
  if (spec == "log") return log();
  if (spec.rfind("const:", 0) == 0) {
    return constant(parse_rational(spec.substr(6)));
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open omega file " + path);
    std::vector<mpq_class> values;
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      values.push_back(parse_rational(line));
    }
    return table(std::move(values), path);
  }
  throw std::invalid_argument("unknown omega preset: " + spec);
}

mpq_class Omega::at(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("omega is defined for m >= 1");
  switch (kind_) {
    case Kind::kLog: {
      // floor(log2(m + 1)) is the bit length of m + 1, minus one.
      const unsigned long l = bit_length(Nat(m) + 1) - 1;
      return mpq_class(1, l);
    }
    case Kind::kConstant:
      return constant_;
    case Kind::kTable:
      return m <= table_.size() ? table_[m - 1] : table_.back();
  }
  return 0;
}

std::optional<Nat> Omega::last_at_least(const mpq_class& bound) const {
  if (bound <= 0) return std::nullopt;
  switch (kind_) {
    case Kind::kLog: {
      // 1/floor(log2(m+1)) >= b  <=>  floor(log2(m+1)) <= floor(1/b)
      //                          <=>  m <= 2^(floor(1/b)+1) - 2
      const mpq_class inv = 1 / bound;
      Int t;
      mpz_fdiv_q(t.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
      if (t == 0) return Nat(0);
      if (!t.fits_ulong_p()) throw std::overflow_error("omega bound too small");
      return pow2(t.get_ui() + 1) - 2;
    }
    case Kind::kConstant:
      if (constant_ >= bound) return std::nullopt;
      return Nat(0);
    case Kind::kTable: {
      if (table_.back() >= bound) return std::nullopt;
      for (std::size_t i = table_.size(); i-- > 0;) {
        if (table_[i] >= bound) return Nat(static_cast<unsigned long>(i + 1));
      }
      return Nat(0);
    }
  }
  return Nat(0);
}

}  // namespace growthlab
