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

#ifndef GROWTHLAB_OMEGA_H_
#define GROWTHLAB_OMEGA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/exact.h"

namespace growthlab {

// A rate function omega: N -> Q_{>0} with g(m) <= 2^(m omega(m)) for the
// target subexponential g. Defined for m >= 1.
class Omega {
 public:
  // omega(m) = 1 / floor(log2(m + 1)).
  static Omega log();
  static Omega constant(const mpq_class& value);
  // values[i] = omega(i + 1); beyond the table omega stays at the last value.
  static Omega table(std::vector<mpq_class> values, std::string source);

  // Parses "log", "const:<num>/<den>" or "file:<path>".
  static Omega parse(const std::string& spec);

  mpq_class at(std::uint64_t m) const;

  // max{m >= 1 : omega(m) >= bound}; 0 for the empty set, nullopt when the
  // set is unbounded.
  std::optional<Nat> last_at_least(const mpq_class& bound) const;

  const std::string& describe() const { return description_; }

 private:
  enum class Kind { kLog, kConstant, kTable };
  Omega(Kind kind, std::string description)
      : kind_(kind), description_(std::move(description)) {}

  Kind kind_;
  std::string description_;
  mpq_class constant_;
  std::vector<mpq_class> table_;
};

}  // namespace growthlab

#endif  // GROWTHLAB_OMEGA_H_
