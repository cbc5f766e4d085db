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

// Artifact formats. Big values are always "0x..." hex strings.
//
//   schedule.json     {"mode", "omega", "watermark"?, "entries": [{k, d, n, m,
//                      "ledger": [{id, verdict, lhs, rhs, relation}]}]}
//   table.csv         x,segment,f_hex
//   checkpoints.json  {"boundaries": [{x, f_hex, segment}]}

#ifndef GROWTHLAB_IO_H_
#define GROWTHLAB_IO_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/algebra.h"
#include "growthlab/growthfn.h"
#include "growthlab/schedule.h"
#include "json.hpp"

namespace growthlab {

using Json = nlohmann::ordered_json;

// Missing, unreadable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tables with more rows than this are written as checkpoints only.
inline constexpr std::uint64_t kDenseRowLimit = 100'000;

std::string read_file(const std::filesystem::path& path);
// Writes a sibling temp file and renames it over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const Json& value);
Json read_json(const std::filesystem::path& path);

Json ledger_to_json(const Schedule& schedule);
Json schedule_to_json(const Schedule& schedule);
// Recomputes the schedule (and its ledgers) from the stored parameters; the
// stored entries and verdicts must agree with the recomputation.
Schedule schedule_from_json(const Json& json);

struct TableRow {
  std::uint64_t x = 0;
  std::string segment;
  Nat value;
};

// Dense when asked or when the horizon is within kDenseRowLimit.
std::string table_to_csv(const GrowthTable& table, bool force_dense);
std::vector<TableRow> table_from_csv(const std::string& text);
Json checkpoints_to_json(const GrowthTable& table);

// Rows x = 0..N with segment "gamma".
std::string algebra_to_csv(const AlgebraGrowth& growth);
MonomialAlgebraSpec algebra_spec_from_json(const Json& json);

}  // namespace growthlab

#endif  // GROWTHLAB_IO_H_
