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

#include "growthlab/io.h"

#include <fstream>
#include <sstream>

namespace growthlab {
namespace {

Json optional_hex(const std::optional<Int>& v) {
  return v ? Json(to_hex(*v)) : Json(nullptr);
}

std::uint64_t parse_u64(const std::string& field, const std::string& what) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos) {
    throw IoError("malformed " + what + ": '" + field + "'");
  }
  try {
    return std::stoull(field);
  } catch (const std::out_of_range&) {
    throw IoError(what + " out of range: " + field);
  }
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw IoError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
}

void write_json(const std::filesystem::path& path, const Json& value) {
  write_atomic(path, value.dump(2) + "\n");
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Json ledger_to_json(const Schedule& schedule) {
  Json out = Json::array();
  for (const auto& ledger : schedule.ledgers) {
    for (const auto& r : ledger.results) {
      out.push_back({{"k", r.k}, {"id", r.id}, {"verdict", to_string(r.verdict)}});
    }
  }
  return out;
}

Json schedule_to_json(const Schedule& schedule) {
  Json j;
  j["mode"] = to_string(schedule.mode);
  j["omega"] = schedule.omega ? Json(schedule.omega->describe()) : Json(nullptr);
  if (!schedule.certified()) j["watermark"] = "uncertified";
  Json entries = Json::array();
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const ScheduleEntry& e = schedule.entries[i];
    Json ledger = Json::array();
    for (const auto& r : schedule.ledgers[i].results) {
      ledger.push_back({{"id", r.id},
                        {"verdict", to_string(r.verdict)},
                        {"lhs", optional_hex(r.lhs)},
                        {"rhs", optional_hex(r.rhs)},
                        {"relation", r.relation}});
    }
    entries.push_back(
        {{"k", e.k}, {"d", e.d}, {"n", e.n}, {"m", e.m}, {"ledger", ledger}});
  }
  j["entries"] = entries;
  return j;
}

Schedule schedule_from_json(const Json& json) {
  ScheduleRequest request;
  try {
    request.mode = parse_mode(field<std::string>(json, "mode"));
    const Json& omega = json.at("omega");
    if (!omega.is_null()) request.omega = Omega::parse(omega.get<std::string>());
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("bad schedule header: ") + e.what());
  }
  const Json entries = field<Json>(json, "entries");
  if (!entries.is_array()) throw IoError("'entries' must be an array");
  request.depth = entries.size();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (field<std::uint64_t>(entries[i], "k") != i + 1) {
      throw IoError("schedule entries must be numbered 1, 2, ...");
    }
    request.d_overrides.push_back(field<std::uint64_t>(entries[i], "d"));
    request.n_overrides.push_back(field<std::uint64_t>(entries[i], "n"));
    if (request.d_overrides.back() == 0 || request.n_overrides.back() == 0) {
      throw IoError("schedule entry " + std::to_string(i + 1) + " has d or n = 0");
    }
  }
  Schedule s;
  try {
    s = build_schedule(request);
  } catch (const std::exception& e) {
    throw IoError(std::string("schedule file does not describe a valid schedule: ") +
                  e.what());
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (field<std::uint64_t>(entries[i], "m") != s.entries[i].m) {
      throw IoError("schedule entry " + std::to_string(i + 1) + " has inconsistent m");
    }
    for (const Json& r : field<Json>(entries[i], "ledger")) {
      const std::string id = field<std::string>(r, "id");
      const ConstraintResult* mine = s.ledgers[i].find(id);
      if (mine == nullptr || to_string(mine->verdict) != field<std::string>(r, "verdict")) {
        throw IoError("stored verdict for " + id + " at k=" + std::to_string(i + 1) +
                      " disagrees with recomputation");
      }
    }
  }
  return s;
}

std::string table_to_csv(const GrowthTable& table, bool force_dense) {
  std::string out = "x,segment,f_hex\n";
  auto row = [&](std::uint64_t x, const Nat& v) {
    out += std::to_string(x);
    out += ',';
    out += table.segment_at(x).name();
    out += ',';
    out += to_hex(v);
    out += '\n';
  };
  if (force_dense || table.horizon() <= kDenseRowLimit) {
    table.scan(1, table.horizon(), row);
  } else {
    for (const auto& [x, v] : table.checkpoints()) row(x, v);
    // The last row carries the horizon.
    if (table.checkpoints().empty() || table.checkpoints().rbegin()->first != table.horizon()) {
      row(table.horizon(), table.value_at(table.horizon()));
    }
  }
  return out;
}

std::vector<TableRow> table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "x,segment,f_hex") {
    throw IoError("table file must start with the header x,segment,f_hex");
  }
  std::vector<TableRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos || line.find(',', b + 1) != std::string::npos) {
      throw IoError("table line " + std::to_string(lineno) + " needs three fields");
    }
    TableRow r;
    r.x = parse_u64(line.substr(0, a), "x on line " + std::to_string(lineno));
    r.segment = line.substr(a + 1, b - a - 1);
    try {
      r.value = from_hex(line.substr(b + 1));
    } catch (const std::invalid_argument& e) {
      throw IoError("table line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!rows.empty() && r.x <= rows.back().x) {
      throw IoError("table rows must have increasing x (line " +
                    std::to_string(lineno) + ")");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Json checkpoints_to_json(const GrowthTable& table) {
  Json list = Json::array();
  for (const auto& [x, v] : table.checkpoints()) {
    list.push_back({{"x", x}, {"f_hex", to_hex(v)}, {"segment", table.segment_at(x).name()}});
  }
  Json j;
  j["boundaries"] = list;
  return j;
}

std::string algebra_to_csv(const AlgebraGrowth& growth) {
  std::string out = "x,segment,f_hex\n";
  for (std::size_t n = 0; n < growth.gamma.size(); ++n) {
    out += std::to_string(n) + ",gamma," + to_hex(growth.gamma[n]) + "\n";
  }
  return out;
}

MonomialAlgebraSpec algebra_spec_from_json(const Json& json) {
  const auto g = field<unsigned>(json, "alphabet");
  std::vector<std::string> forbidden;
  if (json.contains("forbidden")) {
    forbidden = field<std::vector<std::string>>(json, "forbidden");
  }
  try {
    return MonomialAlgebraSpec(g, std::move(forbidden));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("bad algebra spec: ") + e.what());
  }
}

}  // namespace growthlab
