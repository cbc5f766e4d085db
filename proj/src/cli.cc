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

#include "growthlab/cli.h"

#include <algorithm>

#include "CLI11.hpp"
#include "growthlab/algebra.h"
#include "growthlab/io.h"
#include "growthlab/schedule.h"
#include "growthlab/verify.h"

namespace growthlab::cli {
namespace fs = std::filesystem;
namespace {

// A failure that maps straight to an exit code.
class Exit : public std::runtime_error {
 public:
  Exit(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

Json header(const std::string& command, const Json& config) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  return j;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

// ---- build ----------------------------------------------------------------

struct BuildFlags {
  std::uint64_t depth = 1;
  std::string mode = "certified";
  std::string omega = "none";
  std::uint64_t d1 = 0;
  std::uint64_t n1 = 0;
  std::vector<std::uint64_t> d;
  std::vector<std::uint64_t> n;
  std::uint64_t cap = 0;
  std::uint64_t scan_cap = kDefaultScanCap;
  std::string out = ".";
  bool dense = false;
};

int cmd_build(const BuildFlags& f, std::ostream& out, std::ostream& err) {
  ScheduleRequest req;
  req.depth = f.depth;
  try {
    req.mode = parse_mode(f.mode);
    if (f.omega != "none") req.omega = Omega::parse(f.omega);
  } catch (const std::exception& e) {
    throw Exit(kExitPolicy, e.what());
  }
  req.d_overrides = f.d;
  req.n_overrides = f.n;
  if (f.d1 != 0) {
    req.d_overrides.resize(std::max<std::size_t>(req.d_overrides.size(), 1));
    req.d_overrides[0] = f.d1;
  }
  if (f.n1 != 0) {
    req.n_overrides.resize(std::max<std::size_t>(req.n_overrides.size(), 1));
    req.n_overrides[0] = f.n1;
  }
  req.scan_cap = f.scan_cap;

  Schedule schedule;
  try {
    schedule = build_schedule(req);
  } catch (const ScanCapExceeded& e) {
    throw Exit(kExitPolicy, e.what());
  } catch (const std::invalid_argument& e) {
    throw Exit(kExitPolicy, e.what());
  }

  const fs::path dir(f.out);
  ensure_dir(dir);
  Json config = {{"depth", f.depth},     {"mode", f.mode}, {"omega", f.omega},
                 {"d", req.d_overrides}, {"n", req.n_overrides},
                 {"cap", f.cap},         {"scan_cap", f.scan_cap},
                 {"dense", f.dense}};
  Json sched = header("build", config);
  sched.update(schedule_to_json(schedule));
  write_json(dir / "schedule.json", sched);

  out << "schedule: mode=" << to_string(schedule.mode) << " depth=" << schedule.depth();
  for (const auto& e : schedule.entries) {
    out << " d" << e.k << "=" << e.d << " n" << e.k << "=" << e.n;
  }
  out << (schedule.all_pass() ? " ledger=all-pass" : " ledger=FAILED") << "\n";
  for (std::size_t i = 0; i < schedule.ledgers.size(); ++i) {
    for (const auto& r : schedule.ledgers[i].results) {
      if (r.verdict == Verdict::kFail) {
        out << "  ledger failure: k=" << i + 1 << " " << r.id << " (" << r.relation << ")\n";
      }
    }
  }
  if (schedule.mode == Mode::kCertified && !schedule.all_pass()) {
    const ConstraintResult* first = nullptr;
    for (const auto& l : schedule.ledgers) {
      if ((first = l.first_failure()) != nullptr) break;
    }
    throw Exit(kExitPolicy, "certified schedule rejected: constraint " + first->id +
                                " fails at k=" + std::to_string(first->k));
  }

  const std::uint64_t horizon =
      f.cap != 0 ? f.cap : (schedule.depth() == 0 ? 0 : default_horizon(schedule));
  const GrowthTable table = GrowthTable::build(schedule, horizon);
  for (const auto& w : table.warnings()) err << "warning: " << w << "\n";
  write_atomic(dir / "table.csv", table_to_csv(table, f.dense));
  Json cps = header("build", config);
  cps.update(checkpoints_to_json(table));
  write_json(dir / "checkpoints.json", cps);
  const bool dense_rows = f.dense || horizon <= kDenseRowLimit;
  out << "table: horizon=" << horizon << " rows="
      << (dense_rows ? horizon : table.checkpoints().size()) << (dense_rows ? " (dense)" : " (checkpoints)")
      << (schedule.certified() ? "" : " [uncertified]") << "\n";
  return kExitPass;
}

// ---- check ----------------------------------------------------------------

struct CheckFlags {
  std::string dir = ".";
  std::string check;
  std::string strategy = "exhaustive";
  unsigned long d = 2;
  std::uint64_t big_n = 0;
  std::uint64_t from = 0;
  std::uint64_t k = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint64_t window = 64;
  unsigned threads = 1;
  std::string omega;
  std::string out;
};

Json bound_failure_json(const BoundFailure& f) {
  return {{"x", f.x}, {"exponent", f.exponent.exponent().get_str()}, {"f_hex", to_hex(f.value)}};
}

int cmd_check(const CheckFlags& f, std::ostream& out, std::ostream&) {
  const GrowthTable table = load_build(f.dir);
  const Schedule& s = table.schedule();
  const std::uint64_t h = table.horizon();
  Json config = {{"dir", f.dir},         {"check", f.check},     {"strategy", f.strategy},
                 {"d", f.d},             {"N", f.big_n},         {"from", f.from},
                 {"k", f.k},             {"samples", f.samples}, {"seed", f.seed},
                 {"window", f.window},   {"threads", f.threads}, {"omega", f.omega}};
  Json report = header("check", config);
  report["check"] = f.check;
  report["strategy"] = nullptr;
  Json violation = nullptr;
  Json details = Json::object();
  std::uint64_t lo = 1, hi = h;
  bool pass = true;

  if (h == 0) {
    details = {{"note", "empty table"}};
  } else if (f.check == "submul") {
    SubmulOptions o;
    try {
      o.strategy = parse_strategy(f.strategy);
    } catch (const std::invalid_argument& e) {
      throw Exit(kExitPolicy, e.what());
    }
    o.samples = f.samples;
    o.seed = f.seed;
    o.window = f.window;
    o.threads = f.threads;
    for (const auto& e : s.entries) {
      o.boundaries.push_back(e.n);
      o.boundaries.push_back(e.d * e.n);
    }
    hi = f.big_n != 0 ? f.big_n : std::min<std::uint64_t>(h, 5000);
    if (hi > h) throw Exit(kExitIo, "N=" + std::to_string(hi) + " exceeds the table horizon " + std::to_string(h));
    SubmulReport r;
    try {
      r = check_submultiplicative(SeqView::of(table, hi), hi, o);
    } catch (const PairBudgetExceeded& e) {
      throw Exit(kExitPolicy, e.what());
    }
    report["strategy"] = to_string(r.strategy);
    details = {{"pairs_checked", r.pairs_checked}, {"exact_multiplies", r.exact_multiplies}};
    if (r.strategy == SubmulStrategy::kSampled) details["seed"] = r.seed;
    if (r.violation) {
      pass = false;
      violation = {{"p", r.violation->p}, {"q", r.violation->q},
                   {"lhs_hex", to_hex(r.violation->lhs)}, {"rhs_hex", to_hex(r.violation->rhs)}};
    }
  } else if (f.check == "mono") {
    hi = f.big_n != 0 ? std::min(f.big_n, h) : h;
    const auto bad = check_increasing(SeqView::of(table, hi), 1, hi);
    if (bad) {
      pass = false;
      violation = {{"x", *bad}};
    }
  } else if (f.check == "derivative") {
    lo = f.from != 0 ? f.from : 1;
    hi = f.big_n != 0 ? f.big_n : h;
    if (hi > h || lo > hi) throw Exit(kExitIo, "derivative range outside the table");
    std::vector<Nat> values;
    values.reserve(hi - lo + 1);
    table.scan(lo, hi, [&](std::uint64_t, const Nat& v) { values.push_back(v); });
    const DerivativeReport r = check_derivative_condition(SeqView(std::move(values), lo), f.d, hi);
    details = {{"d", r.d}, {"pairs_checked", r.pairs_checked}};
    if (r.violation) {
      pass = false;
      violation = {{"n", r.violation->n}, {"m", r.violation->m}, {"d", r.violation->d},
                   {"lhs_hex", to_hex(r.violation->lhs)}, {"rhs_hex", to_hex(r.violation->rhs)}};
    }
  } else if (f.check == "lowerbound") {
    // x = 1 lies below the bound for every schedule; see README.
    lo = f.from != 0 ? f.from : 2;
    hi = f.big_n != 0 ? f.big_n : h;
    if (hi > h) throw Exit(kExitIo, "lower-bound range outside the table");
    const BoundReport r = verify_lower_bound(table, lo, hi);
    details = {{"checked", r.checked}, {"failed", r.failed}};
    if (!r.passed()) {
      pass = false;
      violation = bound_failure_json(r.failures.front());
    }
  } else if (f.check == "conditionI") {
    Json per_k = Json::array();
    std::uint64_t checked = 0;
    lo = 0;
    for (const auto& e : s.entries) {
      if (f.k != 0 && e.k != f.k) continue;
      if (e.d * e.n > h) continue;
      const BoundReport r = verify_condition_I(table, e.k);
      checked += r.checked;
      if (lo == 0) lo = r.lo;
      per_k.push_back({{"k", e.k}, {"lo", r.lo}, {"hi", r.hi}, {"checked", r.checked},
                       {"failed", r.failed}});
      if (!r.passed() && pass) {
        pass = false;
        violation = bound_failure_json(r.failures.front());
        violation["k"] = e.k;
      }
    }
    details = {{"checked", checked}, {"segments", per_k}};
  } else if (f.check == "dominance") {
    std::optional<Omega> omega;
    try {
      omega = !f.omega.empty() ? Omega::parse(f.omega) : s.omega ? *s.omega : Omega::log();
    } catch (const std::exception& e) {
      throw Exit(kExitPolicy, e.what());
    }
    const DominanceReport r = check_dominance(table, *omega);
    lo = r.lo;
    hi = r.hi;
    details = {{"omega", omega->describe()}, {"checked", r.checked}};
    if (r.first_failure) {
      pass = false;
      violation = {{"x", *r.first_failure}, {"f_hex", to_hex(table.value_at(*r.first_failure))}};
    }
  } else {
    throw Exit(kExitPolicy, "unknown check '" + f.check + "'");
  }

  report["range"] = {lo, hi};
  report["verdict"] = pass ? "pass" : "fail";
  report["violation"] = violation;
  report["details"] = details;
  report["mode"] = to_string(s.mode);
  if (!s.certified()) report["watermark"] = "uncertified";
  report["ledger"] = ledger_to_json(s);
  const fs::path path = f.out.empty() ? fs::path(f.dir) / "report.json" : fs::path(f.out);
  write_json(path, report);
  out << "check " << f.check << " on [" << lo << ", " << hi << "]: " << (pass ? "pass" : "FAIL");
  if (!violation.is_null()) out << " " << violation.dump();
  out << "\n";
  return pass ? kExitPass : kExitViolation;
}

// ---- witness --------------------------------------------------------------

int cmd_witness(const std::string& dir, std::uint64_t c, const std::string& out_path,
                std::ostream& out) {
  const GrowthTable table = load_build(dir);
  Witness w;
  try {
    w = find_witness(table, c);
  } catch (const UncertifiedSchedule& e) {
    throw Exit(kExitPolicy, std::string("refused: ") + e.what());
  } catch (const RecipeRangeViolated& e) {
    throw Exit(kExitPolicy, e.constraint() + ": " + e.what());
  } catch (const NotViolated& e) {
    throw Exit(kExitViolation, e.what());
  }
  Json report = header("witness", {{"dir", dir}, {"C", c}});
  report["check"] = "witness";
  report["verdict"] = "pass";
  report["witness"] = {{"C", w.c},
                       {"D", w.d},
                       {"n", w.n},
                       {"k", w.k},
                       {"lhs_hex", to_hex(w.lhs)},
                       {"rhs_hex", to_hex(w.rhs)},
                       {"lhs_bits", bit_length(w.lhs)},
                       {"rhs_bits", bit_length(w.rhs)}};
  report["ledger"] = ledger_to_json(table.schedule());
  write_json(out_path.empty() ? fs::path(dir) / "witness.json" : fs::path(out_path), report);
  out << "witness C=" << w.c << " D=" << w.d << " n=" << w.n << ": lhs has "
      << bit_length(w.lhs) << " bits, rhs has " << bit_length(w.rhs) << " bits, lhs > rhs\n";
  return kExitPass;
}

// ---- algebra --------------------------------------------------------------

struct AlgebraFlags {
  unsigned alphabet = 0;
  std::vector<std::string> forbidden;
  std::uint64_t big_n = 20;
  std::string spec;
  std::string out = ".";
};

int cmd_algebra(const AlgebraFlags& f, std::ostream& out, std::ostream& err) {
  std::optional<MonomialAlgebraSpec> spec;
  if (!f.spec.empty()) {
    if (f.alphabet != 0 || !f.forbidden.empty()) {
      throw Exit(kExitPolicy, "--spec cannot be combined with --alphabet/--forbidden");
    }
    spec = algebra_spec_from_json(read_json(f.spec));
  } else {
    try {
      spec.emplace(f.alphabet, f.forbidden);
    } catch (const std::invalid_argument& e) {
      throw Exit(kExitPolicy, e.what());
    }
  }
  const AlgebraGrowth g = growth_table(*spec, f.big_n);
  if (g.degenerate) err << "warning: every letter is forbidden; gamma is constant 1\n";
  if (!spec->dropped().empty()) {
    err << "note: dropped redundant forbidden words " << join(spec->dropped()) << "\n";
  }
  Json config = {{"alphabet", spec->alphabet_size()}, {"forbidden", f.forbidden},
                 {"N", f.big_n}, {"spec", f.spec}};
  Json report = header("algebra", config);
  report["check"] = "derivative";
  report["alphabet"] = spec->alphabet_size();
  report["forbidden"] = spec->forbidden();
  report["dropped"] = spec->dropped();
  report["degenerate"] = g.degenerate;
  report["range"] = {0, f.big_n};
  bool pass = true;
  Json runs = Json::array();
  const SeqView view(g.gamma, 0);
  for (unsigned long d : {2ul, 3ul, 4ul}) {
    const DerivativeReport r = check_derivative_condition(view, d, f.big_n);
    Json run = {{"d", d}, {"verdict", r.passed() ? "pass" : "fail"}, {"violation", nullptr}};
    if (r.violation) {
      pass = false;
      run["violation"] = {{"n", r.violation->n}, {"m", r.violation->m}};
    }
    runs.push_back(run);
  }
  report["verdict"] = pass ? "pass" : "fail";
  report["derivative"] = runs;
  const fs::path dir(f.out);
  ensure_dir(dir);
  write_atomic(dir / "table.csv", algebra_to_csv(g));
  write_json(dir / "report.json", report);
  out << "algebra g=" << spec->alphabet_size() << " forbidden={" << join(spec->forbidden())
      << "} N=" << f.big_n << ": gamma(N)=" << g.gamma.back().get_str()
      << ", derivative condition d=2,3,4 " << (pass ? "pass" : "FAIL") << "\n";
  return pass ? kExitPass : kExitViolation;
}

}  // namespace

GrowthTable load_build(const fs::path& dir) {
  const Schedule schedule = schedule_from_json(read_json(dir / "schedule.json"));
  const std::vector<TableRow> rows = table_from_csv(read_file(dir / "table.csv"));
  const std::uint64_t horizon = rows.empty() ? 0 : rows.back().x;
  if (!rows.empty() && rows.front().x == 0) throw IoError("table rows start at x = 1");
  GrowthTable table = [&] {
    try {
      return GrowthTable::build(schedule, horizon);
    } catch (const ScheduleInvalid& e) {
      throw Exit(kExitPolicy, e.what());
    }
  }();
  auto mismatch = [](std::uint64_t x) {
    return IoError("table.csv disagrees with its schedule at x=" + std::to_string(x));
  };
  const bool contiguous = rows.size() == horizon;
  if (contiguous) {
    std::size_t i = 0;
    table.scan(1, horizon, [&](std::uint64_t x, const Nat& v) {
      const TableRow& r = rows[i++];
      if (r.value != v || r.segment != table.segment_at(x).name()) throw mismatch(x);
    });
  } else {
    for (const TableRow& r : rows) {
      if (r.value != table.value_at(r.x) || r.segment != table.segment_at(r.x).name()) {
        throw mismatch(r.x);
      }
    }
  }
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact construction and verification of growth functions", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  BuildFlags bf;
  CLI::App* build = app.add_subcommand("build", "Build a schedule and its growth table");
  build->add_option("--depth", bf.depth, "Number of blocks")->capture_default_str();
  build->add_option("--mode", bf.mode, "certified or demo")->capture_default_str();
  build->add_option("--omega", bf.omega, "none, log, const:a/b or file:path")
      ->capture_default_str();
  build->add_option("--d1", bf.d1, "d_1 (0 searches the minimum)");
  build->add_option("--n1", bf.n1, "n_1 (0 searches the minimum)");
  build->add_option("--d", bf.d, "d_1,d_2,... overrides")->delimiter(',');
  build->add_option("--n", bf.n, "n_1,n_2,... overrides")->delimiter(',');
  build->add_option("--cap", bf.cap, "Table horizon (0 = default)");
  build->add_option("--scan-cap", bf.scan_cap, "Upper limit for the n_k search")
      ->capture_default_str();
  build->add_option("--out", bf.out, "Output directory")->capture_default_str();
  build->add_flag("--dense", bf.dense, "Write every row even above 100000 rows");

  CheckFlags cf;
  CLI::App* check = app.add_subcommand("check", "Verify a property of a built table");
  check->add_option("--dir", cf.dir, "Build directory")->capture_default_str();
  check->add_option("--check", cf.check, "submul|mono|derivative|lowerbound|conditionI|dominance")
      ->required()
      ->check(CLI::IsMember({"submul", "mono", "derivative", "lowerbound", "conditionI",
                             "dominance"}));
  check->add_option("--strategy", cf.strategy, "exhaustive|sampled|boundary")
      ->capture_default_str();
  check->add_option("--d", cf.d, "Exponent of the derivative condition")->capture_default_str();
  check->add_option("--N", cf.big_n, "Upper end of the checked range (0 = default)");
  check->add_option("--from", cf.from, "Lower end of the checked range");
  check->add_option("--k", cf.k, "Restrict conditionI to one block");
  check->add_option("--samples", cf.samples, "Pairs drawn by the sampled strategy")
      ->capture_default_str();
  check->add_option("--seed", cf.seed, "Seed of the sampled strategy")->capture_default_str();
  check->add_option("--window", cf.window, "Half-width of the boundary strategy")
      ->capture_default_str();
  check->add_option("--threads", cf.threads, "Worker threads")->capture_default_str();
  check->add_option("--omega", cf.omega, "Omega for dominance (default: the schedule's, else log)");
  check->add_option("--out", cf.out, "Report path (default <dir>/report.json)");

  std::string wdir = ".", wout;
  std::uint64_t wc = 1;
  CLI::App* witness = app.add_subcommand("witness", "Certify the inequality violation at C");
  witness->add_option("--dir", wdir, "Build directory")->capture_default_str();
  witness->add_option("--C", wc, "Block index C")->capture_default_str();
  witness->add_option("--out", wout, "Witness path (default <dir>/witness.json)");

  AlgebraFlags af;
  CLI::App* algebra = app.add_subcommand("algebra", "Growth of a monomial algebra");
  algebra->add_option("--alphabet", af.alphabet, "Number of letters (1..10)");
  algebra->add_option("--forbidden", af.forbidden, "Forbidden word (repeatable)");
  algebra->add_option("--N", af.big_n, "Largest length")->capture_default_str();
  algebra->add_option("--spec", af.spec, "JSON file {\"alphabet\": g, \"forbidden\": [...]}");
  algebra->add_option("--out", af.out, "Output directory")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitPolicy;
  }

  try {
    if (*build) return cmd_build(bf, out, err);
    if (*check) return cmd_check(cf, out, err);
    if (*witness) return cmd_witness(wdir, wc, wout, out);
    if (*algebra) {
      if (af.spec.empty() && af.alphabet == 0) {
        throw Exit(kExitPolicy, "algebra needs --alphabet or --spec");
      }
      return cmd_algebra(af, out, err);
    }
  } catch (const Exit& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const OutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPolicy;
  }
  return kExitPolicy;
}

}  // namespace growthlab::cli
