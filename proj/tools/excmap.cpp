// excmap: decide exceptionality of rational maps over finite fields, run
// census scans, and exercise the group- and series-level models of totally
// ramified local extensions.
//
// Exit codes: 0 decided/agree, 1 theorem-violation sentinel, 2 usage or
// parse errors, 3 inconclusive.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "excmap/exceptional.hpp"
#include "excmap/laurent.hpp"
#include "excmap/text.hpp"
#include "excmap/triple.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace excmap;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Output {
  bool json_stdout = false;
  std::ofstream file;

  void emit(const json& row, const std::string& text_line) {
    if (file.is_open()) file << row.dump() << "\n";
    if (json_stdout) {
      std::cout << row.dump() << "\n";
    } else if (!text_line.empty()) {
      std::cout << text_line << "\n";
    }
  }
};

json point_json(const ProjPoint& pt) { return print_point(pt); }

json verdict_json(const ExceptionalityVerdict& v) {
  json j;
  switch (v.status) {
    case ExceptionalityVerdict::Status::Exceptional:
      j["verdict"] = "exceptional";
      j["witness_k"] = v.witness_k;
      break;
    case ExceptionalityVerdict::Status::NotExceptional:
      j["verdict"] = "not_exceptional";
      break;
    case ExceptionalityVerdict::Status::Inconclusive:
      j["verdict"] = "inconclusive";
      break;
  }
  j["scanned_k"] = v.scanned_k;
  j["k0"] = v.k0;
  j["window"] = v.window;
  j["core"] = print_ratfunc(v.core);
  j["frob_exp"] = v.frob_exp;
  if (v.collision) {
    j["collision"] = {{"k", v.collision->k},
                      {"a", point_json(v.collision->a)},
                      {"b", point_json(v.collision->b)}};
  }
  return j;
}

json profile_json(const std::vector<RamProfileEntry>& profile) {
  json arr = json::array();
  for (const auto& entry : profile) {
    arr.push_back({{"point", point_json(entry.point)},
                   {"e", entry.e},
                   {"gcd_e_qm1", entry.gcd_e_qm1}});
  }
  return arr;
}

std::string verdict_text(const ExceptionalityVerdict& v) {
  std::ostringstream out;
  switch (v.status) {
    case ExceptionalityVerdict::Status::Exceptional:
      out << "exceptional (witness k = " << v.witness_k << ")";
      break;
    case ExceptionalityVerdict::Status::NotExceptional:
      out << "not exceptional";
      break;
    case ExceptionalityVerdict::Status::Inconclusive:
      out << "inconclusive (window override below the sound width)";
      break;
  }
  return out.str();
}

// Known row schemas; every persisted report must re-validate against this.
void validate_row(const json& row) {
  auto need = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (!row.contains(k)) {
        fail(ErrorKind::ParseError,
             std::string("report row missing key '") + k + "'");
      }
    }
  };
  if (!row.is_object() || !row.contains("type")) {
    fail(ErrorKind::ParseError, "report row is not a typed object");
  }
  const std::string type = row["type"];
  if (type == "header") {
    need({"version", "command", "timestamp", "config"});
  } else if (type == "candidate") {
    need({"index", "poly", "verdict", "scanned_k", "core"});
    if (row["verdict"] == "exceptional") {
      need({"witness_k", "ram_profile", "gcd_deg_qm1", "violation"});
    }
  } else if (type == "summary") {
    need({"elapsed_ms"});
  } else if (type == "verdict") {
    need({"function", "q", "verdict"});
  } else if (type == "ramify") {
    need({"function", "q", "profile", "verdict", "pass"});
  } else if (type == "battery") {
    need({"n", "q", "items", "agree", "value"});
  } else if (type == "subext") {
    need({"n", "q", "B_size", "quotient_degree", "sub_degree", "holds"});
  } else if (type == "triple_battery") {
    need({"n", "items", "agreement", "exceptional", "triple"});
  } else if (type == "root") {
    need({"input", "m", "root", "verified"});
  } else {
    fail(ErrorKind::ParseError, "unknown report row type '" + type + "'");
  }
}

void validate_report_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot reopen report " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    validate_row(json::parse(line));
  }
}

struct CommonOpts {
  std::string format = "text";
  std::string out_dir;
  std::uint64_t cap = kDefaultCardinalityCap;
  unsigned jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", opts.out_dir, "directory for JSONL report files");
  cmd->add_option("--cap", opts.cap, "enumeration cap on field cardinality");
  cmd->add_option("--jobs", opts.jobs, "worker pool width (0 = auto)");
}

// Opens <out>/<name>.jsonl and hooks it into the output.
void open_report(Output& output, const CommonOpts& opts, const std::string& name,
                 bool append) {
  if (opts.out_dir.empty()) return;
  fs::create_directories(opts.out_dir);
  fs::path path = fs::path(opts.out_dir) / (name + ".jsonl");
  output.file.open(path, append ? std::ios::app : std::ios::trunc);
  if (!output.file) fail(ErrorKind::ParseError, "cannot open " + path.string());
}

json header_row(const std::string& command, const json& config) {
  return {{"type", "header"},
          {"version", kVersion},
          {"command", command},
          {"timestamp", iso_timestamp()},
          {"config", config}};
}

int run_exceptional(const std::string& literal, const CommonOpts& common,
                    std::optional<unsigned> window, bool strict) {
  FunctionLiteral lit = parse_function_literal(literal);
  ExcOptions opts;
  opts.window_override = window;
  opts.strict_bound = strict;
  opts.cap = common.cap;
  ExceptionalityVerdict v = is_exceptional(lit.f, opts);

  Output output;
  output.json_stdout = common.format == "json";
  open_report(output, common, "exceptional", false);

  json config = {{"function", print_ratfunc(lit.f)},
                 {"q", lit.field->q()},
                 {"p", lit.field->p()},
                 {"field_n", lit.field->n()},
                 {"strict_bound", strict},
                 {"cap", common.cap},
                 {"window_override", window ? json(*window) : json(nullptr)},
                 {"format", common.format}};
  output.emit(header_row("exceptional", config), "");

  json row = verdict_json(v);
  row["type"] = "verdict";
  row["function"] = print_ratfunc(lit.f);
  row["q"] = lit.field->q();

  std::ostringstream text;
  text << print_function_literal(lit.f) << ": " << verdict_text(v) << "\n";
  text << "  separable core: " << print_ratfunc(v.core) << ", frobenius exponent "
       << v.frob_exp << ", degree " << v.core.degree() << "\n";
  text << "  scan: k0 = " << v.k0 << ", window = " << v.window << ", scanned k = [";
  for (std::size_t i = 0; i < v.scanned_k.size(); ++i) {
    text << (i ? ", " : "") << v.scanned_k[i];
  }
  text << "]";
  if (v.collision) {
    text << "\n  collision at k = " << v.collision->k << ": core(a) = core(b) for a = "
         << print_point(v.collision->a) << ", b = " << print_point(v.collision->b);
  }
  output.emit(row, text.str());
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / "exceptional.jsonl");
  }
  return v.status == ExceptionalityVerdict::Status::Inconclusive ? 3 : 0;
}

int run_ramify(const std::string& literal, const CommonOpts& common, bool strict) {
  FunctionLiteral lit = parse_function_literal(literal);
  ExcOptions opts;
  opts.strict_bound = strict;
  opts.cap = common.cap;
  RamificationReport rep = check_ramification(lit.f, opts);

  Output output;
  output.json_stdout = common.format == "json";
  open_report(output, common, "ramify", false);
  json config = {{"function", print_ratfunc(lit.f)},
                 {"q", lit.field->q()},
                 {"p", lit.field->p()},
                 {"field_n", lit.field->n()},
                 {"cap", common.cap},
                 {"format", common.format}};
  output.emit(header_row("ramify", config), "");

  json row = {{"type", "ramify"},
              {"function", print_ratfunc(lit.f)},
              {"q", lit.field->q()},
              {"profile", profile_json(rep.profile)},
              {"verdict", verdict_json(rep.verdict)},
              {"pass", rep.pass}};

  std::ostringstream text;
  text << print_function_literal(lit.f) << ": " << verdict_text(rep.verdict) << "\n";
  for (const auto& entry : rep.profile) {
    text << "  e(" << print_point(entry.point) << ") = " << entry.e
         << ", gcd with q-1 = " << entry.gcd_e_qm1 << "\n";
  }
  text << (rep.pass ? "  ramification coprimality: pass"
                    : "  RAMIFICATION COPRIMALITY VIOLATION");
  output.emit(row, text.str());
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / "ramify.jsonl");
  }
  return rep.pass ? 0 : 1;
}

int run_scan(std::uint64_t q, unsigned degree, const CommonOpts& common,
             bool full, bool strict) {
  PrimePower pp = factor_prime_power(q);
  FieldPtr field = Field::make(pp.p, pp.n, common.cap);

  Output output;
  output.json_stdout = common.format == "json";

  const std::string report_name =
      "scan_q" + std::to_string(q) + "_n" + std::to_string(degree) +
      (full ? "_full" : "");
  json config = {{"q", q},
                 {"p", pp.p},
                 {"field_n", pp.n},
                 {"degree", degree},
                 {"normalization",
                  full ? "full enumeration (audit)" : "monic, constant term zero"},
                 {"full", full},
                 {"strict_bound", strict},
                 {"cap", common.cap},
                 {"jobs", common.jobs},
                 {"window", jacobsthal_window(degree)},
                 {"format", common.format}};

  // Resumable runs: a cursor file next to the report remembers the next
  // candidate index for this exact configuration.
  std::uint64_t resume_from = 0;
  fs::path cursor_path;
  const std::uint64_t total = census_size(field, degree, full);
  if (!common.out_dir.empty()) {
    fs::create_directories(common.out_dir);
    cursor_path = fs::path(common.out_dir) / (report_name + ".cursor.json");
    if (fs::exists(cursor_path)) {
      try {
        std::ifstream in(cursor_path);
        json cur = json::parse(in);
        if (cur.value("config", json()) == config) {
          std::uint64_t next = cur.value("next", std::uint64_t{0});
          if (next > 0 && next < total) resume_from = next;
        }
      } catch (...) {
        resume_from = 0;
      }
    }
  }
  open_report(output, common, report_name, resume_from > 0);
  if (resume_from == 0) {
    output.emit(header_row("scan", config), "");
  } else if (!output.json_stdout) {
    std::cout << "resuming at candidate " << resume_from << "\n";
  }

  auto write_cursor = [&](std::uint64_t next) {
    if (cursor_path.empty()) return;
    std::ofstream out(cursor_path, std::ios::trunc);
    out << json{{"config", config}, {"next", next}}.dump() << "\n";
  };

  ScanOptions opts;
  opts.full_enumeration = full;
  opts.jobs = common.jobs;
  opts.strict_bound = strict;
  opts.cap = common.cap;
  opts.resume_from = resume_from;
  opts.row_sink = [&](const CensusRow& row) {
    json j = verdict_json(row.verdict);
    j["type"] = "candidate";
    j["index"] = row.index;
    j["poly"] = print_ratfunc(row.candidate);
    if (row.verdict.exceptional()) {
      j["ram_profile"] = profile_json(row.ram_profile);
      j["gcd_deg_qm1"] = row.gcd_deg_qm1;
      j["violation"] = row.violation;
    }
    std::string text_line;
    if (row.verdict.exceptional()) {
      text_line = "exceptional: " + print_ratfunc(row.candidate) +
                  " (witness k = " + std::to_string(row.verdict.witness_k) + ")";
    }
    output.emit(j, text_line);
    if ((row.index + 1) % 4096 == 0) write_cursor(row.index + 1);
  };

  ScanReport report = carlitz_wan_scan(field, degree, opts);
  write_cursor(total);

  json summary = {{"type", "summary"},
                  {"total", report.total_candidates},
                  {"processed", report.processed},
                  {"exceptional", report.exceptional.size()},
                  {"violations", report.violations.size()},
                  {"elapsed_ms", report.elapsed_ms}};
  std::ostringstream text;
  text << "scan q = " << q << ", degree = " << degree << " ("
       << report.normalization << "): " << report.total_candidates
       << " candidates, " << report.exceptional.size() << " exceptional, "
       << report.violations.size() << " violations";
  output.emit(summary, text.str());
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / (report_name + ".jsonl"));
  }
  return report.violations.empty() ? 0 : 1;
}

int run_triple(const std::string& path, const CommonOpts& common) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read triple file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExcTriple t = triple_from_json_text(buffer.str());
  TripleDiagnostics diag = validate_triple(t);
  if (!diag.totally_ramified()) {
    fail(ErrorKind::InvalidTriple, diag.first_failure());
  }
  BatteryReport rep = exceptionality_battery(t);

  Output output;
  output.json_stdout = common.format == "json";
  open_report(output, common, "triple", false);
  json config = {{"file", path}, {"n", t.n}, {"format", common.format}};
  output.emit(header_row("triple", config), "");

  json items;
  for (const auto& [k, v] : rep.items) items[std::to_string(k)] = v;
  json row = {{"type", "triple_battery"},
              {"n", t.n},
              {"items", items},
              {"agreement", rep.agreement},
              {"exceptional", rep.common_value()},
              {"triple", json::parse(triple_to_json_text(t))}};

  std::ostringstream text;
  text << "triple on " << t.n << " points: |A| = " << t.A.size()
       << ", |G| = " << t.G.size() << "\n";
  text << "  canonical: " << triple_to_json_text(t) << "\n";
  for (const auto& [k, v] : rep.items) {
    text << "  item (" << k << "): " << (v ? "true" : "false") << "\n";
  }
  text << "  agreement: " << (rep.agreement ? "true" : "false")
       << ", exceptional: " << (rep.common_value() ? "true" : "false");
  output.emit(row, text.str());
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / "triple.jsonl");
  }
  return rep.agreement ? 0 : 1;
}

json battery_row(const CoprimeReport& rep) {
  return {{"type", "battery"},
          {"n", rep.n},
          {"q", rep.q},
          {"items",
           json::array({rep.triple_exceptional, rep.gcd_coprime,
                        rep.no_small_order_element, rep.no_galois_subextension})},
          {"agree", rep.agree},
          {"value", rep.common_value()}};
}

std::string battery_text(const CoprimeReport& rep) {
  std::ostringstream text;
  text << "n = " << rep.n << ", q = " << rep.q << ": [triple "
       << rep.triple_exceptional << ", gcd " << rep.gcd_coprime << ", roots "
       << rep.no_small_order_element << ", subext " << rep.no_galois_subextension
       << "] agree = " << (rep.agree ? "true" : "false") << ", exceptional = "
       << (rep.common_value() ? "true" : "false");
  return text.str();
}

int run_tame(unsigned n, std::uint64_t q, const CommonOpts& common) {
  factor_prime_power(q);  // reject non prime powers before the battery
  CoprimeReport rep = coprime_battery(n, q);

  Output output;
  output.json_stdout = common.format == "json";
  open_report(output, common, "tame", false);
  json config = {{"n", n}, {"q", q}, {"format", common.format}};
  output.emit(header_row("tame", config), "");
  output.emit(battery_row(rep), battery_text(rep));
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / "tame.jsonl");
  }
  return rep.agree ? 0 : 1;
}

int run_sweep(unsigned max_n, const std::string& q_list, const CommonOpts& common) {
  std::vector<std::uint64_t> qs;
  std::stringstream ss(q_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    qs.push_back(std::stoull(tok));
    factor_prime_power(qs.back());
  }
  if (qs.empty()) fail(ErrorKind::ParseError, "empty q list");

  Output output;
  output.json_stdout = common.format == "json";
  const std::string report_name = "sweep_n" + std::to_string(max_n);
  open_report(output, common, report_name, false);
  json config = {{"max_n", max_n}, {"q_list", qs}, {"format", common.format}};
  output.emit(header_row("sweep", config), "");

  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t batteries = 0, towers = 0, disagreements = 0;
  for (unsigned n = 1; n <= max_n; ++n) {
    for (std::uint64_t q : qs) {
      if (std::gcd(static_cast<std::uint64_t>(n), q) != 1) continue;
      CoprimeReport rep = coprime_battery(n, q);
      ++batteries;
      if (!rep.agree) ++disagreements;
      output.emit(battery_row(rep), battery_text(rep));

      ExcTriple t = tame_monodromy_triple(n, q);
      for (const PermGroup& B : intermediate_subgroups(t)) {
        SubextReport sub = subext_check(t, B);
        ++towers;
        if (!sub.holds) ++disagreements;
        json row = {{"type", "subext"},
                    {"n", n},
                    {"q", q},
                    {"B_size", sub.subgroup_size},
                    {"quotient_degree", sub.quotient_degree},
                    {"sub_degree", sub.sub_degree},
                    {"whole", sub.whole},
                    {"quotient", sub.quotient_exceptional},
                    {"sub", sub.sub_exceptional},
                    {"holds", sub.holds}};
        std::ostringstream text;
        text << "  tower n = " << n << ", q = " << q << ", |B| = "
             << sub.subgroup_size << ": " << (sub.holds ? "holds" : "FAILS");
        output.emit(row, sub.holds ? "" : text.str());
      }
    }
  }
  const auto t1 = std::chrono::steady_clock::now();

  json summary = {{"type", "summary"},
                  {"batteries", batteries},
                  {"towers", towers},
                  {"disagreements", disagreements},
                  {"elapsed_ms",
                   std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                       .count()}};
  std::ostringstream text;
  text << "sweep n <= " << max_n << ": " << batteries << " batteries, " << towers
       << " towers, " << disagreements << " disagreements";
  output.emit(summary, text.str());
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / (report_name + ".jsonl"));
  }
  return disagreements == 0 ? 0 : 1;
}

int run_root(const std::string& literal, unsigned m, unsigned prec,
             const CommonOpts& common) {
  LaurentSeries u = parse_series_literal(literal);
  if (prec > 0 && !u.is_zero_to_precision()) {
    // Literal coefficients are exact, so the working precision is a choice:
    // re-window the series to the requested width.
    std::vector<FFElem> coeffs;
    for (unsigned i = 0; i < prec; ++i) {
      coeffs.push_back(u.coeff(u.valuation() + static_cast<int>(i)));
    }
    u = LaurentSeries::from_terms(u.field(), u.valuation(), std::move(coeffs));
  }
  LaurentSeries root = nth_root_one_unit(u, m);
  bool verified = root.pow(m).agrees_with(u);

  Output output;
  output.json_stdout = common.format == "json";
  open_report(output, common, "root", false);
  json config = {{"input", literal},
                 {"m", m},
                 {"prec", prec > 0 ? json(prec) : json(nullptr)},
                 {"format", common.format}};
  output.emit(header_row("root", config), "");
  json row = {{"type", "root"},
              {"input", print_series_literal(u)},
              {"m", m},
              {"root", print_series_literal(root)},
              {"verified", verified}};
  std::ostringstream text;
  text << print_series_literal(root) << "\n  check root^" << m
       << " matches input to precision: " << (verified ? "ok" : "FAILED");
  output.emit(row, text.str());
  if (output.file.is_open()) {
    output.file.close();
    validate_report_file(fs::path(common.out_dir) / "root.jsonl");
  }
  return verified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exceptional maps over finite fields and tame local extensions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* cmd_exc = app.add_subcommand("exceptional", "decide exceptionality of a map");
  std::string exc_literal;
  CommonOpts exc_common;
  unsigned exc_window_raw = 0;
  bool exc_strict = false;
  cmd_exc->add_option("function", exc_literal, "e.g. \"x^3 over GF(5)\"")->required();
  auto* wopt =
      cmd_exc->add_option("--window", exc_window_raw, "override the scan window width");
  cmd_exc->add_flag("--strict-bound", exc_strict, "require q^k > d^4 instead of >=");
  add_common(cmd_exc, exc_common);

  auto* cmd_scan = app.add_subcommand("scan", "census scan of degree-n maps over F_q");
  std::uint64_t scan_q = 0, scan_p = 0;
  unsigned scan_degree = 0, scan_field_n = 1;
  bool scan_full = false, scan_strict = false;
  CommonOpts scan_common;
  auto* scan_q_opt = cmd_scan->add_option("--q", scan_q, "field size (prime power)");
  auto* scan_p_opt =
      cmd_scan->add_option("--p", scan_p, "field characteristic (with --n)");
  cmd_scan->add_option("--n", scan_field_n, "field extension degree over p");
  scan_q_opt->excludes(scan_p_opt);
  cmd_scan->add_option("--degree", scan_degree, "census polynomial degree")->required();
  cmd_scan->add_flag("--full", scan_full, "audit mode: enumerate every degree-n map");
  cmd_scan->add_flag("--strict-bound", scan_strict, "require q^k > d^4 instead of >=");
  add_common(cmd_scan, scan_common);

  auto* cmd_ram = app.add_subcommand("ramify", "ramification profile and coprimality");
  std::string ram_literal;
  bool ram_strict = false;
  CommonOpts ram_common;
  cmd_ram->add_option("function", ram_literal, "e.g. \"x^3 over GF(5)\"")->required();
  cmd_ram->add_flag("--strict-bound", ram_strict, "require q^k > d^4 instead of >=");
  add_common(cmd_ram, ram_common);

  auto* cmd_triple = app.add_subcommand("triple", "evaluate a triple battery from JSON");
  std::string triple_path;
  CommonOpts triple_common;
  cmd_triple->add_option("file", triple_path, "triple JSON file")->required();
  add_common(cmd_triple, triple_common);

  auto* cmd_tame = app.add_subcommand("tame", "coprime battery for one (n, q)");
  unsigned tame_n = 0;
  std::uint64_t tame_q = 0;
  CommonOpts tame_common;
  cmd_tame->add_option("--n", tame_n, "extension degree")->required();
  cmd_tame->add_option("--q", tame_q, "residue field size (prime power)")->required();
  add_common(cmd_tame, tame_common);

  auto* cmd_sweep = app.add_subcommand("sweep", "battery + tower sweep over ranges");
  unsigned sweep_n = 12;
  std::string sweep_q = "2,3,4,5,7,8,9,11,13";
  CommonOpts sweep_common;
  cmd_sweep->add_option("--n", sweep_n, "largest extension degree");
  cmd_sweep->add_option("--q", sweep_q, "comma-separated residue field sizes");
  add_common(cmd_sweep, sweep_common);

  auto* cmd_root = app.add_subcommand("root", "m-th root of a 1-unit series");
  std::string root_literal;
  unsigned root_m = 0, root_prec = 0;
  CommonOpts root_common;
  cmd_root->add_option("series", root_literal, "e.g. \"1 + t over GF(5) prec 64\"")
      ->required();
  cmd_root->add_option("--degree", root_m, "root exponent m")->required();
  cmd_root->add_option("--prec", root_prec, "override the working precision");
  add_common(cmd_root, root_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_exc->parsed()) {
      std::optional<unsigned> window;
      if (wopt->count() > 0) window = exc_window_raw;
      return run_exceptional(exc_literal, exc_common, window, exc_strict);
    }
    if (cmd_scan->parsed()) {
      std::uint64_t q = scan_q;
      if (q == 0) {
        if (scan_p == 0) fail(ErrorKind::ParseError, "scan needs --q or --p");
        q = 1;
        for (unsigned i = 0; i < scan_field_n; ++i) q *= scan_p;
      }
      return run_scan(q, scan_degree, scan_common, scan_full, scan_strict);
    }
    if (cmd_ram->parsed()) return run_ramify(ram_literal, ram_common, ram_strict);
    if (cmd_triple->parsed()) return run_triple(triple_path, triple_common);
    if (cmd_tame->parsed()) return run_tame(tame_n, tame_q, tame_common);
    if (cmd_sweep->parsed()) return run_sweep(sweep_n, sweep_q, sweep_common);
    if (cmd_root->parsed()) {
      return run_root(root_literal, root_m, root_prec, root_common);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
