#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef EXCMAP_BIN
#error "EXCMAP_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path tmp = fs::temp_directory_path() /
                 ("excmap_cli_" + std::to_string(counter++) + ".out");
  std::string cmd = std::string(EXCMAP_BIN) + " " + args + " > " +
                    tmp.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  fs::remove(tmp);
  return r;
}

std::vector<json> parse_jsonl(const std::string& text) {
  std::vector<json> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    rows.push_back(json::parse(line));
  }
  return rows;
}

// Normalizes away the timestamp-family fields for determinism comparisons.
json strip_time(json row) {
  row.erase("timestamp");
  row.erase("elapsed_ms");
  return row;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exit codes form a total function of the result class") {
  CHECK(run_cli("exceptional \"x^3 over GF(5)\"").exit_code == 0);
  CHECK(run_cli("exceptional \"x^3 over GF(7)\"").exit_code == 0);
  CHECK(run_cli("exceptional \"x^3 over GF(7)\" --window 2").exit_code == 3);
  CHECK(run_cli("exceptional \"x^3 over GF(6)\"").exit_code == 2);
  CHECK(run_cli("exceptional \"nonsense ###\"").exit_code == 2);
  CHECK(run_cli("scan --q 3 --degree 2").exit_code == 0);
  CHECK(run_cli("scan --q 12 --degree 2").exit_code == 2);
  CHECK(run_cli("tame --n 3 --q 5").exit_code == 0);
  CHECK(run_cli("tame --n 4 --q 5").exit_code == 0);  // all-false but agreeing
  CHECK(run_cli("tame --n 4 --q 2").exit_code == 2);  // gcd(n, q) != 1
  CHECK(run_cli("root \"1 + t over GF(3)\" --degree 2").exit_code == 0);
  CHECK(run_cli("root \"1 + t over GF(3)\" --degree 3").exit_code == 2);  // wild
  CHECK(run_cli("definitely-not-a-command").exit_code == 2);
}

TEST_CASE("verdict rows carry exact certificates") {
  RunResult r = run_cli("exceptional \"x^3 over GF(5)\" --format json");
  auto rows = parse_jsonl(r.stdout_text);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["type"] == "header");
  CHECK(rows[0]["config"]["q"] == 5);
  CHECK(rows[1]["type"] == "verdict");
  CHECK(rows[1]["verdict"] == "exceptional");
  CHECK(rows[1]["witness_k"] == 3);

  r = run_cli("exceptional \"x^3+x over GF(3)\" --format json");
  rows = parse_jsonl(r.stdout_text);
  CHECK(rows[1]["witness_k"] == 5);

  r = run_cli("exceptional \"x^3 over GF(7)\" --format json");
  rows = parse_jsonl(r.stdout_text);
  CHECK(rows[1]["verdict"] == "not_exceptional");
  CHECK(rows[1]["scanned_k"] == json::array({3, 4, 5, 6}));
  CHECK(rows[1].contains("collision"));
}

TEST_CASE("census JSONL schema and golden content for q=2 n=2") {
  RunResult r = run_cli("scan --q 2 --degree 2 --format json");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  REQUIRE(rows.size() == 4);  // header, two candidates, summary

  CHECK(rows[0]["type"] == "header");
  CHECK(rows[0]["version"] == "0.1.0");
  CHECK(rows[0]["config"]["normalization"] == "monic, constant term zero");

  CHECK(rows[1]["type"] == "candidate");
  CHECK(rows[1]["poly"] == "x^2");
  CHECK(rows[1]["verdict"] == "exceptional");
  CHECK(rows[1]["witness_k"] == 1);
  CHECK(rows[1]["core"] == "x");
  CHECK(rows[1]["frob_exp"] == 1);
  CHECK(rows[1]["gcd_deg_qm1"] == 1);
  CHECK(rows[1]["violation"] == false);
  REQUIRE(rows[1]["ram_profile"].size() == 3);
  CHECK(rows[1]["ram_profile"][0]["e"] == 2);
  CHECK(rows[1]["ram_profile"][2]["point"] == "inf");

  CHECK(rows[2]["poly"] == "x^2+x");
  CHECK(rows[2]["verdict"] == "not_exceptional");
  CHECK(rows[2]["collision"]["a"] == "0");
  CHECK(rows[2]["collision"]["b"] == "1");

  CHECK(rows[3]["type"] == "summary");
  CHECK(rows[3]["total"] == 2);
  CHECK(rows[3]["exceptional"] == 1);
  CHECK(rows[3]["violations"] == 0);
}

TEST_CASE("identical configs give byte-identical output modulo timestamps") {
  const std::string args = "scan --q 3 --degree 3 --jobs 1 --format json";
  auto first = parse_jsonl(run_cli(args).stdout_text);
  auto second = parse_jsonl(run_cli(args).stdout_text);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(strip_time(first[i]) == strip_time(second[i]));
  }
  // And jobs > 1 merges deterministically in candidate order.
  auto parallel = parse_jsonl(run_cli("scan --q 3 --degree 3 --jobs 4 --format json")
                                  .stdout_text);
  REQUIRE(parallel.size() == first.size());
  for (std::size_t i = 1; i + 1 < first.size(); ++i) {
    CHECK(strip_time(parallel[i]) == strip_time(first[i]));
  }
}

TEST_CASE("reports persist as JSONL, re-validate, and resume via the cursor") {
  fs::path dir = fresh_dir("excmap_cli_reports");
  RunResult r = run_cli("scan --q 3 --degree 2 --out " + dir.string() +
                        " --format json");
  REQUIRE(r.exit_code == 0);
  fs::path report = dir / "scan_q3_n2.jsonl";
  fs::path cursor = dir / "scan_q3_n2.cursor.json";
  REQUIRE(fs::exists(report));
  REQUIRE(fs::exists(cursor));

  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  auto rows = parse_jsonl(ss.str());
  CHECK(rows.size() == 5);  // header + 3 candidates + summary
  for (const auto& row : rows) CHECK(row.contains("type"));

  std::ifstream cin(cursor);
  json cur = json::parse(cin);
  CHECK(cur["next"] == 3);

  // A fresh run with the same config starts over (complete cursor), so the
  // report is rewritten rather than appended.
  RunResult again = run_cli("scan --q 3 --degree 2 --out " + dir.string() +
                            " --format json");
  REQUIRE(again.exit_code == 0);
  std::ifstream in2(report);
  std::stringstream ss2;
  ss2 << in2.rdbuf();
  CHECK(parse_jsonl(ss2.str()).size() == 5);

  // An interrupted run resumes from the cursor: rewind it to candidate 2 and
  // trim the report, then rerun and expect only the tail to be appended.
  {
    std::ifstream cur_in(cursor);
    json cur2 = json::parse(cur_in);
    cur_in.close();
    cur2["next"] = 2;
    std::ofstream(cursor) << cur2.dump() << "\n";
    std::ifstream rep_in(report);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(rep_in, line)) lines.push_back(line);
    rep_in.close();
    std::ofstream trimmed(report, std::ios::trunc);
    for (std::size_t i = 0; i < 3; ++i) trimmed << lines[i] << "\n";
  }
  RunResult resumed = run_cli("scan --q 3 --degree 2 --out " + dir.string() +
                              " --format json");
  REQUIRE(resumed.exit_code == 0);
  std::ifstream in3(report);
  std::stringstream ss3;
  ss3 << in3.rdbuf();
  auto resumed_rows = parse_jsonl(ss3.str());
  REQUIRE(resumed_rows.size() == 5);  // header + rows 0,1 kept + row 2 + summary
  CHECK(resumed_rows[3]["index"] == 2);
  CHECK(resumed_rows[4]["type"] == "summary");
  CHECK(resumed_rows[4]["processed"] == 1);
}

TEST_CASE("scan accepts a characteristic-and-degree field spec") {
  auto via_q = parse_jsonl(run_cli("scan --q 9 --degree 2 --format json").stdout_text);
  auto via_p =
      parse_jsonl(run_cli("scan --p 3 --n 2 --degree 2 --format json").stdout_text);
  REQUIRE(via_q.size() == via_p.size());
  for (std::size_t i = 0; i < via_q.size(); ++i) {
    CHECK(strip_time(via_q[i]) == strip_time(via_p[i]));
  }
  CHECK(run_cli("scan --q 9 --p 3 --degree 2").exit_code == 2);  // exclusive
}

TEST_CASE("root honors a precision override") {
  RunResult r = run_cli("root \"1 + t over GF(3)\" --degree 2 --prec 4 --format json");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  CHECK(rows[1]["root"] == "1 + 2*t + t^2 + t^3 over GF(3) prec 4");
}

TEST_CASE("triple subcommand validates and echoes a canonical form") {
  fs::path dir = fresh_dir("excmap_cli_triples");
  fs::path good = dir / "t35.json";
  std::ofstream(good) << R"({"n":3,"gens_A":[[1,2,0],[0,2,1]],"gens_G":[[1,2,0]],)"
                      << R"("frob":[0,2,1],"base":0})";
  RunResult r = run_cli("triple " + good.string() + " --format json");
  CHECK(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["type"] == "triple_battery");
  CHECK(rows[1]["agreement"] == true);
  CHECK(rows[1]["exceptional"] == true);
  CHECK(rows[1]["items"].size() == 14);
  CHECK(rows[1]["triple"]["base"] == 0);

  // Text mode echoes the canonical form too.
  RunResult text_mode = run_cli("triple " + good.string());
  CHECK(text_mode.exit_code == 0);
  CHECK(text_mode.stdout_text.find("canonical: {") != std::string::npos);

  fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"n":3,"gens_A":[[1,2,0]],"gens_G":[[1,2,0],[1,0,2]],)"
                     << R"("frob":[0,1,2],"base":0})";  // G not inside A
  CHECK(run_cli("triple " + bad.string()).exit_code == 2);
  CHECK(run_cli("triple " + (dir / "missing.json").string()).exit_code == 2);
}

TEST_CASE("full census audit mode") {
  RunResult r = run_cli("scan --q 2 --degree 2 --full --format json");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  CHECK(rows[0]["config"]["normalization"] == "full enumeration (audit)");
  CHECK(rows.back()["total"] == 4);
  CHECK(rows.back()["exceptional"] == 2);  // x^2 and x^2+1
  CHECK(rows.back()["violations"] == 0);
}

TEST_CASE("sweep emits battery and tower rows and a summary") {
  RunResult r = run_cli("sweep --n 6 --q 3,5 --format json");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0]["type"] == "header");
  int batteries = 0, subexts = 0;
  for (const auto& row : rows) {
    if (row["type"] == "battery") {
      ++batteries;
      CHECK(row["agree"] == true);
      CHECK(row["items"].size() == 4);
    }
    if (row["type"] == "subext") {
      ++subexts;
      CHECK(row["holds"] == true);
    }
  }
  CHECK(batteries > 0);
  CHECK(subexts > 0);
  CHECK(rows.back()["type"] == "summary");
  CHECK(rows.back()["disagreements"] == 0);
}

TEST_CASE("ramify prints the full profile") {
  RunResult r = run_cli("ramify \"x^3 over GF(5)\" --format json");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["type"] == "ramify");
  REQUIRE(rows[1]["profile"].size() == 6);
  CHECK(rows[1]["profile"][0]["e"] == 3);
  CHECK(rows[1]["profile"][5]["e"] == 3);
  CHECK(rows[1]["pass"] == true);
}

TEST_CASE("root subcommand round-trips series text") {
  RunResult r = run_cli("root \"1 + t over GF(3) prec 8\" --degree 2 --format json");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_jsonl(r.stdout_text);
  CHECK(rows[1]["type"] == "root");
  CHECK(rows[1]["verified"] == true);
  CHECK(rows[1]["root"] == "1 + 2*t + t^2 + t^3 + 2*t^4 + t^5 over GF(3) prec 8");
}
