#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"

using namespace spinmoment;
using namespace spinmoment::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run_command(c, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(std::sqrt(2.0)) == "1.41421356237");
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("ranges") {
  CHECK(IntRange::parse("2..5").values() == std::vector<int>{2, 3, 4, 5});
  CHECK(IntRange::parse("7").values() == std::vector<int>{7});
  CHECK(IntRange::parse("3..9").to_string() == "3..9");
  CHECK_THROWS_AS(IntRange::parse("5..2"), InvalidArgument);
  CHECK_THROWS_AS(IntRange::parse("a..2"), InvalidArgument);
}

TEST_CASE("config round-trips through JSON") {
  RunConfig c;
  c.command = Command::MinSites;
  c.twice_j = 5;
  c.n = {3, 11};
  c.family = "custom";
  c.amplitudes = {0.25, 1.0, 0.1};
  c.kinds = {"bell", "epr-hz2"};
  c.seed = 987654321987ull;
  c.asymmetric = true;
  c.format = Format::Json;
  c.cap = 12345;
  c.corrupt_cj = 0.125;
  const auto back = RunConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  CHECK(back == c);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::object()), InvalidArgument);
}

TEST_CASE("kind aliases") {
  RunConfig c;
  c.kinds = {"epr", "ent"};
  c.t_sites = 2;
  c.bound = "hz";
  const auto k = c.resolved_kinds();
  CHECK(k[0] == CriterionKind::steering(2, Bound::HZ));
  CHECK(k[1] == CriterionKind::ent_hz());
  c.bound = "xx";
  CHECK_THROWS_AS(c.resolved_kinds(), InvalidArgument);
}

TEST_CASE("eval examples") {
  RunConfig c;
  c.twice_j = 1;
  c.n = {3, 3};
  c.family = "ghz";
  c.theta = 0.7853981634;
  auto r = run(c);
  CHECK(r.code == 0);
  auto row = split(lines(r.out).at(1));
  CHECK(row.at(7).substr(0, 7) == "1.41421");
  CHECK(row.at(8) == "true");

  c.twice_j = 2;
  c.n = {2, 2};
  c.family = "uniform-max";
  r = run(c);
  row = split(lines(r.out).at(1));
  CHECK(row.at(7).substr(0, 7) == "0.94280");
  CHECK(row.at(8) == "false");

  c.family = "spin1r";
  c.r = 0.0;
  r = run(c);
  row = split(lines(r.out).at(1));
  CHECK(row.at(7) == "0");
  CHECK(row.at(8) == "false");
}

TEST_CASE("exit codes") {
  RunConfig c;
  c.family = "nope";
  CHECK(run(c).code == kExitUsage);

  c.family = "bosonic";
  c.n = {20, 20};
  c.strategy = "exhaustive";
  CHECK(run(c).code == kExitInfeasible);

  RunConfig v;
  v.command = Command::Verify;
  v.cap = 3;
  const auto empty = run(v);
  CHECK(empty.code == kExitUsage);
  CHECK(empty.err.find("empty") != std::string::npos);

  v.cap = 600;
  CHECK(run(v).code == kExitOk);
  v.corrupt_cj = 0.01;
  CHECK(run(v).code == kExitVerifyFailed);
}

TEST_CASE("scan rows and CSV/JSON agreement") {
  RunConfig c;
  c.command = Command::Scan;
  c.twice_j = 1;
  c.family = "ghz";
  c.kinds = {"bell", "epr1", "ent-cj"};
  c.n = {2, 10};
  const auto csv = run(c);
  REQUIRE(csv.code == 0);
  const auto text = lines(csv.out);
  CHECK(text.front() == "twice_j,n,t,family,kind,L,R,B,violated,r_vector");
  REQUIRE(text.size() == 28u);
  // Bell rows grow by sqrt(2) per site.
  const double b3 = std::stod(split(text[4]).at(7));
  const double b4 = std::stod(split(text[7]).at(7));
  CHECK(b4 / b3 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(split(text[1]).at(9) == "0.707106781187,0.707106781187");

  c.format = Format::Json;
  const auto json = run(c);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc.at("tool_version") == kToolVersion);
  CHECK(RunConfig::from_json(doc.at("config")) == c);
  REQUIRE(doc.at("rows").size() == 27u);
  for (std::size_t k = 0; k < 27; ++k) {
    const auto cells = split(text[k + 1]);
    const auto& row = doc.at("rows")[k];
    CHECK(row.at("B").get<double>() == std::stod(cells.at(7)));
    CHECK(row.at("L").get<double>() == std::stod(cells.at(5)));
    CHECK(row.at("kind").get<std::string>() == cells.at(4));
  }
}

TEST_CASE("deterministic output") {
  RunConfig c;
  c.command = Command::MinSites;
  c.kinds = {"bell"};
  c.d = {2, 4};
  c.n_max = 12;
  c.restarts = 5;
  const auto a = run(c);
  const auto b = run(c);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto text = lines(a.out);
  CHECK(text.front() == "d,kind,min_n,b_at_min_n,b_before,n_max_searched");
  CHECK(split(text.at(1)).at(2) == "3");
  CHECK(split(text.at(2)).at(2) == "3");
  CHECK(split(text.at(3)).at(2) == "8");
}

TEST_CASE("cj table") {
  RunConfig c;
  c.command = Command::CjTable;
  c.max_twice_j = 8;
  const auto r = run(c);
  const auto text = lines(r.out);
  REQUIRE(text.size() == 9u);
  CHECK(text[1] == "1,1/2,0.25,tabulated");
  CHECK(text[8] == "8,4,1.26,tabulated");
}

TEST_CASE("output file") {
  RunConfig c;
  c.output = "cli_test_output.csv";
  const auto r = run(c);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(c.output);
  std::string header;
  std::getline(in, header);
  CHECK(header.substr(0, 7) == "twice_j");
  std::remove(c.output.c_str());
}

TEST_CASE("environment overrides") {
  RunConfig c;
  ::setenv("SPINMOMENT_CAP", "4096", 1);
  ::setenv("SPINMOMENT_SEED", "17", 1);
  apply_environment(c);
  CHECK(c.cap == 4096u);
  CHECK(c.seed == 17u);
  ::setenv("SPINMOMENT_CAP", "lots", 1);
  CHECK_THROWS_AS(apply_environment(c), InvalidArgument);
  ::unsetenv("SPINMOMENT_CAP");
  ::unsetenv("SPINMOMENT_SEED");
}
