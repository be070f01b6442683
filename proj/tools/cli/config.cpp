#include "cli/config.hpp"

#include <charconv>
#include <cstdlib>

#include "spinmoment/errors.hpp"

namespace spinmoment::cli {

namespace {

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || p != text.data() + text.size()) {
    throw InvalidArgument(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

Bound parse_bound(std::string_view s) {
  if (s == "cj") return Bound::CJ;
  if (s == "hz") return Bound::HZ;
  throw InvalidArgument("unknown bound '" + std::string(s) + "' (expected cj or hz)");
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Verify: return "verify";
    case Command::Scan: return "scan";
    case Command::MinSites: return "min-sites";
    case Command::CjTable: return "cj-table";
  }
  return "eval";
}

Command parse_command(std::string_view s) {
  for (Command c : {Command::Eval, Command::Verify, Command::Scan, Command::MinSites, Command::CjTable}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidArgument("unknown command '" + std::string(s) + "'");
}

std::vector<int> IntRange::values() const {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::string IntRange::to_string() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

IntRange IntRange::parse(std::string_view text) {
  IntRange r;
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    r.lo = r.hi = parse_number<int>(text, "integer");
  } else {
    r.lo = parse_number<int>(text.substr(0, dots), "range start");
    r.hi = parse_number<int>(text.substr(dots + 2), "range end");
  }
  if (r.lo > r.hi) throw InvalidArgument("empty range '" + std::string(text) + "'");
  return r;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = cli::to_string(command);
  j["twice_j"] = twice_j;
  j["n"] = n.to_string();
  j["family"] = family;
  j["theta"] = theta;
  j["r"] = r;
  j["amplitudes"] = amplitudes;
  j["kinds"] = kinds;
  j["t_sites"] = t_sites;
  j["bound"] = bound;
  j["strategy"] = strategy;
  j["seed"] = seed;
  j["restarts"] = restarts;
  j["asymmetric"] = asymmetric;
  j["axis"] = axis;
  j["d"] = d.to_string();
  j["n_max"] = n_max;
  j["max_twice_j"] = max_twice_j;
  j["compute"] = compute;
  j["corrupt_cj"] = corrupt_cj;
  j["format"] = format == Format::Csv ? "csv" : "json";
  j["output"] = output;
  j["cap"] = cap;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = parse_command(j.at("command").get<std::string>());
    c.twice_j = j.at("twice_j").get<int>();
    c.n = IntRange::parse(j.at("n").get<std::string>());
    c.family = j.at("family").get<std::string>();
    c.theta = j.at("theta").get<double>();
    c.r = j.at("r").get<double>();
    c.amplitudes = j.at("amplitudes").get<std::vector<double>>();
    c.kinds = j.at("kinds").get<std::vector<std::string>>();
    c.t_sites = j.at("t_sites").get<int>();
    c.bound = j.at("bound").get<std::string>();
    c.strategy = j.at("strategy").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.restarts = j.at("restarts").get<int>();
    c.asymmetric = j.at("asymmetric").get<bool>();
    c.axis = j.at("axis").get<std::string>();
    c.d = IntRange::parse(j.at("d").get<std::string>());
    c.n_max = j.at("n_max").get<int>();
    c.max_twice_j = j.at("max_twice_j").get<int>();
    c.compute = j.at("compute").get<bool>();
    c.corrupt_cj = j.at("corrupt_cj").get<double>();
    const auto format = j.at("format").get<std::string>();
    if (format != "csv" && format != "json") throw InvalidArgument("unknown format '" + format + "'");
    c.format = format == "csv" ? Format::Csv : Format::Json;
    c.output = j.at("output").get<std::string>();
    c.cap = j.at("cap").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config JSON: ") + e.what());
  }
  return c;
}

std::vector<CriterionKind> RunConfig::resolved_kinds() const {
  std::vector<CriterionKind> out;
  for (const auto& token : kinds) {
    if (token == "epr") {
      out.push_back(CriterionKind::steering(t_sites, parse_bound(bound)));
    } else if (token == "ent") {
      out.push_back(parse_bound(bound) == Bound::HZ ? CriterionKind::ent_hz() : CriterionKind::ent_cj());
    } else {
      out.push_back(CriterionKind::parse(token));
    }
  }
  if (out.empty()) throw InvalidArgument("no criterion kind given");
  return out;
}

StateFamily RunConfig::resolved_family() const {
  if (family == "uniform-max") return UniformMax{};
  if (family == "bosonic") return Bosonic{};
  if (family == "ghz") return GeneralizedGhz{theta};
  if (family == "spin1r") return SpinOneR{r};
  if (family == "custom") {
    if (amplitudes.empty()) throw InvalidArgument("custom family needs --amplitudes");
    return Custom{Eigen::Map<const Eigen::VectorXd>(amplitudes.data(), Eigen::Index(amplitudes.size()))};
  }
  throw InvalidArgument("unknown family '" + family +
                        "' (expected uniform-max, bosonic, ghz, spin1r, custom)");
}

void apply_environment(RunConfig& config) {
  if (const char* cap = std::getenv("SPINMOMENT_CAP")) {
    config.cap = parse_number<std::size_t>(cap, "SPINMOMENT_CAP");
  }
  if (const char* seed = std::getenv("SPINMOMENT_SEED")) {
    config.seed = parse_number<std::uint64_t>(seed, "SPINMOMENT_SEED");
  }
}

}  // namespace spinmoment::cli
