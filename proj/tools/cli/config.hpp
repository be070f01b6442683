#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinmoment/kind.hpp"
#include "spinmoment/spin.hpp"
#include "spinmoment/states.hpp"

namespace spinmoment::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Eval, Verify, Scan, MinSites, CjTable };
enum class Format { Csv, Json };

std::string to_string(Command c);
Command parse_command(std::string_view s);

/// Inclusive integer range written "a" or "a..b".
struct IntRange {
  int lo = 2;
  int hi = 2;

  std::vector<int> values() const;
  std::string to_string() const;
  static IntRange parse(std::string_view text);

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct RunConfig {
  Command command = Command::Eval;
  int twice_j = 2;
  IntRange n{2, 2};
  std::string family = "bosonic";
  double theta = 0.7853981633974483;
  double r = 1.0;
  std::vector<double> amplitudes;  ///< custom family
  std::vector<std::string> kinds{"bell"};
  int t_sites = 1;
  std::string bound = "cj";
  std::string strategy = "canonical";
  std::uint64_t seed = kDefaultSeed;
  int restarts = 20;
  bool asymmetric = false;
  std::string axis = "n";
  IntRange d{2, 9};
  int n_max = 30;
  int max_twice_j = 8;
  bool compute = false;
  double corrupt_cj = 0.0;
  Format format = Format::Csv;
  std::string output;
  std::size_t cap = kDefaultCap;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);

  /// Kind tokens plus the aliases "epr" (uses t_sites and bound) and "ent"
  /// (uses bound).
  std::vector<CriterionKind> resolved_kinds() const;
  StateFamily resolved_family() const;
  /// "optimized" is a scan source, not a state family.
  bool optimized_source() const { return family == "optimized"; }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Reads SPINMOMENT_CAP and SPINMOMENT_SEED into the defaults.
void apply_environment(RunConfig& config);

}  // namespace spinmoment::cli
