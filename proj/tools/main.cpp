#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "spinmoment/errors.hpp"

namespace sm = spinmoment;
namespace cli = spinmoment::cli;

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto comma = item.find(',', start);
      const auto piece = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  cli::RunConfig config;
  try {
    cli::apply_environment(config);
  } catch (const sm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }

  CLI::App app{"Multi-site spin moment criteria: Bell, steering and entanglement tests"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string j_text, n_text, d_text, amplitudes_text, format = "csv";
  std::vector<std::string> kinds;
  int twice_j = 0, max_d = 0;

  auto* j_opt = app.add_option("--j", j_text, "Spin J, e.g. 1/2, 1, 3/2");
  app.add_option("--twice-j", twice_j, "Spin as the integer 2J")->excludes(j_opt)->check(CLI::PositiveNumber);
  app.add_option("--n", n_text, "Number of sites N, or a range a..b");
  app.add_option("--family", config.family, "uniform-max, bosonic, ghz, spin1r, custom (scan: also optimized)");
  app.add_option("--theta", config.theta, "GHZ angle in radians");
  app.add_option("--r", config.r, "Middle amplitude of the spin-1 (1, r, 1) state");
  app.add_option("--amplitudes", amplitudes_text, "Custom amplitudes r_m, comma list or JSON array");
  app.add_option("--kind,--kinds", kinds, "bell, ent-hz, ent-cj, epr<T>, epr-hz<T>, epr, ent (comma list)");
  app.add_option("--t", config.t_sites, "Quantum sites T for --kind epr");
  app.add_option("--bound", config.bound, "cj or hz, for --kind epr / ent");
  app.add_option("--strategy", config.strategy, "canonical or exhaustive");
  app.add_option("--seed", config.seed, "Random seed (env SPINMOMENT_SEED)");
  app.add_option("--restarts", config.restarts, "Random optimizer restarts");
  app.add_flag("--asymmetric", config.asymmetric, "Optimize without r_m = r_{-m}");
  app.add_option("--axis", config.axis, "Scan axis: n or d");
  app.add_option("--d", d_text, "Dimension d = 2J+1, or a range a..b");
  app.add_option("--max-d", max_d, "Upper end of the d range");
  app.add_option("--n-max", config.n_max, "Largest N searched by min-sites");
  app.add_option("--max-twice-j", config.max_twice_j, "Largest 2J for cj-table and verify");
  app.add_flag("--compute", config.compute, "cj-table: minimize numerically for every J");
  app.add_option("--corrupt-cj", config.corrupt_cj, "verify: add this to the analytic C_J (negative control)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", config.output, "Write to this file instead of stdout");
  app.add_option("--cap", config.cap, "Largest dense Hilbert dimension d^N (env SPINMOMENT_CAP)");

  auto* eval = app.add_subcommand("eval", "Evaluate criteria for one state family");
  auto* verify = app.add_subcommand("verify", "Compare the dense oracle with the closed forms");
  auto* scan = app.add_subcommand("scan", "B over a range of N or d");
  auto* min_sites = app.add_subcommand("min-sites", "Smallest N violating each criterion per d");
  auto* cj_table = app.add_subcommand("cj-table", "Uncertainty bound C_J per spin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (eval->parsed()) config.command = cli::Command::Eval;
    if (verify->parsed()) config.command = cli::Command::Verify;
    if (scan->parsed()) config.command = cli::Command::Scan;
    if (min_sites->parsed()) config.command = cli::Command::MinSites;
    if (cj_table->parsed()) config.command = cli::Command::CjTable;

    if (!j_text.empty()) config.twice_j = sm::SpinQuantum::parse(j_text).twice_j();
    if (twice_j > 0) config.twice_j = twice_j;
    if (!n_text.empty()) config.n = cli::IntRange::parse(n_text);
    if (!d_text.empty()) config.d = cli::IntRange::parse(d_text);
    if (max_d > 0) config.d.hi = max_d;
    if (config.d.lo > config.d.hi) throw sm::InvalidArgument("empty d range");
    if (!kinds.empty()) config.kinds = split_list(kinds);
    if (!amplitudes_text.empty()) {
      const auto r = sm::parse_amplitudes(amplitudes_text);
      config.amplitudes.assign(r.data(), r.data() + r.size());
      if (config.family == "bosonic" && !app.get_option("--family")->count()) config.family = "custom";
    }
    config.format = format == "json" ? cli::Format::Json : cli::Format::Csv;
  } catch (const sm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }

  return cli::run_command(config, std::cout, std::cerr);
}
