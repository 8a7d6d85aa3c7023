// topophase: fringe scenarios, verification suites and schedule listing.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"
#include "topophase/scenario.hpp"
#include "topophase/schedule.hpp"
#include "topophase/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw topophase::Error(topophase::ErrorCode::InvalidConfig, "bad number '" + item + "' in --t");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional topological phases of entangled qudits: fringe predictions and checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string t_list;
  topophase::ScenarioOverrides flags;
  auto* run = app.add_subcommand("run", "Compute a scenario and write CSV, SVG and JSON outputs");
  run->add_option("--config", config_path, "JSON scenario file");
  run->add_option("--scenario", flags.scenario, "fig2 | fig3 | fig4 | fig5 | custom");
  run->add_option("--state", flags.state, "maximally_entangled | uniform_product | both");
  run->add_option("--d", flags.dim, "Qudit dimension");
  run->add_option("--t", t_list, "Comma-separated control parameter values");
  run->add_option("--tau", flags.tau, "Relative parameter tau = (t_s - t_i)/2");
  run->add_option("--n-theta", flags.n_theta, "Fringe samples over [0, 2pi)");
  run->add_option("--n-steps", flags.n_steps, "Path discretization for phase reports");
  run->add_option("--out", flags.out_dir, "Output directory (default $TOPOPHASE_OUT or ./out)");
  run->add_option("--seed", flags.seed, "Random seed");

  std::string suite = "all";
  std::uint64_t verify_seed = 20240601;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "closed_forms | oracle | invariants | all");
  verify->add_option("--seed", verify_seed, "Random seed");

  auto* schedules = app.add_subcommand("schedules", "List built-in SLM phase schedules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*schedules) {
      for (auto kind : topophase::builtin_schedule_kinds()) {
        const auto s = topophase::builtin_schedule(kind);
        std::cout << topophase::to_string(kind) << " (d = " << s.dim << ")\n  " << s.formula << "\n";
      }
      return 0;
    }

    if (*verify) {
      const auto results = topophase::run_suite(topophase::suite_by_name(suite), verify_seed);
      std::cout << "kernels: " << topophase::kernels::to_string(topophase::kernels::active().isa)
                << "\n"
                << topophase::format_results(results);
      const bool ok = topophase::all_passed(results);
      std::cout << (ok ? "all checks passed\n" : "some checks FAILED\n");
      return ok ? 0 : kExitVerifyFailed;
    }

    if (!t_list.empty()) flags.t_values = parse_list(t_list);
    if (!flags.out_dir) {
      if (const char* env = std::getenv("TOPOPHASE_OUT")) flags.out_dir = std::string(env);
    }
    const nlohmann::json file =
        config_path.empty() ? nlohmann::json() : topophase::load_config_file(config_path);
    const topophase::ScenarioConfig config = topophase::resolve_config(file, flags);

    topophase::ScenarioResult result;
    try {
      result = topophase::run_scenario(config);
    } catch (const topophase::Error& e) {
      if (e.code() == topophase::ErrorCode::InvalidConfig ||
          e.code() == topophase::ErrorCode::UnknownSchedule ||
          e.code() == topophase::ErrorCode::DimensionMismatch) {
        throw;
      }
      std::cerr << "numerical failure: " << e.what() << "\n";
      return kExitNumerical;
    }
    for (const auto& path : result.files) std::cout << path.string() << "\n";
    for (const auto& f : result.failures) std::cerr << "expected cyclic evolution: " << f << "\n";
    return result.exit_code == 0 ? 0 : kExitNumerical;
  } catch (const topophase::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
