// relay-sim: Monte Carlo sweeps and single-instance solves for the two-path
// relay design problem.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relay/harness.hpp"
#include "relay/joint.hpp"
#include "relay/model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// Flags shared by the config file; stored as text so lists survive.
const std::vector<std::string> kRunKeys = {
    "gamma-h",  "gamma-g",   "gamma-f",   "p-s",    "p-max",
    "noise-var", "realizations", "seed",  "strategies", "eps-max",
    "eps-mode", "max-iters", "grid",      "stationary-grid", "threads",
    "out",      "format",
};

int RunCommand(const std::string& config_path,
               const std::map<std::string, std::string>& overrides) {
  relay::RunConfig config;
  if (!config_path.empty()) {
    for (const auto& [key, value] : relay::ReadConfigFile(config_path)) {
      relay::ApplySetting(config, key, value);
    }
  }
  for (const auto& [key, value] : overrides) {
    relay::ApplySetting(config, key, value);
  }
  config.Validate();

  const auto start = std::chrono::steady_clock::now();
  const auto results = relay::RunSweep(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const auto files =
      relay::EmitReport(results, config, config.out_dir, config.formats, wall);
  for (const auto& path : files.written) std::cout << path.string() << '\n';
  return kExitOk;
}

struct SolveArgs {
  double h1 = 1.0, h2 = 1.0, g1 = 1.0, g2 = 1.0, f = 1.0;
  double p_s = 1.0, p_max = 1.0, noise_var = 1.0;
  std::string strategy = "cd_init1";
  double eps_max = 1e-4;
  int max_iters = 100;
  std::string grid = "1000x1000";
};

int SolveCommand(const SolveArgs& args) {
  relay::SystemParams params{args.p_s, args.p_max, args.noise_var};
  relay::ChannelGains gains;
  gains.h2 = {args.h1, args.h2};
  gains.g2 = {args.g1, args.g2};
  gains.f2 = args.f;
  try {
    params.Validate();
    gains.Validate();
  } catch (const relay::InvalidArgument& e) {
    throw relay::ConfigError(e.what());
  }

  relay::RunConfig scratch;
  relay::ApplySetting(scratch, "grid", args.grid);
  relay::BaselineOptions options = scratch.solver;
  options.eps_max = args.eps_max;
  options.max_iters = args.max_iters;

  relay::Strategy strategy;
  try {
    strategy = relay::ParseStrategy(args.strategy);
  } catch (const relay::UnknownStrategy& e) {
    throw relay::ConfigError(e.what());
  }
  const relay::OptimizerResult r =
      relay::Baseline(params, gains, strategy, options);

  nlohmann::json trajectory = nlohmann::json::array();
  for (const auto& pt : r.trajectory) {
    trajectory.push_back({pt.p_r, pt.c_x, pt.rate});
  }
  const nlohmann::json out{
      {"strategy", args.strategy},
      {"p_r", r.design.p_r},
      {"c_x", r.design.c_x},
      {"rate", r.rates.total},
      {"path_rates", r.rates.path},
      {"hop_rates", r.rates.hop},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"trajectory", trajectory},
  };
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Improper-signalling design for two-path relay networks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Monte Carlo sweep over strategies");
  std::string config_path;
  run->add_option("--config", config_path, "key = value configuration file");
  std::map<std::string, std::string> run_values;
  std::map<std::string, CLI::Option*> run_opts;
  for (const auto& key : kRunKeys) {
    run_opts[key] = run->add_option("--" + key, run_values[key]);
  }
  const std::map<std::string, std::string> help = {
      {"gamma-h", "first-hop average SNR in dB (default 10)"},
      {"gamma-g", "second-hop average SNR in dB (default 15)"},
      {"gamma-f", "inter-relay average SNR in dB (default 20)"},
      {"p-s", "source power (default 1)"},
      {"p-max", "relay power budget (default 1)"},
      {"noise-var", "noise variance (default 1)"},
      {"realizations", "channel draws per sweep point (default 10000)"},
      {"seed", "master seed (default 1)"},
      {"strategies",
       "comma list of proper_mpa,proper_opa,improper_mpa,cd_init0,cd_init1,gs"},
      {"eps-max", "coordinate-descent stopping threshold (default 1e-4)"},
      {"eps-mode", "normalized or raw power change (default normalized)"},
      {"max-iters", "coordinate-descent iteration cap (default 100)"},
      {"grid", "<n_p>x<n_c> grid-search resolution (default 1000x1000)"},
      {"stationary-grid", "samples for derivative bracketing (default 512)"},
      {"threads", "worker threads, 0 for all cores (default 1)"},
      {"out", "output directory (default relay-sim-out)"},
      {"format", "comma list of csv,json,plot (default csv,json)"},
  };
  for (const auto& [key, text] : help) run_opts[key]->description(text);
  run->footer("gamma-h, gamma-g, gamma-f and p-max accept a comma list; at "
              "most one of them may hold several values, which are swept.");

  auto* solve = app.add_subcommand("solve", "Solve one channel realization");
  SolveArgs sargs;
  solve->add_option("--h1", sargs.h1, "|h_1|^2")->required();
  solve->add_option("--h2", sargs.h2, "|h_2|^2")->required();
  solve->add_option("--g1", sargs.g1, "|g_1|^2")->required();
  solve->add_option("--g2", sargs.g2, "|g_2|^2")->required();
  solve->add_option("--f", sargs.f, "|f|^2")->required();
  solve->add_option("--p-s", sargs.p_s)->capture_default_str();
  solve->add_option("--p-max", sargs.p_max)->capture_default_str();
  solve->add_option("--noise-var", sargs.noise_var)->capture_default_str();
  solve->add_option("--strategy", sargs.strategy)->capture_default_str();
  solve->add_option("--eps-max", sargs.eps_max)->capture_default_str();
  solve->add_option("--max-iters", sargs.max_iters)->capture_default_str();
  solve->add_option("--grid", sargs.grid, "<n_p>x<n_c> for gs")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      std::map<std::string, std::string> overrides;
      for (const auto& key : kRunKeys) {
        if (run_opts[key]->count() > 0) overrides[key] = run_values[key];
      }
      return RunCommand(config_path, overrides);
    }
    return SolveCommand(sargs);
  } catch (const relay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const relay::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const relay::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}
