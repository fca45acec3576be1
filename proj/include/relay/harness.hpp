// Monte Carlo harness: Rayleigh block-fading draws, strategy sweeps with
// common random numbers, aggregation and report files.

#ifndef RELAY_HARNESS_HPP_
#define RELAY_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relay/joint.hpp"
#include "relay/model.hpp"

namespace relay {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FadingConfig {
  std::array<double, 2> gamma_h_db{10.0, 10.0};
  std::array<double, 2> gamma_g_db{15.0, 15.0};
  double gamma_f_db = 20.0;
  std::uint64_t seed = 1;
  int realizations = 10000;

  void Validate() const;
};

// Five unit-mean exponential variates for trial `trial_index`, in the order
// h1, h2, g1, g2, f. The stream depends only on (seed, trial_index).
std::array<double, 5> UnitExponentialDraws(std::uint64_t seed,
                                           std::uint64_t trial_index);

// Squared channel magnitudes of one realization: exponential with mean
// sigma_n2 * 10^(gamma_dB / 10).
ChannelGains DrawGains(const FadingConfig& fading, std::uint64_t trial_index,
                       double sigma_n2);

enum class SweepVar { kGammaF, kGammaH, kGammaG, kPMax };

std::string_view ToString(SweepVar v);

struct ScenarioResult {
  std::string strategy;
  std::string sweep_var;
  double sweep_value = 0.0;
  double mean_rate = 0.0;
  double std_err = 0.0;
  double mean_pr_frac = 0.0;
  double mean_cx = 0.0;
  double cx_std_err = 0.0;  // not part of the CSV
  double mean_iters = 0.0;
  int realizations = 0;
  std::uint64_t seed = 0;
  // FNV-1a digest of the gains this strategy was evaluated on.
  std::uint64_t gain_hash = 0;
};

struct RunConfig {
  // Any one of these four lists may hold several values; it is then swept.
  std::vector<double> gamma_h_db{10.0};
  std::vector<double> gamma_g_db{15.0};
  std::vector<double> gamma_f_db{20.0};
  std::vector<double> p_max{1.0};
  double p_s = 1.0;
  double noise_var = 1.0;
  int realizations = 10000;
  std::uint64_t seed = 1;
  std::vector<Strategy> strategies = AllStrategies();
  BaselineOptions solver;
  int threads = 1;
  std::string out_dir = "relay-sim-out";
  std::vector<std::string> formats{"csv", "json"};

  // Throws ConfigError unless the configuration is runnable.
  void Validate() const;
  SweepVar sweep_var() const;
  const std::vector<double>& sweep_values() const;
  FadingConfig FadingAt(double sweep_value) const;
  SystemParams ParamsAt(double sweep_value) const;
};

// Applies one key/value setting (keys as the CLI long flags without dashes
// prefix, e.g. "gamma-f"; underscores are accepted). Throws ConfigError.
void ApplySetting(RunConfig& config, std::string_view key,
                  std::string_view value);

// Reads "key = value" lines; '#' starts a comment. Throws ConfigError for
// malformed lines and IoError when the file cannot be read.
std::map<std::string, std::string> ReadConfigFile(
    const std::filesystem::path& path);

std::string ConfigToJson(const RunConfig& config, int indent = 2);

std::vector<ScenarioResult> RunSweep(const RunConfig& config);

inline constexpr std::string_view kCsvHeader =
    "strategy,sweep_var,sweep_value,mean_rate,std_err,mean_pr_frac,mean_cx,"
    "mean_iters,realizations,seed";

std::string FormatCsv(const std::vector<ScenarioResult>& results);

struct ReportFiles {
  std::vector<std::filesystem::path> written;
};

// Writes results.csv, manifest.json and/or plot.gp into out_dir depending on
// `formats`. The plot script needs the CSV and forces it to be written.
ReportFiles EmitReport(const std::vector<ScenarioResult>& results,
                       const RunConfig& config,
                       const std::filesystem::path& out_dir,
                       const std::vector<std::string>& formats,
                       double wall_time_s);

extern const char* const kToolVersion;

}  // namespace relay

#endif  // RELAY_HARNESS_HPP_
