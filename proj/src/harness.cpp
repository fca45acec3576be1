#include "relay/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace relay {

const char* const kToolVersion = "1.0.0";

namespace {

using json = nlohmann::json;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

// Summation order depends only on the vector length.
double PairwiseSum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  const std::size_t half = n / 2;
  return PairwiseSum(v, half) + PairwiseSum(v + half, n - half);
}

double Mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : PairwiseSum(v.data(), v.size()) / v.size();
}

double StdErr(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  std::vector<double> sq(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    sq[k] = (v[k] - mean) * (v[k] - mean);
  }
  const double var = PairwiseSum(sq.data(), sq.size()) / (v.size() - 1);
  return std::sqrt(var / v.size());
}

class Fnv1a {
 public:
  void Add(double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      state_ ^= b;
      state_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view text) {
  const std::string t = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() ||
      !std::isfinite(v)) {
    throw ConfigError("invalid number '" + t + "' for " + std::string(key));
  }
  return v;
}

template <typename Int>
Int ParseInt(std::string_view key, std::string_view text) {
  const std::string t = Trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("invalid integer '" + t + "' for " + std::string(key));
  }
  return v;
}

std::vector<double> ParseDoubleList(std::string_view key,
                                    std::string_view text) {
  std::vector<double> out;
  for (const auto& item : SplitList(text)) out.push_back(ParseDouble(key, item));
  return out;
}

std::string NormalizeKey(std::string_view key) {
  std::string k = Trim(key);
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json ConfigJson(const RunConfig& c) {
  json strategies = json::array();
  for (Strategy s : c.strategies) strategies.push_back(std::string(ToString(s)));
  return json{
      {"gamma_h_db", c.gamma_h_db},
      {"gamma_g_db", c.gamma_g_db},
      {"gamma_f_db", c.gamma_f_db},
      {"p_s", c.p_s},
      {"p_max", c.p_max},
      {"noise_var", c.noise_var},
      {"realizations", c.realizations},
      {"seed", c.seed},
      {"strategies", strategies},
      {"eps_max", c.solver.eps_max},
      {"eps_mode", c.solver.normalize_power ? "normalized" : "raw"},
      {"max_iters", c.solver.max_iters},
      {"grid", {c.solver.grid_p, c.solver.grid_c}},
      {"stationary_grid", c.solver.stationary.grid},
      {"threads", c.threads},
      {"out", c.out_dir},
      {"format", c.formats},
      {"sweep_var", std::string(ToString(c.sweep_var()))},
  };
}

struct TrialRecord {
  double rate = 0.0;
  double pr_frac = 0.0;
  double cx = 0.0;
  double iters = 0.0;
  ChannelGains gains;
};

}  // namespace

void FadingConfig::Validate() const {
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  for (double v : {gamma_h_db[0], gamma_h_db[1], gamma_g_db[0], gamma_g_db[1],
                   gamma_f_db}) {
    if (!std::isfinite(v)) throw ConfigError("average SNRs must be finite");
  }
}

std::array<double, 5> UnitExponentialDraws(std::uint64_t seed,
                                           std::uint64_t trial_index) {
  std::mt19937_64 engine(SplitMix64(seed ^ SplitMix64(trial_index)));
  std::array<double, 5> out{};
  for (double& e : out) {
    // Uniform on the open interval (0, 1) from the top 53 bits.
    const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    e = -std::log(u);
  }
  return out;
}

ChannelGains DrawGains(const FadingConfig& fading, std::uint64_t trial_index,
                       double sigma_n2) {
  const auto e = UnitExponentialDraws(fading.seed, trial_index);
  ChannelGains g;
  for (int i = 0; i < 2; ++i) {
    g.h2[i] = sigma_n2 * DbToLinear(fading.gamma_h_db[i]) * e[i];
    g.g2[i] = sigma_n2 * DbToLinear(fading.gamma_g_db[i]) * e[2 + i];
  }
  g.f2 = sigma_n2 * DbToLinear(fading.gamma_f_db) * e[4];
  return g;
}

std::string_view ToString(SweepVar v) {
  switch (v) {
    case SweepVar::kGammaF:
      return "gamma_f";
    case SweepVar::kGammaH:
      return "gamma_h";
    case SweepVar::kGammaG:
      return "gamma_g";
    case SweepVar::kPMax:
      return "p_max";
  }
  return "unknown";
}

void RunConfig::Validate() const {
  int swept = 0;
  for (const auto* list : {&gamma_h_db, &gamma_g_db, &gamma_f_db, &p_max}) {
    if (list->empty()) throw ConfigError("empty value list");
    for (double v : *list) {
      if (!std::isfinite(v)) throw ConfigError("non-finite value in config");
    }
    if (list->size() > 1) ++swept;
  }
  if (swept > 1) throw ConfigError("only one variable may be swept at a time");
  for (double v : p_max) {
    if (!(v > 0.0)) throw ConfigError("p-max must be positive");
  }
  if (!(p_s > 0.0) || !std::isfinite(p_s)) {
    throw ConfigError("p-s must be positive");
  }
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw ConfigError("noise-var must be positive");
  }
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  if (strategies.empty()) throw ConfigError("no strategies selected");
  if (!(solver.eps_max > 0.0)) throw ConfigError("eps-max must be positive");
  if (solver.max_iters < 1) throw ConfigError("max-iters must be >= 1");
  if (solver.grid_p < 2 || solver.grid_c < 2) {
    throw ConfigError("grid needs at least 2x2 points");
  }
  if (solver.stationary.grid < 64) {
    throw ConfigError("stationary-grid must be >= 64");
  }
  for (const auto& f : formats) {
    if (f != "csv" && f != "json" && f != "plot") {
      throw ConfigError("unknown output format '" + f + "'");
    }
  }
}

SweepVar RunConfig::sweep_var() const {
  if (gamma_h_db.size() > 1) return SweepVar::kGammaH;
  if (gamma_g_db.size() > 1) return SweepVar::kGammaG;
  if (p_max.size() > 1) return SweepVar::kPMax;
  return SweepVar::kGammaF;
}

const std::vector<double>& RunConfig::sweep_values() const {
  switch (sweep_var()) {
    case SweepVar::kGammaH:
      return gamma_h_db;
    case SweepVar::kGammaG:
      return gamma_g_db;
    case SweepVar::kPMax:
      return p_max;
    case SweepVar::kGammaF:
      break;
  }
  return gamma_f_db;
}

FadingConfig RunConfig::FadingAt(double sweep_value) const {
  const SweepVar var = sweep_var();
  FadingConfig f;
  const double h = var == SweepVar::kGammaH ? sweep_value : gamma_h_db.front();
  const double g = var == SweepVar::kGammaG ? sweep_value : gamma_g_db.front();
  f.gamma_h_db = {h, h};
  f.gamma_g_db = {g, g};
  f.gamma_f_db = var == SweepVar::kGammaF ? sweep_value : gamma_f_db.front();
  f.seed = seed;
  f.realizations = realizations;
  return f;
}

SystemParams RunConfig::ParamsAt(double sweep_value) const {
  SystemParams p;
  p.p_s = p_s;
  p.p_max = sweep_var() == SweepVar::kPMax ? sweep_value : p_max.front();
  p.sigma_n2 = noise_var;
  return p;
}

void ApplySetting(RunConfig& config, std::string_view raw_key,
                  std::string_view value) {
  const std::string key = NormalizeKey(raw_key);
  if (key == "gamma-h") {
    config.gamma_h_db = ParseDoubleList(key, value);
  } else if (key == "gamma-g") {
    config.gamma_g_db = ParseDoubleList(key, value);
  } else if (key == "gamma-f") {
    config.gamma_f_db = ParseDoubleList(key, value);
  } else if (key == "p-max") {
    config.p_max = ParseDoubleList(key, value);
  } else if (key == "p-s") {
    config.p_s = ParseDouble(key, value);
  } else if (key == "noise-var") {
    config.noise_var = ParseDouble(key, value);
  } else if (key == "realizations") {
    config.realizations = ParseInt<int>(key, value);
  } else if (key == "seed") {
    config.seed = ParseInt<std::uint64_t>(key, value);
  } else if (key == "strategies") {
    config.strategies.clear();
    try {
      for (const auto& tag : SplitList(value)) {
        config.strategies.push_back(ParseStrategy(tag));
      }
    } catch (const UnknownStrategy& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "eps-max") {
    config.solver.eps_max = ParseDouble(key, value);
  } else if (key == "eps-mode") {
    const std::string mode = Trim(value);
    if (mode != "normalized" && mode != "raw") {
      throw ConfigError("eps-mode must be 'normalized' or 'raw'");
    }
    config.solver.normalize_power = mode == "normalized";
  } else if (key == "max-iters") {
    config.solver.max_iters = ParseInt<int>(key, value);
  } else if (key == "grid") {
    const auto parts = SplitList(value, 'x');
    if (parts.size() != 2) throw ConfigError("grid must look like <n_p>x<n_c>");
    config.solver.grid_p = ParseInt<int>(key, parts[0]);
    config.solver.grid_c = ParseInt<int>(key, parts[1]);
  } else if (key == "stationary-grid") {
    config.solver.stationary.grid = ParseInt<int>(key, value);
  } else if (key == "threads") {
    config.threads = ParseInt<int>(key, value);
  } else if (key == "out") {
    config.out_dir = Trim(value);
  } else if (key == "format") {
    config.formats = SplitList(value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> ReadConfigFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string t = Trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    out[NormalizeKey(t.substr(0, eq))] = Trim(t.substr(eq + 1));
  }
  return out;
}

std::string ConfigToJson(const RunConfig& config, int indent) {
  return ConfigJson(config).dump(indent);
}

std::vector<ScenarioResult> RunSweep(const RunConfig& config) {
  config.Validate();
  const std::size_t n_trials = static_cast<std::size_t>(config.realizations);
  const std::size_t n_strat = config.strategies.size();
  int n_threads = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp<int>(n_threads, 1, static_cast<int>(n_trials));

  std::vector<ScenarioResult> results;
  for (double value : config.sweep_values()) {
    const FadingConfig fading = config.FadingAt(value);
    const SystemParams params = config.ParamsAt(value);
    std::vector<std::vector<TrialRecord>> records(
        n_strat, std::vector<TrialRecord>(n_trials));

    // Every strategy sees the same realization of trial t.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      try {
        for (std::size_t t = next++; t < n_trials; t = next++) {
          const ChannelGains gains = DrawGains(fading, t, params.sigma_n2);
          for (std::size_t s = 0; s < n_strat; ++s) {
            const OptimizerResult r =
                Baseline(params, gains, config.strategies[s], config.solver);
            records[s][t] = {r.rates.total, r.design.p_r / params.p_max,
                             r.design.c_x, static_cast<double>(r.iterations),
                             gains};
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n_trials;
      }
    };
    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t s = 0; s < n_strat; ++s) {
      std::vector<double> rate(n_trials), pr(n_trials), cx(n_trials),
          iters(n_trials);
      Fnv1a hash;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const TrialRecord& rec = records[s][t];
        rate[t] = rec.rate;
        pr[t] = rec.pr_frac;
        cx[t] = rec.cx;
        iters[t] = rec.iters;
        for (double v : {rec.gains.h2[0], rec.gains.h2[1], rec.gains.g2[0],
                         rec.gains.g2[1], rec.gains.f2}) {
          hash.Add(v);
        }
      }
      ScenarioResult r;
      r.strategy = std::string(ToString(config.strategies[s]));
      r.sweep_var = std::string(ToString(config.sweep_var()));
      r.sweep_value = value;
      r.mean_rate = Mean(rate);
      r.std_err = StdErr(rate, r.mean_rate);
      r.mean_pr_frac = Mean(pr);
      r.mean_cx = Mean(cx);
      r.cx_std_err = StdErr(cx, r.mean_cx);
      r.mean_iters = Mean(iters);
      r.realizations = config.realizations;
      r.seed = config.seed;
      r.gain_hash = hash.digest();
      results.push_back(std::move(r));
    }
  }
  return results;
}

std::string FormatCsv(const std::vector<ScenarioResult>& results) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : results) {
    out << r.strategy << ',' << r.sweep_var << ',' << FormatNumber(r.sweep_value)
        << ',' << FormatNumber(r.mean_rate) << ',' << FormatNumber(r.std_err)
        << ',' << FormatNumber(r.mean_pr_frac) << ','
        << FormatNumber(r.mean_cx) << ',' << FormatNumber(r.mean_iters) << ','
        << r.realizations << ',' << r.seed << '\n';
  }
  return out.str();
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string GnuplotScript(const std::vector<ScenarioResult>& results,
                          const std::string& csv_name) {
  std::vector<std::string> strategies;
  std::string sweep_var = results.empty() ? "gamma_f" : results.front().sweep_var;
  for (const auto& r : results) {
    if (std::find(strategies.begin(), strategies.end(), r.strategy) ==
        strategies.end()) {
      strategies.push_back(r.strategy);
    }
  }
  const bool is_db = sweep_var != "p_max";
  std::ostringstream gp;
  gp << "# gnuplot script, one curve per strategy\n"
     << "set datafile separator ','\n"
     << "set terminal pngcairo size 800,600\n"
     << "set output 'rate.png'\n"
     << "set grid\n"
     << "set key bottom left\n"
     << "set xlabel '" << sweep_var << (is_db ? " (dB)" : "") << "'\n"
     << "set ylabel 'average end-to-end rate (bits/s/Hz)'\n"
     << "plot \\\n";
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    gp << "  '" << csv_name << "' every ::1 using "
       << "(strcol(1) eq '" << strategies[k] << "' ? $3 : NaN):4 "
       << "with linespoints title '" << strategies[k] << "'"
       << (k + 1 < strategies.size() ? ", \\\n" : "\n");
  }
  return gp.str();
}

}  // namespace

ReportFiles EmitReport(const std::vector<ScenarioResult>& results,
                       const RunConfig& config,
                       const std::filesystem::path& out_dir,
                       const std::vector<std::string>& formats,
                       double wall_time_s) {
  auto wants = [&](std::string_view f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " +
                  ec.message());
  }
  ReportFiles files;
  const std::string csv_name = "results.csv";
  if (wants("csv") || wants("plot")) {
    WriteFile(out_dir / csv_name, FormatCsv(results));
    files.written.push_back(out_dir / csv_name);
  }
  if (wants("plot")) {
    WriteFile(out_dir / "plot.gp", GnuplotScript(results, csv_name));
    files.written.push_back(out_dir / "plot.gp");
  }
  if (wants("json")) {
    json outputs = json::array();
    for (const auto& p : files.written) outputs.push_back(p.filename().string());
    const json manifest{
        {"tool", "relay-sim"},
        {"version", kToolVersion},
        {"config", ConfigJson(config)},
        {"sweep_values", config.sweep_values()},
        {"rows", results.size()},
        {"wall_time_s", wall_time_s},
        {"outputs", outputs},
    };
    WriteFile(out_dir / "manifest.json", manifest.dump(2) + "\n");
    files.written.push_back(out_dir / "manifest.json");
  }
  return files;
}

}  // namespace relay
