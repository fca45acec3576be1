#include "relay/joint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relay/copt.hpp"
#include "relay/popt.hpp"

namespace relay {

void CdConfig::Validate(const SystemParams& params) const {
  if (!(eps_max > 0.0) || !std::isfinite(eps_max)) {
    throw InvalidArgument("eps_max must be positive");
  }
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  SignalDesign{init_p_r.value_or(params.p_max), init_c_x}.Validate(params);
}

OptimizerResult CoordinateDescent(const SystemParams& params,
                                  const ChannelGains& gains,
                                  const CdConfig& config) {
  params.Validate();
  gains.Validate();
  config.Validate(params);

  SignalDesign current{config.init_p_r.value_or(params.p_max),
                       config.init_c_x};
  OptimizerResult result;
  result.converged = false;
  result.design = current;
  result.rates = TotalRate(params, gains, current);
  result.trajectory.push_back({current.p_r, current.c_x, result.rates.total});

  const double power_scale = config.normalize_power ? params.p_max : 1.0;
  auto record = [&](const SignalDesign& d, const RateBreakdown& rates) {
    result.trajectory.push_back({d.p_r, d.c_x, rates.total});
    // Later points win ties so a stalled run still reports its last iterate.
    if (rates.total >= result.rates.total) {
      result.design = d;
      result.rates = rates;
    }
  };

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const PowerSolution power =
        OptimizePower(params, gains, current.c_x, config.stationary);
    record({power.p_r, current.c_x}, power.rates);

    const CircularitySolution circ =
        OptimizeCircularity(params, gains, power.p_r, config.stationary);
    record({power.p_r, circ.c_x}, circ.rates);

    const double change = std::max(std::abs(circ.c_x - current.c_x),
                                   std::abs(power.p_r - current.p_r) /
                                       power_scale);
    current = {power.p_r, circ.c_x};
    result.iterations = iter;
    if (change <= config.eps_max) {
      result.converged = true;
      break;
    }
  }
  return result;
}

OptimizerResult GridSearch(const SystemParams& params,
                           const ChannelGains& gains, int n_p, int n_c) {
  params.Validate();
  gains.Validate();
  if (n_p < 2 || n_c < 2) {
    throw InvalidArgument("grid search needs at least 2 points per axis");
  }
  SignalDesign best{params.p_max / n_p, 0.0};
  double best_rate = -1.0;
  for (int k = 1; k <= n_p; ++k) {
    const double p = params.p_max * k / n_p;
    for (int m = 0; m <= n_c; ++m) {
      const double c = static_cast<double>(m) / n_c;
      const double rate = TotalRateValue(params, gains, {p, c});
      if (rate > best_rate) {
        best_rate = rate;
        best = {p, c};
      }
    }
  }
  OptimizerResult result;
  result.design = best;
  result.rates = TotalRate(params, gains, best);
  result.trajectory.push_back({best.p_r, best.c_x, result.rates.total});
  return result;
}

namespace {

struct StrategyName {
  Strategy strategy;
  std::string_view tag;
};

constexpr StrategyName kStrategyNames[] = {
    {Strategy::kProperMpa, "proper_mpa"},
    {Strategy::kProperOpa, "proper_opa"},
    {Strategy::kImproperMpa, "improper_mpa"},
    {Strategy::kCdInit0, "cd_init0"},
    {Strategy::kCdInit1, "cd_init1"},
    {Strategy::kGridSearch, "gs"},
};

OptimizerResult FixedDesign(const SystemParams& params,
                            const ChannelGains& gains, SignalDesign d) {
  OptimizerResult result;
  result.design = d;
  result.rates = TotalRate(params, gains, d);
  result.trajectory.push_back({d.p_r, d.c_x, result.rates.total});
  return result;
}

}  // namespace

Strategy ParseStrategy(std::string_view tag) {
  for (const auto& entry : kStrategyNames) {
    if (entry.tag == tag) return entry.strategy;
  }
  throw UnknownStrategy("unknown strategy '" + std::string(tag) + "'");
}

std::string_view ToString(Strategy s) {
  for (const auto& entry : kStrategyNames) {
    if (entry.strategy == s) return entry.tag;
  }
  return "unknown";
}

const std::vector<Strategy>& AllStrategies() {
  static const std::vector<Strategy> all = [] {
    std::vector<Strategy> v;
    for (const auto& entry : kStrategyNames) v.push_back(entry.strategy);
    return v;
  }();
  return all;
}

OptimizerResult Baseline(const SystemParams& params, const ChannelGains& gains,
                         Strategy strategy, const BaselineOptions& options) {
  params.Validate();
  gains.Validate();
  switch (strategy) {
    case Strategy::kProperMpa:
      return FixedDesign(params, gains, {params.p_max, 0.0});
    case Strategy::kProperOpa: {
      const PowerSolution sol =
          OptimizePower(params, gains, 0.0, options.stationary);
      return FixedDesign(params, gains, {sol.p_r, 0.0});
    }
    case Strategy::kImproperMpa: {
      const CircularitySolution sol =
          OptimizeCircularity(params, gains, params.p_max, options.stationary);
      return FixedDesign(params, gains, {params.p_max, sol.c_x});
    }
    case Strategy::kCdInit0:
    case Strategy::kCdInit1: {
      CdConfig config;
      config.eps_max = options.eps_max;
      config.max_iters = options.max_iters;
      config.normalize_power = options.normalize_power;
      config.stationary = options.stationary;
      config.init_p_r = params.p_max;
      config.init_c_x = strategy == Strategy::kCdInit0 ? 0.0 : 1.0;
      return CoordinateDescent(params, gains, config);
    }
    case Strategy::kGridSearch:
      return GridSearch(params, gains, options.grid_p, options.grid_c);
  }
  throw UnknownStrategy("unhandled strategy");
}

}  // namespace relay
