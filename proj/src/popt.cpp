#include "relay/popt.hpp"

#include <algorithm>
#include <cmath>

namespace relay {

namespace {

void CheckCircularity(double c_x) {
  if (!(c_x >= 0.0) || !(c_x <= 1.0)) {
    throw InvalidArgument("circularity coefficient must lie in [0, 1]");
  }
}

// Proper-signalling intersection, p^2 + (s2/f) p - p_s h s2 / (g f) = 0,
// solved in the cancellation-free form 2c / (b + sqrt(b^2 + 4c)).
double ProperIntersection(const SystemParams& params, double h, double g,
                          double f) {
  const double s2 = params.sigma_n2;
  const double b = s2 / f;
  const double c = params.p_s * h * s2 / (g * f);
  return 2.0 * c / (b + std::sqrt(b * b + 4.0 * c));
}

}  // namespace

RealPolynomial PowerIntersectionQuartic(const SystemParams& params,
                                        const ChannelGains& gains, double c_x,
                                        int path) {
  const double s2 = params.sigma_n2;
  const double s4 = s2 * s2;
  const double h = gains.h2[path];
  const double g = gains.g2[path];
  const double f = gains.f2;
  const double sh = params.p_s * h;
  const double u = 1.0 - c_x * c_x;
  return RealPolynomial({
      -(sh * sh + 2.0 * sh * s2),
      2.0 * (s2 * g - sh * f),
      g * (4.0 * f + g * u),
      2.0 * g * f * (g + f) * u / s2,
      g * g * f * f * u * u / s4,
  });
}

PowerIntersection HopIntersectionPower(const SystemParams& params,
                                       const ChannelGains& gains, double c_x,
                                       int path) {
  CheckCircularity(c_x);
  PowerIntersection out;
  const double h = gains.h2[path];
  const double g = gains.g2[path];
  const double f = gains.f2;

  if (c_x == 0.0 && f > 0.0 && g > 0.0) {
    const double p = ProperIntersection(params, h, g, f);
    if (p > 0.0) out.unclipped = p;
  } else {
    const RealPolynomial quartic =
        PowerIntersectionQuartic(params, gains, c_x, path);
    if (quartic.degree() < 1) return out;
    const auto roots =
        RealRootsIn(quartic, 0.0, quartic.CauchyBound(), /*open_lo=*/true);
    // One sign change in the coefficients: at most one positive root.
    if (!roots.empty()) out.unclipped = roots.front();
  }
  if (out.unclipped && *out.unclipped <= params.p_max) {
    out.feasible = out.unclipped;
  }
  return out;
}

std::vector<double> PowerStationaryPoints(
    const SystemParams& params, const ChannelGains& gains, double c_x,
    int first_hop_path, int second_hop_path,
    std::optional<std::pair<double, double>> interval,
    const StationaryOptions& options) {
  CheckCircularity(c_x);
  const auto [lo, hi] = interval.value_or(std::pair{0.0, params.p_max});
  std::vector<double> out;
  if (!(lo < hi)) return out;

  if (c_x == 0.0) {
    const double s2 = params.sigma_n2;
    const double sh = params.p_s * gains.h2[first_hop_path];
    const double g = gains.g2[second_hop_path];
    const double f = gains.f2;
    // Exists iff f - g > s2 g / (p_s h).
    if (g > 0.0 && sh > 0.0 && f - g > s2 * g / sh) {
      const double p = std::sqrt(s2 * sh * (f - g) / (g * f * f)) - s2 / f;
      if (p > lo && p <= hi) out.push_back(p);
    }
    return out;
  }

  const auto objective = [&](double p) {
    return MixedHopSum(params, gains, SignalDesign{p, c_x}, first_hop_path,
                       second_hop_path);
  };
  for (double p : DerivativeStationaryRoots(objective, lo, hi, options)) {
    if (p > lo && p <= hi) out.push_back(p);
  }
  return out;
}

PowerSolution OptimizePower(const SystemParams& params,
                            const ChannelGains& gains, double c_x,
                            const StationaryOptions& options) {
  params.Validate();
  gains.Validate();
  CheckCircularity(c_x);

  PowerSolution sol;
  PowerCandidates& cand = sol.candidates;
  cand.budget = params.p_max;

  for (int i = 0; i < 2; ++i) {
    const PowerIntersection cross =
        HopIntersectionPower(params, gains, c_x, i);
    if (cross.feasible) {
      cand.intersections.push_back(*cross.feasible);
      cand.switch_points[i] = *cross.feasible;
      continue;
    }
    // No crossing inside the budget: one hop limits the path throughout.
    const SignalDesign mid{0.5 * params.p_max, c_x};
    cand.switch_points[i] = Bottleneck(params, gains, mid, i) == Hop::kSecond
                                ? params.p_max
                                : 0.0;
  }

  if (cand.switch_points[1] < cand.switch_points[0]) cand.pi_order = {1, 0};
  const double lower = cand.switch_points[cand.pi_order[0]];
  const double upper = cand.switch_points[cand.pi_order[1]];
  // Coincident switch points leave the middle piece empty.
  if (lower < upper) {
    cand.stationaries =
        PowerStationaryPoints(params, gains, c_x, cand.pi_order[0],
                              cand.pi_order[1], std::pair{lower, upper},
                              options);
  }

  std::vector<double> points = cand.intersections;
  points.insert(points.end(), cand.stationaries.begin(),
                cand.stationaries.end());
  points.push_back(params.p_max);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double best_rate = -1.0;
  for (double p : points) {
    const RateBreakdown rates = TotalRate(params, gains, SignalDesign{p, c_x});
    cand.evaluations.emplace_back(p, rates.total);
    // Strict comparison keeps the smallest power among ties.
    if (rates.total > best_rate) {
      best_rate = rates.total;
      sol.p_r = p;
      sol.rates = rates;
    }
  }
  return sol;
}

}  // namespace relay
