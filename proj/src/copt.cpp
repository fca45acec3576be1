#include "relay/copt.hpp"

#include <algorithm>
#include <cmath>

namespace relay {

namespace {

double CircularityFromU(double u) { return std::sqrt(std::max(0.0, 1.0 - u)); }

}  // namespace

const char* ToString(IntersectionCase c) {
  switch (c) {
    case IntersectionCase::kNoIntersection:
      return "no_intersection";
    case IntersectionCase::kOneIntersection:
      return "one_intersection";
    case IntersectionCase::kTwoIntersections:
      return "two_intersections";
  }
  return "unknown";
}

RealPolynomial CircularityIntersectionQuadratic(const SystemParams& params,
                                                const ChannelGains& gains,
                                                double p_r, int path) {
  const double s2 = params.sigma_n2;
  const double sh = params.p_s * gains.h2[path];
  const double pf = p_r * gains.f2;
  const double snr = p_r * gains.g2[path] / s2;
  // First hop:  1 + num / (u * pf^2 + den0).
  // Second hop: 1 + 2 snr + u snr^2.
  const double num = 2.0 * sh * (pf + s2) + sh * sh;
  const double den0 = 2.0 * pf * s2 + s2 * s2;
  const double lin = 2.0 * snr;
  const double quad = snr * snr;
  return RealPolynomial({
      lin * den0 - num,
      quad * den0 + lin * pf * pf,
      quad * pf * pf,
  });
}

std::vector<double> HopIntersectionCircularity(const SystemParams& params,
                                               const ChannelGains& gains,
                                               double p_r, int path) {
  std::vector<double> out;
  const RealPolynomial quadratic =
      CircularityIntersectionQuadratic(params, gains, p_r, path);
  if (quadratic.degree() < 1) return out;
  for (double u : RealRootsIn(quadratic, 0.0, 1.0, /*open_lo=*/false)) {
    // u = 1 is C = 0, outside (0, 1].
    if (u < 1.0) out.push_back(CircularityFromU(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> CircularityStationaryPoint(
    const SystemParams& params, const ChannelGains& gains, double p_r,
    int first_hop_path, int second_hop_path, double lo, double hi,
    const StationaryOptions& options) {
  if (!(lo >= 0.0) || !(hi <= 1.0) || !(lo < hi)) {
    throw InvalidArgument("circularity interval must satisfy 0 <= lo < hi <= 1");
  }
  const auto objective_c = [&](double c) {
    return MixedHopSum(params, gains, SignalDesign{p_r, c}, first_hop_path,
                       second_hop_path);
  };
  // Searched in u = 1 - C^2, where both hop rates are smooth.
  const double u_lo = 1.0 - hi * hi;
  const double u_hi = 1.0 - lo * lo;
  if (!(u_lo < u_hi)) return std::nullopt;
  const auto objective_u = [&](double u) {
    return objective_c(CircularityFromU(u));
  };

  std::optional<double> best;
  double best_value = 0.0;
  for (double u : DerivativeStationaryRoots(objective_u, u_lo, u_hi, options)) {
    const double c = CircularityFromU(u);
    if (!(c > lo && c < hi)) continue;
    const double value = objective_c(c);
    if (!best || value > best_value) {
      best = c;
      best_value = value;
    }
  }
  return best;
}

CircularitySolution OptimizeCircularity(const SystemParams& params,
                                        const ChannelGains& gains, double p_r,
                                        const StationaryOptions& options) {
  params.Validate();
  gains.Validate();
  SignalDesign{p_r, 0.0}.Validate(params);

  CircularitySolution sol;
  CircularityCandidates& cand = sol.candidates;

  std::array<Hop, 2> constant_hop{Hop::kFirst, Hop::kFirst};
  int crossings = 0;
  for (int i = 0; i < 2; ++i) {
    const auto xs = HopIntersectionCircularity(params, gains, p_r, i);
    if (!xs.empty()) {
      cand.intersections[i] = xs.front();
      ++crossings;
    } else {
      constant_hop[i] = Bottleneck(params, gains, SignalDesign{p_r, 0.5}, i);
    }
  }

  // Bottleneck tags on the pieces delimited by the intersections.
  std::vector<double> breaks{0.0, 1.0};
  for (const auto& x : cand.intersections) {
    if (x) breaks.push_back(*x);
  }
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (!(breaks[k] < breaks[k + 1])) continue;
    BottleneckInterval piece{breaks[k], breaks[k + 1]};
    const SignalDesign mid{p_r, 0.5 * (breaks[k] + breaks[k + 1])};
    for (int i = 0; i < 2; ++i) piece.hop[i] = Bottleneck(params, gains, mid, i);
    cand.bottleneck.push_back(piece);
  }

  std::vector<double> points;
  auto add_stationary = [&](int first, int second, double lo, double hi) {
    if (!(lo < hi)) return;
    if (auto c = CircularityStationaryPoint(params, gains, p_r, first, second,
                                            lo, hi, options)) {
      cand.stationaries.push_back(*c);
      points.push_back(*c);
    }
  };

  if (crossings == 0) {
    cand.case_tag = IntersectionCase::kNoIntersection;
    if (constant_hop[0] == Hop::kSecond && constant_hop[1] == Hop::kSecond) {
      points.push_back(0.0);
    } else if (constant_hop[0] == Hop::kFirst &&
               constant_hop[1] == Hop::kFirst) {
      points.push_back(1.0);
    } else {
      const int i = constant_hop[0] == Hop::kFirst ? 0 : 1;
      points.push_back(0.0);
      add_stationary(i, 1 - i, 0.0, 1.0);
      points.push_back(1.0);
    }
  } else if (crossings == 1) {
    cand.case_tag = IntersectionCase::kOneIntersection;
    const int i = cand.intersections[0] ? 0 : 1;
    const int j = 1 - i;
    const double c_i = *cand.intersections[i];
    if (constant_hop[j] == Hop::kFirst) {
      // Path i turns second-hop limited above c_i while j stays first-hop.
      points.push_back(c_i);
      add_stationary(j, i, c_i, 1.0);
      points.push_back(1.0);
    } else {
      points.push_back(0.0);
      add_stationary(i, j, 0.0, c_i);
      points.push_back(c_i);
    }
  } else {
    cand.case_tag = IntersectionCase::kTwoIntersections;
    if (*cand.intersections[1] < *cand.intersections[0]) {
      cand.pi_order = {1, 0};
    }
    const int lo_path = cand.pi_order[0];
    const int hi_path = cand.pi_order[1];
    const double c_lo = *cand.intersections[lo_path];
    const double c_hi = *cand.intersections[hi_path];
    points.push_back(c_lo);
    add_stationary(hi_path, lo_path, c_lo, c_hi);
    points.push_back(c_hi);
  }
  // Proper signalling is always a candidate.
  points.push_back(0.0);

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double best_rate = -1.0;
  for (double c : points) {
    const RateBreakdown rates = TotalRate(params, gains, SignalDesign{p_r, c});
    cand.evaluations.emplace_back(c, rates.total);
    if (rates.total > best_rate) {
      best_rate = rates.total;
      sol.c_x = c;
      sol.rates = rates;
    }
  }
  return sol;
}

}  // namespace relay
