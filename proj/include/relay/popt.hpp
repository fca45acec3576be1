// Optimal relay power at a fixed circularity coefficient.
//
// The total rate is piecewise in p_r: below both per-path hop intersections
// every path is second-hop limited and the rate increases; above both every
// path is first-hop limited and the rate decreases; in between the objective
// is R_{pi1,1} + R_{pi2,2}. The maximiser is therefore an intersection point,
// a stationary point of that middle piece, or the power budget.

#ifndef RELAY_POPT_HPP_
#define RELAY_POPT_HPP_

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "relay/model.hpp"
#include "relay/rootfind.hpp"

namespace relay {

struct PowerIntersection {
  // Unique positive crossing of R_{i,1} and R_{i,2}, if any.
  std::optional<double> unclipped;
  // The same point when it lies in (0, p_max].
  std::optional<double> feasible;
};

struct PowerCandidates {
  std::vector<double> intersections;  // P_int
  std::vector<double> stationaries;   // P_st
  double budget = 0.0;                // p_max
  // Paths ordered by where they switch from second-hop to first-hop limited.
  std::array<int, 2> pi_order{0, 1};
  // Switch point of each path in (0, p_max]; 0 when the path is first-hop
  // limited on the whole budget, p_max when second-hop limited throughout.
  std::array<double, 2> switch_points{};
  // (candidate power, total rate), ascending in power.
  std::vector<std::pair<double, double>> evaluations;
};

struct PowerSolution {
  double p_r = 0.0;
  RateBreakdown rates;
  PowerCandidates candidates;
};

// Polynomial in p whose positive root equates the two hop rates of `path`
// (ascending coefficients, degree <= 4).
RealPolynomial PowerIntersectionQuartic(const SystemParams& params,
                                        const ChannelGains& gains, double c_x,
                                        int path);

PowerIntersection HopIntersectionPower(const SystemParams& params,
                                       const ChannelGains& gains, double c_x,
                                       int path);

// Stationary points of F_{i,j}(p) = R_{i,1}(p) + R_{j,2}(p) in (lo, hi].
// Proper signalling uses the closed form; otherwise the derivative is
// bracketed numerically. Defaults to the whole budget (0, p_max].
std::vector<double> PowerStationaryPoints(
    const SystemParams& params, const ChannelGains& gains, double c_x,
    int first_hop_path, int second_hop_path,
    std::optional<std::pair<double, double>> interval = std::nullopt,
    const StationaryOptions& options = {});

PowerSolution OptimizePower(const SystemParams& params,
                            const ChannelGains& gains, double c_x,
                            const StationaryOptions& options = {});

}  // namespace relay

#endif  // RELAY_POPT_HPP_
