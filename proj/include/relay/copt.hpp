// Optimal circularity coefficient at a fixed relay power.
//
// In C the first-hop rate increases and the second-hop rate decreases, so a
// path is first-hop limited below its hop intersection and second-hop limited
// above it. The instance is classified by how many paths cross inside (0, 1];
// each case yields a short candidate list on which the total rate is compared.

#ifndef RELAY_COPT_HPP_
#define RELAY_COPT_HPP_

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "relay/model.hpp"
#include "relay/rootfind.hpp"

namespace relay {

enum class IntersectionCase {
  kNoIntersection,
  kOneIntersection,
  kTwoIntersections,
};

const char* ToString(IntersectionCase c);

// A sub-interval of [0, 1] together with each path's limiting hop there.
struct BottleneckInterval {
  double lo = 0.0;
  double hi = 1.0;
  std::array<Hop, 2> hop{Hop::kFirst, Hop::kFirst};
};

struct CircularityCandidates {
  std::array<std::optional<double>, 2> intersections;
  std::vector<double> stationaries;
  IntersectionCase case_tag = IntersectionCase::kNoIntersection;
  std::vector<BottleneckInterval> bottleneck;
  // Ascending order of the two intersections; meaningful in the
  // two-intersection case.
  std::array<int, 2> pi_order{0, 1};
  // (candidate C, total rate), ascending in C.
  std::vector<std::pair<double, double>> evaluations;
};

struct CircularitySolution {
  double c_x = 0.0;
  RateBreakdown rates;
  CircularityCandidates candidates;
};

// Quadratic in u = 1 - C^2 whose roots equate the two hop rates of `path`.
RealPolynomial CircularityIntersectionQuadratic(const SystemParams& params,
                                                const ChannelGains& gains,
                                                double p_r, int path);

// Values C in (0, 1] where R_{i,1} = R_{i,2}, sorted.
std::vector<double> HopIntersectionCircularity(const SystemParams& params,
                                               const ChannelGains& gains,
                                               double p_r, int path);

// Stationary point of F_{i,j}(C) = R_{i,1} + R_{j,2} strictly inside
// (lo, hi). If several are found the one with the largest F is returned.
std::optional<double> CircularityStationaryPoint(
    const SystemParams& params, const ChannelGains& gains, double p_r,
    int first_hop_path, int second_hop_path, double lo, double hi,
    const StationaryOptions& options = {});

CircularitySolution OptimizeCircularity(const SystemParams& params,
                                        const ChannelGains& gains, double p_r,
                                        const StationaryOptions& options = {});

}  // namespace relay

#endif  // RELAY_COPT_HPP_
