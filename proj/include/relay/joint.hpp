// Joint power / circularity design: alternating (coordinate-descent) ascent,
// an exhaustive grid-search benchmark and the comparison strategies.

#ifndef RELAY_JOINT_HPP_
#define RELAY_JOINT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relay/model.hpp"
#include "relay/rootfind.hpp"

namespace relay {

struct CdConfig {
  double eps_max = 1e-4;
  int max_iters = 100;
  std::optional<double> init_p_r;  // defaults to p_max
  double init_c_x = 0.0;
  // Compare |dp_r| / p_max rather than raw |dp_r| against eps_max.
  bool normalize_power = true;
  StationaryOptions stationary;

  void Validate(const SystemParams& params) const;
};

struct TrajectoryPoint {
  double p_r = 0.0;
  double c_x = 0.0;
  double rate = 0.0;
};

struct OptimizerResult {
  SignalDesign design;
  RateBreakdown rates;
  int iterations = 0;
  // Coordinate descent: the initial point, then the point after every power
  // step and every circularity step. Other strategies: the final point only.
  std::vector<TrajectoryPoint> trajectory;
  bool converged = true;
};

OptimizerResult CoordinateDescent(const SystemParams& params,
                                  const ChannelGains& gains,
                                  const CdConfig& config = {});

// Uniform grid {p_max k / n_p}_{k=1..n_p} x {m / n_c}_{m=0..n_c}; ties go to
// the lexicographically smallest (p_r, c_x).
OptimizerResult GridSearch(const SystemParams& params,
                           const ChannelGains& gains, int n_p, int n_c);

enum class Strategy {
  kProperMpa,
  kProperOpa,
  kImproperMpa,
  kCdInit0,
  kCdInit1,
  kGridSearch,
};

class UnknownStrategy : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

Strategy ParseStrategy(std::string_view tag);
std::string_view ToString(Strategy s);
const std::vector<Strategy>& AllStrategies();

struct BaselineOptions {
  double eps_max = 1e-4;
  int max_iters = 100;
  bool normalize_power = true;
  int grid_p = 1000;
  int grid_c = 1000;
  StationaryOptions stationary;
};

OptimizerResult Baseline(const SystemParams& params, const ChannelGains& gains,
                         Strategy strategy,
                         const BaselineOptions& options = {});

}  // namespace relay

#endif  // RELAY_JOINT_HPP_
