#include "relay/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relay {

namespace {

// 0.5 * log2(1 + x), evaluated through log1p.
inline double HalfLog2OnePlus(double x) {
  return 0.5 * std::log1p(x) / std::numbers::ln2;
}

bool PositiveFinite(double v) { return std::isfinite(v) && v > 0.0; }
bool NonNegativeFinite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void SystemParams::Validate() const {
  if (!PositiveFinite(p_s) || !PositiveFinite(p_max) ||
      !PositiveFinite(sigma_n2)) {
    throw InvalidArgument(
        "system parameters p_s, p_max and sigma_n2 must be positive and "
        "finite");
  }
}

void ChannelGains::Validate() const {
  for (int i = 0; i < 2; ++i) {
    if (!NonNegativeFinite(h2[i]) || !NonNegativeFinite(g2[i])) {
      throw InvalidArgument("channel gains must be finite and non-negative");
    }
  }
  if (!NonNegativeFinite(f2)) {
    throw InvalidArgument("channel gains must be finite and non-negative");
  }
}

void SignalDesign::Validate(const SystemParams& params) const {
  if (!(p_r > 0.0) || !(p_r <= params.p_max)) {
    throw InvalidArgument("relay power must lie in (0, p_max]");
  }
  if (!(c_x >= 0.0) || !(c_x <= 1.0)) {
    throw InvalidArgument("circularity coefficient must lie in [0, 1]");
  }
}

double FirstHopRate(const SystemParams& params, const ChannelGains& gains,
                    const SignalDesign& design, int path) {
  const double s2 = params.sigma_n2;
  const double sh = params.p_s * gains.h2[path];
  const double pf = design.p_r * gains.f2;
  const double impropriety = 1.0 - design.c_x * design.c_x;
  const double num = 2.0 * sh * (pf + s2) + sh * sh;
  // Bounded below by sigma^4 > 0.
  const double den = impropriety * pf * pf + 2.0 * pf * s2 + s2 * s2;
  return HalfLog2OnePlus(num / den);
}

double SecondHopRate(const SystemParams& params, const ChannelGains& gains,
                     const SignalDesign& design, int path) {
  const double snr = design.p_r * gains.g2[path] / params.sigma_n2;
  const double impropriety = 1.0 - design.c_x * design.c_x;
  return HalfLog2OnePlus(2.0 * snr + snr * snr * impropriety);
}

double HopRate(const SystemParams& params, const ChannelGains& gains,
               const SignalDesign& design, int path, Hop hop) {
  return hop == Hop::kFirst ? FirstHopRate(params, gains, design, path)
                            : SecondHopRate(params, gains, design, path);
}

RateBreakdown TotalRate(const SystemParams& params, const ChannelGains& gains,
                        const SignalDesign& design) {
  RateBreakdown out;
  for (int i = 0; i < 2; ++i) {
    out.hop[i][0] = FirstHopRate(params, gains, design, i);
    out.hop[i][1] = SecondHopRate(params, gains, design, i);
    out.path[i] = std::min(out.hop[i][0], out.hop[i][1]);
  }
  out.total = (out.path[0] + out.path[1]) / 2.0;
  return out;
}

double TotalRateValue(const SystemParams& params, const ChannelGains& gains,
                      const SignalDesign& design) {
  return TotalRate(params, gains, design).total;
}

double MixedHopSum(const SystemParams& params, const ChannelGains& gains,
                   const SignalDesign& design, int first_hop_path,
                   int second_hop_path) {
  return FirstHopRate(params, gains, design, first_hop_path) +
         SecondHopRate(params, gains, design, second_hop_path);
}

Hop Bottleneck(const SystemParams& params, const ChannelGains& gains,
               const SignalDesign& design, int path) {
  return FirstHopRate(params, gains, design, path) <=
                 SecondHopRate(params, gains, design, path)
             ? Hop::kFirst
             : Hop::kSecond;
}

Circularity ReceivedCircularity(const SystemParams& params,
                                const ChannelGains& gains,
                                const SignalDesign& design, Node node) {
  const double s2 = params.sigma_n2;
  switch (node) {
    case Node::kRelay1:
    case Node::kRelay2: {
      const int i = node == Node::kRelay1 ? 0 : 1;
      const double pf = design.p_r * gains.f2;
      const double improper_power = pf * design.c_x;
      return {improper_power / (params.p_s * gains.h2[i] + pf + s2),
              improper_power / (pf + s2)};
    }
    case Node::kDestination1:
    case Node::kDestination2: {
      const int i = node == Node::kDestination1 ? 0 : 1;
      const double pg = design.p_r * gains.g2[i];
      return {pg * design.c_x / (pg + s2), 0.0};
    }
  }
  return {};
}

}  // namespace relay
