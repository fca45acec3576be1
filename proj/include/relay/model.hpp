// Achievable-rate model of a two-path (alternate) decode-and-forward relay
// network whose relays transmit improper Gaussian signals.
//
// All channel quantities are squared magnitudes. Rates are in bits/s/Hz.

#ifndef RELAY_MODEL_HPP_
#define RELAY_MODEL_HPP_

#include <array>
#include <stdexcept>
#include <string>

namespace relay {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SystemParams {
  double p_s = 1.0;       // source transmit power
  double p_max = 1.0;     // relay power budget
  double sigma_n2 = 1.0;  // noise variance at every receiving node

  void Validate() const;
};

struct ChannelGains {
  std::array<double, 2> h2{};  // |h_i|^2, source -> relay i
  std::array<double, 2> g2{};  // |g_i|^2, relay i -> destination
  double f2 = 0.0;             // |f|^2, reciprocal inter-relay channel

  void Validate() const;
};

struct SignalDesign {
  double p_r = 1.0;  // relay transmit power, (0, p_max]
  double c_x = 0.0;  // circularity coefficient, [0, 1]

  void Validate(const SystemParams& params) const;
};

// hop[i][0] is the first hop (S -> R_i), hop[i][1] the second (R_i -> D).
struct RateBreakdown {
  std::array<std::array<double, 2>, 2> hop{};
  std::array<double, 2> path{};
  double total = 0.0;
};

enum class Hop { kFirst = 0, kSecond = 1 };

// Paths are addressed by 0-based index throughout the library.
double FirstHopRate(const SystemParams& params, const ChannelGains& gains,
                    const SignalDesign& design, int path);

double SecondHopRate(const SystemParams& params, const ChannelGains& gains,
                     const SignalDesign& design, int path);

double HopRate(const SystemParams& params, const ChannelGains& gains,
               const SignalDesign& design, int path, Hop hop);

RateBreakdown TotalRate(const SystemParams& params, const ChannelGains& gains,
                        const SignalDesign& design);

// Shorthand for TotalRate(...).total.
double TotalRateValue(const SystemParams& params, const ChannelGains& gains,
                      const SignalDesign& design);

// F_{i,j} = R_{i,1} + R_{j,2}: the objective on an interval where path i is
// first-hop limited and path j is second-hop limited.
double MixedHopSum(const SystemParams& params, const ChannelGains& gains,
                   const SignalDesign& design, int first_hop_path,
                   int second_hop_path);

// Hop that attains the path minimum. Exact ties report the first hop.
Hop Bottleneck(const SystemParams& params, const ChannelGains& gains,
               const SignalDesign& design, int path);

enum class Node { kRelay1, kRelay2, kDestination1, kDestination2 };

struct Circularity {
  double received = 0.0;               // C_y
  double interference_plus_noise = 0.0;  // C_I
};

// Circularity coefficients of the received and of the interference-plus-noise
// signal at a receiving node. kDestinationN is the destination listening to
// relay N.
Circularity ReceivedCircularity(const SystemParams& params,
                                const ChannelGains& gains,
                                const SignalDesign& design, Node node);

}  // namespace relay

#endif  // RELAY_MODEL_HPP_
