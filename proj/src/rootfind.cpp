#include "relay/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace relay {

namespace {

constexpr double kDedupTol = 1e-9;
constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
// Slack on the Horner error bound when declaring a tangent root.
constexpr double kTangentSlack = 1e3;

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

// Root of a polynomial that is monotone on [a, b] with p(a), p(b) of strictly
// opposite signs. Newton steps are taken while they stay inside the bracket.
double MonotoneRoot(const RealPolynomial& p, const RealPolynomial& dp,
                    double a, double b) {
  const int sa = Sign(p(a));
  double x = 0.5 * (a + b);
  for (int iter = 0; iter < 400; ++iter) {
    const double fx = p(x);
    const int sx = Sign(fx);
    if (sx == 0) return x;
    if (sx == sa) {
      a = x;
    } else {
      b = x;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max(std::abs(a), std::abs(b)) ||
        b - a <= std::numeric_limits<double>::min()) {
      break;
    }
    const double d = dp(x);
    double next = (d != 0.0) ? x - fx / d : a - 1.0;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    // Keep Newton from stalling against a bracket end.
    if (next == x) next = 0.5 * (a + b);
    x = next;
  }
  return std::abs(p(a)) <= std::abs(p(b)) ? a : b;
}

std::vector<double> Dedup(std::vector<double> roots) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() || r - out.back() > kDedupTol) out.push_back(r);
  }
  return out;
}

bool NearZero(const RealPolynomial& p, double x) {
  return std::abs(p(x)) <= kTangentSlack * p.EvalErrorBound(x);
}

std::vector<double> RootsClosed(const RealPolynomial& p, double lo,
                                double hi) {
  std::vector<double> roots;
  if (p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    const auto c = p.coeffs();
    const double r = -c[0] / c[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  const RealPolynomial dp = p.Derivative();
  std::vector<double> knots{lo};
  for (double c : RootsClosed(dp, lo, hi)) {
    if (c > lo && c < hi) knots.push_back(c);
  }
  knots.push_back(hi);

  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (NearZero(p, knots[k])) roots.push_back(knots[k]);
  }
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k];
    const double b = knots[k + 1];
    if (Sign(p(a)) * Sign(p(b)) < 0) roots.push_back(MonotoneRoot(p, dp, a, b));
  }
  return roots;
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> ascending)
    : coeffs_(std::move(ascending)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw InvalidArgument("polynomial coefficients must be finite");
    }
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (degree() > kMaxPolynomialDegree) {
    throw InvalidArgument("polynomial degree exceeds " +
                          std::to_string(kMaxPolynomialDegree));
  }
}

double RealPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

double RealPolynomial::EvalErrorBound(double x) const {
  // Higham's bound: |error| <= gamma_{2n} * sum |c_k| |x|^k.
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * ax + std::abs(*it);
  }
  const double n = std::max<double>(1.0, 2.0 * degree());
  return n * kUnitRoundoff * acc;
}

RealPolynomial RealPolynomial::Derivative() const {
  if (coeffs_.size() <= 1) return RealPolynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  }
  return RealPolynomial(std::move(d));
}

double RealPolynomial::MaxAbsCoeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double RealPolynomial::CauchyBound() const {
  if (degree() <= 0) return 0.0;
  const double lead = std::abs(coeffs_.back());
  double m = 0.0;
  for (int k = 0; k < degree(); ++k) m = std::max(m, std::abs(coeffs_[k]));
  return 1.0 + m / lead;
}

std::vector<double> RealRootsIn(const RealPolynomial& poly, double lo,
                                double hi, bool open_lo) {
  if (poly.is_zero()) {
    throw DegenerateInput("all polynomial coefficients are zero");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("root interval must be finite with lo < hi");
  }
  std::vector<double> roots = Dedup(RootsClosed(poly, lo, hi));
  if (open_lo) {
    std::erase_if(roots, [lo](double r) { return r <= lo; });
  }
  return roots;
}

int DescartesPositiveBound(const RealPolynomial& poly) {
  if (poly.is_zero()) {
    throw DegenerateInput("all polynomial coefficients are zero");
  }
  int changes = 0;
  int last = 0;
  for (double c : poly.coeffs()) {
    const int s = Sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<double> DerivativeStationaryRoots(
    const std::function<double(double)>& f, double lo, double hi,
    const StationaryOptions& options) {
  if (options.grid < 64) {
    throw InvalidArgument("stationary-point grid needs at least 64 cells");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("stationary-point interval must be finite, lo < hi");
  }
  const double width = hi - lo;
  const double step = 1e-6 * width;
  // Central difference, shifted inward at the interval ends.
  auto slope = [&](double x) {
    const double a = std::max(lo, x - step);
    const double b = std::min(hi, x + step);
    return (f(b) - f(a)) / (b - a);
  };

  const int n = options.grid;
  std::vector<double> xs(n + 1);
  std::vector<double> ds(n + 1);
  for (int k = 0; k <= n; ++k) {
    xs[k] = (k == n) ? hi : lo + width * k / n;
    ds[k] = slope(xs[k]);
  }

  std::vector<double> out;
  const double tol = options.polish_rel_width * width;
  for (int k = 0; k < n; ++k) {
    const int sa = Sign(ds[k]);
    const int sb = Sign(ds[k + 1]);
    if (sa == 0) {
      if (k > 0) out.push_back(xs[k]);
      continue;
    }
    if (sb == 0 || sa == sb) continue;
    double a = xs[k];
    double b = xs[k + 1];
    while (b - a > tol) {
      const double m = 0.5 * (a + b);
      const int sm = Sign(slope(m));
      if (sm == 0) {
        a = b = m;
        break;
      }
      if (sm == sa) {
        a = m;
      } else {
        b = m;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace relay
