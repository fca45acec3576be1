// Real-root isolation for the low-degree polynomials that appear in the
// power and circularity sub-problems, plus a derivative-bracketing search
// for stationary points of smooth scalar functions.

#ifndef RELAY_ROOTFIND_HPP_
#define RELAY_ROOTFIND_HPP_

#include <functional>
#include <span>
#include <vector>

#include "relay/model.hpp"

namespace relay {

class DegenerateInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr int kMaxPolynomialDegree = 5;

// Coefficients are stored in ascending degree order. Exact trailing zeros are
// trimmed on construction, so the leading coefficient is nonzero unless the
// polynomial is identically zero.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> ascending);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }

  double operator()(double x) const;
  // Running-error bound of Horner evaluation at x, scaled by unit roundoff.
  double EvalErrorBound(double x) const;
  RealPolynomial Derivative() const;
  double MaxAbsCoeff() const;
  // Every real root r satisfies |r| <= CauchyBound().
  double CauchyBound() const;

 private:
  std::vector<double> coeffs_;
};

// Real roots of `poly` in (lo, hi] (or [lo, hi] when open_lo is false),
// sorted and deduplicated within 1e-9. Roots of even multiplicity are
// reported once. Throws DegenerateInput for the zero polynomial.
std::vector<double> RealRootsIn(const RealPolynomial& poly, double lo,
                                double hi, bool open_lo = true);

// Sign changes of the coefficient sequence, zeros skipped. Upper bound on the
// number of positive roots, with matching parity.
int DescartesPositiveBound(const RealPolynomial& poly);

struct StationaryOptions {
  int grid = 512;
  double polish_rel_width = 1e-10;
};

// Interior stationary points of `f` on [lo, hi]: sign changes of a central
// difference derivative on a uniform grid, each polished by bisection.
std::vector<double> DerivativeStationaryRoots(
    const std::function<double(double)>& f, double lo, double hi,
    const StationaryOptions& options = {});

}  // namespace relay

#endif  // RELAY_ROOTFIND_HPP_
