#pragma once

// Function representation on a real segment, Chebyshev-basis approximants,
// evaluation on and off the segment, and sup-norm estimation.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qalab {

using complex = std::complex<double>;
using RealMap = std::function<double(double)>;

/// The closed segment [a, b], a < b, together with its affine map onto [-1, 1].
class IntervalDomain {
 public:
  IntervalDomain(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }
  double half_length() const noexcept { return 0.5 * (b_ - a_); }

  double to_unit(double x) const noexcept { return (2.0 * x - a_ - b_) / (b_ - a_); }
  complex to_unit(complex z) const noexcept { return (2.0 * z - a_ - b_) / (b_ - a_); }
  double from_unit(double t) const noexcept { return midpoint() + half_length() * t; }

  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

  friend bool operator==(const IntervalDomain&, const IntervalDomain&) = default;

 private:
  double a_;
  double b_;
};

enum class Smoothness { Analytic, Smooth, Lipschitz, Continuous };

/// A real function on a segment. Calls go through operator(), which turns
/// exceptions and non-finite results into InputFunctionError.
struct SampledFunction {
  RealMap evaluator;
  std::string label;
  Smoothness smoothness_hint = Smoothness::Continuous;

  double operator()(double x) const;
};

/// `count` Chebyshev extreme points cos(pi j/(count-1)) mapped to `dom`, ascending.
/// count == 1 gives the midpoint.
std::vector<double> chebyshev_extrema(const IntervalDomain& dom, std::size_t count);

/// Finite Chebyshev series sum_k c_k T_k(t(x)) on a domain.
class ChebApproximant {
 public:
  ChebApproximant(IntervalDomain domain, std::vector<double> coeffs);

  static ChebApproximant constant(const IntervalDomain& domain, double c);
  /// Coefficients of a power-basis polynomial sum_k m_k t^k in the mapped variable t.
  static ChebApproximant from_monomial(const IntervalDomain& domain, std::span<const double> mono);

  const IntervalDomain& domain() const noexcept { return domain_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double x) const;
  complex operator()(complex z) const;

  ChebApproximant scaled(double s) const;
  /// Power-basis coefficients in the mapped variable t (ill-conditioned for high degree).
  std::vector<double> to_monomial() const;

  friend ChebApproximant operator-(const ChebApproximant& lhs, const ChebApproximant& rhs);

 private:
  IntervalDomain domain_;
  std::vector<double> coeffs_;
};

/// r = p/q of type (n, n) with the denominator normalized to unit sup norm on the domain.
class RationalApproximant {
 public:
  RationalApproximant(int degree, ChebApproximant numer, ChebApproximant denom, double denom_sup_norm);

  /// Wraps a polynomial as p/1.
  static RationalApproximant from_polynomial(const ChebApproximant& p, int degree);

  int degree() const noexcept { return degree_; }
  const IntervalDomain& domain() const noexcept { return numer_.domain(); }
  const ChebApproximant& numer() const noexcept { return numer_; }
  const ChebApproximant& denom() const noexcept { return denom_; }
  double denom_sup_norm() const noexcept { return denom_sup_norm_; }

  double operator()(double x) const;

 private:
  int degree_;
  ChebApproximant numer_;
  ChebApproximant denom_;
  double denom_sup_norm_;
};

inline constexpr double kDefaultPoleFloor = 1e-14;

complex eval_approximant(const ChebApproximant& g, complex z);
/// Throws PoleProximityError when |denom(z)| < pole_floor.
complex eval_approximant(const RationalApproximant& g, complex z, double pole_floor = kDefaultPoleFloor);

/// Degree-n interpolant at the n+1 Chebyshev extreme points of `dom`.
ChebApproximant cheb_interpolate(const SampledFunction& f, const IntervalDomain& dom, int n);

/// Max of |g| over an m-point Chebyshev grid, with golden-section polish near the
/// grid local maxima. Requires m >= 2.
double sup_norm_estimate(const RealMap& g, const IntervalDomain& dom, std::size_t m);

/// Default grid size used by callers of sup_norm_estimate for a degree-n object.
inline std::size_t default_sup_grid(int degree) { return 32 * static_cast<std::size_t>(degree + 1); }

struct PeakSearch {
  double value = 0.0;     // max |g|
  double location = 0.0;  // argmax
};

/// Same estimator on an arbitrary ascending point set.
PeakSearch sup_norm_on_points(const RealMap& g, std::span<const double> sorted_points, bool polish = true);

/// Maximize h on [lo, hi] by golden-section search; returns {value, argmax}.
PeakSearch golden_section_max(const RealMap& h, double lo, double hi, int iterations = 80);

/// Chebyshev polynomials T_0..T_n at real t.
void chebyshev_values(double t, std::span<double> out);

}  // namespace qalab
