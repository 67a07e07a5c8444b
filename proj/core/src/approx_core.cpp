#include "qalab/approx_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qalab/errors.hpp"

namespace qalab {

IntervalDomain::IntervalDomain(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream msg;
    msg << "interval requires finite a < b, got [" << a << ", " << b << "]";
    throw ArgumentError(msg.str());
  }
}

double SampledFunction::operator()(double x) const {
  double y = 0.0;
  try {
    y = evaluator(x);
  } catch (const InputFunctionError&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "function '" << label << "' failed at x = " << x << ": " << e.what();
    throw InputFunctionError(msg.str(), x);
  }
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "function '" << label << "' is not finite at x = " << x;
    throw InputFunctionError(msg.str(), x);
  }
  return y;
}

std::vector<double> chebyshev_extrema(const IntervalDomain& dom, std::size_t count) {
  std::vector<double> pts(count);
  if (count == 0) return pts;
  if (count == 1) {
    pts[0] = dom.midpoint();
    return pts;
  }
  const double m = static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    // ascending: t_j = -cos(pi j / m); sin form keeps the symmetry exact
    const double t = std::sin(std::numbers::pi * (2.0 * static_cast<double>(j) - m) / (2.0 * m));
    pts[j] = dom.from_unit(t);
  }
  pts.front() = dom.a();
  pts.back() = dom.b();
  return pts;
}

void chebyshev_values(double t, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = t;
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = 2.0 * t * out[k - 1] - out[k - 2];
}

namespace {

template <typename T>
T clenshaw(const std::vector<double>& c, T t) {
  T b1{0.0};
  T b2{0.0};
  for (std::size_t k = c.size(); k-- > 1;) {
    T b0 = c[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + t * b1 - b2;
}

}  // namespace

ChebApproximant::ChebApproximant(IntervalDomain domain, std::vector<double> coeffs)
    : domain_(domain), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ArgumentError("Chebyshev approximant needs at least one coefficient");
}

ChebApproximant ChebApproximant::constant(const IntervalDomain& domain, double c) {
  return ChebApproximant(domain, {c});
}

ChebApproximant ChebApproximant::from_monomial(const IntervalDomain& domain, std::span<const double> mono) {
  if (mono.empty()) throw ArgumentError("empty monomial coefficient list");
  // Horner in the Chebyshev basis: acc <- acc * t + m_k, with t*T_j = (T_{j+1} + T_{|j-1|})/2.
  std::vector<double> acc{mono.back()};
  for (std::size_t k = mono.size() - 1; k-- > 0;) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      if (j == 0) {
        next[1] += acc[0];
      } else {
        next[j + 1] += 0.5 * acc[j];
        next[j - 1] += 0.5 * acc[j];
      }
    }
    next[0] += mono[k];
    acc = std::move(next);
  }
  return ChebApproximant(domain, std::move(acc));
}

double ChebApproximant::operator()(double x) const { return clenshaw(coeffs_, domain_.to_unit(x)); }

complex ChebApproximant::operator()(complex z) const { return clenshaw(coeffs_, domain_.to_unit(z)); }

ChebApproximant ChebApproximant::scaled(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return ChebApproximant(domain_, std::move(c));
}

std::vector<double> ChebApproximant::to_monomial() const {
  const std::size_t n = coeffs_.size();
  std::vector<double> mono(n, 0.0);
  // T_k in powers of t, built by the three-term recurrence.
  std::vector<double> tkm1(n, 0.0);
  std::vector<double> tk(n, 0.0);
  tkm1[0] = 1.0;
  if (n > 0) mono[0] += coeffs_[0];
  if (n > 1) {
    tk[1] = 1.0;
    mono[1] += coeffs_[1];
  }
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<double> tkp1(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) tkp1[j + 1] += 2.0 * tk[j];
    for (std::size_t j = 0; j < n; ++j) tkp1[j] -= tkm1[j];
    for (std::size_t j = 0; j < n; ++j) mono[j] += coeffs_[k] * tkp1[j];
    tkm1 = std::move(tk);
    tk = std::move(tkp1);
  }
  return mono;
}

ChebApproximant operator-(const ChebApproximant& lhs, const ChebApproximant& rhs) {
  if (!(lhs.domain() == rhs.domain())) throw ArgumentError("approximants live on different domains");
  std::vector<double> c(std::max(lhs.coeffs().size(), rhs.coeffs().size()), 0.0);
  for (std::size_t k = 0; k < lhs.coeffs().size(); ++k) c[k] += lhs.coeffs()[k];
  for (std::size_t k = 0; k < rhs.coeffs().size(); ++k) c[k] -= rhs.coeffs()[k];
  return ChebApproximant(lhs.domain(), std::move(c));
}

RationalApproximant::RationalApproximant(int degree, ChebApproximant numer, ChebApproximant denom,
                                         double denom_sup_norm)
    : degree_(degree), numer_(std::move(numer)), denom_(std::move(denom)), denom_sup_norm_(denom_sup_norm) {
  if (degree < 0) throw ArgumentError("rational degree must be nonnegative");
  if (numer_.degree() > degree || denom_.degree() > degree)
    throw ArgumentError("numerator/denominator degree exceeds the rational type");
  if (!(numer_.domain() == denom_.domain())) throw ArgumentError("numerator and denominator domains differ");
}

RationalApproximant RationalApproximant::from_polynomial(const ChebApproximant& p, int degree) {
  return RationalApproximant(degree, p, ChebApproximant::constant(p.domain(), 1.0), 1.0);
}

double RationalApproximant::operator()(double x) const {
  const double q = denom_(x);
  if (std::abs(q) < kDefaultPoleFloor) {
    throw PoleProximityError("rational approximant evaluated at a pole", complex(x, 0.0));
  }
  return numer_(x) / q;
}

complex eval_approximant(const ChebApproximant& g, complex z) { return g(z); }

complex eval_approximant(const RationalApproximant& g, complex z, double pole_floor) {
  const complex q = g.denom()(z);
  if (std::abs(q) < pole_floor) {
    std::ostringstream msg;
    msg << "denominator |q(z)| = " << std::abs(q) << " below floor " << pole_floor << " at z = " << z;
    throw PoleProximityError(msg.str(), z);
  }
  return g.numer()(z) / q;
}

ChebApproximant cheb_interpolate(const SampledFunction& f, const IntervalDomain& dom, int n) {
  if (n < 0) throw ArgumentError("interpolation degree must be nonnegative");
  if (n == 0) return ChebApproximant::constant(dom, f(dom.midpoint()));
  const auto nodes = chebyshev_extrema(dom, static_cast<std::size_t>(n) + 1);
  // nodes are ascending, i.e. t_j = -cos(pi j/n); reindex to x_j = cos(pi j/n).
  std::vector<double> vals(n + 1);
  for (int j = 0; j <= n; ++j) vals[j] = f(nodes[n - j]);
  std::vector<double> c(n + 1, 0.0);
  const double pi_n = std::numbers::pi / n;
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      // cos(pi j k / n) with the argument reduced mod 2n for accuracy
      const long jk = (static_cast<long>(j) * k) % (2L * n);
      s += w * vals[j] * std::cos(pi_n * static_cast<double>(jk));
    }
    c[k] = (2.0 / n) * s;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return ChebApproximant(dom, std::move(c));
}

PeakSearch golden_section_max(const RealMap& h, double lo, double hi, int iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = h(x1);
  double f2 = h(x2);
  PeakSearch best{f1, x1};
  if (f2 > best.value) best = {f2, x2};
  for (int it = 0; it < iterations && x2 > x1; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = h(x2);
      if (f2 > best.value) best = {f2, x2};
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = h(x1);
      if (f1 > best.value) best = {f1, x1};
    }
  }
  return best;
}

PeakSearch sup_norm_on_points(const RealMap& g, std::span<const double> pts, bool polish) {
  PeakSearch best{};
  if (pts.empty()) return best;
  std::vector<double> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    v[i] = std::abs(g(pts[i]));
    if (v[i] > best.value || i == 0) best = {v[i], pts[i]};
  }
  if (!polish || pts.size() < 3 || best.value == 0.0) return best;

  // Polish every grid local maximum that could plausibly be the global one.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool left_ok = i == 0 || v[i] >= v[i - 1];
    const bool right_ok = i + 1 == pts.size() || v[i] >= v[i + 1];
    if (left_ok && right_ok && v[i] >= 0.9 * best.value) peaks.push_back(i);
  }
  constexpr std::size_t kMaxPolished = 64;
  if (peaks.size() > kMaxPolished) {
    std::partial_sort(peaks.begin(), peaks.begin() + kMaxPolished, peaks.end(),
                      [&](std::size_t l, std::size_t r) { return v[l] > v[r]; });
    peaks.resize(kMaxPolished);
  }
  const RealMap absg = [&](double x) { return std::abs(g(x)); };
  for (std::size_t i : peaks) {
    const double lo = pts[i == 0 ? 0 : i - 1];
    const double hi = pts[i + 1 == pts.size() ? i : i + 1];
    if (!(hi > lo)) continue;
    const PeakSearch p = golden_section_max(absg, lo, hi);
    if (p.value > best.value) best = p;
  }
  return best;
}

double sup_norm_estimate(const RealMap& g, const IntervalDomain& dom, std::size_t m) {
  if (m < 2) throw ArgumentError("sup_norm_estimate needs at least 2 grid points");
  const auto grid = chebyshev_extrema(dom, m);
  return sup_norm_on_points(g, grid).value;
}

}  // namespace qalab
