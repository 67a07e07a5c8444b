#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qalab/errors.hpp"
#include "qalab/potential.hpp"

namespace qalab {

namespace {

complex clenshaw(const std::vector<complex>& c, complex t) {
  complex b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const complex b0 = c[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + t * b1 - b2;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();  // max |T| on A0 with T(z*) = 1
  std::vector<complex> coeffs;
  std::size_t anchor = 0;
};

// T(w) = 1 + (w - z*) S(w), S in span{T_k(w/r), k < n}. Lawson iteration for
// min max_{A0} |T|; returns T in the Chebyshev basis of w/r.
class AnchoredSolver {
 public:
  AnchoredSolver(const std::vector<complex>& a0, double r, int n) : a0_(a0), r_(r), n_(n) {
    basis_.resize(static_cast<Eigen::Index>(a0.size()), n);
    for (std::size_t i = 0; i < a0.size(); ++i) {
      const complex t = a0[i] / r;
      complex tkm1 = 1.0, tk = t;
      for (int k = 0; k < n; ++k) {
        if (k == 0) {
          basis_(static_cast<Eigen::Index>(i), 0) = 1.0;
        } else if (k == 1) {
          basis_(static_cast<Eigen::Index>(i), 1) = t;
        } else {
          const complex next = 2.0 * t * tk - tkm1;
          tkm1 = tk;
          tk = next;
          basis_(static_cast<Eigen::Index>(i), k) = next;
        }
      }
    }
  }

  Candidate solve(complex anchor, int iterations) const {
    const auto m = static_cast<Eigen::Index>(a0_.size());
    Eigen::MatrixXcd phi(m, n_);
    for (Eigen::Index i = 0; i < m; ++i) phi.row(i) = basis_.row(i) * (a0_[static_cast<std::size_t>(i)] - anchor);
    Eigen::VectorXd weight = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    Eigen::VectorXcd best_s = Eigen::VectorXcd::Zero(n_);
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iterations; ++it) {
      const Eigen::VectorXd sw = weight.cwiseSqrt();
      const Eigen::MatrixXcd a = sw.asDiagonal() * phi;
      const Eigen::VectorXcd b = -sw.cast<complex>();
      const Eigen::VectorXcd s = a.colPivHouseholderQr().solve(b);
      const Eigen::VectorXd res = (Eigen::VectorXcd::Ones(m) + phi * s).cwiseAbs();
      const double mx = res.maxCoeff();
      if (mx < best) {
        best = mx;
        best_s = s;
      }
      if (mx == 0.0) break;
      weight = weight.cwiseProduct(res);
      const double total = weight.sum();
      if (!(total > 0.0)) break;
      weight /= total;
    }
    Candidate c;
    c.value = best;
    c.coeffs = to_chebyshev(best_s, anchor);
    return c;
  }

 private:
  // 1 + r (t - z*/r) sum_k s_k T_k(t), using t T_0 = T_1 and t T_k = (T_{k+1} + T_{k-1}) / 2.
  std::vector<complex> to_chebyshev(const Eigen::VectorXcd& s, complex anchor) const {
    std::vector<complex> c(static_cast<std::size_t>(n_) + 1, 0.0);
    c[0] = 1.0;
    const complex shift = anchor / r_;
    for (int k = 0; k < n_; ++k) {
      const complex sk = r_ * s(k);
      if (k == 0) {
        c[1] += sk;
      } else {
        c[static_cast<std::size_t>(k) + 1] += 0.5 * sk;
        c[static_cast<std::size_t>(k) - 1] += 0.5 * sk;
      }
      c[static_cast<std::size_t>(k)] -= shift * sk;
    }
    return c;
  }

  const std::vector<complex>& a0_;
  double r_;
  int n_;
  Eigen::MatrixXcd basis_;
};

double max_abs(const std::vector<complex>& coeffs, const std::vector<complex>& pts, double r) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, std::abs(clenshaw(coeffs, p / r)));
  return m;
}

}  // namespace

complex ConstrainedCheb::operator()(complex w) const { return clenshaw(coeffs, w / radius); }

std::vector<complex> circle_grid(double r, std::size_t count) {
  std::vector<complex> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    pts[k] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count));
  return pts;
}

ConstrainedCheb constrained_cheb(const CompactSet1D& A0, double r, int n, const ConstrainedChebOptions& opt) {
  if (n < 1) throw ArgumentError("constrained_cheb needs n >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("disk radius must be positive and finite");
  if (A0.max_modulus() > r * (1.0 + 1e-12)) throw ArgumentError("A0 is not contained in the closed disk |w| <= r");
  if (opt.circle_points < 4 || opt.scan_angles < 1) throw ArgumentError("constrained_cheb: circle grid too coarse");

  const std::vector<complex> a0 = A0.sample(opt.a0_points_per_interval);
  const std::vector<complex> circle = circle_grid(r, opt.circle_points);
  const AnchoredSolver solver(a0, r, n);
  const std::size_t m = circle.size();

  // Coarse scan over anchors, then a local search over neighbouring circle nodes.
  const std::size_t stride = std::max<std::size_t>(1, m / opt.scan_angles);
  Candidate best;
  for (std::size_t k = 0; k < m; k += stride) {
    Candidate c = solver.solve(circle[k], opt.scan_iterations);
    c.anchor = k;
    if (c.value < best.value) best = std::move(c);
  }
  std::vector<char> polished(m, 0);
  Candidate top = solver.solve(circle[best.anchor], opt.polish_iterations);
  top.anchor = best.anchor;
  polished[top.anchor] = 1;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t d = 1; d <= stride; ++d) {
      for (std::size_t k : {(top.anchor + d) % m, (top.anchor + m - d) % m}) {
        if (polished[k]) continue;
        polished[k] = 1;
        Candidate c = solver.solve(circle[k], opt.polish_iterations);
        c.anchor = k;
        if (c.value < top.value) {
          top = std::move(c);
          moved = true;
        }
      }
      if (moved) break;
    }
  }

  ConstrainedCheb out;
  out.degree = n;
  out.radius = r;
  out.peak = circle[top.anchor];
  const double scale = max_abs(top.coeffs, circle, r);
  out.coeffs = top.coeffs;
  for (auto& c : out.coeffs) c /= scale;
  out.norm_on_A0 = max_abs(out.coeffs, a0, r);
  out.norm_on_disk = max_abs(out.coeffs, circle, r);
  return out;
}

TauCapacity tau_capacity(const CompactSet1D& A0, double r, int n, const ConstrainedChebOptions& opt) {
  TauCapacity out;
  out.cheb = constrained_cheb(A0, r, n, opt);
  out.tau = std::pow(out.cheb.norm_on_A0, 1.0 / n);

  const std::vector<complex> circle = circle_grid(r, opt.circle_points);
  if (A0.is_polar()) {
    out.polar = true;
    return out;
  }
  const CompactSet1D body(A0.intervals());
  double vmax = -1.0;
  auto scan = [&](const auto& green) {
    for (const auto& z : circle) {
      const double v = green(z);
      if (v > vmax) {
        vmax = v;
        out.formula_argmax = z;
      }
    }
  };
  if (body.intervals().size() == 1) {
    const IntervalDomain dom = body.intervals().front();
    scan([&](complex z) { return green_interval(z, dom); });
  } else {
    const CapacityEstimate cap = capacity_estimate(body, 400);
    if (!(cap.capacity > kCapacityFloor)) {
      out.polar = true;
      return out;
    }
    const FeketeGreen g = green_fekete(body, 400);
    scan([&](complex z) { return g(z); });
  }
  out.tau_by_formula = std::exp(-vmax);
  return out;
}

}  // namespace qalab
