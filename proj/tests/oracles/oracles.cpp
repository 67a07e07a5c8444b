#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

namespace {

// Tableau simplex for min d^T y, M y = r (r >= 0), y >= 0.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& M, const Eigen::VectorXd& r)
      : m_(M.rows()), n_(M.cols()), t_(Eigen::MatrixXd::Zero(m_ + 1, n_ + m_ + 1)), basis_(m_) {
    t_.topLeftCorner(m_, n_) = M;
    t_.block(0, n_, m_, m_) = Eigen::MatrixXd::Identity(m_, m_);
    t_.col(n_ + m_).head(m_) = r;
    for (Eigen::Index i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  bool phase_one() {
    // cost 1 on artificials, expressed in terms of nonbasic columns
    t_.row(m_).setZero();
    for (Eigen::Index i = 0; i < m_; ++i) t_.row(m_) -= t_.row(i);
    t_.block(m_, n_, 1, m_).setZero();
    if (!iterate(n_ + m_)) return false;
    if (-t_(m_, n_ + m_) > 1e-9 * std::max(1.0, t_.col(n_ + m_).head(m_).cwiseAbs().maxCoeff())) return false;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  bool phase_two(const Eigen::VectorXd& d) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = d.transpose();
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) t_.row(m_) -= d(basis_[i]) * t_.row(i);
    return iterate(n_);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) y(basis_[i]) = t_(i, n_ + m_);
    return y;
  }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

 private:
  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i)
      if (i != row && t_(i, col) != 0.0) t_.row(i) -= t_(i, col) * t_.row(row);
    basis_[row] = col;
  }

  // Dantzig pricing, Bland's rule after a run of degenerate pivots.
  bool iterate(Eigen::Index columns) {
    const Eigen::Index rhs = n_ + m_;
    int stalled = 0;
    for (int it = 0; it < 100000; ++it) {
      Eigen::Index enter = -1;
      double best = -1e-11;
      for (Eigen::Index j = 0; j < columns; ++j) {
        const double rc = t_(m_, j);
        if (stalled > 50 ? rc < -1e-11 : rc < best) {
          enter = j;
          best = rc;
          if (stalled > 50) break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a > 1e-12) {
          const double r = t_(i, rhs) / a;
          if (r < ratio - 1e-15 || (std::abs(r - ratio) <= 1e-15 && leave >= 0 && basis_[i] < basis_[leave])) {
            ratio = r;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      stalled = ratio < 1e-14 ? stalled + 1 : 0;
      pivot(leave, enter);
    }
    return false;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpResult minimize_geq(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in, const Eigen::VectorXd& c) {
  // unit-scaled rows describe the same feasible set and keep the tableau balanced
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double s = A.row(i).cwiseAbs().maxCoeff();
    if (s > 0.0) {
      A.row(i) /= s;
      b(i) /= s;
    }
  }
  Eigen::MatrixXd M = A.transpose();
  Eigen::VectorXd r = c;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (r(i) < 0.0) {
      M.row(i) *= -1.0;
      r(i) = -r(i);
    }
  }
  Tableau tab(M, r);
  LpResult out;
  if (!tab.phase_one() || !tab.phase_two(-b)) return out;
  const Eigen::VectorXd y = tab.solution();
  out.value = b.dot(y);

  std::vector<Eigen::Index> rows;
  for (Eigen::Index j : tab.basis())
    if (j < A.rows()) rows.push_back(j);
  Eigen::MatrixXd AB(static_cast<Eigen::Index>(rows.size()), A.cols());
  Eigen::VectorXd bB(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    AB.row(static_cast<Eigen::Index>(i)) = A.row(rows[i]);
    bB(static_cast<Eigen::Index>(i)) = b(rows[i]);
  }
  out.x = AB.colPivHouseholderQr().solve(bB);
  out.ok = true;
  return out;
}

std::vector<double> cheb_grid(std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t j = 0; j < count; ++j)
    x[j] = -std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(count - 1));
  x.front() = -1.0;
  x.back() = 1.0;
  return x;
}

std::vector<double> graded_grid(std::size_t count, double center, std::size_t graded) {
  std::vector<double> x = cheb_grid(count);
  for (std::size_t k = 0; k < graded; ++k) {
    const double d = std::pow(10.0, -9.0 + 8.0 * static_cast<double>(k) / static_cast<double>(graded - 1));
    for (double t : {center - d, center + d})
      if (t > -1.0 && t < 1.0) x.push_back(t);
  }
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

double cheb_eval(const std::vector<double>& c, double t) {
  // plain three-term recurrence, deliberately not Clenshaw
  double tkm1 = 1.0, tk = t, s = c.empty() ? 0.0 : c[0];
  if (c.size() > 1) s += c[1] * t;
  for (std::size_t k = 2; k < c.size(); ++k) {
    const double tk1 = 2.0 * t * tk - tkm1;
    s += c[k] * tk1;
    tkm1 = tk;
    tk = tk1;
  }
  return s;
}

namespace {

Eigen::MatrixXd cheb_matrix(const std::vector<double>& x, int n) {
  Eigen::MatrixXd T(static_cast<Eigen::Index>(x.size()), n + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    T(r, 0) = 1.0;
    if (n >= 1) T(r, 1) = x[i];
    for (int k = 2; k <= n; ++k) T(r, k) = 2.0 * x[i] * T(r, k - 1) - T(r, k - 2);
  }
  return T;
}

}  // namespace

PolyMinimax poly_minimax(const std::vector<double>& x, const std::vector<double>& f, int n) {
  const auto m = static_cast<Eigen::Index>(x.size());
  const Eigen::MatrixXd T = cheb_matrix(x, n);
  // variables (c_0..c_n, t): p + t >= f and -p + t >= -f
  Eigen::MatrixXd A(2 * m, n + 2);
  Eigen::VectorXd b(2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A.row(i).head(n + 1) = T.row(i);
    A(i, n + 1) = 1.0;
    b(i) = f[static_cast<std::size_t>(i)];
    A.row(m + i).head(n + 1) = -T.row(i);
    A(m + i, n + 1) = 1.0;
    b(m + i) = -f[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 2);
  c(n + 1) = 1.0;
  const LpResult lp = minimize_geq(A, b, c);
  PolyMinimax out;
  out.coeffs.assign(lp.x.data(), lp.x.data() + n + 1);
  double err = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    err = std::max(err, std::abs(f[static_cast<std::size_t>(i)] - cheb_eval(out.coeffs, x[static_cast<std::size_t>(i)])));
  out.error = err;
  return out;
}

double alternating_lower_bound(const std::vector<double>& err, std::size_t count) {
  // one signed peak per sign run
  std::vector<double> peaks;
  for (double e : err) {
    if (e == 0.0) continue;
    if (!peaks.empty() && (peaks.back() > 0.0) == (e > 0.0)) {
      if (std::abs(e) > std::abs(peaks.back())) peaks.back() = e;
    } else {
      peaks.push_back(e);
    }
  }
  if (peaks.size() < count) return 0.0;
  // any alternating subsequence bounds the best error from below by its smallest amplitude
  while (peaks.size() > count) {
    std::size_t low = 0;
    for (std::size_t i = 1; i < peaks.size(); ++i)
      if (std::abs(peaks[i]) < std::abs(peaks[low])) low = i;
    const std::size_t m = peaks.size();
    if (low == 0 || low == m - 1) {
      peaks.erase(peaks.begin() + static_cast<std::ptrdiff_t>(low));
    } else if (m - count >= 2) {
      const std::size_t first = std::abs(peaks[low - 1]) <= std::abs(peaks[low + 1]) ? low - 1 : low;
      peaks.erase(peaks.begin() + static_cast<std::ptrdiff_t>(first), peaks.begin() + static_cast<std::ptrdiff_t>(first + 2));
    } else {
      peaks.erase(std::abs(peaks.front()) <= std::abs(peaks.back()) ? peaks.begin() : peaks.end() - 1);
    }
  }
  double lb = std::numeric_limits<double>::infinity();
  for (double p : peaks) lb = std::min(lb, std::abs(p));
  return lb;
}

RatMinimax rational_minimax(const std::vector<double>& x, const std::vector<double>& f, int n, int max_iterations) {
  const auto m = static_cast<Eigen::Index>(x.size());
  const Eigen::MatrixXd T = cheb_matrix(x, n);
  const int nv = 2 * (n + 1) + 1;

  RatMinimax cur;
  const PolyMinimax start = poly_minimax(x, f, n);
  cur.p = start.coeffs;
  cur.q.assign(static_cast<std::size_t>(n + 1), 0.0);
  cur.q[0] = 1.0;
  auto error_of = [&](const std::vector<double>& p, const std::vector<double>& q) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double t = x[static_cast<std::size_t>(i)];
      e = std::max(e, std::abs(f[static_cast<std::size_t>(i)] - cheb_eval(p, t) / cheb_eval(q, t)));
    }
    return e;
  };
  cur.error = error_of(cur.p, cur.q);

  for (int it = 0; it < max_iterations; ++it) {
    const double delta = cur.error;
    Eigen::MatrixXd A(2 * m + 2 * (n + 1), nv);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
    A.setZero();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double fi = f[static_cast<std::size_t>(i)];
      const double qk = cheb_eval(cur.q, x[static_cast<std::size_t>(i)]);
      // P - f Q + delta Q + z qk >= 0  and  -P + f Q + delta Q + z qk >= 0
      A.row(i).head(n + 1) = T.row(i);
      A.row(i).segment(n + 1, n + 1) = (delta - fi) * T.row(i);
      A(i, nv - 1) = qk;
      A.row(m + i).head(n + 1) = -T.row(i);
      A.row(m + i).segment(n + 1, n + 1) = (delta + fi) * T.row(i);
      A(m + i, nv - 1) = qk;
    }
    for (int j = 0; j <= n; ++j) {
      A(2 * m + 2 * j, n + 1 + j) = -1.0;
      b(2 * m + 2 * j) = -1.0;
      A(2 * m + 2 * j + 1, n + 1 + j) = 1.0;
      b(2 * m + 2 * j + 1) = -1.0;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
    c(nv - 1) = 1.0;
    const LpResult lp = minimize_geq(A, b, c);
    if (!lp.ok || lp.value > -1e-15) break;
    std::vector<double> p(lp.x.data(), lp.x.data() + n + 1);
    std::vector<double> q(lp.x.data() + n + 1, lp.x.data() + 2 * n + 2);
    bool positive = true;
    for (double t : x) positive = positive && cheb_eval(q, t) > 0.0;
    if (!positive) { if (getenv("DCA_TRACE")) fprintf(stderr, "not positive\n"); break; }
    const double e = error_of(p, q);
    cur.iterations = it + 1;
    if (!(e < cur.error)) break;
    cur.p = std::move(p);
    cur.q = std::move(q);
    cur.error = e;
  }
  std::vector<double> err(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) err[i] = f[i] - cheb_eval(cur.p, x[i]) / cheb_eval(cur.q, x[i]);
  cur.lower_bound = alternating_lower_bound(err, static_cast<std::size_t>(2 * n + 2));
  return cur;
}

std::vector<double> runge_cheb_coeffs(double c, int count) {
  const double s = std::sqrt(c * c - 1.0);
  const double r = c - s;
  std::vector<double> a(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) a[static_cast<std::size_t>(k)] = (k == 0 ? -1.0 : -2.0 * std::pow(r, k)) / s;
  return a;
}

}  // namespace oracle
