#pragma once

// Independent reference computations for the test suite: a dense simplex
// solver, discrete (grid) polynomial and rational minimax, and closed forms.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

struct LpResult {
  bool ok = false;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// min c^T x subject to A x >= b with x free, through the dual
/// max b^T y, A^T y = c, y >= 0 solved by a two-phase dense tableau simplex.
LpResult minimize_geq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

/// Chebyshev points of the second kind on [-1, 1], ascending.
std::vector<double> cheb_grid(std::size_t count);

/// Grid plus log-graded points on both sides of `center` down to distance 1e-9.
std::vector<double> graded_grid(std::size_t count, double center, std::size_t graded);

struct PolyMinimax {
  double error = 0.0;
  std::vector<double> coeffs;  // Chebyshev basis on [-1, 1]
};

/// Discrete best approximation of degree n on the given points of [-1, 1].
PolyMinimax poly_minimax(const std::vector<double>& x, const std::vector<double>& f, int n);

struct RatMinimax {
  double error = 0.0;
  std::vector<double> p;
  std::vector<double> q;
  int iterations = 0;
  double lower_bound = 0.0;  // de la Vallee Poussin bound from the final error curve
};

/// Smallest amplitude of an alternating subsequence of `count` sign-run peaks; 0 if too few.
double alternating_lower_bound(const std::vector<double>& err, std::size_t count);

/// Discrete best type-(n, n) rational approximation by the differential correction
/// algorithm. In ill-conditioned cases it may stop short of the optimum; `error` is
/// then an upper and `lower_bound` a lower bound for the discrete minimax value.
RatMinimax rational_minimax(const std::vector<double>& x, const std::vector<double>& f, int n,
                            int max_iterations = 60);

double cheb_eval(const std::vector<double>& c, double t);

/// Chebyshev coefficients of 1/(t - c) on [-1, 1] for c > 1: a_0 = -1/s, a_k = -2 r^k / s,
/// with s = sqrt(c^2 - 1) and r = c - s.
std::vector<double> runge_cheb_coeffs(double c, int count);

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& e : v) e = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
