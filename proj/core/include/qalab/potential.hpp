#pragma once

// One-variable logarithmic potential theory: Green extremal functions,
// logarithmic capacity, constrained Chebyshev polynomials, tau-capacity and
// Bernstein-Walsh checks.

#include <complex>
#include <cstddef>
#include <vector>

#include "qalab/approx_core.hpp"

namespace qalab {

/// A finite union of real segments plus optional complex atoms. Intervals are
/// kept sorted and merged. Atoms are polar and do not contribute capacity.
class CompactSet1D {
 public:
  explicit CompactSet1D(std::vector<IntervalDomain> intervals, std::vector<complex> points = {});

  static CompactSet1D interval(double a, double b) { return CompactSet1D({IntervalDomain(a, b)}); }
  static CompactSet1D atoms(std::vector<complex> points) { return CompactSet1D({}, std::move(points)); }

  const std::vector<IntervalDomain>& intervals() const noexcept { return intervals_; }
  const std::vector<complex>& points() const noexcept { return points_; }

  /// True when z lies on one of the intervals or coincides with an atom.
  bool contains(complex z) const noexcept;
  bool is_polar() const noexcept { return intervals_.empty(); }
  double max_modulus() const noexcept;
  double total_length() const noexcept;
  CompactSet1D scaled(double s) const;

  /// Chebyshev extreme points on every interval (`per_interval` each) followed by the atoms.
  std::vector<complex> sample(std::size_t per_interval) const;

 private:
  std::vector<IntervalDomain> intervals_;
  std::vector<complex> points_;
};

/// Rectangular grid of complex nodes; coordinates are lo + (hi - lo) * (i / (count - 1)).
struct ComplexGrid {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  std::size_t re_count = 100;
  std::size_t im_count = 100;

  complex node(std::size_t i_re, std::size_t i_im) const noexcept;
  std::size_t size() const noexcept { return re_count * im_count; }

  /// [-2, 2]^2 with 100 x 100 nodes.
  static ComplexGrid standard() { return {}; }
};

/// Green function of C \ [a, b] with pole at infinity: log|phi(z)| for the exterior
/// Joukowski map, 0 on the segment.
double green_interval(complex z, const IntervalDomain& dom);

/// Greedy Leja sequence of n points on K (candidates: Chebyshev points on each interval).
std::vector<complex> leja_points(const CompactSet1D& K, int n);

struct CapacityEstimate {
  double capacity = 0.0;              // cell-corrected discrete energy estimate
  double transfinite_diameter = 0.0;  // plain geometric mean of pairwise distances
  double envelope = 0.0;              // min over Leja prefixes of the transfinite diameter
  int n = 0;
};

CapacityEstimate capacity_estimate(const CompactSet1D& K, int n);

/// Logarithmic capacity of K from n Leja points; 0 for a polar K.
double log_capacity(const CompactSet1D& K, int n);

/// Discrete Green-function estimate built from n Leja points:
/// max(0, (1/n) sum_j log|z - x_j| - log cap), and exactly 0 on K.
class FeketeGreen {
 public:
  FeketeGreen(CompactSet1D set, std::vector<complex> points, CapacityEstimate capacity);

  double operator()(complex z) const;
  const std::vector<complex>& points() const noexcept { return points_; }
  const CompactSet1D& set() const noexcept { return set_; }
  double capacity() const noexcept { return capacity_.capacity; }
  const CapacityEstimate& capacity_estimate() const noexcept { return capacity_; }
  int count() const noexcept { return static_cast<int>(points_.size()); }

 private:
  CompactSet1D set_;
  std::vector<complex> points_;
  CapacityEstimate capacity_;
  double log_cap_;
};

/// Throws CapacityZeroError for polar K; requires n >= 2.
FeketeGreen green_fekete(const CompactSet1D& K, int n);

enum class FieldMethod { ClosedForm, Fekete };

struct ExtremalField {
  ComplexGrid grid;
  std::vector<double> values;  // row-major over (re, im)
  FieldMethod method = FieldMethod::ClosedForm;
  int fekete_count = 0;

  double at(std::size_t i_re, std::size_t i_im) const { return values[i_re * grid.im_count + i_im]; }
};

/// V*(., K) sampled on a grid: closed form when K is one segment, Leja estimate otherwise.
ExtremalField extremal_field(const CompactSet1D& K, const ComplexGrid& grid, int fekete_count = 400);

/// Minimizer of ||T||_{A0} over degree-n polynomials with ||T|| = 1 on |w| = r.
struct ConstrainedCheb {
  int degree = 0;
  double radius = 0.0;
  std::vector<complex> coeffs;  // Chebyshev basis in w / r
  double norm_on_A0 = 0.0;
  double norm_on_disk = 0.0;
  complex peak;  // circle point where |T| = 1 is attained

  complex operator()(complex w) const;
};

struct ConstrainedChebOptions {
  std::size_t a0_points_per_interval = 200;
  std::size_t circle_points = 256;
  std::size_t scan_angles = 64;
  int scan_iterations = 40;
  int polish_iterations = 300;
};

/// Equally spaced points r * exp(2 pi i k / count).
std::vector<complex> circle_grid(double r, std::size_t count);

/// Throws ArgumentError unless A0 lies in the closed disk |w| <= r and n >= 1.
ConstrainedCheb constrained_cheb(const CompactSet1D& A0, double r, int n, const ConstrainedChebOptions& options = {});

struct TauCapacity {
  double tau = 0.0;              // ||T_n||_{A0}^(1/n)
  double tau_by_formula = 0.0;   // exp(-max_{|z|=r} V*(z, A0))
  bool polar = false;            // A0 below the capacity floor
  complex formula_argmax;
  ConstrainedCheb cheb;
};

inline constexpr double kCapacityFloor = 1e-6;

TauCapacity tau_capacity(const CompactSet1D& A0, double r, int n, const ConstrainedChebOptions& options = {});

struct BernsteinWalshReport {
  double max_violation = 0.0;  // max over the grid of (1/n) log|p(z)| - V*(z, dom)
  complex witness;
  double norm_used = 1.0;      // sup norm the polynomial was divided by (1 if already <= 1)
};

BernsteinWalshReport bernstein_walsh_check(const ChebApproximant& p, const IntervalDomain& dom,
                                           const ComplexGrid& grid);

}  // namespace qalab
