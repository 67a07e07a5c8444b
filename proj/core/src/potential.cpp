#include "qalab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qalab/errors.hpp"

namespace qalab {

CompactSet1D::CompactSet1D(std::vector<IntervalDomain> intervals, std::vector<complex> points)
    : points_(std::move(points)) {
  std::sort(intervals.begin(), intervals.end(),
            [](const IntervalDomain& l, const IntervalDomain& r) { return l.a() < r.a(); });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.a() <= intervals_.back().b()) {
      const IntervalDomain last = intervals_.back();
      intervals_.back() = IntervalDomain(last.a(), std::max(last.b(), iv.b()));
    } else {
      intervals_.push_back(iv);
    }
  }
  for (const auto& p : points_)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) throw ArgumentError("compact set atom is not finite");
  if (intervals_.empty() && points_.empty()) throw ArgumentError("compact set must be nonempty");
}

bool CompactSet1D::contains(complex z) const noexcept {
  if (z.imag() == 0.0) {
    for (const auto& iv : intervals_)
      if (iv.contains(z.real())) return true;
  }
  return std::find(points_.begin(), points_.end(), z) != points_.end();
}

double CompactSet1D::max_modulus() const noexcept {
  double m = 0.0;
  for (const auto& iv : intervals_) m = std::max({m, std::abs(iv.a()), std::abs(iv.b())});
  for (const auto& p : points_) m = std::max(m, std::abs(p));
  return m;
}

double CompactSet1D::total_length() const noexcept {
  double s = 0.0;
  for (const auto& iv : intervals_) s += iv.length();
  return s;
}

CompactSet1D CompactSet1D::scaled(double s) const {
  if (!(s > 0.0)) throw ArgumentError("scale factor must be positive");
  std::vector<IntervalDomain> iv;
  for (const auto& i : intervals_) iv.emplace_back(s * i.a(), s * i.b());
  std::vector<complex> pts;
  for (const auto& p : points_) pts.push_back(s * p);
  return CompactSet1D(std::move(iv), std::move(pts));
}

std::vector<complex> CompactSet1D::sample(std::size_t per_interval) const {
  std::vector<complex> out;
  for (const auto& iv : intervals_)
    for (double x : chebyshev_extrema(iv, per_interval)) out.emplace_back(x, 0.0);
  out.insert(out.end(), points_.begin(), points_.end());
  return out;
}

complex ComplexGrid::node(std::size_t i_re, std::size_t i_im) const noexcept {
  auto coord = [](double lo, double hi, std::size_t i, std::size_t count) {
    if (count < 2) return lo;
    return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
  };
  return {coord(re_min, re_max, i_re, re_count), coord(im_min, im_max, i_im, im_count)};
}

double green_interval(complex z, const IntervalDomain& dom) {
  if (z.imag() == 0.0 && dom.contains(z.real())) return 0.0;
  const complex t = dom.to_unit(z);
  // sqrt(t-1)*sqrt(t+1) is the branch of sqrt(t^2-1) that behaves like t at infinity
  const complex w = t + std::sqrt(t - 1.0) * std::sqrt(t + 1.0);
  const double mod = std::abs(w);
  return std::max(0.0, mod >= 1.0 ? std::log(mod) : -std::log(mod));
}

std::vector<complex> leja_points(const CompactSet1D& K, int n) {
  if (n < 1) throw ArgumentError("Leja selection needs n >= 1");
  if (K.is_polar()) throw CapacityZeroError("Leja points need a set of positive capacity");
  const std::size_t total = std::max<std::size_t>(20 * static_cast<std::size_t>(n), 2000);
  const double len = K.total_length();
  std::vector<double> cand;
  for (const auto& iv : K.intervals()) {
    const auto share = static_cast<std::size_t>(std::ceil(static_cast<double>(total) * iv.length() / len));
    const auto pts = chebyshev_extrema(iv, std::max<std::size_t>(share, 16));
    cand.insert(cand.end(), pts.begin(), pts.end());
  }
  std::vector<double> score(cand.size(), 0.0);
  std::size_t first = 0;
  for (std::size_t i = 1; i < cand.size(); ++i)
    if (std::abs(cand[i]) > std::abs(cand[first])) first = i;

  std::vector<complex> pts;
  std::size_t pick = first;
  for (int k = 0; k < n; ++k) {
    const double x = cand[pick];
    pts.emplace_back(x, 0.0);
    score[pick] = -std::numeric_limits<double>::infinity();
    if (k + 1 == n) break;
    std::size_t next = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (score[i] == -std::numeric_limits<double>::infinity()) continue;
      score[i] += std::log(std::abs(cand[i] - x));
      if (score[i] > best) {
        best = score[i];
        next = i;
      }
    }
    if (best == -std::numeric_limits<double>::infinity()) break;
    pick = next;
  }
  return pts;
}

namespace {

// Sum over j of log(l_j) - 3/2, the self-energy of each point's cell modelled as a
// uniform segment whose length is the local spacing within its interval.
double cell_self_energy(const CompactSet1D& K, const std::vector<complex>& pts) {
  double total = 0.0;
  for (const auto& iv : K.intervals()) {
    std::vector<double> xs;
    for (const auto& p : pts)
      if (iv.contains(p.real())) xs.push_back(p.real());
    if (xs.empty()) continue;
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size();
    for (std::size_t j = 0; j < m; ++j) {
      double cell = iv.length();
      if (m > 1) {
        if (j == 0) {
          cell = xs[1] - xs[0];
        } else if (j + 1 == m) {
          cell = xs[m - 1] - xs[m - 2];
        } else {
          cell = 0.5 * (xs[j + 1] - xs[j - 1]);
        }
      }
      total += std::log(cell) - 1.5;
    }
  }
  return total;
}

}  // namespace

CapacityEstimate capacity_estimate(const CompactSet1D& K, int n) {
  if (n < 2) throw ArgumentError("capacity estimate needs n >= 2");
  CapacityEstimate est;
  est.n = n;
  if (K.is_polar()) return est;
  const auto pts = leja_points(K, n);
  const std::size_t m = pts.size();
  double pair_sum = 0.0;  // sum over i<j of log|x_i - x_j|
  est.envelope = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t j = 0; j < k; ++j) pair_sum += std::log(std::abs(pts[k] - pts[j]));
    const double pairs = 0.5 * static_cast<double>(k + 1) * static_cast<double>(k);
    est.envelope = std::min(est.envelope, std::exp(pair_sum / pairs));
  }
  const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
  est.transfinite_diameter = std::exp(pair_sum / pairs);
  const double md = static_cast<double>(m);
  est.capacity = std::exp((2.0 * pair_sum + cell_self_energy(K, pts)) / (md * md));
  return est;
}

double log_capacity(const CompactSet1D& K, int n) { return capacity_estimate(K, n).capacity; }

FeketeGreen::FeketeGreen(CompactSet1D set, std::vector<complex> points, CapacityEstimate capacity)
    : set_(std::move(set)), points_(std::move(points)), capacity_(capacity), log_cap_(std::log(capacity.capacity)) {}

double FeketeGreen::operator()(complex z) const {
  if (set_.contains(z)) return 0.0;
  double s = 0.0;
  for (const auto& x : points_) s += std::log(std::abs(z - x));
  return std::max(0.0, s / static_cast<double>(points_.size()) - log_cap_);
}

FeketeGreen green_fekete(const CompactSet1D& K, int n) {
  if (n < 2) throw ArgumentError("green_fekete needs n >= 2");
  if (K.is_polar()) throw CapacityZeroError("compact set has zero capacity; V* is +infinity off the set");
  const CapacityEstimate cap = capacity_estimate(K, n);
  if (!(cap.capacity > kCapacityFloor)) throw CapacityZeroError("capacity below the resolution floor");
  return FeketeGreen(K, leja_points(K, n), cap);
}

ExtremalField extremal_field(const CompactSet1D& K, const ComplexGrid& grid, int fekete_count) {
  ExtremalField field;
  field.grid = grid;
  field.values.resize(grid.size());
  if (K.intervals().size() == 1 && K.points().empty()) {
    field.method = FieldMethod::ClosedForm;
    for (std::size_t i = 0; i < grid.re_count; ++i)
      for (std::size_t j = 0; j < grid.im_count; ++j)
        field.values[i * grid.im_count + j] = green_interval(grid.node(i, j), K.intervals().front());
    return field;
  }
  const FeketeGreen g = green_fekete(K, fekete_count);
  field.method = FieldMethod::Fekete;
  field.fekete_count = fekete_count;
  for (std::size_t i = 0; i < grid.re_count; ++i)
    for (std::size_t j = 0; j < grid.im_count; ++j) field.values[i * grid.im_count + j] = g(grid.node(i, j));
  return field;
}

BernsteinWalshReport bernstein_walsh_check(const ChebApproximant& p, const IntervalDomain& dom,
                                           const ComplexGrid& grid) {
  BernsteinWalshReport rep;
  const double norm = sup_norm_estimate([&](double x) { return p(x); }, dom, default_sup_grid(p.degree()));
  const double scale = norm > 1.0 ? norm : 1.0;
  rep.norm_used = scale;
  const double n = std::max(p.degree(), 1);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.re_count; ++i) {
    for (std::size_t j = 0; j < grid.im_count; ++j) {
      const complex z = grid.node(i, j);
      const double mag = std::abs(p(z)) / scale;
      const double v = std::log(mag) / n - green_interval(z, dom);
      if (v > rep.max_violation) {
        rep.max_violation = v;
        rep.witness = z;
      }
    }
  }
  return rep;
}

}  // namespace qalab
