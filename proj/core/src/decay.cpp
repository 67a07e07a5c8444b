#include <algorithm>
#include <cmath>
#include <limits>

#include "qalab/errors.hpp"
#include "qalab/minimax.hpp"

namespace qalab {

namespace {

double nth_root(double value, int n) { return value == 0.0 ? 0.0 : std::pow(value, 1.0 / n); }

}  // namespace

RootRate root_rate(std::span<const double> values, std::span<const int> indices, double window) {
  if (values.empty()) throw ArgumentError("root_rate needs at least one value");
  if (values.size() != indices.size()) throw ArgumentError("root_rate: values and indices differ in length");
  if (!(window > 0.0 && window <= 1.0)) throw ArgumentError("root_rate: window must lie in (0, 1]");
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (indices[i] <= 0) throw ArgumentError("root_rate: indices must be positive");
    if (!(values[i] >= 0.0)) throw ArgumentError("root_rate: values must be nonnegative");
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return indices[l] < indices[r]; });
  const auto keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(window * static_cast<double>(order.size()) - 1e-12)));
  RootRate rate{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = order.size() - keep; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const double r = nth_root(values[i], indices[i]);
    rate.liminf = std::min(rate.liminf, r);
    rate.limsup = std::max(rate.limsup, r);
  }
  return rate;
}

double geometric_fit_rate(std::span<const double> values, std::span<const int> indices) {
  if (values.size() != indices.size()) throw ArgumentError("geometric_fit_rate: length mismatch");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    const double x = indices[i];
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw ArgumentError("geometric_fit_rate needs two positive values");
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw ArgumentError("geometric_fit_rate needs two distinct indices");
  return std::exp((count * sxy - sx * sy) / denom);
}

DecaySolver minimax_solver(const SampledFunction& f, const IntervalDomain& dom, double tol,
                           const RationalOptions& rational_options) {
  DecaySolver s;
  s.polynomial = [f, dom, tol](int n) {
    const PolyBestApprox r = poly_best_approx(f, dom, n, tol);
    return ErrorSample{r.error, r.status};
  };
  s.rational = [f, dom, tol, rational_options](int n) {
    try {
      const RatBestApprox r = rat_best_approx(f, dom, n, tol, rational_options);
      return ErrorSample{r.error, r.status};
    } catch (const DegenerateApproximantError&) {
      return ErrorSample{std::numeric_limits<double>::quiet_NaN(), SolverStatus::Failed};
    }
  };
  return s;
}

DecayProfile decay_profile(std::span<const int> n_list, const DecaySolver& solver, double tol) {
  if (n_list.empty()) throw ArgumentError("decay_profile needs at least one degree");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 0) throw ArgumentError("degrees must be nonnegative");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ArgumentError("degree list must be strictly increasing");
  }

  DecayProfile profile;
  profile.tol = tol;
  double e_min = std::numeric_limits<double>::infinity();
  double rho_min = std::numeric_limits<double>::infinity();
  for (int n : n_list) {
    DecayEntry entry;
    entry.n = n;
    const ErrorSample pe = solver.polynomial(n);
    const ErrorSample re = solver.rational(n);
    entry.poly_status = pe.status;
    entry.rat_status = re.status;
    entry.e_raw = pe.value;
    entry.rho_raw = re.value;
    if (pe.status != SolverStatus::Failed && std::isfinite(pe.value)) e_min = std::min(e_min, pe.value);
    if (re.status != SolverStatus::Failed && std::isfinite(re.value)) rho_min = std::min(rho_min, re.value);
    entry.e_n = e_min;
    // a polynomial is an admissible rational, so rho_n never exceeds e_n
    entry.rho_n = std::min(rho_min, e_min);
    if (!std::isfinite(entry.e_n)) entry.poly_status = SolverStatus::Failed;
    profile.entries.push_back(entry);
  }

  std::vector<double> ev, rv;
  std::vector<int> idx;
  for (const auto& e : profile.entries) {
    if (!e.usable() || e.n <= 0) continue;
    ev.push_back(e.e_n);
    rv.push_back(e.rho_n);
    idx.push_back(e.n);
  }
  if (!idx.empty()) {
    profile.e_rate = root_rate(ev, idx);
    profile.rho_rate = root_rate(rv, idx);
    profile.alpha_e = profile.e_rate.liminf;
    profile.alpha_rho = profile.rho_rate.liminf;
  }
  return profile;
}

DecayProfile decay_profile(const SampledFunction& f, const IntervalDomain& dom, std::span<const int> n_list,
                           double tol) {
  return decay_profile(n_list, minimax_solver(f, dom, tol), tol);
}

}  // namespace qalab
