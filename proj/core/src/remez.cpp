#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qalab/errors.hpp"
#include "qalab/minimax.hpp"

namespace qalab {

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged:
      return "converged";
    case SolverStatus::NotConverged:
      return "not_converged";
    case SolverStatus::Failed:
      return "failed";
  }
  return "unknown";
}

namespace {

struct Extremum {
  double x;
  double err;  // signed f - p
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

ChebApproximant solve_levelled(const IntervalDomain& dom, const std::vector<Extremum>& ref,
                               const SampledFunction& f, int n, double& levelled) {
  const int m = n + 2;
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  std::vector<double> tk(n + 1);
  for (int i = 0; i < m; ++i) {
    chebyshev_values(dom.to_unit(ref[i].x), tk);
    for (int j = 0; j <= n; ++j) a(i, j) = tk[j];
    a(i, n + 1) = (i % 2 == 0) ? 1.0 : -1.0;
    rhs(i) = f(ref[i].x);
  }
  const Eigen::VectorXd sol = a.fullPivLu().solve(rhs);
  levelled = sol(n + 1);
  std::vector<double> c(sol.data(), sol.data() + n + 1);
  return ChebApproximant(dom, std::move(c));
}

// Alternating extrema of the error: one (polished) peak per maximal sign run.
std::vector<Extremum> run_peaks(const std::vector<double>& x, const std::vector<double>& e,
                                const RealMap& err, bool polish) {
  std::vector<Extremum> peaks;
  int run_sign = 0;
  std::size_t best = 0;
  auto flush = [&](std::size_t idx, int s) {
    Extremum ex{x[idx], e[idx]};
    if (polish && x.size() > 2) {
      const double lo = x[idx == 0 ? 0 : idx - 1];
      const double hi = x[idx + 1 == x.size() ? idx : idx + 1];
      const RealMap signed_err = [&](double t) { return s * err(t); };
      const PeakSearch p = golden_section_max(signed_err, lo, hi);
      if (p.value > s * ex.err) ex = {p.location, s * p.value};
    }
    peaks.push_back(ex);
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int s = sign_of(e[i]);
    if (s == 0) continue;
    if (run_sign == 0) {
      run_sign = s;
      best = i;
    } else if (s != run_sign) {
      flush(best, run_sign);
      run_sign = s;
      best = i;
    } else if (std::abs(e[i]) > std::abs(e[best])) {
      best = i;
    }
  }
  if (run_sign != 0) flush(best, run_sign);
  return peaks;
}

// Insert the global maximum into the reference, replacing the nearest point of
// the same sign so that the signs keep alternating.
std::vector<Extremum> single_exchange(std::vector<Extremum> ref, const Extremum& top) {
  const int s = sign_of(top.err);
  const std::size_t m = ref.size();
  auto it = std::lower_bound(ref.begin(), ref.end(), top.x,
                             [](const Extremum& r, double v) { return r.x < v; });
  const std::size_t pos = static_cast<std::size_t>(it - ref.begin());
  if (pos < m && ref[pos].x == top.x) {
    ref[pos] = top;
    return ref;
  }
  if (pos == 0) {
    if (sign_of(ref[0].err) == s) {
      ref[0] = top;
    } else {
      ref.insert(ref.begin(), top);
      ref.pop_back();
    }
  } else if (pos == m) {
    if (sign_of(ref[m - 1].err) == s) {
      ref[m - 1] = top;
    } else {
      ref.push_back(top);
      ref.erase(ref.begin());
    }
  } else {
    // top lies between ref[pos-1] and ref[pos], which have opposite signs
    if (sign_of(ref[pos - 1].err) == s) {
      ref[pos - 1] = top;
    } else {
      ref[pos] = top;
    }
  }
  return ref;
}

// Reduces an alternating peak list to `keep` points containing the global
// maximum. The smallest peak goes first; an interior one leaves together with
// its smaller neighbour so that the signs keep alternating.
void trim_peaks(std::vector<Extremum>& peaks, std::size_t keep, double top_x) {
  auto amp = [&](std::size_t i) {
    return peaks[i].x == top_x ? std::numeric_limits<double>::infinity() : std::abs(peaks[i].err);
  };
  auto drop = [&](std::size_t i, std::size_t count) {
    peaks.erase(peaks.begin() + static_cast<std::ptrdiff_t>(i), peaks.begin() + static_cast<std::ptrdiff_t>(i + count));
  };
  while (peaks.size() > keep) {
    const std::size_t m = peaks.size();
    std::size_t low = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (amp(i) < amp(low)) low = i;
    if (low == 0 || low == m - 1) {
      drop(low, 1);
    } else if (m - keep >= 2) {
      drop(amp(low - 1) <= amp(low + 1) ? low - 1 : low, 2);
    } else {
      drop(amp(0) <= amp(m - 1) ? 0 : m - 1, 1);
    }
  }
}

PolyBestApprox remez_on_grid(const SampledFunction& f, const IntervalDomain& dom, int n, double tol,
                             std::size_t grid_size, const RemezOptions& opt) {
  const std::vector<double> grid = chebyshev_extrema(dom, grid_size);
  std::vector<double> fv(grid.size());
  double fnorm = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fv[i] = f(grid[i]);
    fnorm = std::max(fnorm, std::abs(fv[i]));
  }

  // Initial reference: grid points nearest the n+2 extrema of T_{n+1}; on a
  // Chebyshev grid that is rounding in the angle variable.
  std::vector<Extremum> ref;
  const double step = static_cast<double>(grid_size - 1) / static_cast<double>(n + 1);
  for (int j = 0; j <= n + 1; ++j) {
    const auto idx = static_cast<std::size_t>(std::lround(j * step));
    ref.push_back({grid[idx], 0.0});
  }

  PolyBestApprox best{.poly = ChebApproximant::constant(dom, 0.0)};
  best.error = std::numeric_limits<double>::infinity();
  best.grid_size = grid_size;
  std::vector<double> e(grid.size());

  for (int it = 1; it <= opt.max_iterations; ++it) {
    double levelled = 0.0;
    ChebApproximant p = solve_levelled(dom, ref, f, n, levelled);
    double csum = 0.0;
    for (double c : p.coeffs()) csum += std::abs(c);
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * (fnorm + csum);

    double gmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      e[i] = fv[i] - p(grid[i]);
      gmax = std::max(gmax, std::abs(e[i]));
    }
    const RealMap err = [&](double x) { return f(x) - p(x); };

    if (gmax <= floor) {
      PolyBestApprox out{.poly = p};
      out.error = opt.polish ? sup_norm_on_points(err, grid).value : gmax;
      out.levelled_error = std::abs(levelled);
      out.noise_floor = floor;
      for (auto& r : ref) r.err = err(r.x);
      for (const auto& r : ref) {
        out.reference.push_back(r.x);
        out.reference_errors.push_back(r.err);
      }
      out.status = SolverStatus::Converged;
      out.iterations = it;
      out.grid_size = grid_size;
      return out;
    }

    // Scan the grid together with the current reference: polished reference
    // points lie between grid nodes and carry the levelled alternation.
    std::vector<double> xs = grid;
    std::vector<double> es = e;
    for (const auto& r : ref) {
      const auto pos = std::lower_bound(xs.begin(), xs.end(), r.x);
      if (pos != xs.end() && *pos == r.x) continue;
      const auto off = pos - xs.begin();
      xs.insert(pos, r.x);
      es.insert(es.begin() + off, err(r.x));
    }
    std::vector<Extremum> peaks = run_peaks(xs, es, err, opt.polish);
    const auto top_it = std::max_element(peaks.begin(), peaks.end(), [](const Extremum& l, const Extremum& r) {
      return std::abs(l.err) < std::abs(r.err);
    });
    const Extremum top = *top_it;
    const double emax = std::abs(top.err);

    std::vector<Extremum> next;
    if (peaks.size() >= static_cast<std::size_t>(n) + 2) {
      next = std::move(peaks);
      trim_peaks(next, static_cast<std::size_t>(n) + 2, top.x);
    } else {
      for (auto& r : ref) r.err = err(r.x);
      next = single_exchange(ref, top);
    }

    double amin = std::numeric_limits<double>::infinity();
    bool alternating = true;
    for (std::size_t i = 0; i < next.size(); ++i) {
      amin = std::min(amin, std::abs(next[i].err));
      if (i > 0 && sign_of(next[i].err) == sign_of(next[i - 1].err)) alternating = false;
    }
    const double defect = emax - amin;

    PolyBestApprox cur{.poly = p};
    cur.error = emax;
    cur.levelled_error = std::abs(levelled);
    cur.oscillation_defect = defect;
    cur.noise_floor = floor;
    for (const auto& r : next) {
      cur.reference.push_back(r.x);
      cur.reference_errors.push_back(r.err);
    }
    cur.iterations = it;
    cur.grid_size = grid_size;

    if (alternating && next.size() == static_cast<std::size_t>(n) + 2 && defect <= tol * emax + floor) {
      cur.status = SolverStatus::Converged;
      return cur;
    }
    if (emax < best.error) best = std::move(cur);

    std::sort(next.begin(), next.end(), [](const Extremum& l, const Extremum& r) { return l.x < r.x; });
    next.erase(std::unique(next.begin(), next.end(), [](const Extremum& l, const Extremum& r) { return l.x == r.x; }),
               next.end());
    if (next.size() != static_cast<std::size_t>(n) + 2) break;
    ref = std::move(next);
  }
  best.status = SolverStatus::NotConverged;
  return best;
}

}  // namespace

PolyBestApprox poly_best_approx(const SampledFunction& f, const IntervalDomain& dom, int n, double tol,
                                const RemezOptions& opt) {
  if (n < 0) throw ArgumentError("degree must be nonnegative");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  const bool fixed = opt.grid_points != 0;
  std::size_t size = fixed ? opt.grid_points : std::max<std::size_t>(20 * static_cast<std::size_t>(n + 1), 41);
  if (size < static_cast<std::size_t>(n) + 2) throw ArgumentError("reference grid smaller than n + 2");

  PolyBestApprox result = remez_on_grid(f, dom, n, tol, size, opt);
  while (!fixed && result.status != SolverStatus::Converged && size < opt.max_grid) {
    size = std::min(opt.max_grid, 2 * size);
    PolyBestApprox retry = remez_on_grid(f, dom, n, tol, size, opt);
    if (retry.status == SolverStatus::Converged || retry.error < result.error) result = std::move(retry);
  }
  return result;
}

EquioscillationCheck verify_equioscillation(const PolyBestApprox& r, int n, double tol) {
  EquioscillationCheck check;
  if (r.error <= r.noise_floor) {
    check.alternates = true;
    check.passed = r.status == SolverStatus::Converged;
    return check;
  }
  check.alternates = r.reference_errors.size() >= static_cast<std::size_t>(n) + 2;
  for (std::size_t i = 0; i < r.reference_errors.size(); ++i) {
    const double v = r.reference_errors[i];
    if (v == 0.0 || (i > 0 && sign_of(v) == sign_of(r.reference_errors[i - 1]))) check.alternates = false;
    check.max_amplitude_gap = std::max(check.max_amplitude_gap, std::abs(std::abs(v) - r.error));
  }
  check.passed = check.alternates && check.max_amplitude_gap <= tol * r.error + r.noise_floor;
  return check;
}

}  // namespace qalab
