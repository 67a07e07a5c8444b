#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qalab/errors.hpp"
#include "qalab/minimax.hpp"

namespace qalab {

namespace {

// All work happens in the mapped variable t in [-1, 1].
struct Barycentric {
  std::vector<double> support;  // z_j
  std::vector<double> alpha;    // numerator weights
  std::vector<double> beta;     // denominator weights
};

struct SampleSet {
  std::vector<double> t;  // ascending
  std::vector<double> f;
};

Eigen::VectorXd smallest_right_singular_vector(const Eigen::MatrixXd& a) {
  // Thin QR first so the SVD only sees a k-by-k triangle.
  if (a.rows() > a.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullV);
    return svd.matrixV().col(a.cols() - 1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(a.cols() - 1);
}

// Value of the barycentric form at sample i (support points use alpha_j/beta_j).
std::vector<double> bary_values(const Barycentric& r, const SampleSet& s, const std::vector<int>& support_of) {
  std::vector<double> out(s.t.size());
  const std::size_t m = r.support.size();
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (support_of[i] >= 0) {
      const auto j = static_cast<std::size_t>(support_of[i]);
      out[i] = r.beta[j] != 0.0 ? r.alpha[j] / r.beta[j] : std::numeric_limits<double>::infinity();
      continue;
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double c = 1.0 / (s.t[i] - r.support[j]);
      num += r.alpha[j] * c;
      den += r.beta[j] * c;
    }
    out[i] = num / den;
  }
  return out;
}

struct AaaResult {
  Barycentric r;
  std::vector<int> support_of;  // sample index -> support index or -1
  bool exact = false;
  double error = 0.0;
};

AaaResult aaa(const SampleSet& s, int max_support, double stop_tol) {
  const std::size_t n_samples = s.t.size();
  AaaResult res;
  res.support_of.assign(n_samples, -1);
  double mean = 0.0;
  for (double v : s.f) mean += v;
  mean /= static_cast<double>(n_samples);
  std::vector<double> approx(n_samples, mean);
  std::vector<std::size_t> support_idx;

  for (int m = 1; m <= max_support; ++m) {
    std::size_t pick = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
      if (res.support_of[i] >= 0) continue;
      const double d = std::abs(s.f[i] - approx[i]);
      if (d > worst) {
        worst = d;
        pick = i;
      }
    }
    res.support_of[pick] = static_cast<int>(support_idx.size());
    support_idx.push_back(pick);

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n_samples; ++i)
      if (res.support_of[i] < 0) rows.push_back(i);
    Eigen::MatrixXd loewner(static_cast<Eigen::Index>(rows.size()), m);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (int j = 0; j < m; ++j) {
        const std::size_t sj = support_idx[static_cast<std::size_t>(j)];
        loewner(static_cast<Eigen::Index>(r), j) = (s.f[rows[r]] - s.f[sj]) / (s.t[rows[r]] - s.t[sj]);
      }
    }
    const Eigen::VectorXd w = smallest_right_singular_vector(loewner);

    Barycentric b;
    for (int j = 0; j < m; ++j) {
      const std::size_t sj = support_idx[static_cast<std::size_t>(j)];
      b.support.push_back(s.t[sj]);
      b.beta.push_back(w(j));
      b.alpha.push_back(w(j) * s.f[sj]);
    }
    approx = bary_values(b, s, res.support_of);
    double err = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
      const double d = std::abs(s.f[i] - approx[i]);
      err = std::max(err, std::isfinite(d) ? d : std::numeric_limits<double>::infinity());
    }
    res.r = std::move(b);
    res.error = err;
    if (err <= stop_tol) {
      res.exact = true;
      break;
    }
  }
  return res;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Peaks of each sign run of the error on the ascending sample set.
std::vector<double> signed_run_peaks(const std::vector<double>& err) {
  std::vector<double> peaks;
  int run = 0;
  double best = 0.0;
  for (double e : err) {
    const int s = sign_of(e);
    if (s == 0) continue;
    if (run == 0) {
      run = s;
      best = e;
    } else if (s != run) {
      peaks.push_back(best);
      run = s;
      best = e;
    } else if (std::abs(e) > std::abs(best)) {
      best = e;
    }
  }
  if (run != 0) peaks.push_back(best);
  return peaks;
}

// Largest min-amplitude over windows of `need` consecutive alternating peaks.
std::optional<double> alternation_lower_bound(const std::vector<double>& peaks, std::size_t need) {
  if (need == 0 || peaks.size() < need) return std::nullopt;
  double best = 0.0;
  for (std::size_t start = 0; start + need <= peaks.size(); ++start) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = start; k < start + need; ++k) lo = std::min(lo, std::abs(peaks[k]));
    best = std::max(best, lo);
  }
  return best;
}

struct LawsonResult {
  Barycentric r;
  double error = std::numeric_limits<double>::infinity();
  bool equilibrated = false;
  int iterations = 0;
};

LawsonResult lawson(const SampleSet& s, const AaaResult& start, int n, const RationalOptions& opt) {
  const std::size_t m = start.r.support.size();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (start.support_of[i] < 0) rows.push_back(i);
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto mm = static_cast<Eigen::Index>(m);

  Eigen::MatrixXd cauchy(nr, mm);
  for (Eigen::Index r = 0; r < nr; ++r)
    for (Eigen::Index j = 0; j < mm; ++j)
      cauchy(r, j) = 1.0 / (s.t[rows[static_cast<std::size_t>(r)]] - start.r.support[static_cast<std::size_t>(j)]);

  std::vector<double> weight(rows.size(), 1.0 / static_cast<double>(rows.size()));
  LawsonResult best;
  best.r = start.r;
  {
    const auto v = bary_values(start.r, s, start.support_of);
    double e = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i) e = std::max(e, std::abs(s.f[i] - v[i]));
    best.error = std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
  }

  Eigen::MatrixXd a(nr, 2 * mm);
  for (int it = 1; it <= opt.max_lawson_iterations; ++it) {
    for (Eigen::Index r = 0; r < nr; ++r) {
      const double sw = std::sqrt(weight[static_cast<std::size_t>(r)]);
      const double fr = s.f[rows[static_cast<std::size_t>(r)]];
      for (Eigen::Index j = 0; j < mm; ++j) {
        a(r, j) = sw * cauchy(r, j);
        a(r, mm + j) = -sw * fr * cauchy(r, j);
      }
    }
    const Eigen::VectorXd v = smallest_right_singular_vector(a);
    Barycentric cand;
    cand.support = start.r.support;
    for (Eigen::Index j = 0; j < mm; ++j) {
      cand.alpha.push_back(v(j));
      cand.beta.push_back(v(mm + j));
    }
    const auto vals = bary_values(cand, s, start.support_of);
    std::vector<double> err(s.t.size());
    double emax = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      err[i] = s.f[i] - vals[i];
      emax = std::max(emax, std::isfinite(err[i]) ? std::abs(err[i]) : std::numeric_limits<double>::infinity());
    }
    if (emax < best.error) {
      best.r = cand;
      best.error = emax;
      best.iterations = it;
      const auto peaks = signed_run_peaks(err);
      const auto lb = alternation_lower_bound(peaks, 2 * static_cast<std::size_t>(n) + 2);
      if (lb && emax - *lb <= opt.equilibration_tol * emax) {
        best.equilibrated = true;
        break;
      }
    }
    if (!std::isfinite(emax)) break;
    double wmax = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      weight[r] *= std::abs(err[rows[r]]);
      wmax = std::max(wmax, weight[r]);
    }
    if (!(wmax > 0.0)) break;
    double wsum = 0.0;
    for (double& w : weight) {
      w = std::max(w / wmax, 1e-300);
      wsum += w;
    }
    for (double& w : weight) w /= wsum;
  }
  return best;
}

// p and q as Chebyshev series in t: p(t) = sum_j alpha_j prod_{k != j} (t - z_k).
std::pair<std::vector<double>, std::vector<double>> to_chebyshev(const Barycentric& r) {
  const std::size_t m = r.support.size();
  const std::size_t deg = m - 1;
  if (deg == 0) return {{r.alpha[0]}, {r.beta[0]}};
  std::vector<double> pv(deg + 1);
  std::vector<double> qv(deg + 1);
  for (std::size_t i = 0; i <= deg; ++i) {
    const double t = std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(deg));
    double p = 0.0;
    double q = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double prod = 1.0;
      for (std::size_t k = 0; k < m; ++k)
        if (k != j) prod *= t - r.support[k];
      p += r.alpha[j] * prod;
      q += r.beta[j] * prod;
    }
    pv[i] = p;
    qv[i] = q;
  }
  auto interp = [&](const std::vector<double>& vals) {
    const std::size_t n = deg;
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        const std::size_t jk = (j * k) % (2 * n);
        acc += w * vals[j] * std::cos(std::numbers::pi * static_cast<double>(jk) / static_cast<double>(n));
      }
      c[k] = 2.0 * acc / static_cast<double>(n);
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return c;
  };
  return {interp(pv), interp(qv)};
}

// Roots of a Chebyshev series via the colleague matrix.
std::vector<std::complex<double>> chebyshev_roots(std::vector<double> c) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const std::size_t n = c.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {{-c[0] / c[1], 0.0}};
  Eigen::MatrixXd colleague = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  colleague(0, 1) = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    colleague(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 0.5;
    if (i + 1 < n) colleague(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 0.5;
  }
  for (std::size_t j = 0; j < n; ++j)
    colleague(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(j)) -= c[j] / (2.0 * c[n]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(colleague, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

struct Candidate {
  RationalApproximant approx;
  double error;
  std::vector<double> error_peaks;
  int support;
  int iterations;
  bool equilibrated;
};

// Builds p/q on dom, normalizes ||q|| = 1, and scores it; empty when q vanishes on the segment.
std::optional<Candidate> finalize(const std::vector<double>& pc, const std::vector<double>& qc,
                                  const SampledFunction& f, const IntervalDomain& dom, int n,
                                  const std::vector<double>& xs, double& pole_at) {
  ChebApproximant p(dom, pc);
  ChebApproximant q(dom, qc);
  const PeakSearch qs = sup_norm_on_points([&](double x) { return q(x); }, xs);
  if (!(qs.value > 0.0) || !std::isfinite(qs.value)) {
    pole_at = dom.midpoint();
    return std::nullopt;
  }
  double s = 1.0 / qs.value;
  if (q(dom.midpoint()) < 0.0) s = -s;
  p = p.scaled(s);
  q = q.scaled(s);

  // Pole check: q must keep one sign and stay off zero across the segment.
  double qmin = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = q(xs[i]);
    if (std::abs(v) < qmin) {
      qmin = std::abs(v);
      pole_at = xs[i];
    }
    if (i > 0 && sign_of(v) != sign_of(prev)) {
      pole_at = 0.5 * (xs[i] + xs[i - 1]);
      return std::nullopt;
    }
    prev = v;
  }
  if (qmin < 1e-13) return std::nullopt;

  RationalApproximant ra(n, p, q, 1.0);
  const RealMap err = [&](double x) { return f(x) - p(x) / q(x); };
  const PeakSearch sup = sup_norm_on_points(err, xs);
  std::vector<double> ev(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ev[i] = err(xs[i]);
  return Candidate{ra, sup.value, signed_run_peaks(ev), static_cast<int>(qc.size()), 0, false};
}

std::optional<Candidate> finalize(const Barycentric& r, const SampledFunction& f, const IntervalDomain& dom,
                                  int n, const std::vector<double>& xs, double& pole_at) {
  auto [pc, qc] = to_chebyshev(r);
  auto c = finalize(pc, qc, f, dom, n, xs, pole_at);
  if (c) c->support = static_cast<int>(r.support.size());
  return c;
}

struct Peak {
  std::size_t index;
  double err;
};

std::vector<Peak> indexed_run_peaks(const std::vector<double>& err) {
  std::vector<Peak> peaks;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const int s = sign_of(err[i]);
    if (s == 0) continue;
    if (!peaks.empty() && sign_of(peaks.back().err) == s) {
      if (std::abs(err[i]) > std::abs(peaks.back().err)) peaks.back() = {i, err[i]};
    } else {
      peaks.push_back({i, err[i]});
    }
  }
  return peaks;
}

// Keeps `keep` alternating peaks including the largest one; the smallest goes
// first, interior ones together with their smaller neighbour.
void trim_alternating(std::vector<Peak>& peaks, std::size_t keep) {
  std::size_t top = 0;
  for (std::size_t i = 1; i < peaks.size(); ++i)
    if (std::abs(peaks[i].err) > std::abs(peaks[top].err)) top = i;
  const std::size_t top_index = peaks[top].index;
  auto amp = [&](std::size_t i) {
    return peaks[i].index == top_index ? std::numeric_limits<double>::infinity() : std::abs(peaks[i].err);
  };
  while (peaks.size() > keep) {
    const std::size_t m = peaks.size();
    std::size_t low = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (amp(i) < amp(low)) low = i;
    std::size_t first = low;
    std::size_t count = 1;
    if (low != 0 && low != m - 1) {
      if (m - keep >= 2) {
        first = amp(low - 1) <= amp(low + 1) ? low - 1 : low;
        count = 2;
      } else {
        first = amp(0) <= amp(m - 1) ? 0 : m - 1;
      }
    }
    peaks.erase(peaks.begin() + static_cast<std::ptrdiff_t>(first),
                peaks.begin() + static_cast<std::ptrdiff_t>(first + count));
  }
}

struct RemezPolish {
  std::vector<double> p;
  std::vector<double> q;
  double error = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Rational Remez exchange on the sample set, started from an error curve with at
// least 2n+2 alternations. Each step solves p(t_i) - (f_i - (-1)^i h) q(t_i) = 0
// on the reference: eliminating p leaves an (n+1)-dimensional eigenproblem in h.
std::optional<RemezPolish> rational_remez(const SampleSet& s, int n, std::vector<double> err, double tol,
                                          int max_iterations) {
  const auto need = static_cast<std::size_t>(2 * n + 2);
  const auto np = static_cast<Eigen::Index>(n + 1);
  const auto nref = static_cast<Eigen::Index>(need);
  std::optional<RemezPolish> best;
  std::vector<double> tk(static_cast<std::size_t>(n + 1));

  for (int it = 0; it < max_iterations; ++it) {
    std::vector<Peak> ref = indexed_run_peaks(err);
    if (ref.size() < need) break;
    trim_alternating(ref, need);

    Eigen::MatrixXd T(nref, np);
    Eigen::VectorXd fv(nref);
    Eigen::VectorXd sg(nref);
    for (Eigen::Index i = 0; i < nref; ++i) {
      const std::size_t k = ref[static_cast<std::size_t>(i)].index;
      chebyshev_values(s.t[k], tk);
      for (Eigen::Index j = 0; j < np; ++j) T(i, j) = tk[static_cast<std::size_t>(j)];
      fv(i) = s.f[k];
      sg(i) = (i % 2 == 0) ? 1.0 : -1.0;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(T);
    const Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd Q1 = Q.leftCols(np);
    const Eigen::MatrixXd Q2 = Q.rightCols(nref - np);
    const Eigen::MatrixXd R1 = qr.matrixQR().topRows(np).triangularView<Eigen::Upper>();
    // Q2^T (F - h S) T b = 0  =>  (Q2^T S T)^{-1} (Q2^T F T) b = h b
    const Eigen::MatrixXd M = Q2.transpose() * fv.asDiagonal() * T;
    const Eigen::MatrixXd N = Q2.transpose() * sg.asDiagonal() * T;
    Eigen::FullPivLU<Eigen::MatrixXd> nlu(N);
    if (!nlu.isInvertible()) break;
    Eigen::EigenSolver<Eigen::MatrixXd> es(nlu.solve(M), true);
    if (es.info() != Eigen::Success) break;

    std::optional<RemezPolish> step;
    double step_h = std::numeric_limits<double>::infinity();
    for (Eigen::Index e = 0; e < np; ++e) {
      const std::complex<double> lam = es.eigenvalues()(e);
      if (std::abs(lam.imag()) > 1e-10 * std::max(1.0, std::abs(lam.real()))) continue;
      const double h = lam.real();
      if (std::abs(h) >= step_h) continue;
      const Eigen::VectorXd b = es.eigenvectors().col(e).real();
      const Eigen::VectorXd a = R1.triangularView<Eigen::Upper>().solve(
          Q1.transpose() * ((fv - h * sg).asDiagonal() * (T * b)));
      std::vector<double> pc(a.data(), a.data() + np);
      std::vector<double> qc(b.data(), b.data() + np);
      ChebApproximant pu(IntervalDomain(-1.0, 1.0), pc);
      ChebApproximant qu(IntervalDomain(-1.0, 1.0), qc);
      bool ok = true;
      int sign = 0;
      std::vector<double> e_new(s.t.size());
      double emax = 0.0;
      for (std::size_t i = 0; i < s.t.size() && ok; ++i) {
        const double qv = qu(s.t[i]);
        if (sign == 0) sign = sign_of(qv);
        if (qv == 0.0 || sign_of(qv) != sign) ok = false;
        e_new[i] = s.f[i] - pu(s.t[i]) / qv;
        emax = std::max(emax, std::abs(e_new[i]));
      }
      if (!ok || !std::isfinite(emax)) continue;
      step_h = std::abs(h);
      step = RemezPolish{pc, qc, emax, emax - std::abs(h) <= tol * emax};
      err = std::move(e_new);
    }
    if (!step) break;
    if (!best || step->error < best->error) best = step;
    if (step->converged) break;
  }
  return best;
}

// Sample points clustered around poles that sit closer to the segment than the grid resolves.
std::vector<double> pole_cluster_points(const Barycentric& r, std::size_t base_size) {
  std::vector<double> extra;
  if (r.support.size() < 2) return extra;
  auto [pc, qc] = to_chebyshev(r);
  const double h = std::numbers::pi / static_cast<double>(base_size);
  for (const auto& pole : chebyshev_roots(qc)) {
    const double re = pole.real();
    const double im = std::abs(pole.imag());
    if (std::abs(re) > 1.0 || im > 0.5) continue;
    const double spacing = h * std::sqrt(std::max(0.0, 1.0 - re * re)) + h * h;
    if (im > 20.0 * spacing || im == 0.0) continue;
    for (int k = 0; k < 24; ++k) {
      const double d = im * std::pow(10.0, -2.0 + 3.0 * k / 23.0);
      for (double t : {re - d, re + d})
        if (t > -1.0 && t < 1.0) extra.push_back(t);
    }
  }
  return extra;
}

}  // namespace

namespace {

RatBestApprox rat_best_approx_at(const SampledFunction& f, const IntervalDomain& dom, int n, double tol,
                                 const RationalOptions& opt, bool try_lower_type) {

  const PolyBestApprox poly = poly_best_approx(f, dom, n, tol);
  auto polynomial_result = [&]() {
    RatBestApprox out{.approx = RationalApproximant::from_polynomial(poly.poly, n)};
    out.error = poly.error;
    out.status = poly.status;
    out.polynomial_candidate = true;
    out.iterations = poly.iterations;
    out.grid_size = poly.grid_size;
    std::vector<double> peaks = poly.reference_errors;
    out.alternation_count = static_cast<int>(peaks.size());
    return out;
  };
  if (n == 0) return polynomial_result();

  const std::size_t base = opt.grid_points != 0 ? opt.grid_points
                                                 : std::max<std::size_t>(20 * static_cast<std::size_t>(n + 1), 2001);
  const IntervalDomain unit(-1.0, 1.0);
  SampleSet samples;
  samples.t = chebyshev_extrema(unit, base);
  samples.f.resize(samples.t.size());
  double fnorm = 0.0;
  for (std::size_t i = 0; i < samples.t.size(); ++i) {
    samples.f[i] = f(dom.from_unit(samples.t[i]));
    fnorm = std::max(fnorm, std::abs(samples.f[i]));
  }
  const double exact_tol = 1e-13 * std::max(fnorm, 1e-300);

  std::vector<Candidate> candidates;
  double last_pole = dom.midpoint();
  int lawson_iterations = 0;
  for (int round = 0; round <= opt.refinement_rounds; ++round) {
    std::vector<double> xs(samples.t.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = dom.from_unit(samples.t[i]);

    const AaaResult start = aaa(samples, n + 1, exact_tol);
    Barycentric chosen = start.r;
    bool equilibrated = false;
    if (!start.exact && static_cast<int>(start.r.support.size()) == n + 1) {
      const LawsonResult lr = lawson(samples, start, n, opt);
      lawson_iterations += lr.iterations;
      chosen = lr.r;
      equilibrated = lr.equilibrated;
      if (auto c = finalize(start.r, f, dom, n, xs, last_pole)) candidates.push_back(*c);
    }
    if (auto c = finalize(chosen, f, dom, n, xs, last_pole)) {
      c->equilibrated = equilibrated || start.exact;
      c->iterations = lawson_iterations;
      candidates.push_back(*c);
    }
    if (start.exact) break;

    std::vector<double> extra = pole_cluster_points(chosen, base);
    if (extra.empty() || round == opt.refinement_rounds) break;
    std::vector<double> t = samples.t;
    t.insert(t.end(), extra.begin(), extra.end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(), [](double l, double r) { return std::abs(l - r) < 1e-15; }), t.end());
    if (t.size() == samples.t.size()) break;
    samples.t = std::move(t);
    samples.f.resize(samples.t.size());
    for (std::size_t i = 0; i < samples.t.size(); ++i) samples.f[i] = f(dom.from_unit(samples.t[i]));
  }

  const Candidate* best = nullptr;
  for (const auto& c : candidates)
    if (best == nullptr || c.error < best->error) best = &c;

  if (best != nullptr && !best->equilibrated && best->error > exact_tol) {
    std::vector<double> err(samples.t.size());
    std::vector<double> xs(samples.t.size());
    for (std::size_t i = 0; i < samples.t.size(); ++i) {
      xs[i] = dom.from_unit(samples.t[i]);
      err[i] = samples.f[i] - best->approx(xs[i]);
    }
    if (auto polish = rational_remez(samples, n, std::move(err), tol, 30)) {
      double pole = last_pole;
      if (auto c = finalize(polish->p, polish->q, f, dom, n, xs, pole); c && c->error < best->error) {
        c->equilibrated = polish->converged;
        c->iterations = best->iterations;
        c->support = best->support;
        candidates.push_back(*c);
        best = &candidates.back();
      }
    }
  }

  // Type (n-1, n-1) is admissible too; its solver succeeds where the type-(n, n)
  // optimum is degenerate (odd n for even f, say).
  if (try_lower_type && n >= 2 && (best == nullptr || best->error >= poly.error)) {
    RationalOptions lower_opt = opt;
    lower_opt.polynomial_fallback = false;
    try {
      RatBestApprox lower = rat_best_approx_at(f, dom, n - 1, tol, lower_opt, false);
      if (lower.error < poly.error && (best == nullptr || lower.error < best->error)) {
        lower.approx = RationalApproximant(n, lower.approx.numer(), lower.approx.denom(), lower.approx.denom_sup_norm());
        lower.lower_bound.reset();  // 2n alternations certify type (n-1, n-1) only
        return lower;
      }
    } catch (const DegenerateApproximantError&) {
    }
  }

  if (opt.polynomial_fallback && (best == nullptr || poly.error <= best->error)) return polynomial_result();
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "rational approximant of type (" << n << "," << n << ") has a denominator zero on the segment near x = "
        << last_pole;
    throw DegenerateApproximantError(msg.str(), last_pole);
  }

  RatBestApprox out{.approx = best->approx};
  out.error = best->error;
  out.status = (best->equilibrated || best->error <= exact_tol) ? SolverStatus::Converged
                                                                 : SolverStatus::NotConverged;
  out.lower_bound = alternation_lower_bound(best->error_peaks, 2 * static_cast<std::size_t>(n) + 2);
  out.alternation_count = static_cast<int>(best->error_peaks.size());
  out.iterations = best->iterations;
  out.grid_size = samples.t.size();
  out.support_points = best->support;
  return out;
}

}  // namespace

RatBestApprox rat_best_approx(const SampledFunction& f, const IntervalDomain& dom, int n, double tol,
                              const RationalOptions& opt) {
  if (n < 0) throw ArgumentError("degree must be nonnegative");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  return rat_best_approx_at(f, dom, n, tol, opt, true);
}

}  // namespace qalab
