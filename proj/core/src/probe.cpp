#include "qalab/probe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qalab/errors.hpp"

namespace qalab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double sup_of(const ChebApproximant& g) {
  return sup_norm_estimate([&](double x) { return g(x); }, g.domain(), default_sup_grid(std::max(g.degree(), 1)));
}

void check_axis(const ComplexGrid& g, const char* name) {
  if (g.re_count < 8 || g.im_count < 8) throw ArgumentError(std::string(name) + "-window needs at least 8 nodes per axis");
  if (!(g.re_min < g.re_max) || !(g.im_min < g.im_max)) throw ArgumentError(std::string(name) + "-window is empty");
}

// Running max over [i - r, i + r] (clipped) along one axis of a row-major 4-D array.
void max_filter_axis(std::vector<double>& data, const std::array<std::size_t, 4>& dims, int axis, int r) {
  std::size_t stride = 1;
  for (int a = 3; a > axis; --a) stride *= dims[static_cast<std::size_t>(a)];
  const std::size_t len = dims[static_cast<std::size_t>(axis)];
  const std::size_t outer = data.size() / (len * stride);
  std::vector<double> line(len);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * len * stride + s;
      for (std::size_t i = 0; i < len; ++i) line[i] = data[base + i * stride];
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(r) ? i - static_cast<std::size_t>(r) : 0;
        const std::size_t hi = std::min(len - 1, i + static_cast<std::size_t>(r));
        double m = kNegInf;
        for (std::size_t j = lo; j <= hi; ++j) m = std::max(m, line[j]);
        data[base + i * stride] = m;
      }
    }
  }
}

}  // namespace

void GridC2::validate(const IntervalDomain& dom) const {
  check_axis(z, "z");
  check_axis(w, "w");
  if (z.re_min > dom.a() || z.re_max < dom.b() || z.im_min > 0.0 || z.im_max < 0.0)
    throw ArgumentError("z-window must contain the approximation segment in its real section");
}

GridC2 GridC2::square(std::size_t resolution, double half_width) {
  ComplexGrid g{-half_width, half_width, -half_width, half_width, resolution, resolution};
  return {g, g};
}

std::vector<double> uniform_grid(const IntervalDomain& dom, std::size_t count) {
  if (count == 0) throw ArgumentError("grid needs at least one node");
  std::vector<double> x(count, dom.a());
  for (std::size_t i = 0; i < count && count > 1; ++i)
    x[i] = dom.a() + dom.length() * (static_cast<double>(i) / static_cast<double>(count - 1));
  return x;
}

ProbeLayers::ProbeLayers(const std::vector<RationalApproximant>& approximants, std::optional<double> f_sup)
    : domain_(approximants.empty() ? IntervalDomain(-1.0, 1.0) : approximants.front().domain()) {
  if (approximants.empty()) throw ArgumentError("probe needs at least one approximant");
  double p_max = 0.0;
  for (const auto& r : approximants) {
    if (!(r.domain() == domain_)) throw ArgumentError("approximants must share one domain");
    if (r.degree() < 1) throw ArgumentError("probe layers need degree >= 1");
    const double qn = sup_of(r.denom());
    if (!(qn > 0.0)) throw ArgumentError("approximant denominator vanishes identically");
    ProbeLayer layer{r.degree(), r.numer().scaled(1.0 / qn), r.denom().scaled(1.0 / qn)};
    p_max = std::max(p_max, sup_of(layer.p));
    layers_.push_back(std::move(layer));
  }
  double m = std::max(1.0, p_max);
  if (f_sup) m = std::max(m, 2.0 * *f_sup);
  scale_ = 1.0 / m;
  if (scale_ != 1.0)
    for (auto& l : layers_) l.p = l.p.scaled(scale_);
}

std::vector<int> ProbeLayers::degrees() const {
  std::vector<int> d;
  for (const auto& l : layers_) d.push_back(l.degree);
  return d;
}

double ProbeLayers::value(std::size_t k, complex z, complex w) const {
  const ProbeLayer& l = layers_.at(k);
  return std::log(std::abs(l.q(z) * w - l.p(z))) / l.degree;
}

EnvelopeField build_u_fields(const ProbeLayers& layers, const GridC2& grid) {
  grid.validate(layers.domain());
  EnvelopeField field;
  field.grid = grid;
  field.degrees = layers.degrees();
  field.scale = layers.scale();
  const std::size_t nw = grid.w.size();
  std::vector<complex> wn(nw);
  for (std::size_t a = 0; a < grid.w.re_count; ++a)
    for (std::size_t b = 0; b < grid.w.im_count; ++b) wn[a * grid.w.im_count + b] = grid.w.node(a, b);
  for (std::size_t k = 0; k < layers.count(); ++k) {
    const ProbeLayer& l = layers.layers()[k];
    std::vector<double> arr(grid.size());
    for (std::size_t i = 0; i < grid.z.re_count; ++i) {
      for (std::size_t j = 0; j < grid.z.im_count; ++j) {
        const complex z = grid.z.node(i, j);
        const complex p = l.p(z), q = l.q(z);
        const std::size_t base = (i * grid.z.im_count + j) * nw;
        for (std::size_t t = 0; t < nw; ++t) arr[base + t] = std::log(std::abs(q * wn[t] - p)) / l.degree;
      }
    }
    field.layers.push_back(std::move(arr));
  }
  return field;
}

void upper_envelope(EnvelopeField& field, std::size_t tail_start) {
  if (tail_start >= field.layers.size()) throw ArgumentError("tail_start must be smaller than the number of layers");
  const std::size_t n = field.grid.size();
  field.tail_start = tail_start;
  field.u.assign(n, kNegInf);
  field.u_all.assign(n, kNegInf);
  for (std::size_t k = 0; k < field.layers.size(); ++k) {
    const auto& layer = field.layers[k];
    for (std::size_t i = 0; i < n; ++i) {
      field.u_all[i] = std::max(field.u_all[i], layer[i]);
      if (k >= tail_start) field.u[i] = std::max(field.u[i], layer[i]);
    }
  }
}

void usc_regularize(EnvelopeField& field, const std::vector<int>& radii) {
  if (radii.empty() || radii.back() != 1) throw ArgumentError("radius ladder must end with 1");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] >= radii[i - 1]) throw ArgumentError("radius ladder must be decreasing");
  if (field.u.size() != field.grid.size()) throw ArgumentError("upper envelope not computed");
  const std::array<std::size_t, 4> dims{field.grid.z.re_count, field.grid.z.im_count, field.grid.w.re_count,
                                        field.grid.w.im_count};
  field.u_star.assign(field.u.size(), std::numeric_limits<double>::infinity());
  for (int r : radii) {
    std::vector<double> m = field.u;
    for (int axis = 0; axis < 4; ++axis) max_filter_axis(m, dims, axis, r);
    for (std::size_t i = 0; i < m.size(); ++i) field.u_star[i] = std::min(field.u_star[i], m[i]);
  }
}

ExceptionalCells exceptional_cells(const EnvelopeField& field, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
  if (field.u_star.size() != field.u.size() || field.u.empty()) throw ArgumentError("field is not regularized");
  ExceptionalCells out;
  for (std::size_t i = 0; i < field.u.size(); ++i) {
    const double d = field.u_star[i] - field.u[i];
    if (d > eps) out.cells.push_back(i);
  }
  out.fraction = static_cast<double>(out.cells.size()) / static_cast<double>(field.u.size());
  return out;
}

EnvelopeBoundReport envelope_bound_check(const EnvelopeField& field, const IntervalDomain& dom) {
  const GridC2& g = field.grid;
  const std::size_t nw = g.w.size();
  std::vector<double> logw(nw);
  for (std::size_t a = 0; a < g.w.re_count; ++a)
    for (std::size_t b = 0; b < g.w.im_count; ++b) logw[a * g.w.im_count + b] = std::log(std::abs(g.w.node(a, b)));
  EnvelopeBoundReport rep;
  rep.max_slack = kNegInf;
  rep.vstar_excess = kNegInf;
  for (std::size_t i = 0; i < g.z.re_count; ++i) {
    for (std::size_t j = 0; j < g.z.im_count; ++j) {
      const double v = green_interval(g.z.node(i, j), dom);
      const std::size_t base = (i * g.z.im_count + j) * nw;
      for (std::size_t k = 0; k < field.layers.size(); ++k) {
        const double n = field.degrees[k];
        const auto& layer = field.layers[k];
        for (std::size_t t = 0; t < nw; ++t) {
          const double bound = std::max(v, v + logw[t] / n) + std::numbers::ln2 / n;
          const double s = layer[base + t] - bound;
          ++rep.checked;
          if (s > rep.max_slack) rep.max_slack = s;
          if (s > kEnvelopeTolerance) ++rep.violations;
        }
      }
      if (!field.u.empty())
        for (std::size_t t = 0; t < nw; ++t)
          if (std::isfinite(field.u[base + t])) rep.vstar_excess = std::max(rep.vstar_excess, field.u[base + t] - v);
    }
  }
  return rep;
}

GraphDecayReport graph_decay_check(const SampledFunction& f, const std::vector<RationalApproximant>& approximants,
                                   const IntervalDomain& dom, std::size_t x_grid, const GraphDecayOptions& options) {
  if (approximants.empty()) throw ArgumentError("graph_decay_check needs approximants");
  if (x_grid < 2) throw ArgumentError("x grid needs at least 2 nodes");
  for (const auto& r : approximants)
    if (!(r.domain() == dom)) throw ArgumentError("approximant domain differs from the segment");

  int max_deg = 1;
  for (const auto& r : approximants) max_deg = std::max(max_deg, r.degree());
  const double f_sup = sup_norm_estimate([&](double x) { return f(x); }, dom, std::max<std::size_t>(default_sup_grid(max_deg), 1001));
  const ProbeLayers layers(approximants, f_sup);
  const double s = layers.scale();

  GraphDecayReport rep;
  rep.scale = s;
  rep.x = uniform_grid(dom, x_grid);
  const std::size_t L = approximants.size();
  std::vector<double> fx(rep.x.size());
  for (std::size_t i = 0; i < rep.x.size(); ++i) fx[i] = f(rep.x[i]);

  // certificate: ||s f - s p/q|| on the segment, measured on a polished grid and on the x grid
  std::vector<double> err(L);
  for (std::size_t k = 0; k < L; ++k) {
    const auto& r = approximants[k];
    const RealMap diff = [&](double x) { return f(x) - r(x); };
    double e = sup_norm_estimate(diff, dom, std::max<std::size_t>(default_sup_grid(r.degree()), 1001));
    for (std::size_t i = 0; i < rep.x.size(); ++i) e = std::max(e, std::abs(fx[i] - r(rep.x[i])));
    err[k] = s * e;
  }
  if (options.alpha) {
    const double a = *options.alpha;
    if (!(a > 0.0 && a < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    for (std::size_t k = 0; k < L; ++k)
      if (err[k] > std::pow(a, approximants[k].degree()) * (1.0 + 1e-12))
        throw PreconditionError("approximation error exceeds alpha^n at degree " + std::to_string(approximants[k].degree()),
                                approximants[k].degree());
    rep.alpha = a;
  } else {
    for (std::size_t k = 0; k < L; ++k)
      rep.alpha = std::max(rep.alpha, std::pow(std::max(err[k], 1e-300), 1.0 / approximants[k].degree()));
  }
  const double log_alpha = std::log(rep.alpha);

  // ln theta_k(x) = max over m >= k of (1/n_m) ln|q_m(x)|
  std::vector<std::vector<double>> log_theta(L, std::vector<double>(rep.x.size(), kNegInf));
  for (std::size_t k = L; k-- > 0;) {
    const ProbeLayer& l = layers.layers()[k];
    for (std::size_t i = 0; i < rep.x.size(); ++i) {
      const double v = std::log(std::abs(l.q(rep.x[i]))) / l.degree;
      log_theta[k][i] = k + 1 < L ? std::max(v, log_theta[k + 1][i]) : v;
    }
  }

  const std::size_t tail = options.tail_start.value_or(default_tail_start(L));
  rep.max_slack = kNegInf;
  for (std::size_t k = 0; k < L; ++k) {
    GraphDecayLayer gl;
    gl.degree = approximants[k].degree();
    gl.certificate_error = err[k];
    gl.max_on_graph = kNegInf;
    gl.max_bound_slack = kNegInf;
    gl.off_graph_checked = k >= tail;
    for (std::size_t i = 0; i < rep.x.size(); ++i) {
      const complex z(rep.x[i], 0.0);
      const double u = layers.value(k, z, complex(s * fx[i], 0.0));
      gl.max_on_graph = std::max(gl.max_on_graph, u);
      gl.max_bound_slack = std::max(gl.max_bound_slack, u - log_alpha - log_theta[k][i]);
      if (gl.off_graph_checked) {
        const double off = layers.value(k, z, complex(s * fx[i] + 1.0, 0.0));
        gl.off_graph_max_deviation = std::max(gl.off_graph_max_deviation, std::abs(off - log_theta[k][i]));
      }
    }
    rep.max_slack = std::max(rep.max_slack, gl.max_bound_slack);
    rep.off_graph_max_deviation = std::max(rep.off_graph_max_deviation, gl.off_graph_max_deviation);
    rep.layers.push_back(gl);
  }
  return rep;
}

DenominatorScan small_denominator_scan(const std::vector<RationalApproximant>& approximants, const IntervalDomain& dom,
                                       std::size_t x_resolution, double floor) {
  if (approximants.size() < 2) throw ArgumentError("small_denominator_scan needs at least 2 approximants");
  if (x_resolution < 2) throw ArgumentError("x resolution must be at least 2");
  if (!(floor > 0.0)) throw ArgumentError("floor must be positive");
  for (const auto& r : approximants)
    if (!(r.domain() == dom)) throw ArgumentError("approximant domain differs from the segment");
  const ProbeLayers layers(approximants);

  DenominatorScan scan;
  scan.floor = floor;
  scan.x = uniform_grid(dom, x_resolution);
  scan.degrees = layers.degrees();
  const std::size_t L = layers.count();
  scan.vartheta.assign(L, std::vector<double>(scan.x.size(), 0.0));
  for (std::size_t k = L; k-- > 0;) {
    const ProbeLayer& l = layers.layers()[k];
    for (std::size_t i = 0; i < scan.x.size(); ++i) {
      const double v = std::pow(std::abs(l.q(scan.x[i])), 1.0 / l.degree);
      scan.vartheta[k][i] = k + 1 < L ? std::max(v, scan.vartheta[k + 1][i]) : v;
    }
  }
  for (std::size_t i = 0; i < scan.x.size(); ++i)
    if (scan.vartheta.back()[i] < floor) scan.a_cells.push_back(i);

  // interval hulls of contiguous runs of cells; each cell spans half a spacing either side
  const double h = dom.length() / static_cast<double>(x_resolution - 1);
  for (std::size_t c = 0; c < scan.a_cells.size();) {
    std::size_t e = c;
    while (e + 1 < scan.a_cells.size() && scan.a_cells[e + 1] == scan.a_cells[e] + 1) ++e;
    const double lo = std::max(dom.a(), scan.x[scan.a_cells[c]] - 0.5 * h);
    const double hi = std::min(dom.b(), scan.x[scan.a_cells[e]] + 0.5 * h);
    scan.a_hull.emplace_back(lo, hi);
    c = e + 1;
  }
  if (!scan.a_hull.empty()) scan.a_capacity = log_capacity(CompactSet1D(scan.a_hull), 200);
  return scan;
}

}  // namespace qalab
