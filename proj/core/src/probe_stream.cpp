#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qalab/errors.hpp"
#include "qalab/probe.hpp"

namespace qalab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Max over the clipped 3x3x3 neighbourhood within one z_re slab of shape (a, b, c).
void max_filter_slab(const std::vector<double>& in, std::vector<double>& out, std::vector<double>& tmp, std::size_t a,
                     std::size_t b, std::size_t c) {
  tmp = in;
  auto pass = [](std::vector<double>& d, std::size_t len, std::size_t stride, std::size_t total) {
    std::vector<double> line(len);
    const std::size_t outer = total / (len * stride);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t s = 0; s < stride; ++s) {
        const std::size_t base = o * len * stride + s;
        for (std::size_t i = 0; i < len; ++i) line[i] = d[base + i * stride];
        for (std::size_t i = 0; i < len; ++i) {
          double m = line[i];
          if (i > 0) m = std::max(m, line[i - 1]);
          if (i + 1 < len) m = std::max(m, line[i + 1]);
          d[base + i * stride] = m;
        }
      }
    }
  };
  const std::size_t total = a * b * c;
  pass(tmp, c, 1, total);
  pass(tmp, b, c, total);
  pass(tmp, a, b * c, total);
  out.swap(tmp);
}

}  // namespace

ProbeSummary probe_stream(const ProbeLayers& layers, const GridC2& grid, const ProbeOptions& options) {
  grid.validate(layers.domain());
  const std::vector<int>& radii = options.radii;
  if (radii.empty() || radii.back() != 1) throw ArgumentError("radius ladder must end with 1");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] >= radii[i - 1]) throw ArgumentError("radius ladder must be decreasing");
  if (!(options.eps > 0.0)) throw ArgumentError("eps must be positive");
  const std::size_t L = layers.count();
  const std::size_t tail = options.tail_start.value_or(default_tail_start(L));
  if (tail >= L) throw ArgumentError("tail_start must be smaller than the number of layers");

  ProbeSummary sum;
  sum.degrees = layers.degrees();
  sum.tail_start = tail;
  sum.scale = layers.scale();
  sum.nodes = grid.size();
  sum.bound.max_slack = kNegInf;
  sum.bound.vstar_excess = kNegInf;
  sum.u_min = std::numeric_limits<double>::infinity();
  sum.u_max = kNegInf;
  sum.u_star_minus_u_max = kNegInf;

  const std::size_t nzr = grid.z.re_count, nzi = grid.z.im_count;
  const std::size_t nw = grid.w.size();
  const std::size_t slab = nzi * nw;
  std::vector<complex> wn(nw);
  std::vector<double> logw(nw);
  for (std::size_t a = 0; a < grid.w.re_count; ++a)
    for (std::size_t b = 0; b < grid.w.im_count; ++b) {
      wn[a * grid.w.im_count + b] = grid.w.node(a, b);
      logw[a * grid.w.im_count + b] = std::log(std::abs(wn[a * grid.w.im_count + b]));
    }

  // The neighbourhoods of the radius ladder are nested, so the min over the ladder of
  // the neighbourhood maxima is the maximum over the smallest (radius 1) neighbourhood.
  std::vector<double> u_prev, u_cur, u_next;
  std::vector<double> m_prev, m_cur, m_next;
  std::vector<double> tmp;

  auto compute_slab = [&](std::size_t i, std::vector<double>& u) {
    u.assign(slab, kNegInf);
    std::vector<complex> pv(L), qv(L);
    for (std::size_t j = 0; j < nzi; ++j) {
      const complex z = grid.z.node(i, j);
      const double v = green_interval(z, layers.domain());
      for (std::size_t k = 0; k < L; ++k) {
        pv[k] = layers.layers()[k].p(z);
        qv[k] = layers.layers()[k].q(z);
      }
      double* row = u.data() + j * nw;
      for (std::size_t t = 0; t < nw; ++t) {
        double uu = kNegInf;
        for (std::size_t k = 0; k < L; ++k) {
          const double n = layers.layers()[k].degree;
          const double val = std::log(std::abs(qv[k] * wn[t] - pv[k])) / n;
          const double bound = std::max(v, v + logw[t] / n) + std::numbers::ln2 / n;
          const double s = val - bound;
          if (s > sum.bound.max_slack) sum.bound.max_slack = s;
          if (s > kEnvelopeTolerance) ++sum.bound.violations;
          if (k >= tail) uu = std::max(uu, val);
        }
        sum.bound.checked += L;
        row[t] = uu;
        if (std::isfinite(uu)) {
          sum.u_min = std::min(sum.u_min, uu);
          sum.u_max = std::max(sum.u_max, uu);
          sum.bound.vstar_excess = std::max(sum.bound.vstar_excess, uu - v);
        } else {
          ++sum.u_neg_inf;
        }
      }
    }
  };

  auto finish_slab = [&](const std::vector<double>& u, const std::vector<double>* before, const std::vector<double>& at,
                         const std::vector<double>* after) {
    for (std::size_t t = 0; t < slab; ++t) {
      double us = at[t];
      if (before) us = std::max(us, (*before)[t]);
      if (after) us = std::max(us, (*after)[t]);
      const double d = us - u[t];
      if (d > options.eps) ++sum.exceptional_count;
      if (std::isfinite(us) && std::isfinite(u[t])) sum.u_star_minus_u_max = std::max(sum.u_star_minus_u_max, d);
    }
  };

  compute_slab(0, u_cur);
  max_filter_slab(u_cur, m_cur, tmp, nzi, grid.w.re_count, grid.w.im_count);
  for (std::size_t i = 0; i < nzr; ++i) {
    const bool has_next = i + 1 < nzr;
    if (has_next) {
      compute_slab(i + 1, u_next);
      max_filter_slab(u_next, m_next, tmp, nzi, grid.w.re_count, grid.w.im_count);
    }
    finish_slab(u_cur, i > 0 ? &m_prev : nullptr, m_cur, has_next ? &m_next : nullptr);
    u_prev.swap(u_cur);
    u_cur.swap(u_next);
    m_prev.swap(m_cur);
    m_cur.swap(m_next);
  }
  sum.exceptional_fraction = static_cast<double>(sum.exceptional_count) / static_cast<double>(sum.nodes);
  if (sum.u_min > sum.u_max) sum.u_min = sum.u_max = kNegInf;
  return sum;
}

}  // namespace qalab
