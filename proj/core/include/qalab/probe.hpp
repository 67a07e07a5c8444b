#pragma once

// Fields u_k(z, w) = (1/n_k) log|q_k(z) w - p_k(z)| on a grid in C^2, their upper
// envelope and its regularization, exceptional cells, and the one-variable
// graph and denominator scans on the segment.

#include <cstddef>
#include <optional>
#include <vector>

#include "qalab/approx_core.hpp"
#include "qalab/potential.hpp"

namespace qalab {

/// Product grid z-window x w-window; node index order is (z_re, z_im, w_re, w_im), z_re slowest.
struct GridC2 {
  ComplexGrid z;
  ComplexGrid w;

  std::size_t size() const noexcept { return z.size() * w.size(); }
  std::size_t index(std::size_t zr, std::size_t zi, std::size_t wr, std::size_t wi) const noexcept {
    return ((zr * z.im_count + zi) * w.re_count + wr) * w.im_count + wi;
  }

  /// Throws ArgumentError unless every axis has >= 8 nodes, the windows are nonempty
  /// and the real section of the z-window contains `dom`.
  void validate(const IntervalDomain& dom) const;

  /// z, w in [-2, 2]^2 with `resolution` nodes per axis.
  static GridC2 square(std::size_t resolution, double half_width = 2.0);
};

/// Approximants p_k/q_k prepared for the probe: q_k scaled to unit sup norm on the
/// segment, and p_k together with f scaled by a common factor so that ||p_k|| <= 1
/// and ||f|| <= 1/2.
struct ProbeLayer {
  int degree = 0;
  ChebApproximant p;
  ChebApproximant q;
};

class ProbeLayers {
 public:
  /// `f_sup` is the sup norm of the approximated function, when known.
  explicit ProbeLayers(const std::vector<RationalApproximant>& approximants, std::optional<double> f_sup = {});

  const std::vector<ProbeLayer>& layers() const noexcept { return layers_; }
  std::vector<int> degrees() const;
  std::size_t count() const noexcept { return layers_.size(); }
  double scale() const noexcept { return scale_; }
  const IntervalDomain& domain() const noexcept { return domain_; }

  /// u_k(z, w); -infinity where q_k(z) w = p_k(z).
  double value(std::size_t k, complex z, complex w) const;

 private:
  std::vector<ProbeLayer> layers_;
  IntervalDomain domain_;
  double scale_ = 1.0;
};

/// Default trailing window start: the first third of the layers is dropped.
inline std::size_t default_tail_start(std::size_t layer_count) { return layer_count / 3; }

inline const std::vector<int> kDefaultRadii{4, 2, 1};

/// Fully materialized field, for moderate grid sizes.
struct EnvelopeField {
  GridC2 grid;
  std::vector<int> degrees;
  std::vector<std::vector<double>> layers;  // one array per k, -infinity allowed
  std::vector<double> u;                    // max over layers k >= tail_start
  std::vector<double> u_all;                // max over all layers
  std::vector<double> u_star;
  std::size_t tail_start = 0;
  double scale = 1.0;
  double alpha_used = 0.0;
};

EnvelopeField build_u_fields(const ProbeLayers& layers, const GridC2& grid);
void upper_envelope(EnvelopeField& field, std::size_t tail_start);
void usc_regularize(EnvelopeField& field, const std::vector<int>& radii = kDefaultRadii);

struct ExceptionalCells {
  std::vector<std::size_t> cells;  // node indices with u_star - u > eps
  double fraction = 0.0;
};

ExceptionalCells exceptional_cells(const EnvelopeField& field, double eps);

struct EnvelopeBoundReport {
  double max_slack = 0.0;        // max of u_k - (max{V*, V* + ln|w|/n_k} + ln 2/n_k)
  std::size_t violations = 0;    // nodes (k, z, w) with slack > tolerance
  std::size_t checked = 0;
  double vstar_excess = 0.0;     // max of u - V* over nodes where u is finite
};

inline constexpr double kEnvelopeTolerance = 1e-9;

EnvelopeBoundReport envelope_bound_check(const EnvelopeField& field, const IntervalDomain& dom);

struct ProbeOptions {
  std::optional<std::size_t> tail_start;
  std::vector<int> radii = kDefaultRadii;
  double eps = 0.1;
};

/// Summary of a probe run computed slab by slab without materializing the C^2 arrays.
struct ProbeSummary {
  std::vector<int> degrees;
  std::size_t tail_start = 0;
  double scale = 1.0;
  std::size_t nodes = 0;
  EnvelopeBoundReport bound;
  std::size_t exceptional_count = 0;
  double exceptional_fraction = 0.0;
  double u_min = 0.0;  // over finite values
  double u_max = 0.0;
  std::size_t u_neg_inf = 0;
  double u_star_minus_u_max = 0.0;  // over nodes where both are finite
};

ProbeSummary probe_stream(const ProbeLayers& layers, const GridC2& grid, const ProbeOptions& options = {});

struct GraphDecayLayer {
  int degree = 0;
  double certificate_error = 0.0;   // ||s f - s p/q|| estimated on the segment
  double max_on_graph = 0.0;        // max over x of u_k(x, s f(x))
  double max_bound_slack = 0.0;     // max of u_k(x, s f(x)) - ln alpha - ln theta_k(x)
  bool off_graph_checked = false;
  double off_graph_max_deviation = 0.0;  // max |u_k(x, s f(x) + 1) - ln theta_k(x)|
};

struct GraphDecayReport {
  double alpha = 0.0;
  double scale = 1.0;
  std::vector<double> x;
  std::vector<GraphDecayLayer> layers;
  double max_slack = 0.0;
  double off_graph_max_deviation = 0.0;
};

struct GraphDecayOptions {
  std::optional<double> alpha;            // certificate rate; measured when absent
  std::optional<std::size_t> tail_start;  // layers compared in the off-graph control
};

/// Throws PreconditionError naming the degree whose error exceeds alpha^n.
GraphDecayReport graph_decay_check(const SampledFunction& f, const std::vector<RationalApproximant>& approximants,
                                   const IntervalDomain& dom, std::size_t x_grid,
                                   const GraphDecayOptions& options = {});

struct DenominatorScan {
  std::vector<double> x;
  std::vector<int> degrees;
  std::vector<std::vector<double>> vartheta;  // vartheta[k][i] = max_{m >= k} |q_m(x_i)|^(1/n_m)
  std::vector<std::size_t> a_cells;
  std::vector<IntervalDomain> a_hull;
  double a_capacity = 0.0;
  double floor = 0.0;
};

DenominatorScan small_denominator_scan(const std::vector<RationalApproximant>& approximants,
                                       const IntervalDomain& dom, std::size_t x_resolution, double floor);

/// Uniform grid on the segment, same node formula as the complex grids.
std::vector<double> uniform_grid(const IntervalDomain& dom, std::size_t count);

}  // namespace qalab
