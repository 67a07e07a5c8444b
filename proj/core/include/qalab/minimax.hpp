#pragma once

// Best polynomial (Remez) and near-best rational (AAA-Lawson) uniform
// approximation on a segment, and the n-th-root decay statistics built on them.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qalab/approx_core.hpp"

namespace qalab {

enum class SolverStatus {
  Converged,     // certificate met (or error at the rounding floor)
  NotConverged,  // iteration budget exhausted; result is the best iterate, still a valid upper bound
  Failed,        // no usable result
};

std::string to_string(SolverStatus s);

struct RemezOptions {
  int max_iterations = 40;
  /// Reference grid size; 0 selects 20*(n+1) doubled on non-convergence up to max_grid.
  std::size_t grid_points = 0;
  std::size_t max_grid = 16001;
  /// Refine grid extrema by golden-section search. Off: discrete minimax on the grid.
  bool polish = true;
};

struct PolyBestApprox {
  ChebApproximant poly;
  double error = 0.0;             // e_n: sup |f - p| (the equioscillation amplitude)
  double levelled_error = 0.0;    // |E| from the last linear solve
  double oscillation_defect = 0.0;
  double noise_floor = 0.0;       // rounding level below which the error curve is noise
  std::vector<double> reference{};  // alternation points
  std::vector<double> reference_errors{};  // signed f - p at the reference
  SolverStatus status = SolverStatus::Failed;
  int iterations = 0;
  std::size_t grid_size = 0;
};

/// Remez exchange for the degree-n best uniform polynomial approximation.
/// `tol` is the admissible relative spread of the alternation amplitudes.
PolyBestApprox poly_best_approx(const SampledFunction& f, const IntervalDomain& dom, int n, double tol,
                                const RemezOptions& options = {});

struct EquioscillationCheck {
  bool alternates = false;
  double max_amplitude_gap = 0.0;
  bool passed = false;
};

/// Checks the returned certificate: at least n+2 reference points with strictly
/// alternating signs whose amplitudes match e_n within tol*e_n + noise_floor.
EquioscillationCheck verify_equioscillation(const PolyBestApprox& result, int n, double tol);

struct RationalOptions {
  int max_lawson_iterations = 120;
  /// Relative amplitude spread at which Lawson counts as equilibrated.
  double equilibration_tol = 1e-2;
  /// Sample grid size; 0 selects max(20*(n+1), 2001).
  std::size_t grid_points = 0;
  int refinement_rounds = 2;
  /// Also score the Remez polynomial (q = 1) and return it when it is better.
  bool polynomial_fallback = true;
};

struct RatBestApprox {
  RationalApproximant approx;
  double error = 0.0;  // rho_n: sup |f - p/q| over the reference grid (with polish)
  SolverStatus status = SolverStatus::Failed;
  /// de la Vallee Poussin lower bound, present when the error equioscillates in >= 2n+2 points.
  std::optional<double> lower_bound{};
  int alternation_count = 0;
  bool polynomial_candidate = false;
  int iterations = 0;
  std::size_t grid_size = 0;
  int support_points = 0;
};

/// Near-minimax rational approximation of type (n, n): AAA greedy support
/// selection, Lawson reweighting, pole-adaptive sample refinement, then the
/// denominator is normalized to ||q|| = 1 on the segment. Throws
/// DegenerateApproximantError if the rational candidate has a pole on the
/// segment and polynomial fallback is disabled.
RatBestApprox rat_best_approx(const SampledFunction& f, const IntervalDomain& dom, int n, double tol,
                              const RationalOptions& options = {});

struct RootRate {
  double liminf = 0.0;
  double limsup = 0.0;
};

/// min/max of values_k^(1/indices_k) over the trailing window (largest `window`
/// fraction of the indices). Zero values give rate 0.
RootRate root_rate(std::span<const double> values, std::span<const int> indices, double window = 0.5);

/// exp(slope) of the least-squares line through (n, log value); zero values are skipped.
double geometric_fit_rate(std::span<const double> values, std::span<const int> indices);

struct ErrorSample {
  double value = 0.0;
  SolverStatus status = SolverStatus::Failed;
};

/// Per-degree error oracles used by decay_profile; the default wraps the two solvers.
struct DecaySolver {
  std::function<ErrorSample(int)> polynomial;
  std::function<ErrorSample(int)> rational;
};

DecaySolver minimax_solver(const SampledFunction& f, const IntervalDomain& dom, double tol,
                           const RationalOptions& rational_options = {});

struct DecayEntry {
  int n = 0;
  double e_n = 0.0;    // after monotone repair
  double rho_n = 0.0;  // after monotone repair, never above e_n
  double e_raw = 0.0;
  double rho_raw = 0.0;
  SolverStatus poly_status = SolverStatus::Failed;
  SolverStatus rat_status = SolverStatus::Failed;

  bool usable() const noexcept { return poly_status != SolverStatus::Failed; }
};

struct DecayProfile {
  std::vector<DecayEntry> entries;
  double alpha_e = 1.0;    // lim-inf proxy of e_n^(1/n)
  double alpha_rho = 1.0;  // lim-inf proxy of rho_n^(1/n)
  RootRate e_rate;
  RootRate rho_rate;
  double tol = 0.0;
};

/// Runs both solvers for every n in the strictly increasing list, repairs the
/// sequences to be nonincreasing, and fits the n-th-root rates.
DecayProfile decay_profile(std::span<const int> n_list, const DecaySolver& solver, double tol);
DecayProfile decay_profile(const SampledFunction& f, const IntervalDomain& dom, std::span<const int> n_list,
                           double tol);

}  // namespace qalab
