#pragma once

#include <string>
#include <vector>

#include "qalab/minimax.hpp"

namespace qalab {

/// Position in the chain A (analytic) < B (Bernstein) < R (Gonchar) detected at
/// the computed degree budget. NotDetected does not refute membership.
enum class Verdict { AnalyticRate, BernsteinQA, GoncharQA, NotDetected };

std::string to_string(Verdict v);

struct Evidence {
  int n = 0;
  double value = 0.0;
  double root = 0.0;
  std::string series;  // "e" or "rho"
};

struct ClassVerdict {
  Verdict verdict = Verdict::NotDetected;
  double alpha_e = 1.0;
  double alpha_rho = 1.0;
  double limsup_e = 1.0;
  double threshold = 0.0;
  std::vector<Evidence> evidence;
  bool analytic_test = false;
  bool bernstein_test = false;
  bool gonchar_test = false;
};

inline constexpr double kDefaultThreshold = 0.95;

/// Needs at least four usable profile entries and 0 < threshold < 1.
ClassVerdict classify(const DecayProfile& profile, double threshold = kDefaultThreshold);

}  // namespace qalab
