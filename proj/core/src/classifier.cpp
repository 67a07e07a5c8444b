#include "qalab/classifier.hpp"

#include <cmath>

#include "qalab/errors.hpp"

namespace qalab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AnalyticRate:
      return "AnalyticRate";
    case Verdict::BernsteinQA:
      return "BernsteinQA";
    case Verdict::GoncharQA:
      return "GoncharQA";
    case Verdict::NotDetected:
      return "NotDetected";
  }
  return "unknown";
}

ClassVerdict classify(const DecayProfile& profile, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw ArgumentError("threshold must lie in (0, 1)");

  std::vector<double> ev, rv;
  std::vector<int> idx;
  ClassVerdict out;
  out.threshold = threshold;
  for (const auto& e : profile.entries) {
    if (!e.usable() || e.n <= 0) continue;
    ev.push_back(e.e_n);
    rv.push_back(e.rho_n);
    idx.push_back(e.n);
    out.evidence.push_back({e.n, e.e_n, e.e_n == 0.0 ? 0.0 : std::pow(e.e_n, 1.0 / e.n), "e"});
    out.evidence.push_back({e.n, e.rho_n, e.rho_n == 0.0 ? 0.0 : std::pow(e.rho_n, 1.0 / e.n), "rho"});
  }
  if (idx.size() < 4) {
    throw InsufficientEvidenceError("classification needs at least 4 successful profile entries, got " +
                                    std::to_string(idx.size()));
  }

  const RootRate e_rate = root_rate(ev, idx);
  const RootRate rho_rate = root_rate(rv, idx);
  out.alpha_e = e_rate.liminf;
  out.limsup_e = e_rate.limsup;
  out.alpha_rho = rho_rate.liminf;

  out.analytic_test = out.limsup_e < threshold;
  out.bernstein_test = out.alpha_e < threshold;
  out.gonchar_test = out.alpha_rho < threshold;

  if (out.analytic_test) {
    out.verdict = Verdict::AnalyticRate;
  } else if (out.bernstein_test) {
    out.verdict = Verdict::BernsteinQA;
  } else if (out.gonchar_test) {
    out.verdict = Verdict::GoncharQA;
  } else {
    out.verdict = Verdict::NotDetected;
  }
  return out;
}

}  // namespace qalab
