// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qalab/corpus.hpp"
#include "qalab/minimax.hpp"
#include "qalab/potential.hpp"
#include "qalab/probe.hpp"

using namespace qalab;
namespace fs = std::filesystem;

namespace {

const IntervalDomain kUnit(-1.0, 1.0);
constexpr double kTol = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

std::vector<RationalApproximant> gonchar_partial_sums() {
  std::vector<RationalApproximant> out;
  for (int k = 2; k <= 4; ++k) out.push_back(lacunary_partial_sum_approximant(LacunaryRule::Gonchar, k, kUnit));
  return out;
}

ProbeLayers gonchar_layers() {
  const SampledFunction f = make_named("lacunary_gonchar");
  return ProbeLayers(gonchar_partial_sums(), sup_norm_estimate([&](double x) { return f(x); }, kUnit, 1001));
}

Outcome analytic_rate() {
  Stopwatch sw;
  const SampledFunction f = make_named("runge", {{"c", 2.0}});
  const auto ns = range(10, 20);
  std::vector<double> e, closed;
  const double r = 2.0 - std::sqrt(3.0);
  for (int n : ns) {
    e.push_back(poly_best_approx(f, kUnit, n, kTol).error);
    closed.push_back(std::pow(r, n) / 3.0);  // e_n(1/(x-c)) = r^n / (c^2 - 1)
  }
  const double fit = geometric_fit_rate(e, ns);
  const double oracle_fit = geometric_fit_rate(closed, ns);
  const double t = sw.seconds();
  const bool ok = std::abs(fit - r) <= 0.1 * r && std::abs(fit - oracle_fit) <= 0.1 * oracle_fit && t < 30.0;
  return {ok, fmt("fitted rate %.6f, closed-form fit %.6f, target %.6f, %.2f s", fit, oracle_fit, r, t)};
}

Outcome rho_below_e() {
  Stopwatch sw;
  std::size_t checked = 0, violations = 0;
  double worst = -INFINITY;
  std::string where;
  for (const auto& entry : corpus()) {
    const auto p = decay_profile(make_named(entry.name), kUnit, range(0, 16), kTol);
    for (const auto& e : p.entries) {
      if (!e.usable() || e.rat_status == SolverStatus::Failed) continue;
      ++checked;
      const double gap = e.rho_raw - e.e_raw;
      if (gap > worst) {
        worst = gap;
        where = entry.name + " n=" + std::to_string(e.n);
      }
      if (e.rho_raw > e.e_raw + 2 * kTol) ++violations;
    }
  }
  return {violations == 0 && checked > 0,
          fmt("%zu pairs, %zu violations, largest rho-e %.3g at %s, %.1f s", checked, violations, worst, where.c_str(),
              sw.seconds())};
}

Outcome remez_certificate() {
  Stopwatch sw;
  std::size_t runs = 0, failed = 0;
  std::string first;
  for (const auto& entry : corpus()) {
    const SampledFunction f = make_named(entry.name);
    for (int n = 0; n <= 16; ++n) {
      const auto r = poly_best_approx(f, kUnit, n, kTol);
      const auto c = verify_equioscillation(r, n, kTol);
      ++runs;
      if (!c.passed || r.reference.size() < static_cast<std::size_t>(n + 2)) {
        if (failed++ == 0) first = entry.name + " n=" + std::to_string(n);
      }
    }
  }
  return {failed == 0, fmt("%zu runs, %zu without a certificate%s%s, %.1f s", runs, failed, failed ? ", first " : "",
                           first.c_str(), sw.seconds())};
}

Outcome absval_separation() {
  Stopwatch sw;
  const SampledFunction f = make_named("absval");
  const double e8 = poly_best_approx(f, kUnit, 8, kTol).error;
  const double rho8 = rat_best_approx(f, kUnit, 8, kTol).error;
  const double t = sw.seconds();
  return {rho8 < e8 / 5.0 && t < 120.0, fmt("rho_8 %.6g, e_8/5 %.6g, %.2f s", rho8, e8 / 5.0, t)};
}

Outcome capacities() {
  Stopwatch a;
  const double c1 = log_capacity(CompactSet1D::interval(-1, 1), 200);
  const double t1 = a.seconds();
  Stopwatch b;
  const double c2 = log_capacity(CompactSet1D::interval(0, 1), 200);
  const double t2 = b.seconds();
  const bool ok = std::abs(c1 - 0.5) <= 0.005 && std::abs(c2 - 0.25) <= 0.0025 && t1 < 10.0 && t2 < 10.0;
  return {ok, fmt("cap[-1,1] %.6f (%.2f s), cap[0,1] %.6f (%.2f s)", c1, t1, c2, t2)};
}

Outcome green_cross_check() {
  const auto g = green_fekete(CompactSet1D::interval(-1, 1), 400);
  const ComplexGrid grid{-3, 3, -3, 3, 41, 41};
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.re_count; ++i)
    for (std::size_t j = 0; j < grid.im_count; ++j) {
      const complex z = grid.node(i, j);
      worst = std::max(worst, std::abs(g(z) - green_interval(z, kUnit)));
    }
  return {worst <= 0.02, fmt("sup difference %.5f", worst)};
}

Outcome tau_inequality() {
  const auto t = tau_capacity(CompactSet1D::interval(-1, 1), 2.0, 12);
  const double target = 1.0 / (2.0 + std::sqrt(5.0));
  const double lhs = std::pow(t.cheb.norm_on_A0, 1.0 / 12.0);
  const bool ok = lhs >= t.tau_by_formula - 0.05 && std::abs(t.tau_by_formula - target) <= 0.1 * target;
  return {ok, fmt("||T||^(1/12) %.5f, formula %.5f, target %.5f", lhs, t.tau_by_formula, target)};
}

Outcome bernstein_walsh() {
  oracle::Gen gen(8);
  const ComplexGrid grid = ComplexGrid::standard();
  double worst = -INFINITY;
  for (int i = 0; i < 100; ++i) {
    const int n = gen.integer(1, 20);
    const ChebApproximant p(kUnit, gen.vector(static_cast<std::size_t>(n + 1), -1.0, 1.0));
    worst = std::max(worst, bernstein_walsh_check(p, kUnit, grid).max_violation);
  }
  return {worst <= 1e-4, fmt("max violation %.3g over 100 polynomials", worst)};
}

Outcome envelope_bound() {
  Stopwatch sw;
  const auto s = probe_stream(gonchar_layers(), GridC2::square(64));
  return {s.bound.violations == 0 && s.bound.checked > 0,
          fmt("%zu of %zu layer nodes violate, max slack %.4g, %.1f s", s.bound.violations, s.bound.checked,
              s.bound.max_slack, sw.seconds())};
}

Outcome graph_decay() {
  const auto rep = graph_decay_check(make_named("lacunary_gonchar"), gonchar_partial_sums(), kUnit, 201);
  bool ok = rep.layers.size() == 3;
  double worst = -INFINITY;
  bool any_off = false;
  for (const auto& l : rep.layers) {
    worst = std::max(worst, l.max_on_graph);
    any_off = any_off || l.off_graph_checked;
  }
  ok = ok && worst <= std::log(0.5) + 0.05 && any_off && rep.off_graph_max_deviation <= 0.05;
  return {ok, fmt("max u_k on graph %.5f (bound %.5f), off-graph deviation %.3g", worst, std::log(0.5) + 0.05,
                  rep.off_graph_max_deviation)};
}

Outcome thinness_trend() {
  Stopwatch sw;
  const ProbeLayers layers = gonchar_layers();
  std::vector<double> frac;
  for (std::size_t res : {32u, 64u, 128u}) frac.push_back(probe_stream(layers, GridC2::square(res)).exceptional_fraction);
  const double t = sw.seconds();
  const bool ok = frac[1] <= frac[0] && frac[2] <= frac[1] && t < 600.0;
  return {ok, fmt("fractions %.4g, %.4g, %.4g at 32, 64, 128; %.1f s", frac[0], frac[1], frac[2], t)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root(QALAB_TEST_TMP);
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"classify --fn absval --degrees 2..8", {"summary.json", "verdict.json"}},
      {"capacity --set -1 -0.5 0.5 1 --points 100 --grid-res 11", {"summary.json"}},
      {"probe --fn lacunary_gonchar --res 16", {"summary.json"}},
  };
  std::size_t compared = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<fs::path> dirs;
    for (const char* tag : {"a", "b"}) {
      const fs::path d = root / ("run" + std::to_string(i) + tag);
      fs::remove_all(d);
      const std::string cmd =
          std::string("\"") + QALAB_CLI_PATH + "\" " + runs[i].first + " --out \"" + d.string() + "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + runs[i].first};
      dirs.push_back(d);
    }
    for (const auto& name : runs[i].second) {
      const std::string a = slurp(dirs[0] / name);
      if (a.empty() || a != slurp(dirs[1] / name)) return {false, "differs: " + runs[i].first + " " + name};
      ++compared;
    }
  }
  return {true, fmt("%zu JSON files identical across repeated runs", compared)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"analytic rate of 1/(x-2)", analytic_rate},
      {"rho_n <= e_n over the corpus", rho_below_e},
      {"Remez equioscillation certificate", remez_certificate},
      {"rational/polynomial separation on |x|", absval_separation},
      {"logarithmic capacity", capacities},
      {"Green function cross-check", green_cross_check},
      {"tau-capacity inequality", tau_inequality},
      {"Bernstein-Walsh inequality", bernstein_walsh},
      {"envelope bound on the 64^4 window", envelope_bound},
      {"graph decay of the lacunary series", graph_decay},
      {"exceptional-cell thinness trend", thinness_trend},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
