#include "qalab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qalab/errors.hpp"

namespace qalab {

namespace {

complex int_power(complex z, long long e) {
  complex result = 1.0;
  complex base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

// h(t) = exp(-eps / t) for t > 0, 0 otherwise
double flat_ramp(double t, double eps) { return t > 0.0 ? std::exp(-eps / t) : 0.0; }

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"runge",
               {{"c", 2.0, -1e6, 1e6, false, "pole location; must lie outside the segment"}},
               ExpectedClass::Analytic,
               "1/(x - c); analytic on any segment avoiding c",
               [](const Params& p) {
                 const double cc = p.at("c");
                 return SampledFunction{[cc](double x) { return 1.0 / (x - cc); }, "runge", Smoothness::Analytic};
               }});
  c.push_back({"expo",
               {{"s", 1.0, -50.0, 50.0, false, "rate in exp(s x)"}},
               ExpectedClass::Analytic,
               "exp(s x); entire",
               [](const Params& p) {
                 const double s = p.at("s");
                 return SampledFunction{[s](double x) { return std::exp(s * x); }, "expo", Smoothness::Analytic};
               }});
  c.push_back({"absval",
               {},
               ExpectedClass::NotGonchar,
               "|x|; rational errors decay like exp(-c sqrt(n)), so the n-th roots tend to 1",
               [](const Params&) {
                 return SampledFunction{[](double x) { return std::abs(x); }, "absval", Smoothness::Lipschitz};
               }});
  c.push_back({"lacunary_gonchar",
               {{"K", 5.0, 1.0, 8.0, true, "number of terms (degree K!)"}},
               ExpectedClass::GoncharQA,
               "sum 2^{-(k-1)!} x^{k!}, truncated at K terms; the series is quasianalytic in the sense of Gonchar",
               [](const Params& p) {
                 const int K = static_cast<int>(p.at("K"));
                 return SampledFunction{
                     [K](double x) { return lacunary_partial_sum(LacunaryRule::Gonchar, K, complex(x, 0.0)).real(); },
                     "lacunary_gonchar", Smoothness::Continuous};
               }});
  c.push_back({"lacunary_open",
               {{"K", 5.0, 1.0, 8.0, true, "number of terms (degree K!)"}},
               ExpectedClass::Unknown,
               "sum k^{-ln k} x^{k!}, truncated at K terms; smooth up to the boundary, class membership open",
               [](const Params& p) {
                 const int K = static_cast<int>(p.at("K"));
                 return SampledFunction{
                     [K](double x) {
                       return lacunary_partial_sum(LacunaryRule::OpenQuestion, K, complex(x, 0.0)).real();
                     },
                     "lacunary_open", Smoothness::Continuous};
               }});
  c.push_back({"smooth_step",
               {{"eps", 0.1, 1e-3, 10.0, false, "flatness of h(t) = exp(-eps/t)"}},
               ExpectedClass::Unknown,
               "h(1/2 + x) / (h(1/2 + x) + h(1/2 - x)); infinitely smooth, not analytic at x = +-1/2",
               [](const Params& p) {
                 const double eps = p.at("eps");
                 return SampledFunction{[eps](double x) {
                                          const double a = flat_ramp(0.5 + x, eps);
                                          const double b = flat_ramp(0.5 - x, eps);
                                          return a / (a + b);
                                        },
                                        "smooth_step", Smoothness::Smooth};
               }});
  c.push_back({"flat",
               {{"s", 1.0, 1e-3, 10.0, false, "rate in exp(-s/x^2)"}},
               ExpectedClass::Unknown,
               "exp(-s/x^2) with value 0 at x = 0; infinitely flat at the origin",
               [](const Params& p) {
                 const double s = p.at("s");
                 return SampledFunction{[s](double x) { return x == 0.0 ? 0.0 : std::exp(-s / (x * x)); }, "flat",
                                        Smoothness::Smooth};
               }});
  return c;
}

std::string valid_names() {
  std::string s;
  for (const auto& e : corpus()) s += (s.empty() ? "" : ", ") + e.name;
  return s;
}

}  // namespace

std::string to_string(ExpectedClass c) {
  switch (c) {
    case ExpectedClass::Analytic:
      return "analytic";
    case ExpectedClass::BernsteinQA:
      return "bernstein_qa";
    case ExpectedClass::GoncharQA:
      return "gonchar_qa";
    case ExpectedClass::NotGonchar:
      return "not_gonchar";
    case ExpectedClass::Unknown:
      return "unknown";
  }
  return "unknown";
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw ArgumentError("unknown corpus function '" + name + "'; valid names: " + valid_names());
}

SampledFunction make_named(const std::string& name, const Params& params) {
  const CorpusEntry& entry = corpus_entry(name);
  Params full;
  for (const auto& spec : entry.params) full[spec.name] = spec.default_value;
  for (const auto& [key, value] : params) {
    const auto it = std::find_if(entry.params.begin(), entry.params.end(),
                                 [&](const ParamSpec& s) { return s.name == key; });
    if (it == entry.params.end()) throw ArgumentError("corpus function '" + name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value) || value < it->min || value > it->max)
      throw ArgumentError("parameter '" + key + "' of '" + name + "' out of range [" + std::to_string(it->min) + ", " +
                          std::to_string(it->max) + "]");
    if (it->integer && value != std::trunc(value))
      throw ArgumentError("parameter '" + key + "' of '" + name + "' must be an integer");
    full[key] = value;
  }
  return entry.builder(full);
}

double lacunary_coefficient(LacunaryRule rule, int k) {
  if (k < 1) throw ArgumentError("lacunary index starts at 1");
  if (rule == LacunaryRule::Gonchar) return std::exp2(-static_cast<double>(lacunary_degree(k - 1)));
  const double lk = std::log(static_cast<double>(k));
  return std::exp(-lk * lk);
}

long long lacunary_degree(int k) {
  if (k < 0 || k > 20) throw RangeError("factorial index out of range");
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

complex lacunary_partial_sum(LacunaryRule rule, int K, complex z) {
  if (K < 1) throw ArgumentError("lacunary series needs K >= 1");
  const double mod = std::abs(z);
  if (mod > 1.0 && static_cast<double>(lacunary_degree(K)) * std::log(mod) > 700.0)
    throw RangeError("|z|^{K!} overflows the floating-point range");
  complex sum = 0.0;
  complex zk = z;  // z^{k!}
  for (int k = 1; k <= K; ++k) {
    if (k > 1) zk = int_power(zk, k);
    sum += lacunary_coefficient(rule, k) * zk;
  }
  return sum;
}

RationalApproximant lacunary_partial_sum_approximant(LacunaryRule rule, int k, const IntervalDomain& dom) {
  const long long deg = lacunary_degree(k);
  if (deg > 5040) throw RangeError("partial sum degree too large for an interpolant");
  const SampledFunction s{[rule, k](double x) { return lacunary_partial_sum(rule, k, complex(x, 0.0)).real(); },
                          "lacunary_partial_sum", Smoothness::Analytic};
  const int n = static_cast<int>(deg);
  return RationalApproximant::from_polynomial(cheb_interpolate(s, dom, n), n);
}

}  // namespace qalab
