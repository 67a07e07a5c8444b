#pragma once

// Built-in test functions and lacunary series.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qalab/approx_core.hpp"

namespace qalab {

/// Known membership of the (untruncated) function, Unknown where not established.
enum class ExpectedClass { Analytic, BernsteinQA, GoncharQA, NotGonchar, Unknown };

std::string to_string(ExpectedClass c);

using Params = std::map<std::string, double>;

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  double min = 0.0;
  double max = 0.0;
  bool integer = false;
  std::string doc;
};

struct CorpusEntry {
  std::string name;
  std::vector<ParamSpec> params;
  ExpectedClass expected_class = ExpectedClass::Unknown;
  std::string notes;
  std::function<SampledFunction(const Params&)> builder;  // receives a complete, validated map
};

const std::vector<CorpusEntry>& corpus();

/// Throws ArgumentError listing the valid names.
const CorpusEntry& corpus_entry(const std::string& name);

/// Throws ArgumentError for unknown names, unknown parameters or out-of-range values.
SampledFunction make_named(const std::string& name, const Params& params = {});

enum class LacunaryRule { Gonchar, OpenQuestion };

/// a_k = 2^{-(k-1)!} (Gonchar) or k^{-ln k} (open question).
double lacunary_coefficient(LacunaryRule rule, int k);

/// k!, the exponent of the k-th term.
long long lacunary_degree(int k);

/// sum_{k=1..K} a_k z^{k!}, with z^{k!} = (z^{(k-1)!})^k by repeated squaring.
/// Throws RangeError when |z|^{K!} leaves the floating-point range.
complex lacunary_partial_sum(LacunaryRule rule, int K, complex z);

/// The k-term partial sum as a degree-k! polynomial on `dom` (q = 1), for use as a probe layer.
RationalApproximant lacunary_partial_sum_approximant(LacunaryRule rule, int k, const IntervalDomain& dom);

}  // namespace qalab
