#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qalab/errors.hpp"
#include "qalab/expression.hpp"

namespace qalab::app {

namespace {

int to_int(const std::string& s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string FunctionSpec::label() const {
  if (!expr.empty()) return expr;
  std::string s = name;
  for (const auto& [k, v] : params) {
    std::ostringstream os;
    os << v;
    s += " " + k + "=" + os.str();
  }
  return s;
}

std::vector<int> parse_degrees(const std::string& text) {
  const std::string t = trim(text);
  std::vector<int> out;
  if (t.empty()) return out;
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const std::string lo = trim(t.substr(0, dots));
    std::string rest = trim(t.substr(dots + 2));
    int step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = to_int(trim(rest.substr(colon + 1)));
      rest = trim(rest.substr(0, colon));
    }
    const int a = to_int(lo), b = to_int(rest);
    if (step < 1 || b < a) throw ConfigError("bad degree range '" + t + "'");
    for (int n = a; n <= b; n += step) out.push_back(n);
  } else {
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(trim(item)));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0) throw ConfigError("degrees must be nonnegative");
    if (i > 0 && out[i] <= out[i - 1]) throw ConfigError("degrees must be strictly increasing");
  }
  return out;
}

std::pair<std::string, double> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("parameter must look like key=value: '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  const std::string val = trim(text.substr(eq + 1));
  double v = 0.0;
  const auto res = std::from_chars(val.data(), val.data() + val.size(), v);
  if (res.ec != std::errc() || res.ptr != val.data() + val.size() || val.empty())
    throw ConfigError("parameter value is not a number: '" + text + "'");
  return {key, v};
}

void load_config_file(const std::filesystem::path& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "fn") {
        cfg.fn.name = v.get<std::string>();
      } else if (key == "params") {
        for (const auto& [pk, pv] : v.items()) cfg.fn.params[pk] = pv.get<double>();
      } else if (key == "expr") {
        cfg.fn.expr = v.get<std::string>();
      } else if (key == "domain") {
        const auto d = v.get<std::vector<double>>();
        if (d.size() != 2) throw ConfigError("domain needs two numbers");
        cfg.a = d[0];
        cfg.b = d[1];
      } else if (key == "degrees") {
        if (v.is_string()) {
          cfg.degrees = parse_degrees(v.get<std::string>());
        } else {
          std::string joined;
          for (int n : v.get<std::vector<int>>()) joined += (joined.empty() ? "" : ",") + std::to_string(n);
          cfg.degrees = parse_degrees(joined);
        }
      } else if (key == "tol") {
        cfg.tol = v.get<double>();
      } else if (key == "threshold") {
        cfg.threshold = v.get<double>();
      } else if (key == "out") {
        cfg.out_dir = v.get<std::string>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "set") {
        cfg.set.clear();
        for (const auto& iv : v) {
          const auto d = iv.get<std::vector<double>>();
          if (d.size() != 2) throw ConfigError("each set interval needs two numbers");
          cfg.set.emplace_back(d[0], d[1]);
        }
      } else if (key == "points") {
        cfg.points = v.get<int>();
      } else if (key == "radius") {
        cfg.radius = v.get<double>();
      } else if (key == "tau_degree") {
        cfg.tau_degree = v.get<int>();
      } else if (key == "grid_res") {
        cfg.grid_res = v.get<std::size_t>();
      } else if (key == "grid_half_width") {
        cfg.grid_half_width = v.get<double>();
      } else if (key == "res") {
        cfg.res = v.get<std::size_t>();
      } else if (key == "z_half_width") {
        cfg.z_half_width = v.get<double>();
      } else if (key == "w_half_width") {
        cfg.w_half_width = v.get<double>();
      } else if (key == "eps") {
        cfg.eps = v.get<double>();
      } else if (key == "tail_start") {
        cfg.tail_start = v.get<std::size_t>();
      } else if (key == "approximants") {
        cfg.approximants = v.get<std::string>();
      } else if (key == "x_grid") {
        cfg.x_grid = v.get<std::size_t>();
      } else if (key == "floor") {
        cfg.floor = v.get<double>();
      } else if (key == "slice_w") {
        const auto d = v.get<std::vector<double>>();
        if (d.size() != 2) throw ConfigError("slice_w needs two numbers");
        cfg.slice_w_re = d[0];
        cfg.slice_w_im = d[1];
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

SampledFunction build_function(const FunctionSpec& spec, const IntervalDomain& dom) {
  if (!spec.expr.empty() && !spec.name.empty()) throw ConfigError("give either --fn or --expr, not both");
  SampledFunction f;
  if (!spec.expr.empty()) {
    f = make_expression_function(spec.expr);
  } else if (!spec.name.empty()) {
    f = make_named(spec.name, spec.params);
  } else {
    throw ConfigError("no function given; use --fn NAME or --expr TEXT");
  }
  constexpr int kSamples = 101;
  for (int i = 0; i < kSamples; ++i) {
    const double x = dom.a() + dom.length() * (static_cast<double>(i) / (kSamples - 1));
    try {
      (void)f(x);
    } catch (const InputFunctionError& e) {
      throw ConfigError(std::string("function is not defined on the domain: ") + e.what());
    }
  }
  return f;
}

}  // namespace qalab::app
