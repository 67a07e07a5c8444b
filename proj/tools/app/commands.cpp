#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <optional>

#include "app.hpp"
#include "config.hpp"
#include "qalab/classifier.hpp"
#include "qalab/corpus.hpp"
#include "qalab/errors.hpp"
#include "qalab/minimax.hpp"
#include "qalab/potential.hpp"
#include "qalab/probe.hpp"
#include "report.hpp"

namespace qalab::app {

namespace {

constexpr const char* kGrammarHelp = R"(Expressions (--expr) are real functions of x:
  expr    := term (('+' | '-') term)*
  term    := unary (('*' | '/') unary)*
  unary   := '-' unary | power
  power   := primary ('^' exponent)*        (left-associative: a^b^c = (a^b)^c)
  exponent:= '-' exponent | primary
  primary := number | x | func '(' expr ')' | '(' expr ')'
  func    := exp | sin | cos | abs | log
Exit codes: 0 success, 2 configuration or parse error, 3 solver failure.)";

// Flag values as given on the command line; only flags actually passed override the config file.
struct RawFlags {
  std::string config;
  std::string fn;
  std::vector<std::string> params;
  std::string expr;
  std::vector<double> domain;
  std::string degrees;
  double tol = 0.0;
  double threshold = 0.0;
  std::string out;
  std::uint64_t seed = 0;
  std::vector<double> set;
  int points = 0;
  double radius = 0.0;
  int tau_degree = 0;
  std::size_t grid_res = 0;
  double grid_half_width = 0.0;
  std::size_t res = 0;
  double z_half_width = 0.0;
  double w_half_width = 0.0;
  double eps = 0.0;
  std::size_t tail_start = 0;
  std::string approximants;
  std::size_t x_grid = 0;
  double floor = 0.0;
  std::vector<double> slice_w;
  bool details = false;
};

void add_function_flags(CLI::App* sub, RawFlags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--fn", f.fn, "corpus function name (see `qalab corpus`)");
  sub->add_option("--param", f.params, "corpus parameter key=value (repeatable)");
  sub->add_option("--expr", f.expr, "expression in x (grammar below)");
  sub->add_option("--domain", f.domain, "segment endpoints a b")->expected(2);
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "seed recorded with the run");
}

bool given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

ExperimentConfig build_config(const CLI::App* sub, const RawFlags& f) {
  ExperimentConfig cfg;
  if (given(sub, "--config")) load_config_file(f.config, cfg);
  if (given(sub, "--fn")) {
    cfg.fn.name = f.fn;
    cfg.fn.expr.clear();
  }
  if (given(sub, "--expr")) {
    cfg.fn.expr = f.expr;
    if (!given(sub, "--fn")) cfg.fn.name.clear();
  }
  if (given(sub, "--param"))
    for (const auto& p : f.params) cfg.fn.params.insert_or_assign(parse_param(p).first, parse_param(p).second);
  if (given(sub, "--domain")) {
    cfg.a = f.domain.at(0);
    cfg.b = f.domain.at(1);
  }
  if (given(sub, "--degrees")) cfg.degrees = parse_degrees(f.degrees);
  if (given(sub, "--tol")) cfg.tol = f.tol;
  if (given(sub, "--threshold")) cfg.threshold = f.threshold;
  if (given(sub, "--out")) cfg.out_dir = f.out;
  if (given(sub, "--seed")) cfg.seed = f.seed;
  if (given(sub, "--set")) {
    if (f.set.size() % 2 != 0) throw ConfigError("--set takes pairs of endpoints");
    cfg.set.clear();
    for (std::size_t i = 0; i < f.set.size(); i += 2) cfg.set.emplace_back(f.set[i], f.set[i + 1]);
  }
  if (given(sub, "--points")) cfg.points = f.points;
  if (given(sub, "--radius")) cfg.radius = f.radius;
  if (given(sub, "--tau-degree")) cfg.tau_degree = f.tau_degree;
  if (given(sub, "--grid-res")) cfg.grid_res = f.grid_res;
  if (given(sub, "--grid-half-width")) cfg.grid_half_width = f.grid_half_width;
  if (given(sub, "--res")) cfg.res = f.res;
  if (given(sub, "--z-half-width")) cfg.z_half_width = f.z_half_width;
  if (given(sub, "--w-half-width")) cfg.w_half_width = f.w_half_width;
  if (given(sub, "--eps")) cfg.eps = f.eps;
  if (given(sub, "--tail-start")) cfg.tail_start = f.tail_start;
  if (given(sub, "--approximants")) cfg.approximants = f.approximants;
  if (given(sub, "--x-grid")) cfg.x_grid = f.x_grid;
  if (given(sub, "--floor")) cfg.floor = f.floor;
  if (given(sub, "--slice-w")) {
    cfg.slice_w_re = f.slice_w.at(0);
    cfg.slice_w_im = f.slice_w.at(1);
  }
  return cfg;
}

IntervalDomain domain_of(const ExperimentConfig& cfg) {
  if (!std::isfinite(cfg.a) || !std::isfinite(cfg.b) || !(cfg.a < cfg.b))
    throw ConfigError("domain must be finite with a < b");
  return IntervalDomain(cfg.a, cfg.b);
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
}

Json function_json(const ExperimentConfig& cfg) {
  Json j;
  if (!cfg.fn.expr.empty()) {
    j["expr"] = cfg.fn.expr;
  } else {
    j["name"] = cfg.fn.name;
    Json p = Json::object();
    for (const auto& [k, v] : cfg.fn.params) p[k] = v;
    j["params"] = p;
  }
  return j;
}

Json header(const std::string& command, const ExperimentConfig& cfg) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = cfg.seed;
  return j;
}

double nth_root(double v, int n) { return n > 0 && v >= 0.0 ? std::pow(v, 1.0 / n) : std::nan(""); }

// ---- approx / classify -------------------------------------------------------

struct DecayRun {
  DecayProfile profile;
};

DecayRun run_decay(const ExperimentConfig& cfg) {
  const IntervalDomain dom = domain_of(cfg);
  check_positive(cfg.tol, "tol");
  const SampledFunction f = build_function(cfg.fn, dom);
  const std::vector<int> degrees = cfg.degrees.value_or(parse_degrees("2..16"));
  DecayRun run;
  if (degrees.empty()) {
    run.profile.alpha_e = std::nan("");
    run.profile.alpha_rho = std::nan("");
    run.profile.tol = cfg.tol;
  } else {
    run.profile = decay_profile(f, dom, degrees, cfg.tol);
  }
  return run;
}

void add_decay_artifacts(ArtifactSet& set, const std::string& command, const ExperimentConfig& cfg,
                         const DecayProfile& profile) {
  CsvTable csv({"n", "e_n", "rho_n", "e_root", "rho_root", "e_raw", "rho_raw", "poly_status", "rat_status"});
  Json entries = Json::array();
  std::vector<double> ev;
  std::vector<int> idx;
  for (const auto& e : profile.entries) {
    csv.row()
        .integer(e.n)
        .num(e.e_n)
        .num(e.rho_n)
        .num(nth_root(e.e_n, e.n))
        .num(nth_root(e.rho_n, e.n))
        .num(e.e_raw)
        .num(e.rho_raw)
        .text(to_string(e.poly_status))
        .text(to_string(e.rat_status));
    Json je;
    je["n"] = e.n;
    je["e_n"] = number_or_null(e.e_n);
    je["rho_n"] = number_or_null(e.rho_n);
    je["e_root"] = number_or_null(nth_root(e.e_n, e.n));
    je["rho_root"] = number_or_null(nth_root(e.rho_n, e.n));
    je["poly_status"] = to_string(e.poly_status);
    je["rat_status"] = to_string(e.rat_status);
    entries.push_back(je);
    if (e.usable() && e.n > 0) {
      ev.push_back(e.e_n);
      idx.push_back(e.n);
    }
  }
  set.add_text("decay.csv", csv.str());

  Json s = header(command, cfg);
  s["function"] = function_json(cfg);
  s["domain"] = {cfg.a, cfg.b};
  s["tol"] = cfg.tol;
  Json degs = Json::array();
  for (const auto& e : profile.entries) degs.push_back(e.n);
  s["degrees"] = degs;
  s["alpha_e"] = number_or_null(profile.alpha_e);
  s["alpha_rho"] = number_or_null(profile.alpha_rho);
  std::size_t positive = 0;
  for (double v : ev) positive += v > 0.0;
  s["e_fit_rate"] = positive >= 2 ? number_or_null(geometric_fit_rate(ev, idx)) : Json(nullptr);
  s["entries"] = entries;
  set.add_json("summary.json", s);
}

ArtifactSet cmd_approx(const ExperimentConfig& cfg) {
  const DecayRun run = run_decay(cfg);
  ArtifactSet set;
  add_decay_artifacts(set, "approx", cfg, run.profile);
  return set;
}

ArtifactSet cmd_classify(const ExperimentConfig& cfg) {
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
  const DecayRun run = run_decay(cfg);
  const ClassVerdict v = classify(run.profile, cfg.threshold);
  ArtifactSet set;
  add_decay_artifacts(set, "classify", cfg, run.profile);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = to_string(v.verdict);
  j["alpha_e"] = number_or_null(v.alpha_e);
  j["alpha_rho"] = number_or_null(v.alpha_rho);
  j["limsup_e"] = number_or_null(v.limsup_e);
  Json ev = Json::array();
  for (const auto& e : v.evidence) {
    Json je;
    je["series"] = e.series;
    je["n"] = e.n;
    je["value"] = number_or_null(e.value);
    je["root"] = number_or_null(e.root);
    ev.push_back(je);
  }
  j["evidence"] = ev;
  j["threshold"] = v.threshold;
  j["tests"] = {{"analytic_rate", v.analytic_test}, {"bernstein", v.bernstein_test}, {"gonchar", v.gonchar_test}};
  if (!cfg.fn.name.empty()) j["expected_class"] = to_string(corpus_entry(cfg.fn.name).expected_class);
  set.add_json("verdict.json", j);
  return set;
}

// ---- capacity ------------------------------------------------------------------

ArtifactSet cmd_capacity(const ExperimentConfig& cfg) {
  std::vector<IntervalDomain> ivs;
  if (cfg.set.empty()) {
    ivs.push_back(domain_of(cfg));
  } else {
    for (const auto& [a, b] : cfg.set) {
      if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw ConfigError("set intervals need finite a < b");
      ivs.emplace_back(a, b);
    }
  }
  if (cfg.points < 2) throw ConfigError("points must be at least 2");
  check_positive(cfg.radius, "radius");
  if (cfg.grid_res < 2) throw ConfigError("grid-res must be at least 2");
  check_positive(cfg.grid_half_width, "grid-half-width");
  const std::vector<int> tau_degrees = cfg.degrees.value_or(std::vector<int>{cfg.tau_degree});
  for (int n : tau_degrees)
    if (n < 1) throw ConfigError("tau degrees must be >= 1");
  const CompactSet1D K(ivs);
  if (K.max_modulus() > cfg.radius) throw ConfigError("the set must lie in the disk |z| <= radius");

  ArtifactSet set;
  CsvTable cap_csv({"n", "capacity", "transfinite_diameter", "envelope"});
  std::vector<int> ladder;
  for (int n = 25; n < cfg.points; n *= 2) ladder.push_back(n);
  ladder.push_back(cfg.points);
  CapacityEstimate last;
  for (int n : ladder) {
    last = capacity_estimate(K, n);
    cap_csv.row().integer(n).num(last.capacity).num(last.transfinite_diameter).num(last.envelope);
  }
  set.add_text("capacity.csv", cap_csv.str());

  CsvTable tau_csv({"n", "tau", "tau_by_formula"});
  Json taus = Json::array();
  complex argmax;
  for (int n : tau_degrees) {
    const TauCapacity t = tau_capacity(K, cfg.radius, n);
    tau_csv.row().integer(n).num(t.tau).num(t.tau_by_formula);
    taus.push_back({{"n", n}, {"tau", t.tau}, {"tau_by_formula", t.tau_by_formula}, {"norm_on_disk", t.cheb.norm_on_disk}});
    argmax = t.formula_argmax;
  }
  set.add_text("tau.csv", tau_csv.str());

  const double h = cfg.grid_half_width;
  const ComplexGrid grid{-h, h, -h, h, cfg.grid_res, cfg.grid_res};
  const ExtremalField field = extremal_field(K, grid, cfg.points);
  CsvTable v_csv({"re", "im", "vstar"});
  double vmax = 0.0;
  for (std::size_t i = 0; i < grid.re_count; ++i)
    for (std::size_t j = 0; j < grid.im_count; ++j) {
      const complex z = grid.node(i, j);
      v_csv.row().num(z.real()).num(z.imag()).num(field.at(i, j));
      vmax = std::max(vmax, field.at(i, j));
    }
  set.add_text("vstar.csv", v_csv.str());

  Json s = header("capacity", cfg);
  Json jset = Json::array();
  for (const auto& iv : K.intervals()) jset.push_back({iv.a(), iv.b()});
  s["set"] = jset;
  s["points"] = cfg.points;
  s["capacity"] = last.capacity;
  s["transfinite_diameter"] = last.transfinite_diameter;
  s["envelope"] = last.envelope;
  s["radius"] = cfg.radius;
  s["tau"] = taus;
  s["tau_formula_argmax"] = {argmax.real(), argmax.imag()};
  s["vstar"] = {{"method", field.method == FieldMethod::ClosedForm ? "closed_form" : "fekete"},
                {"fekete_count", field.fekete_count},
                {"grid_res", cfg.grid_res},
                {"half_width", h},
                {"max", vmax}};
  set.add_json("summary.json", s);
  return set;
}

// ---- probe ---------------------------------------------------------------------

std::vector<RationalApproximant> probe_approximants(const ExperimentConfig& cfg, const SampledFunction& f,
                                                    const IntervalDomain& dom, std::string& mode) {
  const bool lacunary = cfg.fn.name == "lacunary_gonchar" || cfg.fn.name == "lacunary_open";
  mode = cfg.approximants.empty() ? (lacunary ? "partial_sums" : "minimax") : cfg.approximants;
  std::vector<RationalApproximant> out;
  if (mode == "partial_sums") {
    if (!lacunary) throw ConfigError("partial_sums approximants need a lacunary corpus function");
    const auto it = cfg.fn.params.find("K");
    const int K = it == cfg.fn.params.end() ? 5 : static_cast<int>(it->second);
    if (K < 3) throw ConfigError("partial_sums approximants need K >= 3");
    const LacunaryRule rule = cfg.fn.name == "lacunary_gonchar" ? LacunaryRule::Gonchar : LacunaryRule::OpenQuestion;
    for (int k = 2; k < K; ++k) out.push_back(lacunary_partial_sum_approximant(rule, k, dom));
  } else if (mode == "minimax") {
    const std::vector<int> degrees = cfg.degrees.value_or(std::vector<int>{2, 4, 6});
    for (int n : degrees) {
      if (n < 1) throw ConfigError("probe degrees must be >= 1");
    }
    for (int n : degrees) {
      RationalOptions opts;
      opts.polynomial_fallback = true;
      out.push_back(rat_best_approx(f, dom, n, cfg.tol, opts).approx);
    }
  } else {
    throw ConfigError("approximants must be 'partial_sums' or 'minimax'");
  }
  return out;
}

std::size_t nearest_index(double lo, double hi, std::size_t count, double v) {
  const double t = (v - lo) / (hi - lo) * static_cast<double>(count - 1);
  return static_cast<std::size_t>(std::clamp(std::lround(t), 0L, static_cast<long>(count - 1)));
}

ArtifactSet cmd_probe(ExperimentConfig cfg) {
  if (cfg.fn.name.empty() && cfg.fn.expr.empty()) cfg.fn.name = "lacunary_gonchar";
  const IntervalDomain dom = domain_of(cfg);
  check_positive(cfg.tol, "tol");
  check_positive(cfg.eps, "eps");
  check_positive(cfg.floor, "floor");
  check_positive(cfg.z_half_width, "z-half-width");
  check_positive(cfg.w_half_width, "w-half-width");
  if (cfg.x_grid < 2) throw ConfigError("x-grid must be at least 2");
  const ComplexGrid zg{-cfg.z_half_width, cfg.z_half_width, -cfg.z_half_width, cfg.z_half_width, cfg.res, cfg.res};
  const ComplexGrid wg{-cfg.w_half_width, cfg.w_half_width, -cfg.w_half_width, cfg.w_half_width, cfg.res, cfg.res};
  const GridC2 grid{zg, wg};
  try {
    grid.validate(dom);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  const SampledFunction f = build_function(cfg.fn, dom);
  std::string mode;
  const std::vector<RationalApproximant> approximants = probe_approximants(cfg, f, dom, mode);
  if (cfg.tail_start && *cfg.tail_start >= approximants.size())
    throw ConfigError("tail-start must be smaller than the number of layers");

  const double f_sup = sup_norm_estimate([&](double x) { return f(x); }, dom, 1001);
  const ProbeLayers layers(approximants, f_sup);
  ProbeOptions popts;
  popts.tail_start = cfg.tail_start;
  popts.eps = cfg.eps;
  const ProbeSummary ps = probe_stream(layers, grid, popts);
  GraphDecayOptions gopts;
  gopts.tail_start = cfg.tail_start;
  const GraphDecayReport gd = graph_decay_check(f, approximants, dom, cfg.x_grid, gopts);
  DenominatorScan scan;
  const bool have_scan = approximants.size() >= 2;
  if (have_scan) scan = small_denominator_scan(approximants, dom, cfg.x_grid, cfg.floor);

  ArtifactSet set;
  const std::size_t wr = nearest_index(wg.re_min, wg.re_max, wg.re_count, cfg.slice_w_re);
  const std::size_t wi = nearest_index(wg.im_min, wg.im_max, wg.im_count, cfg.slice_w_im);
  const complex w = wg.node(wr, wi);
  for (std::size_t k = 0; k < layers.count(); ++k) {
    CsvTable csv({"z_re", "z_im", "w_re", "w_im", "u_k"});
    for (std::size_t i = 0; i < zg.re_count; ++i)
      for (std::size_t j = 0; j < zg.im_count; ++j) {
        const complex z = zg.node(i, j);
        csv.row().num(z.real()).num(z.imag()).num(w.real()).num(w.imag()).num(layers.value(k, z, w));
      }
    set.add_text("ufield_k" + std::to_string(layers.layers()[k].degree) + ".csv", csv.str());
  }

  std::vector<std::string> gh{"x", "f"};
  for (const auto& l : gd.layers) gh.push_back("u_k" + std::to_string(l.degree));
  CsvTable gcsv(gh);
  for (std::size_t i = 0; i < gd.x.size(); ++i) {
    gcsv.row().num(gd.x[i]).num(f(gd.x[i]));
    for (std::size_t k = 0; k < layers.count(); ++k)
      gcsv.num(layers.value(k, complex(gd.x[i], 0.0), complex(gd.scale * f(gd.x[i]), 0.0)));
  }
  set.add_text("graph.csv", gcsv.str());
  if (have_scan) {
    std::vector<std::string> vh{"x"};
    for (int d : scan.degrees) vh.push_back("vartheta_k" + std::to_string(d));
    CsvTable vcsv(vh);
    for (std::size_t i = 0; i < scan.x.size(); ++i) {
      vcsv.row().num(scan.x[i]);
      for (const auto& vk : scan.vartheta) vcsv.num(vk[i]);
    }
    set.add_text("vartheta.csv", vcsv.str());
  }

  Json s = header("probe", cfg);
  s["function"] = function_json(cfg);
  s["domain"] = {cfg.a, cfg.b};
  s["approximants"] = mode;
  s["degrees"] = ps.degrees;
  s["grid"] = {{"res", cfg.res}, {"z_half_width", cfg.z_half_width}, {"w_half_width", cfg.w_half_width},
               {"nodes", ps.nodes}};
  s["scale"] = ps.scale;
  s["tail_start"] = ps.tail_start;
  s["envelope_bound_max_slack"] = number_or_null(ps.bound.max_slack);
  s["envelope_bound_violations"] = ps.bound.violations;
  s["envelope_bound_checked"] = ps.bound.checked;
  s["u_minus_vstar_max"] = number_or_null(ps.bound.vstar_excess);
  s["u"] = {{"min", number_or_null(ps.u_min)}, {"max", number_or_null(ps.u_max)}, {"neg_inf_nodes", ps.u_neg_inf}};
  s["exceptional"] = {{"eps", cfg.eps},
                      {"count", ps.exceptional_count},
                      {"fraction", ps.exceptional_fraction},
                      {"u_star_minus_u_max", number_or_null(ps.u_star_minus_u_max)}};
  Json gl = Json::array();
  for (const auto& l : gd.layers)
    gl.push_back({{"degree", l.degree},
                  {"certificate_error", number_or_null(l.certificate_error)},
                  {"max_on_graph", number_or_null(l.max_on_graph)},
                  {"max_bound_slack", number_or_null(l.max_bound_slack)},
                  {"off_graph_checked", l.off_graph_checked},
                  {"off_graph_max_deviation", number_or_null(l.off_graph_max_deviation)}});
  s["graph_decay"] = {{"alpha", gd.alpha},
                      {"x_grid", cfg.x_grid},
                      {"max_slack", number_or_null(gd.max_slack)},
                      {"off_graph_max_deviation", number_or_null(gd.off_graph_max_deviation)},
                      {"layers", gl}};
  Json hull = Json::array();
  for (const auto& iv : scan.a_hull) hull.push_back({iv.a(), iv.b()});
  s["denominator_scan"] = {{"floor", cfg.floor},
                           {"a_cells", scan.a_cells.size()},
                           {"a_hull", hull},
                           {"a_capacity", scan.a_capacity}};
  set.add_json("summary.json", s);
  return set;
}

// ---- corpus --------------------------------------------------------------------

Json corpus_details() {
  Json arr = Json::array();
  for (const auto& e : corpus()) {
    Json params = Json::array();
    for (const auto& p : e.params)
      params.push_back({{"name", p.name},
                        {"default", p.default_value},
                        {"min", p.min},
                        {"max", p.max},
                        {"integer", p.integer},
                        {"doc", p.doc}});
    arr.push_back({{"name", e.name}, {"expected_class", to_string(e.expected_class)}, {"params", params}, {"notes", e.notes}});
  }
  return arr;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const InsufficientEvidenceError*>(&e)) return "insufficient_evidence";
  if (dynamic_cast<const DegenerateApproximantError*>(&e)) return "degenerate_approximant";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const CapacityZeroError*>(&e)) return "capacity_zero";
  if (dynamic_cast<const PoleProximityError*>(&e)) return "pole_proximity";
  if (dynamic_cast<const InputFunctionError*>(&e)) return "input_function";
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  return "solver";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qalab: minimax decay, potential theory and C^2 envelope experiments"};
  app.footer(kGrammarHelp);
  app.require_subcommand(1);
  RawFlags f;

  auto* approx = app.add_subcommand("approx", "polynomial and rational minimax errors e_n, rho_n");
  auto* classify_cmd = app.add_subcommand("classify", "classify by n-th root error decay");
  auto* capacity = app.add_subcommand("capacity", "capacity, tau-capacity and V* grid of a union of segments");
  auto* probe = app.add_subcommand("probe", "u_k fields, envelope bound and exceptional cells on a C^2 grid");
  auto* corpus_cmd = app.add_subcommand("corpus", "list the built-in functions as JSON");

  for (auto* sub : {approx, classify_cmd, capacity, probe}) add_function_flags(sub, f);
  for (auto* sub : {approx, classify_cmd, probe}) {
    sub->add_option("--degrees", f.degrees, "degree list: a..b, a..b:step or comma list");
    sub->add_option("--tol", f.tol, "relative solver tolerance");
  }
  classify_cmd->add_option("--threshold", f.threshold, "n-th root threshold below 1 (default 0.95)");
  capacity->add_option("--degrees", f.degrees, "tau degrees");
  capacity->add_option("--set", f.set, "segment endpoints a1 b1 a2 b2 ... (default: the domain)");
  capacity->add_option("--points", f.points, "number of Leja points (default 200)");
  capacity->add_option("--radius", f.radius, "disk radius for tau (default 2)");
  capacity->add_option("--tau-degree", f.tau_degree, "degree of the constrained polynomial (default 12)");
  capacity->add_option("--grid-res", f.grid_res, "V* grid nodes per axis (default 41)");
  capacity->add_option("--grid-half-width", f.grid_half_width, "V* grid half width (default 3)");
  probe->add_option("--res", f.res, "nodes per axis in each complex window (default 64)");
  probe->add_option("--z-half-width", f.z_half_width, "z-window half width (default 2)");
  probe->add_option("--w-half-width", f.w_half_width, "w-window half width (default 2)");
  probe->add_option("--eps", f.eps, "exceptional cell threshold (default 0.1)");
  probe->add_option("--tail-start", f.tail_start, "first layer of the envelope (default: a third of the layers)");
  probe->add_option("--approximants", f.approximants, "partial_sums or minimax");
  probe->add_option("--x-grid", f.x_grid, "nodes on the segment for graph and denominator scans (default 201)");
  probe->add_option("--floor", f.floor, "small-denominator floor (default 0.1)");
  probe->add_option("--slice-w", f.slice_w, "w value of the dumped (z_re, z_im) slices")->expected(2);
  corpus_cmd->add_option("--out", f.out, "also write corpus.json with parameters into this directory");
  corpus_cmd->add_flag("--details", f.details, "print parameters and notes, not only names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (corpus_cmd->parsed()) {
    const Json details = corpus_details();
    Json names = Json::array();
    for (const auto& e : corpus()) names.push_back(e.name);
    out << (f.details ? details : names).dump(2) << "\n";
    if (given(corpus_cmd, "--out")) {
      ArtifactSet set;
      set.add_json("corpus.json", details);
      try {
        write_artifacts(f.out, set);
      } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
      }
    }
    return kExitOk;
  }

  CLI::App* sub = nullptr;
  for (auto* s : {approx, classify_cmd, capacity, probe})
    if (s->parsed()) sub = s;
  const std::string command = sub->get_name();

  std::filesystem::path out_dir = given(sub, "--out") ? std::filesystem::path(f.out) : std::filesystem::path();
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    err << "error: " << message << "\n";
    if (!out_dir.empty()) write_failure(out_dir, command, code, kind, message);
    return code;
  };

  ExperimentConfig cfg;
  try {
    cfg = build_config(sub, f);
    out_dir = cfg.out_dir;
  } catch (const ConfigError& e) {
    return fail(kExitConfig, "config", e.what());
  } catch (const Error& e) {
    return fail(kExitConfig, "config", e.what());
  }

  ArtifactSet set;
  try {
    if (sub == approx) set = cmd_approx(cfg);
    if (sub == classify_cmd) set = cmd_classify(cfg);
    if (sub == capacity) set = cmd_capacity(cfg);
    if (sub == probe) set = cmd_probe(cfg);
  } catch (const ConfigError& e) {
    return fail(kExitConfig, "config", e.what());
  } catch (const ParseError& e) {
    return fail(kExitConfig, "parse", e.what());
  } catch (const ArgumentError& e) {
    return fail(kExitConfig, "argument", e.what());
  } catch (const Error& e) {
    return fail(kExitSolver, error_kind(e), e.what());
  } catch (const std::exception& e) {
    return fail(kExitSolver, "internal", e.what());
  }

  try {
    write_artifacts(cfg.out_dir, set);
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitConfig, "filesystem", e.what());
  }
  for (const auto& [name, content] : set.files()) out << (cfg.out_dir / name).string() << "\n";
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qalab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qalab::app
