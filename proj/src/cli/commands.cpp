#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>

#include "cli/output.hpp"
#include "cli/svg.hpp"
#include "panelprec/core_model.hpp"
#include "panelprec/empirics.hpp"
#include "panelprec/errors.hpp"
#include "panelprec/montecarlo.hpp"
#include "panelprec/score_io.hpp"
#include "panelprec/single_curves.hpp"

namespace panelprec::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 5000;
  unsigned threads = 1;
  std::string out_dir;
  std::vector<std::string> formats{"csv", "json"};

  OutputSink sink() const {
    OutputSink s;
    s.dir = out_dir;
    s.formats = {formats.begin(), formats.end()};
    return s;
  }
};

int parse_int(std::string_view text) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) throw ConfigError("not an integer: '" + std::string(text) + "'");
  return v;
}

// "5", "1..5" or "1,3,5".
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(std::string_view(text).substr(0, dots));
    const int hi = parse_int(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw ConfigError("empty panel-size range '" + text + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

// ---------------------------------------------------------------- formula

struct FormulaArgs {
  double q = 0.2;
  double rho = 0.55;
  std::string n = "1..10";
  bool unclipped = false;
};

int cmd_formula(const FormulaArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto sizes = parse_sizes(a.n);
  const auto form = a.unclipped ? model::ExponentForm::Unclipped : model::ExponentForm::Clipped;
  const double b = model::efficiency_exponent(a.q, a.rho, form);

  CsvTable csv({"n", "b", "rho_n", "P"});
  json rows = json::array();
  out << fmt::format("q = {}  rho = {}  b = {:.4f} ({})\n", a.q, a.rho, b, a.unclipped ? "unclipped" : "clipped");
  out << fmt::format("{:>5} {:>10} {:>10}\n", "n", "rho_n", "P");
  for (const int n : sizes) {
    const model::PanelQuery query{a.q, a.rho, n};
    const double p = model::panel_precision(query, form);
    const double rho_n = model::effective_rho(n, a.rho, b);
    out << fmt::format("{:>5} {:>10.4f} {:>10.4f}\n", n, rho_n, p);
    csv.row().add(n).add(b).add(rho_n).add(p);
    rows.push_back({{"n", n}, {"b", b}, {"rho_n", rho_n}, {"P", p}});
  }
  const auto warnings = model::regime_warnings(a.q, a.rho);
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  const auto sink = g.sink();
  const json config{{"q", a.q}, {"rho", a.rho}, {"n", sizes}, {"exponent", a.unclipped ? "unclipped" : "clipped"}};
  if (sink.wants("csv")) sink.write_csv("formula.csv", csv);
  if (sink.wants("json")) sink.write_json("formula.json", {{"config", config}, {"rows", rows}, {"warnings", warnings}});
  if (sink.enabled()) sink.write_run_record("formula", config);
  return kExitOk;
}

// ---------------------------------------------------------------- plan

struct PlanArgs {
  double q = 0.2;
  double rho = 0.55;
  double target = 0.75;
  int n_max = 100;
  bool unclipped = false;
};

int cmd_plan(const PlanArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto form = a.unclipped ? model::ExponentForm::Unclipped : model::ExponentForm::Clipped;
  const auto n = model::required_panel_size(a.q, a.rho, a.target, a.n_max, form);
  for (const auto& w : model::regime_warnings(a.q, a.rho)) err << "warning: " << w << '\n';
  if (n) {
    out << fmt::format("panel size {} reaches P = {:.4f} (target {})\n", *n,
                       model::panel_precision({a.q, a.rho, *n}, form), a.target);
  } else {
    out << fmt::format("unachievable within bound (n <= {})\n", a.n_max);
  }
  const auto sink = g.sink();
  const json config{{"q", a.q}, {"rho", a.rho}, {"target", a.target}, {"n_max", a.n_max},
                    {"exponent", a.unclipped ? "unclipped" : "clipped"}};
  if (sink.wants("json")) sink.write_json("plan.json", {{"config", config}, {"n", n ? json(*n) : json(nullptr)}});
  if (sink.enabled()) sink.write_run_record("plan", config);
  return n ? kExitOk : kExitUnachievable;
}

// ---------------------------------------------------------------- curves

struct CurvesArgs {
  std::size_t m = 2000;
  double rho = 0.8;
  std::size_t trials = 2000;
  double t_dof = 4.0;
  double pareto_shape = 3.0;
  std::size_t points = 50;
  std::size_t anchor_trials = 50000;
};

const char* kind_color(rng::SignalKind kind) {
  switch (kind) {
    case rng::SignalKind::Normal: return "#1f77b4";
    case rng::SignalKind::Pareto: return "#d62728";
    case rng::SignalKind::LogNormal: return "#2ca02c";
    case rng::SignalKind::StudentT: return "#9467bd";
  }
  return "black";
}

int cmd_curves(const CurvesArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream&) {
  require(a.m >= 10, "--m must be at least 10");
  require(a.trials >= 1, "--trials must be at least 1");
  require(a.anchor_trials >= 1, "--anchor-trials must be at least 1");
  montecarlo::SingleCurveConfig cfg;
  cfg.m = a.m;
  cfg.rho = a.rho;
  cfg.trials = a.trials;
  cfg.t_dof = a.t_dof;
  cfg.pareto_shape = a.pareto_shape;
  cfg.grid_points = a.points;
  cfg.anchor_trials = a.anchor_trials;
  const auto res = montecarlo::simulate_single_curves(cfg, g.seed, g.threads);

  std::vector<std::string> header{"q"};
  for (const auto k : res.kinds) header.emplace_back(rng::to_string(k));
  header.emplace_back("reference");
  CsvTable curves(header);
  json doc_curves = json::object();
  for (std::size_t i = 0; i < res.q_grid.size(); ++i) {
    curves.row().add(res.q_grid[i]);
    for (const auto& c : res.curves) curves.add(c[i]);
    curves.add(res.reference[i]);
  }
  for (std::size_t d = 0; d < res.kinds.size(); ++d) doc_curves[std::string(rng::to_string(res.kinds[d]))] = res.curves[d];

  const auto& an = res.anchors;
  CsvTable anchors({"quantity", "value"});
  anchors.row().add("q_anchor").add(an.q_anchor);
  anchors.row().add("normal_limit").add(an.normal_limit);
  anchors.row().add("t_limit").add(an.t_limit);
  anchors.row().add("heavy_tail_estimate").add(an.heavy_tail_estimate);
  anchors.row().add("p_avg_02").add(an.p_avg_02);

  out << fmt::format("m = {}  rho = {}  trials = {}\n", a.m, a.rho, a.trials);
  out << fmt::format("P(q) at q = {:.4f}:\n", res.q_grid[res.index_02]);
  for (std::size_t d = 0; d < res.kinds.size(); ++d)
    out << fmt::format("  {:<10} {:.4f}\n", rng::to_string(res.kinds[d]), res.curves[d][res.index_02]);
  out << fmt::format("  {:<10} {:.4f}\n", "average", res.p_avg_02);
  out << fmt::format("anchors at q = 1/m: normal {:.4f}  student-t {:.4f}  heavy-tail {:.4f}\n", an.normal_limit,
                     an.t_limit, an.heavy_tail_estimate);

  const auto sink = g.sink();
  const json config{{"m", a.m},           {"rho", a.rho},         {"trials", a.trials},
                    {"t_dof", a.t_dof},   {"pareto_shape", a.pareto_shape}, {"points", a.points},
                    {"anchor_trials", a.anchor_trials}, {"seed", g.seed}};
  if (sink.wants("csv")) {
    sink.write_csv("curves.csv", curves);
    sink.write_csv("anchors.csv", anchors);
  }
  if (sink.wants("json")) {
    sink.write_json("curves.json", {{"config", config},
                                    {"q", res.q_grid},
                                    {"curves", doc_curves},
                                    {"reference", res.reference},
                                    {"p_avg_02", res.p_avg_02},
                                    {"anchors",
                                     {{"q_anchor", an.q_anchor},
                                      {"normal_limit", an.normal_limit},
                                      {"t_limit", an.t_limit},
                                      {"heavy_tail_estimate", an.heavy_tail_estimate}}}});
  }
  if (sink.wants("svg")) {
    std::vector<Series> series;
    for (std::size_t d = 0; d < res.kinds.size(); ++d)
      series.push_back({std::string(rng::to_string(res.kinds[d])), res.q_grid, res.curves[d], kind_color(res.kinds[d])});
    series.push_back({"reference", res.q_grid, res.reference, "#555", true});
    series.push_back({"anchors", {an.q_anchor, an.q_anchor, an.q_anchor},
                      {an.normal_limit, an.t_limit, an.heavy_tail_estimate}, "#ff7f0e", false, true});
    sink.write_svg("curves.svg", render_svg({fmt::format("Single-scorer precision, m={}, rho={}", a.m, a.rho),
                                             "quantile q", "P1(q)", true},
                                            series));
  }
  if (sink.enabled()) sink.write_run_record("curves", config);
  return kExitOk;
}

// ---------------------------------------------------------------- scaling

struct ScalingArgs {
  std::vector<double> q{0.2};
  std::vector<double> rho{0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::string preset = "desk";
  double boost = 0.0;
  std::size_t n_ais = 0;
  std::size_t m = 0;
  std::size_t samples = 0;
  int max_panel = 0;
};

int cmd_scaling(const ScalingArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  require(!a.q.empty() && !a.rho.empty(), "--q and --rho need at least one value");
  auto settings = montecarlo::preset_settings(montecarlo::parse_preset(a.preset));
  if (a.n_ais) settings.universe.n_ais = a.n_ais;
  if (a.m) settings.universe.m_candidates = a.m;
  if (a.samples) settings.samples_per_size = a.samples;
  if (a.max_panel) settings.max_panel = a.max_panel;
  settings.universe.tail.boost = a.boost;

  const auto rows = montecarlo::b_grid_scan(a.q, a.rho, settings, g.seed, g.threads);

  CsvTable grid({"q", "target_rho", "measured_rho", "best_b"});
  json grid_doc = json::array();
  out << fmt::format("{:>6} {:>11} {:>13} {:>8} {:>10}\n", "q", "target_rho", "measured_rho", "best_b",
                     "q+0.8(1-r)");
  for (const auto& r : rows) {
    grid.row().add(r.q).add(r.target_rho).add(r.measured_rho).add(r.best_b);
    grid_doc.push_back({{"q", r.q}, {"target_rho", r.target_rho}, {"measured_rho", r.measured_rho}, {"best_b", r.best_b}});
    out << fmt::format("{:>6.3f} {:>11.3f} {:>13.4f} {:>8.4f} {:>10.4f}\n", r.q, r.target_rho, r.measured_rho, r.best_b,
                       model::efficiency_exponent(r.q, r.measured_rho, model::ExponentForm::Unclipped));
  }

  CsvTable regression({"q", "slope", "intercept", "r_squared"});
  json regression_doc = json::array();
  for (const double q : a.q) {
    std::vector<montecarlo::GridRow> subset;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(subset), [&](const auto& r) { return r.q == q; });
    try {
      const auto reg = montecarlo::regress_b_on_rho(subset);
      regression.row().add(reg.q).add(reg.slope).add(reg.intercept).add(reg.r_squared);
      regression_doc.push_back({{"q", reg.q}, {"slope", reg.slope}, {"intercept", reg.intercept}, {"r_squared", reg.r_squared}});
      out << fmt::format("q = {:.3f}: b = {:.4f} rho + {:.4f}  (R^2 = {:.4f})\n", reg.q, reg.slope, reg.intercept,
                         reg.r_squared);
    } catch (const DomainError& e) {
      err << fmt::format("regression for q = {} not possible: {}\n", q, e.what());
    }
  }

  const auto sink = g.sink();
  const auto& u = settings.universe;
  const json config{{"q", a.q},
                    {"rho", a.rho},
                    {"preset", a.preset},
                    {"n_ais", u.n_ais},
                    {"m_candidates", u.m_candidates},
                    {"samples_per_size", settings.samples_per_size},
                    {"max_panel", settings.max_panel},
                    {"sig_rho", u.sig_rho},
                    {"rho_sig_corr", u.rho_sig_corr},
                    {"scale_min", u.scale_min},
                    {"scale_max", u.scale_max},
                    {"scale_sd", u.scale_sd},
                    {"t_mean", u.t_mean},
                    {"tail", {{"kink", u.tail.kink}, {"boost", u.tail.boost}, {"sharpness", u.tail.sharpness}}},
                    {"seed", g.seed}};
  if (sink.wants("csv")) {
    sink.write_csv("grid.csv", grid);
    sink.write_csv("regression.csv", regression);
  }
  if (sink.wants("json")) {
    sink.write_json("grid.json", {{"config", config}, {"rows", grid_doc}});
    sink.write_json("regression.json", {{"config", config}, {"rows", regression_doc}});
  }
  if (sink.enabled()) sink.write_run_record("scaling", config);
  return kExitOk;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string input_format;
  std::vector<int> sizes{2, 3, 4};
  std::size_t grid_points = 100;
};

json summary_json(const empirics::SummaryStats& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}};
}

json variance_json(const empirics::VarianceQuality& v) {
  json rows = json::array();
  for (const auto& r : v.rows)
    rows.push_back({{"task", r.task}, {"scorer", r.scorer}, {"variance", r.variance}, {"corr_with_truth", r.corr_with_truth}});
  return {{"r", v.r}, {"p_value", v.p_value}, {"rows", rows}};
}

int cmd_analyze(const AnalyzeArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream&) {
  require(a.grid_points >= 2, "--grid-points must be at least 2");
  for (const int k : a.sizes) require(k >= 2, "--sizes entries must be at least 2");
  const auto table = empirics::load_scores(a.input, empirics::format_for(a.input, a.input_format));
  empirics::AnalysisOptions options;
  options.subset_sizes = a.sizes;
  options.grid_points = a.grid_points;
  const auto report = empirics::analyze(table, options, g.threads);
  const auto& names = report.scorer_names;

  CsvTable correlations({"task", "scorer_a", "scorer_b", "r"});
  CsvTable weights({"task", "scorer", "weight"});
  std::vector<std::string> curve_header{"task", "q"};
  curve_header.insert(curve_header.end(), names.begin(), names.end());
  curve_header.emplace_back("average");
  CsvTable curves(curve_header);
  CsvTable intercepts({"task", "scorer", "intercept"});
  CsvTable subsets({"task", "size", "subsets", "avg_intercept", "observed_improvement"});
  CsvTable sb({"task", "size", "observed", "predicted", "diff_pred_vs_obs", "diff_obs_vs_pred", "predicted_improvement"});
  CsvTable qq({"task", "theoretical", "sample"});
  json tasks = json::array();

  for (const auto& t : report.tasks) {
    const std::size_t n = t.correlations.scorers;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) correlations.row().add(t.name).add(names[i]).add(names[j]).add(t.correlations.at(i, j));
    for (std::size_t i = 0; i < n; ++i) weights.row().add(t.name).add(names[i]).add(t.truth.weights[i]);
    for (std::size_t k = 0; k < t.q_grid.size(); ++k) {
      curves.row().add(t.name).add(t.q_grid[k]);
      for (const auto& c : t.curves.per_scorer) curves.add(c.values[k]);
      curves.add(t.curves.average.values[k]);
    }
    for (std::size_t i = 0; i < n; ++i) intercepts.row().add(t.name).add(names[i]).add(t.per_scorer_intercepts[i]);
    intercepts.row().add(t.name).add("average").add(t.average_intercept);
    json subset_doc = json::array();
    for (const auto& s : t.subsets) {
      subsets.row().add(t.name).add(s.size).add(s.subsets).add(s.avg_intercept).add(s.observed_improvement);
      subset_doc.push_back({{"size", s.size}, {"subsets", s.subsets}, {"avg_intercept", s.avg_intercept},
                            {"observed_improvement", s.observed_improvement}});
    }
    json sb_doc = json::array();
    for (const auto& r : t.spearman_brown) {
      sb.row().add(t.name).add(r.size).add(r.observed).add(r.predicted).add(r.diff_pred_vs_obs).add(r.diff_obs_vs_pred)
          .add(r.predicted_improvement);
      sb_doc.push_back({{"size", r.size}, {"observed", r.observed}, {"predicted", r.predicted},
                        {"diff_pred_vs_obs", r.diff_pred_vs_obs}, {"diff_obs_vs_pred", r.diff_obs_vs_pred},
                        {"predicted_improvement", r.predicted_improvement}});
    }
    json qq_doc = json::array();
    for (const auto& p : t.qq) {
      qq.row().add(t.name).add(p.theoretical).add(p.sample);
      qq_doc.push_back({p.theoretical, p.sample});
    }
    json per_scorer_curves = json::object();
    for (std::size_t i = 0; i < n; ++i) per_scorer_curves[names[i]] = t.curves.per_scorer[i].values;
    tasks.push_back({{"name", t.name},
                     {"correlation_matrix", t.correlations.matrix},
                     {"mean_correlation", t.correlations.mean_offdiag},
                     {"weights", t.truth.weights},
                     {"q_grid", t.q_grid},
                     {"curves", per_scorer_curves},
                     {"average_curve", t.curves.average.values},
                     {"intercepts", t.per_scorer_intercepts},
                     {"average_intercept", t.average_intercept},
                     {"subsets", subset_doc},
                     {"spearman_brown", sb_doc},
                     {"qq", qq_doc}});

    out << fmt::format("task {}: {} candidates, mean correlation {:.4f}, average intercept {:.4f}\n", t.name,
                       t.truth.y.size(), t.correlations.mean_offdiag, t.average_intercept);
    for (const auto& s : t.subsets)
      out << fmt::format("  panel size {}: {} subsets, intercept {:.4f}\n", s.size, s.subsets, s.avg_intercept);
    for (const auto& r : t.spearman_brown)
      out << fmt::format("  spearman-brown n={}: predicted {:.4f} observed {:.4f}\n", r.size, r.predicted, r.observed);
  }

  CsvTable summary({"group", "count", "mean", "sd", "min", "max"});
  const auto& sm = report.summary;
  summary.row().add("all").add(sm.overall.count).add(sm.overall.mean).add(sm.overall.sd).add(sm.overall.min).add(sm.overall.max);
  json groups = json::object();
  out << fmt::format("overall mean score {:.2f} (sd {:.2f})\n", sm.overall.mean, sm.overall.sd);
  for (const auto& [level, s] : sm.by_group) {
    summary.row().add(level).add(s.count).add(s.mean).add(s.sd).add(s.min).add(s.max);
    groups[level] = summary_json(s);
    out << fmt::format("  group {}: mean {:.2f}\n", level, s.mean);
  }

  CsvTable vq({"mode", "task", "scorer", "variance", "corr_with_truth"});
  json vq_doc = json::object();
  for (const auto* v : {&report.weighted, &report.unweighted}) {
    if (!*v) continue;
    const std::string mode = (*v)->mode == empirics::TruthMode::Weighted ? "weighted" : "unweighted";
    for (const auto& r : (*v)->rows) vq.row().add(mode).add(r.task).add(names[r.scorer]).add(r.variance).add(r.corr_with_truth);
    vq_doc[mode] = variance_json(**v);
    out << fmt::format("variance vs quality ({}): r = {:.3f}, p = {:.4g}\n", mode, (*v)->r, (*v)->p_value);
  }

  const auto sink = g.sink();
  const json config{{"input", a.input},
                    {"input_format", a.input_format.empty() ? "auto" : a.input_format},
                    {"sizes", a.sizes},
                    {"grid_points", a.grid_points}};
  if (sink.wants("csv")) {
    sink.write_csv("correlations.csv", correlations);
    sink.write_csv("weights.csv", weights);
    sink.write_csv("curves.csv", curves);
    sink.write_csv("intercepts.csv", intercepts);
    sink.write_csv("subsets.csv", subsets);
    sink.write_csv("spearman_brown.csv", sb);
    sink.write_csv("qq.csv", qq);
    sink.write_csv("summary.csv", summary);
    if (vq.rows()) sink.write_csv("variance_quality.csv", vq);
  }
  if (sink.wants("json")) {
    sink.write_json("report.json", {{"config", config},
                                    {"scorers", names},
                                    {"tasks", tasks},
                                    {"summary", {{"overall", summary_json(sm.overall)}, {"groups", groups}}},
                                    {"variance_quality", vq_doc}});
  }
  if (sink.enabled()) sink.write_run_record("analyze", config);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Precision of selecting top candidates with panels of correlated scorers", "panelprec"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", tool_version());

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Base seed for simulations")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out_dir, "Output directory (nothing is written without it)");
  app.add_option("--format", g.formats, "Output formats: csv, json, svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();

  FormulaArgs fa;
  auto* formula = app.add_subcommand("formula", "Panel precision from the closed-form law");
  formula->add_option("--q", fa.q, "Selection quantile")->capture_default_str();
  formula->add_option("--rho", fa.rho, "Mean pairwise correlation")->capture_default_str();
  formula->add_option("--n", fa.n, "Panel sizes: 5, 1..5 or 1,3,5")->capture_default_str();
  formula->add_flag("--unclipped", fa.unclipped, "Use the raw quantile in the exponent");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Smallest panel reaching a target precision");
  plan->add_option("--q", pa.q, "Selection quantile")->capture_default_str();
  plan->add_option("--rho", pa.rho, "Mean pairwise correlation")->capture_default_str();
  plan->add_option("--target", pa.target, "Target precision")->required();
  plan->add_option("--n-max", pa.n_max, "Largest panel considered")->capture_default_str();
  plan->add_flag("--unclipped", pa.unclipped, "Use the raw quantile in the exponent");

  CurvesArgs ca;
  auto* curves = app.add_subcommand("curves", "Simulated single-scorer precision curves and anchors");
  curves->add_option("--m", ca.m, "Candidates per batch")->capture_default_str();
  curves->add_option("--rho", ca.rho, "Signal-score correlation")->capture_default_str();
  curves->add_option("--trials", ca.trials, "Simulated batches per distribution")->capture_default_str();
  curves->add_option("--t-dof", ca.t_dof, "Student-t degrees of freedom")->capture_default_str();
  curves->add_option("--pareto-shape", ca.pareto_shape, "Pareto tail index")->capture_default_str();
  curves->add_option("--points", ca.points, "Points on the log q grid")->capture_default_str();
  curves->add_option("--anchor-trials", ca.anchor_trials, "Batches for the Student-t anchor")->capture_default_str();

  ScalingArgs sa;
  auto* scaling = app.add_subcommand("scaling", "Fit the efficiency exponent over a (q, rho) grid");
  scaling->add_option("--q", sa.q, "Quantiles")->delimiter(',')->capture_default_str();
  scaling->add_option("--rho", sa.rho, "Target correlations")->delimiter(',')->capture_default_str();
  scaling->add_option("--preset", sa.preset, "paper or desk")
      ->check(CLI::IsMember({"paper", "desk"}))
      ->capture_default_str();
  scaling->add_option("--boost", sa.boost, "Superstar tail boost")->capture_default_str();
  scaling->add_option("--n-ais", sa.n_ais, "Override the number of scorers");
  scaling->add_option("--m", sa.m, "Override the number of candidates");
  scaling->add_option("--samples", sa.samples, "Override subsets sampled per panel size");
  scaling->add_option("--max-panel", sa.max_panel, "Override the largest panel size");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Analyze a score matrix file");
  analyze->add_option("--input", aa.input, "Score table (.csv or .json)")->required();
  analyze->add_option("--input-format", aa.input_format, "csv or json (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  analyze->add_option("--sizes", aa.sizes, "Panel subset sizes")->delimiter(',')->capture_default_str();
  analyze->add_option("--grid-points", aa.grid_points, "Points on the linear q grid")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  try {
    if (*formula) return cmd_formula(fa, g, out, err);
    if (*plan) return cmd_plan(pa, g, out, err);
    if (*curves) return cmd_curves(ca, g, out, err);
    if (*scaling) return cmd_scaling(sa, g, out, err);
    if (*analyze) return cmd_analyze(aa, g, out, err);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadData;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitBadArguments;
}

}  // namespace panelprec::cli
