#include "asymp/app/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <thread>

#include "asymp/methods_bvp.hpp"
#include "asymp/methods_osc.hpp"
#include "asymp/oracle.hpp"

namespace asymp::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

// JSON has no NaN; non-finite numbers become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json terms_json(const TrigPoly& p) {
  json arr = json::array();
  for (const auto& t : p.terms()) {
    arr.push_back({{"coeff", t.coeff},
                   {"t_power", t.t_power},
                   {"harmonic", t.harmonic},
                   {"kind", t.kind == Kind::cosine ? "cos" : "sin"}});
  }
  return arr;
}

json frequency_json(const FrequencyResult& f) {
  json exp = json::array();
  for (const auto& e : f.expansion) exp.push_back({{"power", e.power}, {"coeff", e.coeff}});
  return {{"omega", f.omega},
          {"omega_squared", f.omega_squared()},
          {"expansion", exp},
          {"expands_omega_squared", f.expands_omega_squared},
          {"secular_condition", f.secular_condition}};
}

void set_comparison(Report& r, std::string metric, double method_value, double oracle_value, double error) {
  r.comparison = {std::move(metric), method_value, oracle_value, error};
  r.document["comparison"] = {{"metric", r.comparison.metric},
                              {"method_value", num(method_value)},
                              {"oracle_value", num(oracle_value)},
                              {"error", num(error)}};
}

Table make_table(std::vector<std::string> columns) { return Table{std::move(columns), {}}; }

void add_row(Table& t, std::initializer_list<double> values) {
  std::vector<std::string> row;
  for (double v : values) row.push_back(format_number(v));
  t.rows.push_back(std::move(row));
}

unsigned order_or(const RunConfig& cfg, unsigned fallback) { return cfg.order.value_or(fallback); }

void require_order_one(const RunConfig& cfg, const std::string& method) {
  if (cfg.order && *cfg.order != 1) {
    throw UnsupportedMethod("method '" + method + "' has no order other than 1");
  }
}

// ------------------------------------------------------------- oscillators

Report oscillator_series(const RunConfig& cfg, const OscillatorSpec& spec, const std::string& method) {
  ApproxSolution sol;
  if (method == "vim") {
    sol = vim_solve(spec, order_or(cfg, 1));
  } else if (method == "lp") {
    sol = lp_parameter_expansion(spec, order_or(cfg, 1), FrequencyExpansion::omega_squared);
  } else if (method == "lp_classic") {
    sol = lp_parameter_expansion(spec, order_or(cfg, 1), FrequencyExpansion::omega);
  } else {
    require_order_one(cfg, method);
    if (spec.sine_amplitude != 0.0) throw UnsupportedMethod("hpm: the sine amplitude B must be 0");
    sol = hpm_quintic(spec, spec.amplitude);
  }

  const TrigPoly& u = sol.solution;
  const double y0 = u(0.0);
  const double v0 = differentiate(u)(0.0);
  const auto rhs = oracle::oscillator_rhs(spec);
  const double t_approx = kTwoPi / sol.frequency.omega;
  const auto cycle = oracle::measure_cycle(rhs, {y0, v0}, 0.0, cfg.tol);
  const auto tr = oracle::integrate_ivp(rhs, {y0, v0}, 0.0, t_approx, cfg.tol);

  Report r;
  r.table = make_table({"t", "approx", "oracle", "error"});
  double sol_err = 0.0;
  for (double t : linspace(0.0, t_approx, 201)) {
    const double a = u(t);
    const double o = tr.at(t, 0);
    sol_err = std::max(sol_err, std::abs(a - o));
    add_row(r.table, {t, a, o, a - o});
  }

  json& d = r.document;
  d["method"] = to_string(sol.frequency.method);
  d["order"] = sol.order;
  d.update(frequency_json(sol.frequency));
  d["solution_text"] = u.to_string();
  d["terms"] = terms_json(u);
  d["residual_norm"] = sol.residual_norm;
  d["oracle"] = {{"period", cycle.period},
                 {"approx_period", t_approx},
                 {"period_error", std::abs(t_approx - cycle.period) / cycle.period},
                 {"solution_error", sol_err}};
  set_comparison(r, "period", t_approx, cycle.period, std::abs(t_approx - cycle.period) / cycle.period);
  return r;
}

Report limit_cycle_report(const RunConfig& cfg, const OscillatorSpec& spec) {
  require_order_one(cfg, "limit_cycle");
  const auto est = limit_cycle_solution(spec);
  const double settle = std::max(50.0, 30.0 / spec.vdp_coeff);
  const auto m = oracle::measure_cycle(oracle::oscillator_rhs(spec), {spec.amplitude, spec.sine_amplitude}, settle,
                                       cfg.tol);
  Report r;
  json& d = r.document;
  d["method"] = to_string(MethodTag::limit_cycle);
  d["order"] = est.cycle.order;
  d.update(frequency_json(est.cycle.frequency));
  d["alpha"] = est.alpha;
  d["amplitude"] = spec.total_amplitude();
  d["stationary_amplitude"] = 2.0;
  d["solution_text"] = est.cycle.solution.to_string();
  d["terms"] = terms_json(est.cycle.solution);
  d["residual_norm"] = est.cycle.residual_norm;
  d["oracle"] = {{"amplitude", m.amplitude},
                 {"period", m.period},
                 {"settle_time", settle},
                 {"transients_skipped", m.transients_skipped}};
  set_comparison(r, "amplitude", 2.0, m.amplitude, std::abs(2.0 - m.amplitude) / m.amplitude);
  r.table = make_table({"t", "approx"});
  for (double t : linspace(0.0, kTwoPi, 201)) add_row(r.table, {t, est.cycle.solution(t)});
  return r;
}

// ------------------------------------------------------------------- Bratu

std::vector<GridFunction> bratu_oracle(const BvpSpec& spec, double tol) {
  try {
    return oracle::shoot_bvp(spec, {}, tol);
  } catch (const NoSolution&) {
    return {};
  }
}

double sup_diff(const GridFunction& g, const std::function<double(double)>& f) {
  double e = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) e = std::max(e, std::abs(g.values[i] - f(g.points[i])));
  return e;
}

json oracle_solutions_json(const std::vector<GridFunction>& sols) {
  json arr = json::array();
  for (const auto& g : sols) {
    arr.push_back({{"slope", g.info.at("slope")}, {"max_abs", g.max_abs()}, {"boundary_residual", num(g.info.at("boundary_residual"))}});
  }
  return arr;
}

Report bratu_report(const RunConfig& cfg, const BvpSpec& spec, const std::string& method) {
  const auto oracle_sols = bratu_oracle(spec, cfg.tol);
  const auto grid = linspace(0.0, 1.0, 201);
  Report r;
  json& d = r.document;
  d["method"] = method;

  if (method == "ritz") {
    require_order_one(cfg, method);
    std::string diag;
    const auto roots = ritz_bratu(spec.lambda, &diag);
    json arr = json::array();
    for (const auto& root : roots) {
      const double A = root.A;
      auto u = [A](double x) { return A * x * (1.0 - x); };
      double best = kNaN;
      for (const auto& g : oracle_sols) {
        const double e = sup_diff(g, u);
        if (!(best <= e)) best = e;
      }
      arr.push_back({{"A", A},
                     {"branch", to_string(root.branch)},
                     {"stationarity_residual", root.stationarity_residual},
                     {"u_half", A / 4.0},
                     {"oracle_sup_error", num(best)}});
    }
    d["order"] = 1;
    d["solutions"] = arr;
    d["solution_count"] = roots.size();
    d["diagnostic"] = diag;
    d["oracle"] = {{"solution_count", oracle_sols.size()}, {"solutions", oracle_solutions_json(oracle_sols)}};
    const double diff = std::abs(static_cast<double>(roots.size()) - static_cast<double>(oracle_sols.size()));
    set_comparison(r, "solution_count", static_cast<double>(roots.size()), static_cast<double>(oracle_sols.size()),
                   diff);
    r.table = make_table({"x", "ritz_lower", "ritz_upper", "oracle_lower", "oracle_upper"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i];
      const double q = x * (1.0 - x);
      add_row(r.table, {x, roots.size() > 0 ? roots[0].A * q : kNaN, roots.size() > 1 ? roots[1].A * q : kNaN,
                        oracle_sols.size() > 0 ? oracle_sols[0].values[i] : kNaN,
                        oracle_sols.size() > 1 ? oracle_sols[1].values[i] : kNaN});
    }
    return r;
  }

  if (method == "vim") {
    const int iterations = static_cast<int>(order_or(cfg, 12));
    const auto res = vim_bratu_solve(spec.lambda, iterations);
    if (oracle_sols.empty()) throw NoSolution("bratu vim: the oracle finds no solution to compare against");
    const auto& lower = oracle_sols.front();
    const double err = sup_diff(lower, [&res](double x) { return res.u(x); });
    d["order"] = res.iterations;
    d["iterations"] = res.iterations;
    d["converged"] = res.converged;
    d["increments"] = res.increments;
    d["u_half"] = res.u(0.5);
    d["oracle"] = {{"solution_count", oracle_sols.size()},
                   {"u_half", lower.interpolate(0.5)},
                   {"sup_error", err},
                   {"solutions", oracle_solutions_json(oracle_sols)}};
    set_comparison(r, "u_half", res.u(0.5), lower.interpolate(0.5), err);
    r.table = make_table({"x", "vim", "oracle", "error"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double a = res.u(grid[i]);
      add_row(r.table, {grid[i], a, lower.values[i], a - lower.values[i]});
    }
    return r;
  }

  // shoot
  require_order_one(cfg, method);
  if (oracle_sols.empty()) throw NoSolution("bratu shoot: no solution for this lambda");
  double worst = 0.0;
  for (const auto& g : oracle_sols) worst = std::max(worst, std::abs(g.info.at("boundary_residual")));
  d["order"] = 1;
  d["solutions"] = oracle_solutions_json(oracle_sols);
  d["solution_count"] = oracle_sols.size();
  set_comparison(r, "boundary_residual", worst, 0.0, worst);
  std::vector<std::string> cols{"x"};
  for (std::size_t k = 0; k < oracle_sols.size(); ++k) cols.push_back("u" + std::to_string(k + 1));
  r.table = make_table(cols);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{format_number(grid[i])};
    for (const auto& g : oracle_sols) row.push_back(format_number(g.values[i]));
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

// -------------------------------------------------------- singular linear

Report singular_report(const RunConfig& cfg, const BvpSpec& spec) {
  require_order_one(cfg, "bvt");
  const auto m = bvt_solve(spec);
  const auto exact = oracle::exact_singular(spec);
  const auto grid = linspace(0.0, 1.0, 1001);
  double sup = 0.0;
  double at = 0.0;
  for (double x : grid) {
    const double e = std::abs(m.composite(x) - exact(x));
    if (e > sup) {
      sup = e;
      at = x;
    }
  }
  Report r;
  json& d = r.document;
  d["method"] = "bvt";
  d["order"] = 1;
  d["t_f"] = m.t_f;
  d["iterations"] = m.iterations;
  d["t_f_history"] = m.t_f_history;
  d["inner_slope"] = m.inner_slope;
  d["terminal_fast_amplitude"] = m.terminal_fast_amplitude;
  d["matching_gap"] = m.inner(m.t_f) - m.outer(spec.eps * m.t_f);
  d["sup_error"] = sup;
  d["oracle"] = {{"exact_slope", oracle::exact_singular_slope(spec)}, {"sup_error", sup}, {"argmax", at}};
  set_comparison(r, "sup_error", m.composite(at), exact(at), sup);

  r.table = make_table({"x", "inner", "outer", "composite", "exact", "error", "sup_error"});
  for (double x : grid) {
    const double t = x / spec.eps;
    const double in = t <= m.t_f ? m.inner(t) : kNaN;
    const double c = m.composite(x);
    const double ex = exact(x);
    add_row(r.table, {x, in, m.outer(x), c, ex, c - ex, sup});
  }
  return r;
}

// ------------------------------------------------------------ Falkner-Skan

Report falkner_skan_report(const RunConfig& cfg, const BvpSpec& spec) {
  require_order_one(cfg, "shoot");
  const auto sols = oracle::shoot_bvp(spec, {}, cfg.tol);
  Report r;
  json& d = r.document;
  d["method"] = "shoot";
  d["order"] = 1;
  json arr = json::array();
  double worst = 0.0;
  std::size_t primary = 0;
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const auto& g = sols[k];
    const double s = g.info.at("slope");
    const double far = g.info.at("fpp0_far");
    const double diff = std::isfinite(far) ? std::abs(s - far) : std::numeric_limits<double>::infinity();
    worst = std::max(worst, diff);
    if (s > sols[primary].info.at("slope")) primary = k;
    arr.push_back({{"fpp0", s},
                   {"fpp0_far", num(far)},
                   {"far_field_difference", num(diff)},
                   {"fp_end", g.info.at("fp_end")}});
  }
  d["solutions"] = arr;
  d["solution_count"] = sols.size();
  d["far_field"] = oracle::kFalknerSkanFarField;
  d["check_field"] = oracle::kFalknerSkanCheckField;
  set_comparison(r, "fpp0", sols[primary].info.at("slope"), sols[primary].info.at("fpp0_far"), worst);
  std::vector<std::string> cols{"eta"};
  for (std::size_t k = 0; k < sols.size(); ++k) cols.push_back("f" + std::to_string(k + 1));
  r.table = make_table(cols);
  for (std::size_t i = 0; i < sols.front().points.size(); ++i) {
    std::vector<std::string> row{format_number(sols.front().points[i])};
    for (const auto& g : sols) row.push_back(format_number(g.values[i]));
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

// --------------------------------------------------------------------- WKB

Report wkb_report(const RunConfig& cfg, const WkbSpec& spec) {
  require_order_one(cfg, "wkb");
  const auto w = wkb_solve(spec);
  const auto ref = oracle::wkb_reference(spec, cfg.tol);
  const auto grid = linspace(spec.x_lo, spec.x_hi, 1001);
  Report r;
  r.table = make_table({"x", "phase", "amplitude", "solution", "oracle", "error"});
  for (double x : grid) {
    const double a = w.cos_solution(x);
    const double o = ref.at(x, 0);
    add_row(r.table, {x, w.phase(x), w.amplitude(x), a, o, a - o});
  }
  const double rel = wkb_mid_relative_error(spec, cfg.tol);
  json& d = r.document;
  d["method"] = "wkb";
  d["order"] = 1;
  d["phase_end"] = w.phase(spec.x_hi);
  d["amplitude_lo"] = w.amplitude(spec.x_lo);
  d["amplitude_hi"] = w.amplitude(spec.x_hi);
  d["oracle"] = {{"relative_error_mid", rel}, {"steps", ref.steps()}};
  set_comparison(r, "relative_error_mid", w.cos_solution(0.5 * (spec.x_lo + spec.x_hi)),
                 ref.at(0.5 * (spec.x_lo + spec.x_hi), 0), rel);
  return r;
}

// ---------------------------------------------------- Schroedinger-Newton

Report snewton_report(const RunConfig& cfg, const SNewtonSpec& spec) {
  require_order_one(cfg, "picard");
  const auto st = snewton_picard(spec);
  const auto fd = snewton_fd_residual(st);
  bool monotone = true;
  for (std::size_t i = 1; i < st.U.size(); ++i) monotone = monotone && st.U[i] <= st.U[i - 1];
  Report r;
  json& d = r.document;
  d["method"] = "picard";
  d["order"] = 1;
  d["sweeps"] = st.sweeps;
  d["converged"] = st.converged;
  d["picard_residual"] = st.picard_residual;
  d["residual_history"] = st.residual_history;
  d["S_end"] = st.S.back();
  d["U_end"] = st.U.back();
  d["u_monotone"] = monotone;
  d["oracle"] = {{"fd_residual_S", fd.s_residual}, {"fd_residual_U", fd.u_residual}};
  const double worst = std::max(fd.s_residual, fd.u_residual);
  set_comparison(r, "fd_residual", worst, 0.0, worst);
  r.table = make_table({"r", "S", "U"});
  for (std::size_t i = 0; i < st.radii.size(); ++i) add_row(r.table, {st.radii[i], st.S[i], st.U[i]});
  return r;
}

// ------------------------------------------------------------ KdV soliton

Report kdv_report(const RunConfig& cfg, const TravelingWaveSpec& spec) {
  require_order_one(cfg, "ritz");
  const auto [p, q] = ritz_soliton(spec);
  const auto grid = linspace(spec.offset - 10.0, spec.offset + 10.0, 201);
  const Candidate c = soliton_candidate(spec);
  const auto res = residual(ProblemSpec{spec}, c, grid);
  Report r;
  json& d = r.document;
  d["method"] = "ritz";
  d["order"] = 1;
  d["p"] = p;
  d["q"] = q;
  d["residual_max"] = res.max_abs();
  d["oracle"] = {{"grid_points", grid.size()}, {"residual_max", res.max_abs()}};
  set_comparison(r, "residual_max", res.max_abs(), 0.0, res.max_abs());
  r.table = make_table({"x", "u", "residual"});
  for (std::size_t i = 0; i < grid.size(); ++i) add_row(r.table, {grid[i], c.value(grid[i]), res.values[i]});
  return r;
}

// ----------------------------------------------------------------- Lambert

Report lambert_report(const RunConfig& cfg, const LambertSpec& spec) {
  require_order_one(cfg, "closed_form");
  const double k = spec.k;
  const double a = 1.0 / spec.n;
  Candidate c;
  c.value = [k, a](double x) { return std::pow(std::cos(k * x), a); };
  c.d1 = [k, a](double x) { return -a * k * std::sin(k * x) * std::pow(std::cos(k * x), a - 1.0); };
  c.d2 = [k, a](double x) {
    const double co = std::cos(k * x);
    const double si = std::sin(k * x);
    return -a * k * k * std::pow(co, a) + a * (a - 1.0) * k * k * si * si * std::pow(co, a - 2.0);
  };
  const double edge = 0.9 * std::numbers::pi / (2.0 * std::abs(k));
  const auto grid = linspace(-edge, edge, 201);
  const auto res = residual(ProblemSpec{spec}, c, grid);
  Report r;
  json& d = r.document;
  d["method"] = "closed_form";
  d["order"] = 1;
  d["solution_text"] = "(cos(" + format_number(k) + " x))^(1/" + format_number(spec.n) + ")";
  d["residual_max"] = res.max_abs();
  d["oracle"] = {{"grid_points", grid.size()}, {"residual_max", res.max_abs()}};
  set_comparison(r, "residual_max", res.max_abs(), 0.0, res.max_abs());
  r.table = make_table({"x", "y", "residual"});
  for (std::size_t i = 0; i < grid.size(); ++i) add_row(r.table, {grid[i], c.value(grid[i]), res.values[i]});
  return r;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json params_json(const ParamMap& p) {
  json o = json::object();
  for (const auto& [k, v] : p) o[k] = v;
  return o;
}

}  // namespace

double wkb_mid_relative_error(const WkbSpec& spec, double tol) {
  const auto w = wkb_solve(spec);
  const auto ref = oracle::wkb_reference(spec, tol);
  const double L = spec.x_hi - spec.x_lo;
  double diff = 0.0;
  double scale = 0.0;
  for (double x : linspace(spec.x_lo + 0.25 * L, spec.x_lo + 0.75 * L, 2001)) {
    const double o = ref.at(x, 0);
    diff = std::max(diff, std::abs(w.cos_solution(x) - o));
    scale = std::max(scale, std::abs(o));
  }
  return diff / scale;
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << quote_csv(columns[i]);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote_csv(row[i]);
    out << '\n';
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

const std::vector<std::string>& methods_for(const std::string& problem) {
  static const std::map<std::string, std::vector<std::string>> table{
      {"duffing_cubic", {"vim", "lp", "lp_classic"}},
      {"duffing_quintic", {"hpm", "vim"}},
      {"van_der_pol", {"limit_cycle"}},
      {"vdp_duffing", {"lp", "lp_classic"}},
      {"pendulum", {"lp", "lp_classic"}},
      {"bratu", {"ritz", "vim", "shoot"}},
      {"singular_linear", {"bvt"}},
      {"falkner_skan", {"shoot"}},
      {"wkb", {"wkb"}},
      {"snewton", {"picard"}},
      {"kdv_wave", {"ritz"}},
      {"lambert", {"closed_form"}},
  };
  static const std::vector<std::string> none;
  auto it = table.find(problem);
  return it == table.end() ? none : it->second;
}

Report solve(const RunConfig& cfg) {
  std::vector<std::string> warnings;
  ProblemSpec spec;
  try {
    spec = make_problem(cfg.problem, cfg.params, &warnings);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const auto& methods = methods_for(cfg.problem);
  if (methods.empty()) throw ConfigError("no method registered for " + cfg.problem);
  const std::string method = cfg.method.empty() ? methods.front() : cfg.method;
  if (std::find(methods.begin(), methods.end(), method) == methods.end()) {
    throw ConfigError("method '" + method + "' is not available for " + cfg.problem);
  }

  Report r;
  if (const auto* o = std::get_if<OscillatorSpec>(&spec)) {
    r = method == "limit_cycle" ? limit_cycle_report(cfg, *o) : oscillator_series(cfg, *o, method);
  } else if (const auto* b = std::get_if<BvpSpec>(&spec)) {
    switch (b->kind) {
      case BvpKind::bratu: r = bratu_report(cfg, *b, method); break;
      case BvpKind::singular_linear: r = singular_report(cfg, *b); break;
      case BvpKind::falkner_skan: r = falkner_skan_report(cfg, *b); break;
    }
  } else if (const auto* w = std::get_if<WkbSpec>(&spec)) {
    r = wkb_report(cfg, *w);
  } else if (const auto* s = std::get_if<SNewtonSpec>(&spec)) {
    r = snewton_report(cfg, *s);
  } else if (const auto* k = std::get_if<TravelingWaveSpec>(&spec)) {
    r = kdv_report(cfg, *k);
  } else {
    r = lambert_report(cfg, std::get<LambertSpec>(spec));
  }

  json head = {{"problem", cfg.problem}, {"params", params_json(cfg.params)}, {"tol", cfg.tol}};
  head["warnings"] = warnings;
  r.document.update(head);
  return r;
}

RunOutcome run(const RunConfig& cfg) {
  RunOutcome out;
  auto fail = [&](int code, const std::string& msg) {
    out.exit_code = code;
    out.document = {{"problem", cfg.problem},
                    {"method", cfg.method},
                    {"params", params_json(cfg.params)},
                    {"status", "error"},
                    {"exit_code", code},
                    {"error", msg}};
    out.table = make_table({"status", "error"});
    out.table.rows.push_back({"error", msg});
  };
  try {
    cfg.validate();
    Report r = solve(cfg);
    out.document = std::move(r.document);
    out.table = std::move(r.table);
    out.document["status"] = "ok";
    if (cfg.max_error && !(r.comparison.error <= *cfg.max_error)) {
      out.exit_code = kExitDisagreement;
      out.document["status"] = "disagreement";
      out.document["error"] = r.comparison.metric + " error " + format_number(r.comparison.error) +
                              " exceeds max-error " + format_number(*cfg.max_error);
    }
  } catch (const ConfigError& e) {
    fail(kExitConfig, e.what());
  } catch (const Error& e) {
    fail(kExitMethod, e.what());
  } catch (const std::invalid_argument& e) {
    fail(kExitMethod, e.what());
  } catch (const std::exception& e) {
    fail(kExitFailure, e.what());
  }
  return out;
}

RunOutcome sweep(const RunConfig& cfg) {
  RunOutcome out;
  try {
    cfg.validate();
    if (cfg.axes.empty()) throw ConfigError("sweep needs at least one axis");
  } catch (const ConfigError& e) {
    out.exit_code = kExitConfig;
    out.document = {{"problem", cfg.problem}, {"status", "error"}, {"exit_code", kExitConfig}, {"error", e.what()}};
    out.table = make_table({"status", "error"});
    out.table.rows.push_back({"error", e.what()});
    return out;
  }

  const SweepAxis& a0 = cfg.axes[0];
  const SweepAxis* a1 = cfg.axes.size() > 1 ? &cfg.axes[1] : nullptr;
  const int n1 = a1 ? a1->steps : 1;
  const std::size_t cells = static_cast<std::size_t>(a0.steps) * static_cast<std::size_t>(n1);

  struct Cell {
    std::vector<double> coords;
    Comparison cmp;
    std::string status = "ok";
    std::string message;
  };
  std::vector<Cell> results(cells);

  auto run_cell = [&](std::size_t idx) {
    Cell& cell = results[idx];
    RunConfig c = cfg;
    c.axes.clear();
    const int i = static_cast<int>(idx / static_cast<std::size_t>(n1));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(n1));
    c.params[a0.parameter] = a0.value(i);
    cell.coords.push_back(a0.value(i));
    if (a1) {
      c.params[a1->parameter] = a1->value(j);
      cell.coords.push_back(a1->value(j));
    }
    try {
      cell.cmp = solve(c).comparison;
      if (cfg.max_error && !(cell.cmp.error <= *cfg.max_error)) cell.status = "disagreement";
    } catch (const std::exception& e) {
      cell.status = "error";
      cell.message = e.what();
      cell.cmp.method_value = cell.cmp.oracle_value = cell.cmp.error = kNaN;
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < cells; idx = next++) run_cell(idx);
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), cells);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<std::string> cols{a0.parameter};
  if (a1) cols.push_back(a1->parameter);
  for (const char* c : {"metric", "method_value", "oracle_value", "error", "status", "message"}) cols.emplace_back(c);
  out.table = make_table(cols);

  json rows = json::array();
  int failures = 0;
  int disagreements = 0;
  std::string metric;
  for (const auto& cell : results) {
    json row = json::object();
    std::vector<std::string> trow;
    row[a0.parameter] = cell.coords[0];
    trow.push_back(format_number(cell.coords[0]));
    if (a1) {
      row[a1->parameter] = cell.coords[1];
      trow.push_back(format_number(cell.coords[1]));
    }
    row["metric"] = cell.cmp.metric;
    row["method_value"] = num(cell.cmp.method_value);
    row["oracle_value"] = num(cell.cmp.oracle_value);
    row["error"] = num(cell.cmp.error);
    row["status"] = cell.status;
    row["message"] = cell.message;
    for (const auto& s : {cell.cmp.metric, format_number(cell.cmp.method_value), format_number(cell.cmp.oracle_value),
                          format_number(cell.cmp.error), cell.status, cell.message}) {
      trow.push_back(s);
    }
    rows.push_back(std::move(row));
    out.table.rows.push_back(std::move(trow));
    if (cell.status == "error") ++failures;
    if (cell.status == "disagreement") ++disagreements;
    if (metric.empty()) metric = cell.cmp.metric;
  }

  json axes = json::array();
  for (const auto& a : cfg.axes) axes.push_back({{"parameter", a.parameter}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
  out.document = {{"problem", cfg.problem},
                  {"method", cfg.method.empty() ? methods_for(cfg.problem).front() : cfg.method},
                  {"params", params_json(cfg.params)},
                  {"tol", cfg.tol},
                  {"axes", axes},
                  {"metric", metric},
                  {"rows", rows},
                  {"failures", failures},
                  {"disagreements", disagreements}};
  if (failures > 0) {
    out.exit_code = kExitMethod;
    out.document["status"] = "error";
  } else if (disagreements > 0) {
    out.exit_code = kExitDisagreement;
    out.document["status"] = "disagreement";
  } else {
    out.document["status"] = "ok";
  }
  return out;
}

void write_outcome(const RunOutcome& outcome, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    out << outcome.document.dump(2) << '\n';
  } else {
    outcome.table.write_csv(out);
  }
}

}  // namespace asymp::app
