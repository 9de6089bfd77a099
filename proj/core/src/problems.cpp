#include "asymp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "asymp/errors.hpp"

namespace asymp {

namespace {

constexpr double kDomainSlack = 1e-12;

class ParamReader {
 public:
  ParamReader(std::string_view problem, const ParamMap& params) : problem_(problem), params_(params) {}

  double required(const std::string& key) {
    used_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end()) {
      throw InvalidProblem(problem_ + ": missing required parameter '" + key + "'");
    }
    return check_finite(key, it->second);
  }

  double optional(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = params_.find(key);
    return it == params_.end() ? fallback : check_finite(key, it->second);
  }

  void reject_unknown() const {
    for (const auto& [key, value] : params_) {
      if (!used_.contains(key)) throw InvalidProblem(problem_ + ": unknown parameter '" + key + "'");
    }
  }

 private:
  double check_finite(const std::string& key, double v) const {
    if (!std::isfinite(v)) throw InvalidProblem(problem_ + ": parameter '" + key + "' is not finite");
    return v;
  }

  std::string problem_;
  const ParamMap& params_;
  std::set<std::string> used_;
};

void read_forcing(ParamReader& r, OscillatorSpec& s) {
  s.sine_amplitude = r.optional("B", 0.0);
  s.damping = r.optional("delta", 0.0);
  s.forcing = r.optional("gamma", 0.0);
  s.forcing_frequency = r.optional("omega_f", 1.0);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidProblem(what);
}

}  // namespace

double OscillatorSpec::total_amplitude() const { return std::hypot(amplitude, sine_amplitude); }

void OscillatorSpec::validate() const {
  require(linear_coeff != 0.0 || quadratic_coeff != 0.0 || cubic_coeff != 0.0 || quintic_coeff != 0.0 ||
              vdp_coeff != 0.0,
          "oscillator: at least one coefficient must be nonzero");
  require(eps >= 0.0, "oscillator: eps must be >= 0");
  require(vdp_coeff >= 0.0, "oscillator: van der Pol coefficient must be >= 0");
  require(total_amplitude() > 0.0, "oscillator: amplitude must be positive");
  require(amplitude >= 0.0, "oscillator: cosine amplitude A must be >= 0");
}

void BvpSpec::validate() const {
  switch (kind) {
    case BvpKind::bratu:
      require(lambda >= 0.0, "bratu: lambda must be >= 0");
      break;
    case BvpKind::singular_linear:
      require(eps > 0.0 && eps < 0.25, "singular_linear: eps must satisfy 0 < eps < 1/4");
      break;
    case BvpKind::falkner_skan:
      break;
  }
}

void WkbSpec::validate() const {
  require(static_cast<bool>(F), "wkb: coefficient function F missing");
  require(eps > 0.0 && eps < 1.0, "wkb: eps must satisfy 0 < eps < 1");
  require(x_lo < x_hi, "wkb: domain must satisfy x_lo < x_hi");
}

WkbSpec WkbSpec::squared_linear(double a, double b, double eps, double x_lo, double x_hi) {
  WkbSpec s;
  s.F = [a, b](double x) { return (a + b * x) * (a + b * x); };
  s.dF = [a, b](double x) { return 2.0 * b * (a + b * x); };
  s.eps = eps;
  s.x_lo = x_lo;
  s.x_hi = x_hi;
  std::ostringstream d;
  d.precision(17);
  d << "(" << a << " + " << b << "*x)^2";
  s.description = d.str();
  return s;
}

void SNewtonSpec::validate() const {
  require(grid_points >= 64, "snewton: grid_points must be >= 64");
  require(r_max > 0.0, "snewton: r_max must be > 0");
  require(s0 >= 0.0 && u0 >= 0.0, "snewton: central values must be non-negative");
  require(relaxation > 0.0 && relaxation <= 1.0, "snewton: relaxation must lie in (0, 1]");
}

void TravelingWaveSpec::validate() const { require(wave_speed > 0.0, "kdv_wave: wave speed c must be > 0"); }

void LambertSpec::validate() const {
  require(n != 0.0, "lambert: n must be nonzero");
  require(k != 0.0, "lambert: k must be nonzero");
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "duffing_cubic", "duffing_quintic", "van_der_pol", "vdp_duffing", "pendulum", "bratu",
      "singular_linear", "falkner_skan", "wkb", "snewton", "kdv_wave", "lambert"};
  return names;
}

ProblemSpec make_problem(std::string_view name, const ParamMap& params, std::vector<std::string>* warnings) {
  ParamReader r(name, params);
  ProblemSpec result;
  if (name == "duffing_cubic" || name == "duffing_quintic") {
    OscillatorSpec s;
    s.eps = r.required("eps");
    s.amplitude = r.required("A");
    read_forcing(r, s);
    if (name == "duffing_cubic") {
      s.kind = OscillatorKind::duffing_cubic;
      s.cubic_coeff = s.eps;
    } else {
      s.kind = OscillatorKind::duffing_quintic;
      s.quintic_coeff = s.eps;
    }
    result = s;
  } else if (name == "van_der_pol") {
    OscillatorSpec s;
    s.kind = OscillatorKind::van_der_pol;
    s.eps = r.required("eps");
    s.vdp_coeff = s.eps;
    s.amplitude = r.optional("A", 1.0);
    read_forcing(r, s);
    result = s;
  } else if (name == "vdp_duffing") {
    OscillatorSpec s;
    s.kind = OscillatorKind::vdp_duffing;
    s.cubic_coeff = r.required("alpha");
    s.vdp_coeff = r.optional("mu", 0.0);
    s.amplitude = r.required("A");
    s.eps = std::abs(s.cubic_coeff);
    read_forcing(r, s);
    result = s;
  } else if (name == "pendulum") {
    OscillatorSpec s;
    s.kind = OscillatorKind::pendulum;
    s.cubic_coeff = -1.0 / 6.0;
    s.eps = 1.0 / 6.0;
    s.amplitude = r.required("A");
    read_forcing(r, s);
    result = s;
  } else if (name == "bratu") {
    BvpSpec s;
    s.kind = BvpKind::bratu;
    s.lambda = r.required("lambda");
    result = s;
  } else if (name == "singular_linear") {
    BvpSpec s;
    s.kind = BvpKind::singular_linear;
    s.eps = r.required("eps");
    s.left_value = r.optional("alpha", 0.0);
    s.right_value = r.optional("beta", 1.0);
    result = s;
  } else if (name == "falkner_skan") {
    BvpSpec s;
    s.kind = BvpKind::falkner_skan;
    s.beta_fs = r.required("beta");
    s.left_value = 0.0;
    s.right_value = 1.0;
    result = s;
  } else if (name == "wkb") {
    const double eps = r.required("eps");
    const double a = r.optional("a", 1.0);
    const double b = r.optional("b", 1.0);
    const double lo = r.optional("x_lo", 0.0);
    const double hi = r.optional("x_hi", 1.0);
    WkbSpec s = WkbSpec::squared_linear(a, b, eps, lo, hi);
    // (a + b x) must not vanish on the closed domain.
    require((a + b * lo) * (a + b * hi) > 0.0, "wkb: F = (a + b x)^2 has a turning point in the domain");
    result = s;
  } else if (name == "snewton") {
    SNewtonSpec s;
    s.s0 = r.optional("s0", 1.0);
    s.u0 = r.optional("u0", 1.0);
    s.r_max = r.optional("r_max", 2.0);
    const double n = r.optional("grid_points", 512.0);
    require(n == std::floor(n), "snewton: grid_points must be an integer");
    s.grid_points = static_cast<int>(n);
    s.relaxation = r.optional("relaxation", 1.0);
    result = s;
  } else if (name == "kdv_wave") {
    TravelingWaveSpec s;
    s.wave_speed = r.required("c");
    s.offset = r.optional("xi0", 0.0);
    result = s;
  } else if (name == "lambert") {
    LambertSpec s;
    s.k = r.required("k");
    s.n = r.required("n");
    result = s;
  } else {
    throw InvalidProblem("unknown problem '" + std::string(name) + "'");
  }
  r.reject_unknown();

  std::visit([](const auto& s) { s.validate(); }, result);

  if (const auto* osc = std::get_if<OscillatorSpec>(&result)) {
    if ((osc->damping != 0.0 || osc->forcing != 0.0) && warnings != nullptr) {
      warnings->push_back(std::string(name) +
                          ": damping/forcing are nonzero; the asymptotic methods require delta = gamma = 0");
    }
  }
  return result;
}

std::string problem_name(const ProblemSpec& spec) {
  struct Visitor {
    std::string operator()(const OscillatorSpec& s) const {
      switch (s.kind) {
        case OscillatorKind::duffing_cubic: return "duffing_cubic";
        case OscillatorKind::duffing_quintic: return "duffing_quintic";
        case OscillatorKind::van_der_pol: return "van_der_pol";
        case OscillatorKind::vdp_duffing: return "vdp_duffing";
        case OscillatorKind::pendulum: return "pendulum";
        case OscillatorKind::custom: return "oscillator";
      }
      return "oscillator";
    }
    std::string operator()(const BvpSpec& s) const {
      switch (s.kind) {
        case BvpKind::bratu: return "bratu";
        case BvpKind::singular_linear: return "singular_linear";
        case BvpKind::falkner_skan: return "falkner_skan";
      }
      return "bvp";
    }
    std::string operator()(const WkbSpec&) const { return "wkb"; }
    std::string operator()(const SNewtonSpec&) const { return "snewton"; }
    std::string operator()(const TravelingWaveSpec&) const { return "kdv_wave"; }
    std::string operator()(const LambertSpec&) const { return "lambert"; }
  };
  return std::visit(Visitor{}, spec);
}

Candidate Candidate::from_trig(const TrigPoly& u) {
  auto p1 = differentiate(u, 1);
  auto p2 = differentiate(u, 2);
  auto p3 = differentiate(p2, 1);
  return Candidate{[u](double t) { return u(t); }, [p1](double t) { return p1(t); },
                   [p2](double t) { return p2(t); }, [p3](double t) { return p3(t); }};
}

Candidate Candidate::from_function(std::function<double(double)> f, double h) {
  Candidate c;
  c.value = f;
  c.d1 = [f, h](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  c.d2 = [f, h](double x) { return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h); };
  c.d3 = [f, h](double x) {
    return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h);
  };
  return c;
}

namespace {

void check_domain(std::span<const double> grid, double lo, double hi, const char* problem) {
  for (double x : grid) {
    if (x < lo - kDomainSlack || x > hi + kDomainSlack) {
      std::ostringstream msg;
      msg << problem << ": grid point " << x << " outside [" << lo << ", " << hi << "]";
      throw DomainError(msg.str());
    }
  }
}

double third_derivative(const Candidate& c, double x) {
  if (c.d3) return c.d3(x);
  const double h = 1e-4;
  return (c.d2(x + h) - c.d2(x - h)) / (2.0 * h);
}

}  // namespace

GridFunction residual(const ProblemSpec& problem, const Candidate& u, std::span<const double> grid) {
  GridFunction out;
  out.points.assign(grid.begin(), grid.end());
  out.method = "residual:" + problem_name(problem);
  out.values.reserve(grid.size());

  std::function<double(double)> lhs;
  if (const auto* s = std::get_if<OscillatorSpec>(&problem)) {
    const OscillatorSpec o = *s;
    if (o.kind == OscillatorKind::pendulum) {
      lhs = [u](double t) { return u.d2(t) + std::sin(u.value(t)); };
    } else {
      lhs = [u, o](double t) {
        const double x = u.value(t);
        const double v = u.d1(t);
        const double x2 = x * x;
        return u.d2(t) + o.linear_coeff * x + o.quadratic_coeff * x2 + o.cubic_coeff * x2 * x +
               o.quintic_coeff * x2 * x2 * x - o.vdp_coeff * (1.0 - x2) * v + o.damping * v -
               o.forcing * std::cos(o.forcing_frequency * t);
      };
    }
  } else if (const auto* s = std::get_if<BvpSpec>(&problem)) {
    const BvpSpec b = *s;
    switch (b.kind) {
      case BvpKind::bratu:
        check_domain(grid, 0.0, 1.0, "bratu");
        lhs = [u, b](double x) { return u.d2(x) + b.lambda * std::exp(u.value(x)); };
        break;
      case BvpKind::singular_linear:
        check_domain(grid, 0.0, 1.0, "singular_linear");
        lhs = [u, b](double x) { return b.eps * u.d2(x) + u.d1(x) + u.value(x); };
        break;
      case BvpKind::falkner_skan:
        check_domain(grid, 0.0, std::numeric_limits<double>::infinity(), "falkner_skan");
        lhs = [u, b](double x) {
          const double fp = u.d1(x);
          return third_derivative(u, x) + u.value(x) * u.d2(x) + b.beta_fs * (1.0 - fp * fp);
        };
        break;
    }
  } else if (const auto* s = std::get_if<WkbSpec>(&problem)) {
    const WkbSpec w = *s;
    check_domain(grid, w.x_lo, w.x_hi, "wkb");
    lhs = [u, w](double x) { return w.eps * w.eps * u.d2(x) + w.F(x) * u.value(x); };
  } else if (std::holds_alternative<SNewtonSpec>(problem)) {
    throw CapabilityError("residual: the Schroedinger-Newton pair is coupled; use snewton_fd_residual");
  } else if (const auto* s = std::get_if<TravelingWaveSpec>(&problem)) {
    const double c = s->wave_speed;
    const double xi0 = s->offset;
    lhs = [u, c, xi0](double x) {
      const double xi = x - xi0;
      const double v = u.value(xi);
      return -c * v - 3.0 * v * v + u.d2(xi);
    };
  } else if (const auto* s = std::get_if<LambertSpec>(&problem)) {
    const LambertSpec l = *s;
    lhs = [u, l](double x) {
      const double y = u.value(x);
      const double yp = u.d1(x);
      return u.d2(x) + (l.k * l.k / l.n) * y - (1.0 - l.n) * yp * yp / y;
    };
  }

  for (double x : grid) out.values.push_back(lhs(x));
  return out;
}

std::vector<ConfigSection> parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InvalidProblem(std::string("config: ") + e.what());
  }
  std::vector<ConfigSection> sections;
  ConfigSection global{"", {}};
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      global.values[key] = node.data();
      continue;
    }
    ConfigSection section{key, {}};
    for (const auto& [k, v] : node) section.values[k] = v.data();
    sections.push_back(std::move(section));
  }
  if (!global.values.empty()) sections.insert(sections.begin(), std::move(global));
  return sections;
}

ProblemSpec problem_from_section(const ConfigSection& section) {
  auto it = section.values.find("name");
  if (it == section.values.end()) throw InvalidProblem("config [" + section.name + "]: missing 'name'");
  ParamMap params;
  for (const auto& [key, text] : section.values) {
    if (key == "name") continue;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw InvalidProblem("config [" + section.name + "]: '" + key + "' is not a number: " + text);
    }
    params[key] = value;
  }
  return make_problem(it->second, params);
}

std::vector<std::pair<std::string, ProblemSpec>> load_problems(std::istream& in) {
  std::vector<std::pair<std::string, ProblemSpec>> out;
  for (const auto& section : parse_config(in)) {
    if (section.name == "problem") {
      out.emplace_back(section.values.count("name") ? section.values.at("name") : "", problem_from_section(section));
    } else if (section.name.rfind("problem.", 0) == 0) {
      out.emplace_back(section.name.substr(8), problem_from_section(section));
    }
  }
  return out;
}

}  // namespace asymp
