#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "asymp/app/acceptance.hpp"
#include "asymp/app/run_config.hpp"
#include "asymp/app/runner.hpp"

namespace {

using namespace asymp::app;

struct CliOptions {
  std::string config_path;
  std::string problem;
  std::string method;
  unsigned order = 0;
  std::optional<double> eps;
  std::optional<double> amp;
  std::optional<double> lambda;
  std::vector<std::string> params;
  std::string format;
  std::string out;
  std::optional<double> tol;
  std::optional<double> max_error;
  int jobs = 0;
  std::vector<std::string> axes;
};

void add_run_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "INI file with [problem], [run], [sweep] sections");
  cmd->add_option("--problem", o.problem, "Problem name (see `asymp list`)");
  cmd->add_option("--method", o.method, "Method name");
  cmd->add_option("--order", o.order, "Expansion order or iteration count")->check(CLI::PositiveNumber);
  cmd->add_option("--eps", o.eps, "Shorthand for --param eps=<v>");
  cmd->add_option("--amp", o.amp, "Shorthand for --param A=<v>");
  cmd->add_option("--lambda", o.lambda, "Shorthand for --param lambda=<v>");
  cmd->add_option("--param", o.params, "Problem parameter key=value (repeatable)");
  cmd->add_option("--format", o.format, "json or csv");
  cmd->add_option("--out", o.out, "Output file (stdout when absent)");
  cmd->add_option("--tol", o.tol, "Oracle tolerance");
  cmd->add_option("--max-error", o.max_error, "Exit 4 when the method-oracle error exceeds this");
}

// Config file (explicit or from the environment) first, flags on top.
RunConfig build_config(const CliOptions& o) {
  RunConfig cfg;
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (!path.empty()) cfg = config_from_file(path);
  if (!o.problem.empty()) cfg.problem = o.problem;
  if (!o.method.empty()) cfg.method = o.method;
  if (o.order > 0) cfg.order = o.order;
  if (o.eps) cfg.params["eps"] = *o.eps;
  if (o.amp) cfg.params["A"] = *o.amp;
  if (o.lambda) cfg.params["lambda"] = *o.lambda;
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + kv + "'");
    try {
      std::size_t used = 0;
      const std::string rhs = kv.substr(eq + 1);
      const double v = std::stod(rhs, &used);
      if (used != rhs.size()) throw std::invalid_argument(rhs);
      cfg.params[kv.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw ConfigError("--param value is not a number in '" + kv + "'");
    }
  }
  if (!o.format.empty()) cfg.format = parse_format(o.format);
  if (!o.out.empty()) cfg.out_path = o.out;
  if (o.tol) cfg.tol = *o.tol;
  if (o.max_error) cfg.max_error = *o.max_error;
  if (o.jobs > 0) cfg.jobs = o.jobs;
  if (!o.axes.empty()) {
    cfg.axes.clear();
    for (const auto& a : o.axes) cfg.axes.push_back(parse_axis(a));
  }
  if (cfg.problem.empty()) throw ConfigError("no problem given (--problem or [problem] name)");
  if (cfg.method.empty()) {
    const auto& m = methods_for(cfg.problem);
    if (m.empty()) throw ConfigError("unknown problem '" + cfg.problem + "'");
    cfg.method = m.front();
  }
  return cfg;
}

int emit(const RunOutcome& outcome, const RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    write_outcome(outcome, cfg.format, std::cout);
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      std::cerr << "asymp: cannot open " << cfg.out_path << " for writing\n";
      return kExitFailure;
    }
    write_outcome(outcome, cfg.format, f);
  }
  return outcome.exit_code;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    std::cerr << "asymp: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "asymp: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic approximations of nonlinear ODEs checked against numerical oracles"};
  app.require_subcommand(1);

  CliOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Run one method on one problem");
  add_run_options(solve_cmd, solve_opts);

  CliOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a method over a 1-D or 2-D parameter grid");
  add_run_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--axis", sweep_opts.axes, "\"param lo hi steps\" (at most two)");
  sweep_cmd->add_option("--jobs", sweep_opts.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string golden_dir = ASYMP_GOLDEN_DIR;
  bool update_golden = false;
  int only = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
  verify_cmd->add_option("--golden-dir", golden_dir, "Directory of golden reports");
  verify_cmd->add_flag("--update-golden", update_golden, "Regenerate the golden reports and exit");
  verify_cmd->add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, kCriterionCount));

  auto* list_cmd = app.add_subcommand("list", "List problems and their methods");

  CLI11_PARSE(app, argc, argv);

  if (*solve_cmd) {
    return guarded([&] {
      const auto cfg = build_config(solve_opts);
      return emit(run(cfg), cfg);
    });
  }
  if (*sweep_cmd) {
    return guarded([&] {
      const auto cfg = build_config(sweep_opts);
      if (cfg.axes.empty()) throw ConfigError("sweep needs at least one --axis");
      return emit(sweep(cfg), cfg);
    });
  }
  if (*verify_cmd) {
    return guarded([&] {
      if (update_golden) {
        write_golden(golden_dir);
        std::cout << "golden reports written to " << golden_dir << '\n';
        return kExitOk;
      }
      const AcceptanceOptions opts{golden_dir};
      bool all = true;
      for (int id = 1; id <= kCriterionCount; ++id) {
        if (only != 0 && id != only) continue;
        const auto r = run_criterion(id, opts);
        print_result(std::cout, r);
        all = all && r.passed;
      }
      return all ? kExitOk : kExitFailure;
    });
  }
  if (*list_cmd) {
    for (const auto& p : asymp::problem_names()) {
      std::cout << p << ':';
      for (const auto& m : methods_for(p)) std::cout << ' ' << m;
      std::cout << '\n';
    }
  }
  return kExitOk;
}
