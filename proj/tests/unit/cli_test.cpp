#include <cmath>
#include <sstream>

#include "doctest.h"

#include "asymp/app/acceptance.hpp"
#include "asymp/app/run_config.hpp"
#include "asymp/app/runner.hpp"

using namespace asymp::app;

namespace {

RunConfig make(std::string problem, asymp::ParamMap params, std::string method = "") {
  RunConfig c;
  c.problem = std::move(problem);
  c.params = std::move(params);
  c.method = method.empty() ? methods_for(c.problem).front() : std::move(method);
  return c;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("config file parsing") {
  std::istringstream in(R"(
[problem]
name = duffing_cubic
eps = 0.1
A = 1

[run]
method = lp
order = 2
tol = 1e-9
format = csv
jobs = 2
max_error = 0.01

[sweep]
axis1 = eps 0.01 0.3 5
axis2 = A:0.5:1:3
)");
  const auto c = config_from_stream(in);
  CHECK(c.problem == "duffing_cubic");
  CHECK(c.params.at("eps") == 0.1);
  CHECK(c.method == "lp");
  CHECK(c.order == 2u);
  CHECK(c.tol == 1e-9);
  CHECK(c.format == OutputFormat::csv);
  CHECK(c.jobs == 2);
  CHECK(c.max_error == 0.01);
  REQUIRE(c.axes.size() == 2);
  CHECK(c.axes[1].parameter == "A");
  CHECK(c.axes[1].steps == 3);
  CHECK(c.axes[0].value(4) == 0.3);

  std::istringstream bad("[run]\nmethod = vim\n[problem]\nname = duffing_cubic\neps = x\nA = 1\n");
  CHECK_THROWS_AS(config_from_stream(bad), ConfigError);
  CHECK_THROWS_AS(parse_axis("eps 1"), ConfigError);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("config validation") {
  auto c = make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}});
  c.validate();
  c.tol = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.tol = 1e-10;
  c.axes = {parse_axis("zeta 0 1 3")};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  auto singular = make("singular_linear", {{"eps", 0.1}});
  singular.axes = {parse_axis("eps 0.1 0.3 3")};
  CHECK_THROWS_AS(singular.validate(), ConfigError);
  c.axes = {parse_axis("eps 0 0.1 3"), parse_axis("A 0.5 1 2"), parse_axis("A 0.5 1 2")};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("run exit codes") {
  const auto ok = run(make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}, "vim"));
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.document.at("omega_squared").get<double>() == doctest::Approx(1.075).epsilon(1e-14));
  double c3 = 0.0;
  for (const auto& t : ok.document.at("terms")) {
    if (t.at("harmonic") == 3) c3 = t.at("coeff").get<double>();
  }
  CHECK(c3 == doctest::Approx(0.1 / (32.0 * 1.075)).epsilon(1e-14));

  CHECK(run(make("singular_linear", {{"eps", 0.3}})).exit_code == kExitConfig);
  CHECK(run(make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}, "hpm")).exit_code == kExitConfig);
  CHECK(run(make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}, {"delta", 0.1}}, "vim")).exit_code == kExitMethod);

  auto strict = make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}, "vim");
  strict.max_error = 1e-9;
  const auto dis = run(strict);
  CHECK(dis.exit_code == kExitDisagreement);
  CHECK(dis.document.at("status") == "disagreement");
}

TEST_CASE("trivial bratu and singular csv") {
  const auto zero = run(make("bratu", {{"lambda", 0.0}}));
  REQUIRE(zero.exit_code == kExitOk);
  REQUIRE(zero.document.at("solutions").size() == 1);
  CHECK(zero.document.at("solutions")[0].at("A") == 0.0);

  auto cfg = make("singular_linear", {{"eps", 0.01}}, "bvt");
  cfg.format = OutputFormat::csv;
  const auto out = run(cfg);
  REQUIRE(out.exit_code == kExitOk);
  std::ostringstream csv;
  write_outcome(out, OutputFormat::csv, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  const auto cols = split(header);
  const auto it = std::find(cols.begin(), cols.end(), "sup_error");
  REQUIRE(it != cols.end());
  std::string row;
  std::getline(lines, row);
  CHECK(std::stod(split(row)[it - cols.begin()]) < 0.05);
}

TEST_CASE("bratu sweep crosses the fold once") {
  auto cfg = make("bratu", {{"lambda", 1.0}}, "ritz");
  cfg.axes = {parse_axis("lambda 0.5 4 36")};
  cfg.jobs = 2;
  const auto out = sweep(cfg);
  REQUIRE(out.exit_code == kExitOk);
  const auto& rows = out.document.at("rows");
  REQUIRE(rows.size() == 36);
  for (const char* key : {"method_value", "oracle_value"}) {
    int transitions = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].at(key) != rows[i - 1].at(key)) ++transitions;
    }
    CHECK(transitions == 1);
    CHECK(rows.front().at(key) == 2);
    CHECK(rows.back().at(key) == 0);
  }
}

TEST_CASE("duffing period error grows with eps") {
  auto cfg = make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}, "vim");
  cfg.axes = {parse_axis("eps 0.01 0.3 8")};
  const auto out = sweep(cfg);
  const auto& rows = out.document.at("rows");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].at("error").get<double>() >= 0.9 * rows[i - 1].at("error").get<double>());
  }
}

TEST_CASE("single-step sweep matches run") {
  auto cfg = make("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}, "lp");
  const auto single = run(cfg);
  cfg.axes = {parse_axis("eps 0.1 0.1 1")};
  const auto swept = sweep(cfg);
  REQUIRE(swept.document.at("rows").size() == 1);
  const auto& row = swept.document.at("rows")[0];
  CHECK(row.at("method_value") == single.document.at("comparison").at("method_value"));
  CHECK(row.at("oracle_value") == single.document.at("comparison").at("oracle_value"));
  CHECK(row.at("error") == single.document.at("comparison").at("error"));
}

TEST_CASE("sweep cell failures stay in their row") {
  auto cfg = make("bratu", {{"lambda", 1.0}}, "shoot");
  cfg.axes = {parse_axis("lambda 3 4 3")};
  const auto out = sweep(cfg);
  const auto& rows = out.document.at("rows");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].at("status") == "ok");
  CHECK(rows[2].at("status") == "error");
  CHECK(out.exit_code == kExitMethod);
}

TEST_CASE("reports are deterministic") {
  for (const auto& gc : golden_cases()) {
    CAPTURE(gc.name);
    CHECK(run(gc.config).document.dump() == run(gc.config).document.dump());
  }
  auto cfg = make("duffing_quintic", {{"eps", 0.1}, {"A", 1.0}}, "hpm");
  cfg.axes = {parse_axis("eps 0.01 0.2 3"), parse_axis("A 0.5 1.5 3")};
  cfg.jobs = 1;
  const auto a = sweep(cfg);
  cfg.jobs = 4;
  const auto b = sweep(cfg);
  CHECK(a.document.dump() == b.document.dump());
}

TEST_CASE("json comparison") {
  const json a = {{"x", 1.0}, {"y", {1, 2, 3}}, {"s", "t"}};
  json b = a;
  b["x"] = 1.0 + 1e-12;
  CHECK(json_close(a, b, 1e-9));
  b["x"] = 1.1;
  std::string where;
  CHECK_FALSE(json_close(a, b, 1e-9, &where));
  CHECK(where == "/x");
  b = a;
  b["y"][2] = 4;
  CHECK_FALSE(json_close(a, b, 1e-9, &where));
  CHECK(where == "/y/2");
}
