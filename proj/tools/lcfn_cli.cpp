// lcfn: command-line front end.
//
// Exit codes: 0 ok, 1 mathematical check failed, 2 usage or configuration
// error, 3 numerical non-convergence.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "report.hpp"

namespace {

using namespace lcfn;
using lcfn::cli::Format;
using lcfn::cli::Json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kNonConvergent = 3;

struct RunConfig {
  std::string gen;
  std::string scenario;
  std::string r;
  std::string q;
  std::vector<double> domain;
  std::optional<double> tol;
  std::string quadrature = "simpson";
  int gauss_points = 64;
  std::string harness;
  std::string format_name;
  Format format = Format::Json;
  std::string out;

  std::vector<std::string> literals;
  double alpha = 1.0;
  int order = 1;
  std::optional<double> at;
  std::optional<double> t0;
  std::optional<double> eps0;
  double radius = 1e-3;
  int samples = 100;
  bool newton = false;
  int grid = 1024;
};

QuadratureSpec quadrature(const RunConfig& c) {
  QuadratureSpec spec;
  spec.method = c.quadrature == "gauss" ? QuadratureMethod::GaussLegendre : QuadratureMethod::AdaptiveSimpson;
  spec.gauss_points = c.gauss_points;
  if (c.tol) spec.abs_tol = *c.tol;
  return spec;
}

GeneratorPtr generator(const RunConfig& c) {
  if (c.gen.empty()) throw Error(ErrorCode::ConfigError, "--gen is required");
  return load_generator(c.gen);
}

Scenario scenario(const RunConfig& c) {
  if (!c.scenario.empty()) {
    return load_scenario(c.scenario, c.gen.empty() ? nullptr : load_generator(c.gen));
  }
  if (c.r.empty() && c.q.empty()) throw Error(ErrorCode::ConfigError, "give --scenario or --r/--q");
  const Interval<double> domain = c.domain.empty() ? Interval<double>{-1.0, 1.0} : Interval<double>{c.domain[0], c.domain[1]};
  const ParseOptions with_eps{true};
  FuzzyFn f(RealExpr::parse(c.r.empty() ? "0" : c.r, with_eps), RealExpr::parse(c.q.empty() ? "0" : c.q, with_eps),
            generator(c), domain);
  return {"cli", std::move(f), std::nullopt, c.eps0, c.t0};
}

HarnessConfig harness(const RunConfig& c) {
  HarnessConfig h = c.harness.empty() ? HarnessConfig{} : load_harness(c.harness);
  return h;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + c.out);
  out << text;
}

int finish(const RunConfig& c, Json doc, bool passed = true) {
  emit(c, cli::render(doc, c.format));
  return passed ? kOk : kCheckFailed;
}

Json with(Json head, const Json& body) {
  for (auto it = body.begin(); it != body.end(); ++it) head[it.key()] = it.value();
  return head;
}

int run_compare(const RunConfig& c) {
  const auto gen = generator(c);
  const LcfnD b = parse_literal(c.literals.at(0), gen);
  const LcfnD d = parse_literal(c.literals.at(1), gen);
  const Comparison cmp = compare(b, d);
  std::string order = cmp.order == std::strong_ordering::less      ? "Less"
                      : cmp.order == std::strong_ordering::greater ? "Greater"
                                                                   : "Equal";
  const std::string tier = cmp.tier == OrderTier::I ? "I" : cmp.tier == OrderTier::II ? "II" : "III";
  if (c.format == Format::Text) {
    emit(c, order == "Equal" ? order + "\n" : order + " (tier " + tier + ")\n");
    return kOk;
  }
  Json doc = cli::envelope("compare");
  doc["lhs"] = cli::literal_json(b);
  doc["rhs"] = cli::literal_json(d);
  doc["order"] = order;
  doc["tier"] = order == "Equal" ? Json(nullptr) : Json(tier);
  return finish(c, doc);
}

int run_norm(const RunConfig& c) {
  const LcfnD b = parse_literal(c.literals.at(0), generator(c));
  Json doc = cli::envelope("norm");
  doc["value"] = cli::literal_json(b);
  doc["norm"] = norm(b);
  return finish(c, doc);
}

int run_classify(const RunConfig& c) {
  const LcfnD b = parse_literal(c.literals.at(0), generator(c));
  return finish(c, with(cli::envelope("classify"), cli::literal_json(b)));
}

int run_cross(const RunConfig& c) {
  const auto gen = generator(c);
  const LcfnD b = parse_literal(c.literals.at(0), gen);
  const LcfnD d = parse_literal(c.literals.at(1), gen);
  Json doc = with(cli::envelope("cross"), cli::literal_json(cross(b, d)));
  doc["literal"] = format_literal(cross(b, d));
  return finish(c, doc);
}

int run_alpha(const RunConfig& c) {
  const LcfnD b = parse_literal(c.literals.at(0), generator(c));
  const Interval<double> level = realize_alpha(b, c.alpha);
  Json doc = cli::envelope("alpha-level");
  doc["value"] = cli::literal_json(b);
  doc["alpha"] = c.alpha;
  doc["lower"] = level.lower;
  doc["upper"] = level.upper;
  return finish(c, doc);
}

int run_differentiate(const RunConfig& c) {
  const Scenario s = scenario(c);
  const FuzzyFn d = s.f.derivative(c.order);
  Json doc = cli::envelope("differentiate");
  doc["order"] = c.order;
  doc["r"] = d.r().print();
  doc["q"] = d.q().print();
  if (c.at) {
    doc["at"] = *c.at;
    doc["value"] = cli::literal_json(c.order == 1 ? deriv(s.f, *c.at) : d(*c.at));
  }
  return finish(c, doc);
}

int run_integrate(const RunConfig& c) {
  const Scenario s = scenario(c);
  const LcfnD v = integrate(s.f, quadrature(c));
  return finish(c, with(cli::envelope("integrate"), cli::literal_json(v)));
}

int run_critical(const RunConfig& c) {
  const Scenario s = scenario(c);
  CriticalPointOptions opts;
  opts.grid = c.grid;
  opts.newton_polish = c.newton;
  Json points = Json::array();
  bool passed = true;
  for (const auto& cp : critical_points(s.f, opts)) {
    const LocalOrderReport local = verify_local_order(s.f, cp, c.radius, c.samples);
    passed = passed && local.passed;
    points.push_back(cli::to_json(cp, local));
  }
  Json doc = cli::envelope("critical-points");
  doc["domain"] = {s.f.domain().lower, s.f.domain().upper};
  doc["records"] = points;
  doc["count"] = points.size();
  doc["verdict"] = passed ? "pass" : "fail";
  return finish(c, doc, passed);
}

FuzzyFn partner(const Scenario& s) { return s.g ? *s.g : s.f; }

int run_verify(const std::string& what, const RunConfig& c) {
  const Scenario s = scenario(c);
  const QuadratureSpec spec = quadrature(c);
  Json doc = cli::envelope("verify " + what);
  doc["scenario"] = s.name;
  Json body;
  bool passed = true;

  if (what == "ftc") {
    const auto r = ftc_check(s.f, spec);
    body = cli::to_json(r);
    passed = r.passed;
  } else if (what == "ibp") {
    const auto r = ibp_check(s.f, partner(s), spec);
    body = cli::to_json(r);
    passed = r.passed;
  } else if (what == "interchange") {
    const auto r = interchange_check(s.f, c.eps0.value_or(s.eps0.value_or(1.0)), spec);
    body = cli::to_json(r);
    passed = r.passed;
  } else if (what == "lagrange") {
    const HarnessConfig h = harness(c);
    if (const auto t0 = c.t0 ? c.t0 : s.t0) {
      const auto w = lagrange_witness(s.f, *t0, h, spec);
      body = cli::to_json(w);
      passed = !w.terms.empty() && w.terms.back().b_k > 0.0;
    } else {
      const auto r = lagrange_scan(s.f, h, spec);
      body = cli::to_json(r);
      passed = r.passed;
    }
  } else if (what == "dbr-forward") {
    if (!s.g) throw Error(ErrorCode::ConfigError, "dbr-forward needs a scenario with \"g\"");
    const auto catalog = sine_catalog(s.f.generator(), s.f.domain());
    const auto r = dbr_forward_check(s.f, *s.g, catalog, spec);
    body = cli::to_json(r);
    passed = r.passed;
  } else if (what == "dbr-reconstruct") {
    const auto r = dbr_reconstruct(s.f, spec, c.grid);
    body = cli::to_json(r);
    passed = r.constant_modulo_zero_class;
  }
  if (c.format == Format::Csv && !body.contains("records")) {
    throw Error(ErrorCode::ConfigError, "CSV output is only available for grid reports");
  }
  return finish(c, with(doc, body), passed);
}

void add_format(CLI::App* app, RunConfig& c) {
  app->add_option("--format", c.format_name, "json | text | csv")->check(CLI::IsMember({"json", "text", "csv"}));
  app->add_option("--out", c.out, "write the report here instead of stdout");
}

void add_function_options(CLI::App* app, RunConfig& c) {
  app->add_option("--scenario", c.scenario, "scenario JSON")->check(CLI::ExistingFile);
  app->add_option("--r", c.r, "r-component expression in t");
  app->add_option("--q", c.q, "q-component expression in t");
  app->add_option("--domain", c.domain, "interval a b (default -1 1)")->expected(2);
  app->add_option("--tol", c.tol, "absolute quadrature tolerance per component");
  app->add_option("--quadrature", c.quadrature, "simpson | gauss")->check(CLI::IsMember({"simpson", "gauss"}));
  app->add_option("--gauss-points", c.gauss_points, "Gauss-Legendre nodes")->check(CLI::Range(1, 4096));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearly correlated fuzzy numbers: order, algebra, calculus, variational checks"};
  app.require_subcommand(1);
  RunConfig c;
  std::string verify_what;

  const auto add_gen = [&](CLI::App* sub) {
    sub->add_option("--gen", c.gen, "generator JSON")->check(CLI::ExistingFile);
  };

  auto* compare_cmd = app.add_subcommand("compare", "order two literals");
  auto* norm_cmd = app.add_subcommand("norm", "norm of a literal");
  auto* classify_cmd = app.add_subcommand("classify", "sign class of a literal");
  auto* cross_cmd = app.add_subcommand("cross", "cross product of two literals");
  auto* alpha_cmd = app.add_subcommand("alpha-level", "alpha-level interval of a literal");
  for (auto* sub : {compare_cmd, cross_cmd}) {
    add_gen(sub);
    sub->add_option("literals", c.literals, "two literals such as 3+2A")->required()->expected(2);
    add_format(sub, c);
  }
  for (auto* sub : {norm_cmd, classify_cmd, alpha_cmd}) {
    add_gen(sub);
    sub->add_option("literal", c.literals, "literal such as 3+2A")->required()->expected(1);
    add_format(sub, c);
  }
  alpha_cmd->add_option("--alpha", c.alpha, "level in [0, 1]");

  auto* diff_cmd = app.add_subcommand("differentiate", "symbolic derivative");
  auto* int_cmd = app.add_subcommand("integrate", "componentwise integral over the domain");
  auto* crit_cmd = app.add_subcommand("critical-points", "stationary points of the center");
  for (auto* sub : {diff_cmd, int_cmd, crit_cmd}) {
    add_gen(sub);
    add_function_options(sub, c);
    add_format(sub, c);
  }
  diff_cmd->add_option("--order", c.order, "1..3")->check(CLI::Range(1, 3));
  diff_cmd->add_option("--at", c.at, "evaluate the derivative at t");
  crit_cmd->add_option("--grid", c.grid, "scan grid size")->check(CLI::Range(3, 1 << 22));
  crit_cmd->add_option("--radius", c.radius, "local-order check radius");
  crit_cmd->add_option("--samples", c.samples, "local-order check samples")->check(CLI::Range(1, 1 << 20));
  crit_cmd->add_flag("--newton", c.newton, "Newton polish after bisection");

  auto* verify_cmd = app.add_subcommand("verify", "theorem checks");
  verify_cmd->require_subcommand(1);
  const std::vector<std::pair<const char*, const char*>> checks{
      {"lagrange", "mollifier witnesses over a t0 grid, or at one --t0"},
      {"dbr-forward", "integral of f (.) eta + g (.) eta' over the sine catalog"},
      {"dbr-reconstruct", "mean value u and F(t) + u on a grid"},
      {"interchange", "d/deps of the integral against the integral of d/deps"},
      {"ftc", "integral of f' against f(b) - f(a)"},
      {"ibp", "integration by parts with the scenario's g"}};
  for (const auto& [what, help] : checks) {
    auto* sub = verify_cmd->add_subcommand(what, help);
    add_gen(sub);
    add_function_options(sub, c);
    add_format(sub, c);
    sub->callback([&verify_what, what] { verify_what = what; });
    if (std::string(what) == "lagrange") {
      sub->add_option("--harness", c.harness, "harness config JSON")->check(CLI::ExistingFile);
      sub->add_option("--t0", c.t0, "single witness at t0 instead of a scan");
    }
    if (std::string(what) == "dbr-reconstruct") {
      sub->add_option("--grid", c.grid, "reconstruction grid")->check(CLI::Range(2, 1 << 22));
    }
    if (std::string(what) == "interchange") sub->add_option("--eps0", c.eps0, "parameter value");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c.format_name == "text" || (c.format_name.empty() && compare_cmd->parsed())) c.format = Format::Text;
    if (c.format_name == "csv") c.format = Format::Csv;
    if (compare_cmd->parsed()) return run_compare(c);
    if (c.format == Format::Csv && !verify_cmd->parsed()) {
      throw Error(ErrorCode::ConfigError, "CSV output is only available for grid reports");
    }
    if (norm_cmd->parsed()) return run_norm(c);
    if (classify_cmd->parsed()) return run_classify(c);
    if (cross_cmd->parsed()) return run_cross(c);
    if (alpha_cmd->parsed()) return run_alpha(c);
    if (diff_cmd->parsed()) return run_differentiate(c);
    if (int_cmd->parsed()) return run_integrate(c);
    if (crit_cmd->parsed()) return run_critical(c);
    return run_verify(verify_what, c);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what();
    if (e.offset() && std::string(e.what()).find("offset") == std::string::npos) std::cerr << " (offset " << *e.offset() << ")";
    std::cerr << '\n';
    return e.code() == ErrorCode::QuadratureNonConvergent ? kNonConvergent : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
