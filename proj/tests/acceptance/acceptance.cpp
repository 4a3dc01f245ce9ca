// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failures.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "lcfn/scenario.hpp"

using namespace lcfn;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << " -- " << detail << '\n';
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

GeneratorPtr tri(double l, double m, double r) { return share(Generator::triangular(l, m, r)); }

// Asymmetric triangular generator. With `dyadic` the peak is a multiple of
// 1/8, so products on the 1/16 lattice below are exact in double.
GeneratorPtr random_generator(std::mt19937_64& rng, bool dyadic) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double m = 4 * u(rng) - 2;
  if (dyadic) m = std::round(m * 8) / 8;
  const double s1 = 0.2 + 2 * u(rng);
  const double s2 = s1 + 0.1 + u(rng);
  return u(rng) < 0.5 ? tri(m - s1, m, m + s2) : tri(m - s2, m, m + s1);
}

// Multiples of 1/16 in [-8, 8].
double lattice(std::mt19937_64& rng) { return std::uniform_int_distribution<int>(-128, 128)(rng) / 16.0; }

// Draws are sequenced so every compiler sees the same samples.
LcfnD lattice_element(std::mt19937_64& rng, const GeneratorPtr& g) {
  const double r = lattice(rng);
  return LcfnD(r, lattice(rng), g);
}

LcfnD uniform_element(std::mt19937_64& rng, std::uniform_real_distribution<double>& u, const GeneratorPtr& g) {
  const double r = u(rng);
  return LcfnD(r, u(rng), g);
}

// Lattice element with center exactly zero: r = -a_m q.
LcfnD lattice_zero_center(std::mt19937_64& rng, const GeneratorPtr& g) {
  const double q = lattice(rng);
  return LcfnD(-g->peak() * q, q, g);
}

double ulp(double x) {
  const double ax = std::abs(x);
  return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

std::vector<Scenario> load_catalog(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 1 && name[0] == 's' && std::isdigit(static_cast<unsigned char>(name[1]))) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(load_scenario(f));
  return out;
}

const Scenario& by_name(const std::vector<Scenario>& catalog, const std::string& name) {
  for (const auto& s : catalog) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::ConfigError, "scenario " + name + " missing from the catalog");
}

// ---- 1 ----------------------------------------------------------------------

void order_axioms() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  long triples = 0;
  long violations = 0;
  long tier_counts[3] = {0, 0, 0};
  const int generators = 24;
  for (int gi = 0; gi < generators; ++gi) {
    const auto g = random_generator(rng, gi % 2 == 0);
    const auto draw = [&] {
      // Lattice draws force tier II and III ties; continuous draws cover the rest.
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return uniform_element(rng, u, g);
        case 1: return lattice_element(rng, g);
        default: {
          const double c = std::uniform_int_distribution<int>(-2, 2)(rng) / 2.0;
          const double q = std::uniform_int_distribution<int>(-2, 2)(rng) / 4.0;
          return LcfnD(c - g->peak() * q, q, g);
        }
      }
    };
    for (int i = 0; i < 500; ++i, ++triples) {
      const LcfnD b = draw();
      const LcfnD c = draw();
      const LcfnD d = draw();
      const auto bc = compare(b, c);
      tier_counts[static_cast<int>(bc.tier)]++;
      const bool reflexive = compare(b, b).order == std::strong_ordering::equal;
      const bool total = leq(b, c) || leq(c, b);
      const bool antisymmetric = !(leq(b, c) && leq(c, b)) || b.coords() == c.coords();
      const bool transitive = !(leq(b, c) && leq(c, d)) || leq(b, d);
      const bool converse = compare(c, b).order == (0 <=> bc.order);
      if (!(reflexive && total && antisymmetric && transitive && converse)) ++violations;
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << triples << " triples over " << generators << " generators, " << violations << " violations, tiers I/II/III "
     << tier_counts[0] << "/" << tier_counts[1] << "/" << tier_counts[2] << ", " << secs << " s";
  report(1, "order axioms", violations == 0 && triples >= 10000 && secs < 5.0, os.str());
}

// ---- 2 ----------------------------------------------------------------------

void positivity_of_squares() {
  std::mt19937_64 rng(2);
  long violations = 0;
  long zero_centers = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto g = random_generator(rng, true);
    const LcfnD b = (i % 5 == 0) ? lattice_zero_center(rng, g) : lattice_element(rng, g);
    const LcfnD s = square(b);
    const bool center_zero = center(b) == 0.0;
    zero_centers += center_zero;
    const bool nonnegative = leq(LcfnD::zero(g), s);
    const bool iff = (classify(s) == SignClass::ZeroClass) == center_zero;
    if (!(nonnegative && iff)) ++violations;
  }
  // Same property on unrestricted doubles, reported for information.
  long continuous = 0;
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < n; ++i) {
    const auto g = random_generator(rng, false);
    const LcfnD b = uniform_element(rng, u, g);
    if (!leq(LcfnD::zero(g), square(b))) ++continuous;
  }
  std::ostringstream os;
  os << n << " samples on the 1/16 lattice (" << zero_centers << " with zero center), " << violations
     << " violations; continuous doubles: " << continuous << " negative squares";
  report(2, "positivity of squares", violations == 0, os.str());
}

// ---- 3 ----------------------------------------------------------------------

void cross_dual_formula() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto g = random_generator(rng, false);
    const LcfnD b = uniform_element(rng, u, g);
    const LcfnD c = uniform_element(rng, u, g);
    const LcfnD x = cross(b, c);
    const LcfnD y = cross_oracle(b, c);
    // Error is measured in ulps of the largest term magnitude of each
    // component, since both formulas cancel.
    const double a = g->peak();
    const double pb = std::abs(b.r()) + std::abs(a * b.q());
    const double pc = std::abs(c.r()) + std::abs(a * c.q());
    const double scale_r = std::max({std::abs(b.r() * c.r()), std::abs(a * a * b.q() * c.q()), pb * pc});
    const double scale_q = std::max({std::abs(b.r() * c.q()), std::abs(c.r() * b.q()),
                                     std::abs(2 * a * b.q() * c.q()), pc * std::abs(b.q()),
                                     pb * std::abs(c.q())});
    worst = std::max(worst, std::abs(x.r() - y.r()) / ulp(scale_r));
    worst = std::max(worst, std::abs(x.q() - y.q()) / ulp(scale_q));
  }
  std::ostringstream os;
  os << n << " pairs, worst componentwise gap " << worst << " ulp of the term scale (bound 4)";
  report(3, "cross vs oracle", worst <= 4.0, os.str());
}

// ---- 4 ----------------------------------------------------------------------

void sign_rules() {
  std::mt19937_64 rng(4);
  const std::array<SignClass, 3> classes{SignClass::ZeroClass, SignClass::Positive, SignClass::Negative};
  const auto expected = [](SignClass b, SignClass c) {
    if (b == SignClass::ZeroClass || c == SignClass::ZeroClass) return SignClass::ZeroClass;
    return b == c ? SignClass::Positive : SignClass::Negative;
  };
  const auto draw = [&](SignClass want, const GeneratorPtr& g) {
    if (want == SignClass::ZeroClass) return lattice_zero_center(rng, g);
    for (;;) {
      const LcfnD x = lattice_element(rng, g);
      if (classify(x) == want) return x;
    }
  };
  const int per_stratum = 1200;
  long violations = 0;
  for (SignClass cb : classes) {
    for (SignClass cc : classes) {
      for (int i = 0; i < per_stratum; ++i) {
        const auto g = random_generator(rng, true);
        const LcfnD b = draw(cb, g);
        const LcfnD c = draw(cc, g);
        if (classify(cross(b, c)) != expected(cb, cc)) ++violations;
      }
    }
  }
  std::ostringstream os;
  os << "9 strata x " << per_stratum << " lattice samples, " << violations << " violations";
  report(4, "sign rules", violations == 0, os.str());
}

// ---- 5 ----------------------------------------------------------------------

void norm_axioms() {
  std::mt19937_64 rng(5);
  // |a_m| <= 2, so coordinates in [-1/4, 1/4] keep every norm at most 1 and
  // the absolute slack bound is taken at unit scale.
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  const int n = 10000;
  double worst_homogeneity = 0.0;
  double worst_general = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  long definiteness = 0;
  const auto ulps = [](double lhs, double rhs) { return rhs == 0.0 ? std::abs(lhs) : std::abs(lhs - rhs) / ulp(rhs); };
  for (int i = 0; i < n; ++i) {
    const auto g = random_generator(rng, i % 2 == 0);
    const LcfnD b = uniform_element(rng, u, g);
    const LcfnD c = uniform_element(rng, u, g);

    // Homogeneity where lambda B is representable: power-of-two lambda on
    // continuous B, or lattice lambda on lattice B.
    if (i % 2 == 0) {
      const LcfnD x = lattice_element(rng, g);
      const double lambda = lattice(rng);
      worst_homogeneity = std::max(worst_homogeneity, ulps(norm(scale(lambda, x)), std::abs(lambda) * norm(x)));
    } else {
      const double sign = u(rng) < 0.0 ? -1.0 : 1.0;
      const double lambda = std::ldexp(sign, std::uniform_int_distribution<int>(-6, 6)(rng));
      worst_homogeneity = std::max(worst_homogeneity, ulps(norm(scale(lambda, b)), std::abs(lambda) * norm(b)));
    }
    // Unrestricted lambda, reported only: rounding of lambda r and lambda q
    // happens before the norm is taken.
    const double any = 16 * u(rng);
    worst_general = std::max(worst_general, ulps(norm(scale(any, b)), std::abs(any) * norm(b)));

    worst_slack = std::min(worst_slack, norm(b) + norm(c) - norm(add(b, c)));
    if ((norm(b) == 0.0) != (b.r() == 0.0 && b.q() == 0.0) || norm(b) < 0.0) ++definiteness;
    if (norm(LcfnD::zero(g)) != 0.0) ++definiteness;
    const LcfnD z = lattice_zero_center(rng, g);
    if ((norm(z) == 0.0) != (z.q() == 0.0)) ++definiteness;
  }
  std::ostringstream os;
  os << n << " samples: homogeneity worst " << worst_homogeneity << " ulp on representable lambda B ("
     << worst_general << " ulp for unrestricted lambda), triangle slack min " << worst_slack
     << " on the unit ball, definiteness violations " << definiteness;
  report(5, "norm axioms", worst_homogeneity <= 1.0 && worst_slack >= -1e-15 && definiteness == 0, os.str());
}

// ---- 6, 7 -------------------------------------------------------------------

void ftc_ibp(const std::vector<Scenario>& catalog) {
  const auto start = Clock::now();
  double worst_ftc = 0.0;
  double worst_ibp = 0.0;
  for (const auto& s : catalog) {
    worst_ftc = std::max(worst_ftc, ftc_check(s.f).residual);
    worst_ibp = std::max(worst_ibp, ibp_check(s.f, s.g ? *s.g : s.f).residual);
  }
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << catalog.size() << " scenarios, worst FTC residual " << worst_ftc << ", worst IBP residual " << worst_ibp
     << ", " << secs << " s";
  report(6, "FTC and integration by parts", catalog.size() == 12 && worst_ftc < 1e-8 && worst_ibp < 1e-8 && secs < 10,
         os.str());
}

void integral_of_square(const std::vector<Scenario>& catalog) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& s : catalog) lowest = std::min(lowest, square_integral(s.f).center);
  const SquareIntegralReport z = square_integral(by_name(catalog, "center_zero").f);
  std::ostringstream os;
  os << "lowest center over the catalog " << lowest << "; center-zero scenario: |center| " << std::abs(z.center)
     << ", violation fraction " << z.violation_fraction;
  report(7, "integral of a square", lowest >= -1e-10 && std::abs(z.center) < 1e-10 && z.violation_fraction == 0.0,
         os.str());
}

// ---- 8 ----------------------------------------------------------------------

void optimality() {
  const FuzzyFn f(RealExpr::parse("t^2"), RealExpr::parse("t"), tri(0.0, 1.0, 3.0), {-2.0, 1.0});
  const auto cps = critical_points(f);
  bool ok = cps.size() == 1;
  std::ostringstream os;
  os << cps.size() << " critical point(s)";
  if (ok) {
    const LocalOrderReport local = verify_local_order(f, cps[0], 1e-3, 100);
    ok = std::abs(cps[0].t_star + 0.5) < 1e-10 && cps[0].verdict == Verdict::LocalMin && local.passed &&
         local.samples == 100;
    os << ", t* = " << cps[0].t_star << ", |t* + 0.5| = " << std::abs(cps[0].t_star + 0.5) << ", "
       << to_string(cps[0].verdict) << ", local order " << (local.passed ? "holds" : "fails") << " at "
       << local.samples << " samples";
  }
  report(8, "optimality conditions", ok, os.str());
}

// ---- 9 ----------------------------------------------------------------------

void dirac_lagrange() {
  const auto g = tri(-1.0, 0.0, 2.0);
  HarnessConfig cfg;
  const FuzzyFn one(RealExpr::constant(1.0), RealExpr::constant(0.0), g, {0.0, 1.0});
  const LagrangeWitness w = lagrange_witness(one, 0.5, cfg);
  // b_k is exactly 1 for every k here; "increasing" is read as
  // non-decreasing up to quadrature noise.
  bool monotone = true;
  std::ostringstream seq;
  for (std::size_t i = 0; i < w.terms.size(); ++i) {
    if (i > 0 && w.terms[i].b_k < w.terms[i - 1].b_k - 1e-9) monotone = false;
    seq << (i ? ", " : "") << w.terms[i].b_k;
  }
  const double last = w.terms.back().b_k;

  HarnessConfig single = cfg;
  single.grid = 1;  // the one scan point is the midpoint t0 = 1.5
  const FuzzyFn wave(RealExpr::parse("sin(t)"), RealExpr::parse("cos(t)"), g, {0.0, 3.0});
  const LagrangeScanRecord rec = lagrange_scan(wave, single).records.at(0);
  const double gap = std::max(std::abs(rec.recovered[0] - std::sin(1.5)), std::abs(rec.recovered[1] - std::cos(1.5)));

  std::ostringstream os;
  os << "b_k = [" << seq.str() << "], |b_16 - 1| = " << std::abs(last - 1.0) << "; recovery at t0 = " << rec.t0
     << " off by " << gap;
  report(9, "Dirac sequence and Lagrange lemma",
         w.terms.size() == 5 && monotone && std::abs(last - 1.0) < 0.05 && rec.t0 == 1.5 && gap < 0.05, os.str());
}

// ---- 10, 11 -----------------------------------------------------------------

void dbr_forward(const std::vector<Scenario>& catalog) {
  const Scenario& s = by_name(catalog, "gprime_f");
  const Scenario& p = by_name(catalog, "perturbed");
  const auto sines = sine_catalog(s.f.generator(), s.f.domain());
  const DbrForwardReport ok = dbr_forward_check(s.f, *s.g, sines);
  const DbrForwardReport bad = dbr_forward_check(p.f, *p.g, sines);
  double worst = 0.0;
  for (const auto& r : ok.records) worst = std::max(worst, r.residual);
  double detected = 0.0;
  for (const auto& r : bad.records) detected = std::max(detected, r.residual);
  std::ostringstream os;
  os << ok.records.size() << " sine test functions, worst residual " << worst << "; perturbed max residual "
     << detected;
  report(10, "du Bois-Reymond forward check", ok.passed && worst < 1e-7 && bad.violation_detected, os.str());
}

void reconstruction_gap(const std::vector<Scenario>& catalog) {
  bool ok = true;
  std::ostringstream os;
  for (const char* name : {"center_zero", "center_zero_wave"}) {
    const ReconstructionResult r = dbr_reconstruct(by_name(catalog, name).f);
    ok = ok && r.max_center_residual < 1e-9 && r.max_coordinate_residual > 0.5;
    os << name << ": center " << r.max_center_residual << ", coordinates " << r.max_coordinate_residual << "; ";
  }
  report(11, "reconstruction gap", ok, os.str());
}

// ---- 12 ---------------------------------------------------------------------

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 8192> buf{};
  while (const auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void cli_determinism(const fs::path& dir) {
  const std::string cli = LCFN_CLI_PATH;
  const std::string tri = " --gen " + (dir / "tri.json").string();
  const std::string am1 = " --gen " + (dir / "am1.json").string();
  const auto scen = [&](const char* f) { return " --scenario " + (dir / f).string(); };
  const std::vector<std::string> commands{
      "compare" + tri + " 3+2A 3-2A --format json",
      "norm" + tri + " 3+2A",
      "classify" + tri + " 1-2A",
      "cross" + tri + " 3+2A 1-A",
      "alpha-level" + tri + " 3+2A --alpha 0.5",
      "differentiate" + tri + " --r 't^3' --q 'sin(t)' --at 0.5",
      "integrate" + tri + " --r t --q t --domain 0 1",
      "critical-points" + am1 + " --r 't^2' --q t",
      "verify lagrange" + scen("s09_sine_cosine.json") + " --harness " + (dir / "harness.json").string(),
      "verify lagrange" + tri + " --r 'sin(t)' --q 'cos(t)' --domain 0 3",
      "verify dbr-forward" + scen("s01_gprime_f.json"),
      "verify dbr-reconstruct" + scen("s12_center_zero_wave.json"),
      "verify interchange" + scen("s11_two_parameter.json"),
      "verify ftc" + scen("s05_decay.json"),
      "verify ibp" + scen("s06_log_sqrt.json"),
  };
  int identical = 0;
  int failed_runs = 0;
  std::string first_diff;
  for (const auto& c : commands) {
    const Run a = run(cli + " " + c);
    const Run b = run(cli + " " + c);
    const Run serial = run("LCFN_THREADS=1 " + cli + " " + c);
    if (a.code != 0 || a.out.empty() || a.out.find("\"schema\": 1") == std::string::npos) ++failed_runs;
    if (a.out == b.out && a.out == serial.out && a.code == b.code) {
      ++identical;
    } else if (first_diff.empty()) {
      first_diff = c;
    }
  }
  std::ostringstream os;
  os << identical << "/" << commands.size() << " commands byte-identical across two runs and LCFN_THREADS=1";
  if (failed_runs) os << ", " << failed_runs << " runs without a schema-1 JSON report";
  if (!first_diff.empty()) os << ", first difference: " << first_diff;
  report(12, "CLI determinism", identical == static_cast<int>(commands.size()) && failed_runs == 0, os.str());
}

void guarded(int id, const std::string& title, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(LCFN_SCENARIO_DIR);
  std::cout.precision(3);
  std::vector<Scenario> catalog;
  try {
    catalog = load_catalog(dir);
  } catch (const std::exception& e) {
    std::cerr << "cannot load the scenario catalog: " << e.what() << '\n';
  }

  guarded(1, "order axioms", order_axioms);
  guarded(2, "positivity of squares", positivity_of_squares);
  guarded(3, "cross vs oracle", cross_dual_formula);
  guarded(4, "sign rules", sign_rules);
  guarded(5, "norm axioms", norm_axioms);
  guarded(6, "FTC and integration by parts", [&] { ftc_ibp(catalog); });
  guarded(7, "integral of a square", [&] { integral_of_square(catalog); });
  guarded(8, "optimality conditions", optimality);
  guarded(9, "Dirac sequence and Lagrange lemma", dirac_lagrange);
  guarded(10, "du Bois-Reymond forward check", [&] { dbr_forward(catalog); });
  guarded(11, "reconstruction gap", [&] { reconstruction_gap(catalog); });
  guarded(12, "CLI determinism", [&] { cli_determinism(dir); });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
  return failures;
}
