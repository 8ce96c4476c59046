// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest or directly from the build tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wgate/boundary.hpp"
#include "wgate/degree.hpp"
#include "wgate/dirichlet.hpp"
#include "wgate/error.hpp"
#include "wgate/extend.hpp"
#include "wgate/periods.hpp"
#include "wgate/slit_puncture.hpp"
#include "wgate/witness.hpp"
#include "support/domains.hpp"
#include "support/fd_laplace.hpp"
#include "support/polyroots.hpp"
#include "support/rationals.hpp"

using namespace wgate;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Dirichlet oracle: annulus harmonic measure vs log|z|/log rho, with the
//    closed form itself validated against the finite-difference polar solver.
// ---------------------------------------------------------------------------
void criterion_1() {
  const double rho = 0.3;
  CircleDomain ann = testing::annulus(rho);

  auto t0 = std::chrono::steady_clock::now();
  DirichletSolver solver(ann, SolverConfig{24, 4});
  const HarmonicField& w = solver.harmonic_measure(0);
  double solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double sup_err = 0;
  auto probes = ann.interior_probes(1000, 0.01);
  for (const Cplx& z : probes) {
    double closed = std::log(std::abs(z)) / std::log(rho);
    sup_err = std::max(sup_err, std::abs(w.evaluate(z) - Cplx(closed, 0)));
  }

  auto fd = testing::fd_solve_annulus(rho, [](double) { return 1.0; },
                                      [](double) { return 0.0; });
  double fd_err = 0;
  for (int i = 1; i < fd.Ns; ++i) {
    double closed = std::log(fd.radius_of(i)) / std::log(rho);
    for (int j = 0; j < fd.Ntheta; j += 5)
      fd_err = std::max(fd_err, std::abs(fd.node(i, j) - closed));
  }

  bool ok = sup_err <= 1e-6 && fd_err <= 1e-4 && solve_seconds < 1.0;
  report(1, ok,
         "harmonic measure sup error " + fmt(sup_err) + " (<=1e-6), fd cross-check " +
             fmt(fd_err) + " (<=1e-4), solve " + fmt(solve_seconds) + "s (<1s)");
}

// ---------------------------------------------------------------------------
// 2. Period matrix closed forms, symmetry, and nonsingularity.
// ---------------------------------------------------------------------------
void criterion_2() {
  bool ok = true;
  std::string detail;
  for (double rho : {0.3, std::exp(-1.0), 0.7}) {
    PeriodMatrix pm = period_matrix(testing::annulus(rho));
    double expected = 1.0 / std::log(rho);
    double rel = std::abs(pm.alpha[0][0] - expected) / std::abs(expected);
    ok = ok && rel <= 1e-8 && pm.smallest_singular_value > 1e-10 * pm.largest_singular_value;
    detail += "rho=" + fmt(rho) + " rel_err=" + fmt(rel) + " ";
  }
  PeriodMatrix two = period_matrix(testing::two_holes());
  double max_abs = 0;
  for (const auto& row : two.alpha)
    for (double v : row) max_abs = std::max(max_abs, std::abs(v));
  double asym = std::abs(two.alpha[0][1] - two.alpha[1][0]);
  ok = ok && asym <= 1e-8 * max_abs &&
       two.smallest_singular_value > 1e-10 * two.largest_singular_value;
  report(2, ok, detail + "two-hole |a01-a10|=" + fmt(asym) + " (<=1e-8*max)");
}

// ---------------------------------------------------------------------------
// 3. Degree axioms: powers, multiplicativity, conjugation, homotopy.
// ---------------------------------------------------------------------------
void criterion_3() {
  bool ok = true;

  Contour unit{Circle{Cplx(0, 0), 1.0}, +1};
  for (int n = -5; n <= 5; ++n) {
    auto psi = [n](Cplx z) {
      Cplx acc(1, 0);
      for (int i = 0; i < std::abs(n); ++i) acc = n > 0 ? acc * z : acc / z;
      return acc;
    };
    ok = ok && std::llround(arg_change(unit, psi, 0.0) / kTwoPi) == n;
  }

  int trials_done = 0;
  std::mt19937_64 rng(20260810);
  for (const CircleDomain& domain : {testing::unit_disc(), testing::annulus(0.3)}) {
    for (int t = 0; t < 50; ++t) {
      auto f1 = testing::random_rational(domain, rng);
      auto f2 = testing::random_rational(domain, rng);
      int d1 = degree_near_boundary(domain, [&](Cplx z) { return f1(z); }).degree;
      int d2 = degree_near_boundary(domain, [&](Cplx z) { return f2(z); }).degree;
      int d12 = degree_near_boundary(domain, [&](Cplx z) { return f1(z) * f2(z); }).degree;
      int dc = degree_near_boundary(domain, [&](Cplx z) { return std::conj(f1(z)); }).degree;
      ok = ok && d12 == d1 + d2 && dc == -d1 && d1 == f1.analytic_degree(domain);
      trials_done += 2;
    }
  }

  std::uniform_real_distribution<double> unit_dist(0.0, 1.0);
  CircleDomain ann = testing::annulus(0.3);
  for (int t = 0; t < 10; ++t) {
    auto fn = testing::random_rational(ann, rng);
    DegreeResult base = degree_near_boundary(ann, [&](Cplx z) { return fn(z); });
    Cplx c0(unit_dist(rng) - 0.5, unit_dist(rng) - 0.5);
    Cplx c1(unit_dist(rng) - 0.5, unit_dist(rng) - 0.5);
    double sup = std::abs(c0) + std::abs(c1);
    Cplx s0 = c0 * (0.45 * base.min_modulus / sup);
    Cplx s1 = c1 * (0.45 * base.min_modulus / sup);
    for (double t_h : {0.25, 0.5, 0.75, 1.0}) {
      int d = degree_near_boundary(ann, [&](Cplx z) { return fn(z) + t_h * (s0 + s1 * z); })
                  .degree;
      ok = ok && d == base.degree;
    }
  }

  report(3, ok,
         "winding powers n in [-5,5], " + std::to_string(trials_done) +
             " multiplicativity/conjugation trials, homotopy suite: exact integer equality");
}

// ---------------------------------------------------------------------------
// 4. Only-if direction: degree(f~ + h) == zero_count(g + h) >= 0 over 50
//    seeded certified pairs on the disc and the annulus.
// ---------------------------------------------------------------------------
void criterion_4() {
  auto fmt_c = [](Cplx c) {
    return "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
  };
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int pairs = 0;
  bool ok = true;
  for (const CircleDomain& domain : {testing::unit_disc(), testing::annulus(0.3)}) {
    int domain_pairs = 0;
    unsigned long trial_seed = 9000;
    while (domain_pairs < 25) {
      // extendible rational data: polynomial plus a pole outside the closure
      // (and inside the hole on the annulus)
      Cplx a0(unit(rng) - 0.5, unit(rng) - 0.5);
      Cplx a1(unit(rng) - 0.5, unit(rng) - 0.5);
      Cplx c(0.5 + unit(rng), unit(rng) - 0.5);
      Cplx p(2.5 + unit(rng), unit(rng));
      std::string text = fmt_c(a0) + " + " + fmt_c(a1) + "*z + " + fmt_c(c) + "/(z - " +
                         fmt_c(p) + ")";
      if (domain.num_holes() > 0 && unit(rng) < 0.5) text += " + 0.4/z";
      auto f = BoundaryFunction::uniform_expression(domain, text);

      auto trials = make_random_trials(domain, trial_seed++, 4);
      auto results = only_if_check(f, trials);
      for (const auto& r : results) {
        if (!r.certified || domain_pairs >= 25) continue;
        ++domain_pairs;
        ++pairs;
        if (r.degree != r.zeros || r.degree < 0) ok = false;
      }
    }
  }
  report(4, ok && pairs >= 50,
         std::to_string(pairs) + " certified (f, h) pairs: degree == zero_count >= 0 exactly");
}

// ---------------------------------------------------------------------------
// 5. Witness certificates on the disc and the annulus.
// ---------------------------------------------------------------------------
void criterion_5() {
  CircleDomain disc = testing::unit_disc();
  auto f_disc = BoundaryFunction::uniform_expression(disc, "conj(z)");
  Witness disc_witness = build_witness(f_disc, Cplx(0, 0), 0.0);
  double ftilde_err = 0;
  for (Cplx z : {Cplx(0.9, 0), Cplx(0, -0.7), Cplx(-0.5, 0.5)})
    ftilde_err = std::max(ftilde_err, std::abs(disc_witness.f_tilde(z) - Cplx(1, 0) / z));
  bool disc_ok = disc_witness.degree.degree == -1 && disc_witness.h.coeff_norm() < 1e-10 &&
                 ftilde_err < 1e-9;

  CircleDomain ann = testing::annulus(0.3);
  auto f_ann = BoundaryFunction::uniform_expression(ann, "conj(z)");
  auto [a, gamma] = find_good_a_gamma(f_ann);
  Witness ann_witness = build_witness(f_ann, a, gamma);
  bool ann_ok = ann_witness.degree.degree == -1 && ann_witness.re_w_residual <= 1e-6 &&
                verify_witness(ann_witness, ann).degree == -1;

  report(5, disc_ok && ann_ok,
         "disc: f~ = 1/z, |h| = " + fmt(disc_witness.h.coeff_norm()) +
             ", degree -1; annulus: degree -1, Re W residual " +
             fmt(ann_witness.re_w_residual) + " (<=1e-6)");
}

// ---------------------------------------------------------------------------
// 6. Extendibility classifier: 20 + 20 seeded cases, zero misclassifications.
// ---------------------------------------------------------------------------
void criterion_6() {
  auto fmt_c = [](Cplx c) {
    return "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
  };
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int extendible_right = 0, contaminated_right = 0;
  double worst_extraction = 0, worst_residual = 1e300;
  for (int i = 0; i < 20; ++i) {
    bool on_annulus = i % 2 == 0;
    CircleDomain domain = on_annulus ? testing::annulus(0.3) : testing::unit_disc();

    Cplx a0(unit(rng) - 0.5, unit(rng) - 0.5);
    Cplx a1(unit(rng) - 0.5, unit(rng) - 0.5);
    Cplx c(0.5 + unit(rng), unit(rng) - 0.5);
    Cplx p(2.2 + unit(rng), unit(rng) - 0.5);
    std::string text =
        fmt_c(a0) + " + " + fmt_c(a1) + "*z + " + fmt_c(c) + "/(z - " + fmt_c(p) + ")";
    if (on_annulus) text += " + " + fmt_c(Cplx(0.2 + 0.5 * unit(rng), 0)) + "/z";

    auto f = BoundaryFunction::uniform_expression(domain, text);
    ExtendibilityReport r = test_extendibility(f);
    if (r.verdict == Verdict::Extendible &&
        r.extension_boundary_error <= 10.0 * std::max(r.solver_residual, 1e-12)) {
      ++extendible_right;
      worst_extraction = std::max(worst_extraction, r.extension_boundary_error);
    }

    int m = 1 + static_cast<int>(unit(rng) * 3);
    double lambda = 0.3 + 0.7 * unit(rng);
    std::string bad_text = text + " + " + fmt_c(Cplx(lambda, 0)) + "*conj(z)^" +
                           std::to_string(m);
    auto g = BoundaryFunction::uniform_expression(domain, bad_text);
    ExtendibilityReport rg = test_extendibility(g);
    if (rg.verdict == Verdict::NotExtendible && rg.antiholomorphic_residual >= 0.1) {
      ++contaminated_right;
      worst_residual = std::min(worst_residual, rg.antiholomorphic_residual);
    }
  }
  bool ok = extendible_right == 20 && contaminated_right == 20;
  report(6, ok,
         std::to_string(extendible_right) + "/20 extendible (worst extraction error " +
             fmt(worst_extraction) + "), " + std::to_string(contaminated_right) +
             "/20 contaminated (smallest residual " + fmt(worst_residual) + " >= 0.1)");
}

// ---------------------------------------------------------------------------
// 7. Slit-disc reproduction.
// ---------------------------------------------------------------------------
void criterion_7() {
  bool ok = slit_degree({}, 0.008) == 1;

  auto family = make_slit_family(31337, 20);
  SweepReport sweep = slit_sweep(family, 0.004);
  ok = ok && sweep.certified_count >= 20 && sweep.all_nonnegative;
  int oracle_matches = 0;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (sweep.entries[i].certified &&
        sweep.entries[i].degree == testing::unit_disc_root_count(family[i]))
      ++oracle_matches;
  ok = ok && oracle_matches == static_cast<int>(family.size());
  report(7, ok,
         "slit_degree(h=0) = 1; sweep " + std::to_string(sweep.certified_count) +
             "/20 certified, all >= 0, " + std::to_string(oracle_matches) +
             "/20 equal the root-count oracle");
}

// ---------------------------------------------------------------------------
// 8. Punctured-disc reproduction.
// ---------------------------------------------------------------------------
void criterion_8() {
  auto run = [](const std::string& text) {
    return punctured_degree(PuncturedDiscCase{parse_laurent(text), 0.95, 0.01});
  };
  // punctured_degree itself asserts direct == homotopy-replaced windings
  bool named_ok =
      run("0.7") == 0 && run("1/z") == 0 && run("1/z^2") == 0 && run("z - 0.5") == 1;

  auto family = make_puncture_family(777, 20);
  SweepReport sweep = puncture_sweep(family, 0.95, 0.01);
  bool ok = named_ok && sweep.certified_count >= 20 && sweep.all_nonnegative;
  report(8, ok,
         "named degrees {0,0,0,1} with direct == homotopy-replaced; sweep " +
             std::to_string(sweep.certified_count) + "/20 certified, all >= 0");
}

// ---------------------------------------------------------------------------
// 9. CLI determinism: identical seeds give byte-identical reports.
// ---------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_9() {
  fs::path dir = fs::temp_directory_path() / "wgate_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path dom = dir / "annulus.json";
  {
    std::ofstream out(dom);
    out << R"({"outer": {"center": [0, 0], "radius": 1}, "holes": [{"center": [0, 0], "radius": 0.3}]})";
  }
  auto run = [&](const std::string& args, const std::string& sub) {
    std::string cmd = std::string(WGATE_CLI_PATH) + " " + args + " --out " +
                      (dir / sub).string() + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  bool ok = true;
  ok = ok && run("example puncture --seed 42", "a") == 0;
  ok = ok && run("example puncture --seed 42", "b") == 0;
  ok = ok && slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json");
  ok = ok && slurp(dir / "a" / "sweep.json") == slurp(dir / "b" / "sweep.json");
  ok = ok && !slurp(dir / "a" / "report.json").empty();

  ok = ok && run("test-extend --domain " + dom.string() + " --f \"conj(z)\"", "c") == 0;
  ok = ok && run("test-extend --domain " + dom.string() + " --f \"conj(z)\"", "d") == 0;
  ok = ok && slurp(dir / "c" / "report.json") == slurp(dir / "d" / "report.json");
  report(9, ok, "repeated seeded CLI runs emit byte-identical report.json and sweep.json");
}

} // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/9 criteria passed in %.1fs\n", 9 - failures, total);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
