#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wgate/boundary.hpp"
#include "wgate/degree.hpp"
#include "wgate/dirichlet.hpp"
#include "wgate/error.hpp"
#include "support/domains.hpp"
#include "support/rationals.hpp"

using namespace wgate;

TEST_CASE("arg_change recovers integer windings on circles") {
  Contour unit{Circle{Cplx(0, 0), 1.0}, +1};
  double w3 = arg_change(unit, [](Cplx z) { return z * z * z; }, 0.0);
  CHECK(w3 == doctest::Approx(3 * kTwoPi).epsilon(1e-9));

  Contour half{Circle{Cplx(0, 0), 0.5}, +1};
  double winv = arg_change(half, [](Cplx z) { return Cplx(1, 0) / z; }, 0.0);
  CHECK(winv == doctest::Approx(-kTwoPi).epsilon(1e-9));

  Contour neg{Circle{Cplx(0, 0), 1.0}, -1};
  double wneg = arg_change(neg, [](Cplx z) { return z; }, 0.0);
  CHECK(wneg == doctest::Approx(-kTwoPi).epsilon(1e-9));
}

TEST_CASE("winding of z^n equals n for n in [-5, 5]") {
  Contour unit{Circle{Cplx(0, 0), 1.0}, +1};
  for (int n = -5; n <= 5; ++n) {
    auto psi = [n](Cplx z) {
      Cplx acc(1, 0);
      for (int i = 0; i < std::abs(n); ++i) acc = n > 0 ? acc * z : acc / z;
      return acc;
    };
    double w = arg_change(unit, psi, 0.0);
    CHECK(std::llround(w / kTwoPi) == n);
  }
}

TEST_CASE("floors catch samplers that vanish on the contour") {
  Contour unit{Circle{Cplx(0, 0), 1.0}, +1};
  CHECK_THROWS_AS(arg_change(unit, [](Cplx) { return Cplx(0.001, 0); }, 0.01), ZeroOnContour);
  CHECK_THROWS_AS(arg_change(unit, [](Cplx) { return Cplx(0, 0); }, 0.0), ZeroOnContour);
  // a genuine zero on the contour dodges the initial grid but not refinement
  CHECK_THROWS_AS(arg_change(unit, [](Cplx z) { return z - Cplx(std::cos(0.001), std::sin(0.001)); }, 1e-4),
                  ZeroOnContour);
}

TEST_CASE("refinement that never settles reports NonConvergent") {
  Contour unit{Circle{Cplx(0, 0), 1.0}, +1};
  // modulus sits above the floor but inside the 4x guard band everywhere,
  // so every midpoint triggers another bisection until the depth cap
  CHECK_THROWS_AS(arg_change(unit, [](Cplx) { return Cplx(0.03, 0); }, 0.01), NonConvergent);
}

TEST_CASE("degree_near_boundary stabilizes over the schedule") {
  SUBCASE("identity on the annulus cancels to degree 0") {
    CircleDomain ann = testing::annulus(0.3);
    DegreeResult r = degree_near_boundary(ann, [](Cplx z) { return z; });
    CHECK(r.degree == 0);
    CHECK(r.certificate.systems_sampled >= 3);
    CHECK(r.certificate.delta > 0);
  }
  SUBCASE("one enclosed zero on the disc") {
    CircleDomain disc = testing::unit_disc();
    DegreeResult r = degree_near_boundary(disc, [](Cplx z) { return z - Cplx(0.2, 0); });
    CHECK(r.degree == 1);
  }
  SUBCASE("interior pole gives degree -1 on the disc") {
    CircleDomain disc = testing::unit_disc();
    DegreeResult r = degree_near_boundary(disc, [](Cplx z) { return Cplx(1, 0) / z; });
    CHECK(r.degree == -1);
  }
  SUBCASE("raw windings are quantized") {
    CircleDomain disc = testing::unit_disc();
    DegreeResult r = degree_near_boundary(disc, [](Cplx z) { return z * z + Cplx(0.1, 0.2); });
    for (auto& [eps, turns] : r.stabilization)
      CHECK(std::abs(turns - std::llround(turns)) < 1e-6);
  }
}

TEST_CASE("zero_count is the argument-principle oracle") {
  CircleDomain disc = testing::unit_disc();
  CHECK(zero_count([](Cplx z) { return z * z - Cplx(0.25, 0); }, disc) == 2);
  CHECK(zero_count([](Cplx z) { return (z - Cplx(0.5, 0)) / (z + Cplx(2, 0)); }, disc) == 1);
  CircleDomain ann = testing::annulus(0.3);
  CHECK(zero_count([](Cplx z) { return z; }, ann) == 0);
}

TEST_CASE("degree matches the analytic count for random rationals") {
  for (unsigned long seed : {11ul, 12ul}) {
    std::mt19937_64 rng(seed);
    for (const CircleDomain& domain : {testing::unit_disc(), testing::annulus(0.3)}) {
      for (int trial = 0; trial < 10; ++trial) {
        auto fn = testing::random_rational(domain, rng);
        DegreeResult r = degree_near_boundary(domain, [&](Cplx z) { return fn(z); });
        CHECK(r.degree == fn.analytic_degree(domain));
      }
    }
  }
}

TEST_CASE("multiplicativity and conjugation hold exactly") {
  std::mt19937_64 rng(2024);
  CircleDomain domain = testing::annulus(0.3);
  for (int trial = 0; trial < 20; ++trial) {
    auto f1 = testing::random_rational(domain, rng);
    auto f2 = testing::random_rational(domain, rng);
    int d1 = degree_near_boundary(domain, [&](Cplx z) { return f1(z); }).degree;
    int d2 = degree_near_boundary(domain, [&](Cplx z) { return f2(z); }).degree;
    int d12 = degree_near_boundary(domain, [&](Cplx z) { return f1(z) * f2(z); }).degree;
    CHECK(d12 == d1 + d2);
    int dc = degree_near_boundary(domain, [&](Cplx z) { return std::conj(f1(z)); }).degree;
    CHECK(dc == -d1);
  }
}

TEST_CASE("homotopy invariance under small perturbations") {
  std::mt19937_64 rng(515);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CircleDomain domain = testing::annulus(0.3);
  for (int trial = 0; trial < 8; ++trial) {
    auto fn = testing::random_rational(domain, rng);
    DegreeResult base = degree_near_boundary(domain, [&](Cplx z) { return fn(z); });

    // random affine eta with sup |eta| < min_modulus / 2 on the closure
    Cplx c0(unit(rng) - 0.5, unit(rng) - 0.5);
    Cplx c1(unit(rng) - 0.5, unit(rng) - 0.5);
    double sup = std::abs(c0) + std::abs(c1) * 1.0;
    double target = 0.45 * base.min_modulus;
    Cplx s0 = c0 * (target / sup), s1 = c1 * (target / sup);
    auto eta = [&](Cplx z) { return s0 + s1 * z; };

    for (double t : {0.25, 0.5, 0.75, 1.0}) {
      DegreeResult shifted =
          degree_near_boundary(domain, [&](Cplx z) { return fn(z) + t * eta(z); });
      CHECK(shifted.degree == base.degree);
    }
  }
}

TEST_CASE("degree is independent of the continuous extension") {
  CircleDomain disc = testing::unit_disc();
  auto f = BoundaryFunction::uniform_expression(disc, "conj(z)");
  HarmonicField harm = canonical_extension(f);
  auto psi1 = [&](Cplx z) { return harm.evaluate_unchecked(z); };
  // second extension: harmonic plus a large interior bump whose support
  // reaches the coarsest contour system but not the boundary
  auto bump = [](Cplx z) {
    double d = std::abs(z - Cplx(0.45, 0));
    return Cplx(3.0 * std::max(0.0, 1.0 - d / 0.4), 0);
  };
  auto psi2 = [&](Cplx z) { return psi1(z) + bump(z); };

  DegreeResult d1 = degree_near_boundary(disc, psi1);
  DegreeResult d2 = degree_near_boundary(disc, psi2);
  CHECK(d1.degree == -1);
  CHECK(d2.degree == d1.degree);
}

TEST_CASE("unstable samplers are reported") {
  CircleDomain disc = testing::unit_disc();
  // zeros accumulate toward the boundary: windings keep changing
  auto psi = [](Cplx z) {
    Cplx acc(1, 0);
    for (int k = 2; k <= 12; ++k) {
      double r = 1.0 - std::pow(2.0, -k);
      acc *= (z - Cplx(r, 0)) / (Cplx(1.5, 0));
    }
    return acc;
  };
  CHECK_THROWS_AS(degree_near_boundary(disc, psi), Error);
}

TEST_CASE("trace export reports cumulative phase") {
  Contour unit{Circle{Cplx(0, 0), 1.0}, +1};
  auto rows = trace_contour(unit, [](Cplx z) { return z * z; }, 256);
  REQUIRE(rows.size() == 257);
  CHECK(rows.front().phase == doctest::Approx(0.0));
  CHECK(rows.back().phase == doctest::Approx(2 * kTwoPi).epsilon(1e-9));
}
