#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "freemult/error.hpp"
#include "freemult/semigroup.hpp"
#include "oracles.hpp"

using namespace freemult;

TEST_CASE("Phi_t") {
  Measure b = oracle::load("mu_b.toml");
  const Complex z(0.3, 0.7);
  CHECK(phi_t(b, 1.0, SlitPoint(z)) == z);
  CHECK(std::abs(phi_t(b, 2.0, SlitPoint(-1.0, 0.0)) - Complex(-8.0 / 7.0)) < 1e-14);
  Measure d = oracle::load("dirac.toml");
  CHECK(std::abs(phi_t(d, 3.0, SlitPoint(z)) - z) < 1e-15);
  CHECK_THROWS_AS(phi_t(b, 0.5, SlitPoint(z)), Error);
}

TEST_CASE("atoms of powers") {
  Measure a = oracle::load("mu_a.toml");
  auto atoms = atoms_of_power(a, 2.0);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].position.rational() == Rational(1, 4));
  CHECK(atoms[0].mass.rational() == Rational(1, 2));
  // threshold p = 3/4 > (t - 1)/t holds for t < 4 only
  CHECK(atoms_of_power(a, 3.9).size() == 1);
  CHECK(atoms_of_power(a, Scalar::parse("4")).empty());
  CHECK(atoms_of_power(oracle::load("mu_b.toml"), 2.0).empty());
  CHECK(atoms_of_power(oracle::load("mu_b.toml"), 1.9).size() == 2);
  for (double t : {1.01, 1.5, 2.0, 5.0, 100.0}) {
    auto z = atoms_of_power(oracle::load("mu_0.toml"), t);
    // the atom at 2 survives only while 1/2 > (t - 1)/t
    REQUIRE(z.size() == (t < 2.0 ? 2u : 1u));
    CHECK(z[0].position.value() == 0.0);
    CHECK(z[0].mass.rational() == Rational(1, 2));
  }
}

TEST_CASE("h_t at alpha_t is the real-axis value") {
  Measure b = oracle::load("mu_b.toml");
  const auto v = v_plus(b, 2.0);
  const double alpha = v.front().lo;
  const double expected = alpha * std::exp(upper::u(b, alpha).real());
  CHECK(h_t(b, 2.0, alpha) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(norm_of_power(b, 2.0) == doctest::Approx(1.0 / expected).epsilon(1e-12));
  // h is increasing along the component
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double r = v[0].lo + (v[0].hi - v[0].lo) * i / 100.0;
    const double h = h_t(b, 2.0, r);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("snapshot normalization and moments") {
  for (const char* name : {"mu_b.toml", "mu_a.toml"}) {
    Measure m = oracle::load(name);
    const double m1 = moment(m, 1).value;
    for (double t : {1.5, 2.0, 5.0}) {
      const auto start = std::chrono::steady_clock::now();
      const SemigroupSnapshot s = snapshot(m, t);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      CAPTURE(name);
      CAPTURE(t);
      CHECK(secs < 10.0);
      CHECK(std::abs(s.total_mass() - 1.0) < 1e-4);
      CHECK(s.warnings.empty());
      CHECK(s.max_realness_residual < 1e-8);
      CHECK(s.moment(1) == doctest::Approx(std::pow(m1, t)).epsilon(1e-3));
      for (const DensityPoint& p : s.density) CHECK(p.f >= 0.0);
      const auto& parts = s.support.parts();
      for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i - 1].hi < parts[i].lo);
    }
  }
  // variance of mu_B^t is t/4 for real t
  Measure b = oracle::load("mu_b.toml");
  for (double t : {1.5, 2.5, 7.0}) CHECK(snapshot(b, t).moment(2) == doctest::Approx(1.0 + t / 4.0).epsilon(1e-6));
}

TEST_CASE("norm includes atoms") {
  Measure a = oracle::load("mu_a.toml");
  const SemigroupSnapshot s = snapshot(a, 2.0);
  CHECK(norm_of_power(a, 2.0) == doctest::Approx(s.support.max()).epsilon(1e-12));
  CHECK(norm_of_power(a, 2.0) > 0.25);
}

TEST_CASE("density rejects the point mass") {
  CHECK_THROWS_AS(snapshot(oracle::load("dirac.toml"), 2.0), Error);
}
