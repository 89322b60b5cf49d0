#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freemult/error.hpp"
#include "freemult/transforms.hpp"
#include "oracles.hpp"

using namespace freemult;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Complex to_c(oracle::C z) { return {double(z.real()), double(z.imag())}; }

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

Complex random_upper(std::mt19937_64& rng) {
  const double r = std::exp(6.0 * uniform01(rng) - 3.0);
  const double th = 1e-3 + (M_PI - 2e-3) * uniform01(rng);
  return std::polar(r, th);
}

}  // namespace

TEST_CASE("slit points exclude the positive ray") {
  CHECK_THROWS_AS(SlitPoint(1.0, 0.0), Error);
  CHECK_THROWS_AS(SlitPoint(0.0, 0.0), Error);
  CHECK_NOTHROW(SlitPoint(-1.0, 0.0));
  CHECK_NOTHROW(SlitPoint(1.0, -1e-300));
}

TEST_CASE("point values at z = -1") {
  Measure d = oracle::load("dirac.toml");
  Measure b = oracle::load("mu_b.toml");
  Measure z = oracle::load("mu_0.toml");
  const SlitPoint m1(-1.0, 0.0);
  CHECK(std::abs(psi(d, m1) - Complex(-0.5)) < 1e-15);
  CHECK(std::abs(eta(d, m1) - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(u_value(d, m1)) < 1e-15);
  CHECK(std::abs(u_prime(d, m1)) < 1e-15);

  CHECK(std::abs(psi(b, m1) - Complex(-7.0 / 15.0)) < 1e-15);
  CHECK(std::abs(eta(b, m1) - Complex(-7.0 / 8.0)) < 1e-15);
  const Complex u = u_value(b, m1);
  CHECK(u.imag() == 0.0);
  CHECK(u.real() == doctest::Approx(std::log(8.0 / 7.0)).epsilon(1e-14));

  CHECK(std::abs(psi(z, m1) - Complex(-1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(eta(z, m1) - Complex(-0.5)) < 1e-15);
}

TEST_CASE("limits at 0 from the left") {
  Measure b = oracle::load("mu_b.toml");
  const SlitPoint near0(-1e-9, 0.0);
  CHECK(std::abs(u_value(b, near0)) < 1e-8);
  CHECK(u_prime(b, near0).real() == doctest::Approx(-0.25).epsilon(1e-7));
  Measure a = oracle::load("mu_a.toml");
  // u(0-) = -log m1 and u'(0-) = -V / m1
  CHECK(u_value(a, near0).real() == doctest::Approx(-std::log(0.875)).epsilon(1e-7));
  CHECK(u_prime(a, near0).real() == doctest::Approx(-(1.1875 - 0.875 * 0.875) / 0.875).epsilon(1e-7));
}

TEST_CASE("psi matches brute force for atoms and pieces") {
  std::mt19937_64 rng(7);
  for (const char* name : {"mu_b.toml", "mu_a.toml", "mu_c.toml", "mixed.toml", "uniform.toml"}) {
    Measure m = oracle::load(name);
    for (int i = 0; i < 40; ++i) {
      Complex z = random_upper(rng);
      if (i % 4 == 0) z = std::conj(z);
      const Complex ref = to_c(oracle::psi_brute(m, oracle::C(z.real(), z.imag())));
      CHECK(rel(psi(m, SlitPoint(z)), ref) < 1e-10);
    }
  }
}

TEST_CASE("Cauchy transform values and the eta identity") {
  Measure b = oracle::load("mu_b.toml");
  CHECK(std::abs(cauchy(b, 2.0) - Complex(4.0 / 3.0)) < 1e-15);
  const Complex gi = cauchy(b, Complex(0, 1));
  CHECK(gi.imag() < 0.0);
  CHECK(std::abs(cauchy(b, Complex(0, -1)) - std::conj(gi)) < 1e-15);
  CHECK_THROWS_AS(cauchy(b, 0.5), Error);

  std::mt19937_64 rng(11);
  for (const char* name : {"mu_b.toml", "mu_a.toml", "mu_0.toml", "mu_c.toml", "mixed.toml", "uniform.toml"}) {
    Measure m = oracle::load(name);
    for (int i = 0; i < 100; ++i) {
      const Complex z = random_upper(rng);
      const Complex lhs = cauchy(m, 1.0 / z);
      const Complex rhs = z / (1.0 - eta(m, SlitPoint(z)));
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("eta preserves the upper half-plane and Im u <= 0") {
  std::mt19937_64 rng(3);
  for (const char* name : {"mu_b.toml", "mu_a.toml", "mu_0.toml", "mu_c.toml", "mixed.toml"}) {
    Measure m = oracle::load(name);
    for (int i = 0; i < 200; ++i) {
      const Complex z = random_upper(rng);
      const Complex e = eta(m, SlitPoint(z));
      CHECK(e.imag() > 0.0);
      const Complex u = u_value(m, SlitPoint(z));
      CHECK(u.imag() <= 0.0);
      CHECK(u.imag() > -M_PI);
      const Complex ul = u_value(m, SlitPoint(std::conj(z)));
      CHECK(std::abs(ul - std::conj(u)) < 1e-12 * std::max(1.0, std::abs(u)));
    }
  }
}

TEST_CASE("u is real on the negative axis") {
  Measure c = oracle::load("mu_c.toml");
  for (double x : {-1e-6, -0.3, -1.0, -7.0, -1e4}) CHECK(u_value(c, SlitPoint(x, 0.0)).imag() == 0.0);
}

TEST_CASE("u_prime agrees with central differences") {
  std::mt19937_64 rng(5);
  for (const char* name : {"mu_b.toml", "mixed.toml"}) {
    Measure m = oracle::load(name);
    for (int i = 0; i < 50; ++i) {
      const Complex z = random_upper(rng);
      const double h = 1e-5 * std::abs(z);
      const Complex fd =
          (u_value(m, SlitPoint(z + h)) - u_value(m, SlitPoint(z - h))) / (2.0 * h);
      CHECK(rel(u_prime(m, SlitPoint(z)), fd) < 1e-6);
    }
  }
  Measure b = oracle::load("mu_b.toml");
  const Complex fd = (u_value(b, SlitPoint(-1.0 + 1e-5, 0.0)) - u_value(b, SlitPoint(-1.0 - 1e-5, 0.0))) / 2e-5;
  CHECK(rel(u_prime(b, SlitPoint(-1.0, 0.0)), fd) < 1e-6);
}

TEST_CASE("boundary values on the positive ray") {
  Measure b = oracle::load("mu_b.toml");
  // off the support of rho, u is real and g = -r u'
  for (double r : {0.3, 0.9, 2.0 / 3.0, 1.5, 2.0, 5.0}) {
    const Complex u = upper::u(b, r);
    CHECK(std::abs(u.imag()) < 1e-14);
    CHECK((-r * upper::u_prime(b, r)).real() == doctest::Approx(oracle::mu_b::g_radial(r)).epsilon(1e-10));
  }
  // inside it Im u(r + i0) = -pi * integral of (1 + s^2) / (1 + s^2) ds below r
  for (double r : {1.05, 1.2, 1.3}) CHECK(upper::u(b, r).imag() == doctest::Approx(-M_PI).epsilon(1e-12));
  const Complex near = upper::u(b, Complex(1.2, 1e-9));
  CHECK(near.imag() == doctest::Approx(-M_PI).epsilon(1e-6));
}

TEST_CASE("a constant") {
  CHECK(a_constant(oracle::load("mu_b.toml")) == doctest::Approx(oracle::mu_b::a_constant()).epsilon(1e-13));
  CHECK(a_constant(oracle::load("dirac.toml")) == doctest::Approx(0.0));
}
