#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "freemult/asymptotics.hpp"
#include "freemult/error.hpp"
#include "freemult/semigroup.hpp"
#include "oracles.hpp"

using namespace freemult;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("scan record of mu_B at t = 2") {
  Measure b = oracle::load("mu_b.toml");
  ScanRecord r = scan_record(b, 2.0);
  CHECK(r.components == 1);
  CHECK(r.alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(r.beta == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.norm() == doctest::Approx(norm_of_power(b, 2.0)).epsilon(1e-12));
  CHECK_FALSE(r.norm_from_atom);
  CHECK(r.support.parts().size() == 1);
  CHECK(r.a() == doctest::Approx(r.support.min()).epsilon(1e-12));
  CHECK(r.b() == doctest::Approx(r.support.max()).epsilon(1e-12));
  // the second moment 3/2 of mu_B^2 forces support beyond sqrt(3/2)
  CHECK(r.b() > std::sqrt(1.5));
}

TEST_CASE("atoms enter the support") {
  Measure a = oracle::load("mu_a.toml");
  ScanRecord r = scan_record(a, 2.0);
  CHECK(r.support.distance(0.25) == 0.0);
  CHECK(r.a() <= 0.25);
  Measure z = oracle::load("mu_0.toml");
  ScanRecord rz = scan_record(z, 5.0);
  CHECK(rz.support.min() == 0.0);
  CHECK(std::isinf(rz.log_a));
}

TEST_CASE("norm growth for mu_B") {
  Measure b = oracle::load("mu_b.toml");
  ScanResult r = norm_growth_scan(b);
  REQUIRE(r.norm_limit);
  CHECK(*r.norm_limit == doctest::Approx(std::numbers::e / 4).epsilon(1e-14));
  CHECK(*r.t_alpha_limit == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r.notes.empty());
  const auto err = r.norm_error();
  CHECK(ScanResult::decreasing(err));
  CHECK(ScanResult::decreasing(r.t_alpha_error()));
  const std::size_t at400 = 4;
  REQUIRE(r.t_grid[at400] == 400.0);
  CHECK(err[at400] < 0.03 * *r.norm_limit);
  CHECK(err.back() < 0.02 * *r.norm_limit);
  CHECK(r.t_alpha_error().back() < 0.02 * 4.0);
  CHECK(r.components_nonincreasing);
  CHECK(r.alpha_nonincreasing);
  CHECK(r.hausdorff.size() == r.t_grid.size() - 1);
}

TEST_CASE("norm growth rescales or rejects other means") {
  Measure a = oracle::load("mu_a.toml");  // m1 = 7/8
  ScanResult r = norm_growth_scan(a, {50, 100});
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes.front().find("rescaled") != std::string::npos);
  const double v = (0.75 * 0.25 + 0.25 * 4.0) / (0.875 * 0.875) - 1.0;
  CHECK(*r.norm_limit == doctest::Approx(std::numbers::e * v).epsilon(1e-12));
  CHECK(code_of([&] { norm_growth_scan(a, {50}, false); }) == ErrorCode::HypothesisViolated);
  CHECK(code_of([&] { norm_growth_scan(oracle::load("dirac.toml")); }) == ErrorCode::DiracMeasure);
}

TEST_CASE("mu_0: t alpha_t = 1 exactly and the norm ratio approaches e") {
  ScanResult r = norm_growth_scan(oracle::load("mu_0.toml"), {25, 100, 400});
  for (double ta : r.t_alpha) CHECK(ta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ScanResult::decreasing(r.norm_error()));
  CHECK(r.norm_error().back() < 0.01);
}

TEST_CASE("endpoint exponents for mu_B") {
  ScanResult r = endpoint_exponents(oracle::load("mu_b.toml"));
  CHECK(*r.b_root_limit == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*r.a_root_limit == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(ScanResult::decreasing(r.a_root_error()));
  CHECK(ScanResult::decreasing(r.b_root_error()));
  CHECK(r.b_root_error()[4] < 0.02);
  CHECK(r.a_root_error()[4] < 0.02);
  CHECK(r.b_root_error().back() < 0.02);
  CHECK(r.a_root_error().back() < 0.02);
  CHECK(code_of([&] { endpoint_exponents(oracle::load("mu_0.toml")); }) == ErrorCode::HypothesisViolated);
}

TEST_CASE("supports move continuously in t") {
  Measure b = oracle::load("mu_b.toml");
  ContinuityResult c = continuity_scan(b, 2.0, {0.1, 0.01, 0.001, 0.0});
  CHECK(c.distances.back() == 0.0);
  CHECK(c.shrinking);
  CHECK(c.distances[2] < 1e-2);
  CHECK(c.distances[0] > c.distances[1]);
  CHECK(c.distances[1] > c.distances[2]);

  // mu_a loses its atom at 1/2 when t crosses 4.
  Measure a = oracle::load("mu_a.toml");
  CHECK(atoms_of_power(a, 3.99).size() == 1);
  CHECK(atoms_of_power(a, 4.01).empty());
  ContinuityResult ca = continuity_scan(a, 4.0, {-0.1, 0.1, -0.01, 0.01, -0.001, 0.001});
  CHECK(ca.distances[4] < ca.distances[2]);
  CHECK(ca.distances[5] < ca.distances[3]);
  CHECK(ca.distances[4] < 1e-3);
  CHECK(ca.distances[5] < 1e-3);

  CHECK(code_of([&] { continuity_scan(b, 1.05, {-0.1}); }) == ErrorCode::TOutOfRange);
}

TEST_CASE("component counts for the two-cluster measure") {
  Measure c = oracle::load("mu_c.toml");
  ThresholdResult r = component_threshold(c, {1.1, 1.5, 2, 4, 8, 16});
  CHECK(r.counts.front() >= 2);
  CHECK(r.nonincreasing);
  CHECK(r.counts.back() == 1);
  CHECK(r.t > 1.1);

  ThresholdResult b = component_threshold(oracle::load("mu_b.toml"), {1.1, 2, 10});
  CHECK(b.nonincreasing);
  CHECK(b.t == 1.1);

  CHECK(code_of([&] { component_threshold(c, {1.01, 1.02}); }) == ErrorCode::NotReached);
}

TEST_CASE("grid checks") {
  Measure b = oracle::load("mu_b.toml");
  CHECK(code_of([&] { scan(b, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { scan(b, {4, 2}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { scan(b, {1.0, 2}); }) == ErrorCode::TOutOfRange);
  CHECK(default_t_grid() == std::vector<double>{25, 50, 100, 200, 400, 800});
}
