#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freemult/error.hpp"
#include "freemult/intervals.hpp"

using namespace freemult;

namespace {

IntervalSet random_set(std::mt19937_64& rng) {
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  IntervalSet s;
  const int parts = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < parts; ++i) {
    const double lo = 10.0 * unit();
    if (rng() % 3 == 0) s.add_point(lo);
    else s.add({lo, lo + 2.0 * unit()});
  }
  return s;
}

/// Directed distance by dense sampling.
double sampled(const IntervalSet& a, const IntervalSet& b) {
  double worst = 0.0;
  for (const Interval& p : a.parts())
    for (int i = 0; i <= 20000; ++i) worst = std::max(worst, b.distance(p.lo + (p.hi - p.lo) * i / 20000.0));
  return worst;
}

}  // namespace

TEST_CASE("Hausdorff distance examples") {
  const IntervalSet a({{0, 1}});
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, IntervalSet({{0, 2}})) == 1.0);
  CHECK(hausdorff_distance(IntervalSet({{0, 1}, {3, 4}}), IntervalSet({{0, 4}})) == 1.0);
  CHECK_THROWS_AS(hausdorff_distance(a, IntervalSet()), Error);
}

TEST_CASE("sets merge overlapping parts") {
  IntervalSet s({{2, 3}, {0, 1}, {0.5, 1.5}});
  s.add_point(5.0);
  REQUIRE(s.parts().size() == 3);
  CHECK(s.parts()[0].hi == 1.5);
  CHECK(s.min() == 0.0);
  CHECK(s.max() == 5.0);
}

TEST_CASE("Hausdorff distance is a metric and exact") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const IntervalSet a = random_set(rng), b = random_set(rng), c = random_set(rng);
    const double ab = hausdorff_distance(a, b);
    CHECK(ab == hausdorff_distance(b, a));
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
    const double dense = std::max(sampled(a, b), sampled(b, a));
    CHECK(dense <= ab + 1e-12);
    CHECK(ab - dense < 2e-4);
  }
}
