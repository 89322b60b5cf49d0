#include "freemult/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freemult/error.hpp"

namespace freemult {
namespace {

double directed(const IntervalSet& a, const IntervalSet& b) {
  const auto& gaps = b.parts();
  double worst = 0.0;
  for (const Interval& part : a.parts()) {
    worst = std::max(worst, b.distance(part.lo));
    worst = std::max(worst, b.distance(part.hi));
    // Inside a gap of B the farthest point is its midpoint.
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
      const double mid = 0.5 * (gaps[i].hi + gaps[i + 1].lo);
      worst = std::max(worst, b.distance(std::clamp(mid, part.lo, part.hi)));
    }
  }
  return worst;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

void IntervalSet::add(Interval part) {
  parts_.push_back(part);
  normalize();
}

void IntervalSet::normalize() {
  for (Interval& p : parts_)
    if (p.lo > p.hi) std::swap(p.lo, p.hi);
  std::sort(parts_.begin(), parts_.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const Interval& p : parts_) {
    if (!merged.empty() && p.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, p.hi);
    else
      merged.push_back(p);
  }
  parts_ = std::move(merged);
}

double IntervalSet::min() const {
  if (parts_.empty()) throw Error(ErrorCode::EmptySet, "empty interval set has no minimum");
  return parts_.front().lo;
}

double IntervalSet::max() const {
  if (parts_.empty()) throw Error(ErrorCode::EmptySet, "empty interval set has no maximum");
  return parts_.back().hi;
}

double IntervalSet::distance(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& p : parts_) {
    if (p.contains(x)) return 0.0;
    best = std::min(best, x < p.lo ? p.lo - x : x - p.hi);
  }
  return best;
}

double hausdorff_distance(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "Hausdorff distance needs two nonempty sets");
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace freemult
