#pragma once

#include <vector>

namespace freemult {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Finite union of closed intervals; points are intervals with lo == hi.
/// Stored sorted with overlapping members merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  void add(Interval part);
  void add_point(double x) { add({x, x}); }

  const std::vector<Interval>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  double min() const;
  double max() const;

  /// Distance from x to the nearest point of the set.
  double distance(double x) const;

 private:
  void normalize();

  std::vector<Interval> parts_;
};

/// max(sup_{a in A} d(a, B), sup_{b in B} d(b, A)), computed exactly from
/// the endpoints. Throws EmptySet if either set is empty.
double hausdorff_distance(const IntervalSet& a, const IntervalSet& b);

}  // namespace freemult
