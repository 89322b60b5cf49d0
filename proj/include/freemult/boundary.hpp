#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "freemult/intervals.hpp"
#include "freemult/measure.hpp"

namespace freemult {

struct BoundaryOptions {
  double overflow = 1e12;         // g values above this are reported as +inf
  double endpoint_tol = 1e-10;    // absolute tolerance for V_t+ endpoints
  std::size_t grid = 2000;        // log-spaced scan points
  std::optional<Interval> window; // default [m_lo / 10, 10 m_hi]
  bool expand_window = true;      // widen by decades while the ends lie in V_t+
  int max_expansions = 8;
};

/// g(r, theta) = -Im u(r e^{i theta}) / theta for theta in (0, pi].
double g_angular(const Measure& m, double r, double theta);

/// Radial limit g(r) = lim g(r, theta) as theta -> 0, possibly +inf.
double g_radial(const Measure& m, double r, const BoundaryOptions& opt = {});

/// 1 / (t - 1), the level that defines A_t and V_t+.
double level(double t);

/// A_t(r): 0 when g(r) <= 1/(t-1), else the angle where g(r, .) crosses
/// 1/(t-1). Throws ToleranceNotMet if the crossing cannot be bracketed.
double angle_A(const Measure& m, double t, double r, const BoundaryOptions& opt = {});

/// Components of V_t+ = {r > 0 : g(r) > 1/(t-1)} as sorted closed intervals
/// (their closures). Empty when V_t+ is empty. A component that still
/// reaches the window edge after expansion is clipped there.
std::vector<Interval> v_plus(const Measure& m, double t, const BoundaryOptions& opt = {});

/// Default scan window before expansion.
Interval default_window(const Measure& m);

struct BoundarySample {
  double r = 0.0;
  double angle = 0.0;
  double g = 0.0;
  int component = -1;  // index into components, -1 outside V_t+
};

struct BoundaryCurve {
  double t = 0.0;
  std::vector<BoundarySample> samples;
  std::vector<Interval> components;
};

/// Samples the boundary of Omega_t on the (expanded) scan grid.
BoundaryCurve boundary_curve(const Measure& m, double t, const BoundaryOptions& opt = {});

}  // namespace freemult
