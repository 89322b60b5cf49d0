#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freemult/intervals.hpp"
#include "freemult/measure.hpp"

namespace freemult {

struct RhoOptions {
  std::optional<Interval> window;  // default: the boundary scan window
  std::size_t grid = 4000;         // log-spaced base grid
  double eps = 1e-7;
  bool expand_window = true;
  int refine_depth = 30;           // bisection levels at jumps
};

/// The representing measure rho of u = a + integral (1 + zs)/(z - s) d rho,
/// sampled on a grid.
struct RhoProfile {
  std::vector<double> grid;     // increasing
  std::vector<double> density;  // d rho / dx
  std::optional<Interval> detected_support;
  std::vector<double> flagged_atoms;  // grid points where the value scales like 1/eps
  double eps = 0.0;

  /// Trapezoid rule for the integral of phi against rho.
  double integrate(const std::function<double(double)>& phi) const;
  double mass() const;
};

/// d rho/dx at x from -Im u(x + i eps) / (pi (1 + x^2)), extrapolated from
/// eps and eps/2.
double rho_density(const Measure& m, double x, double eps = 1e-7);

RhoProfile extract_rho(const Measure& m, const RhoOptions& opt = {});

/// g(r, theta) rebuilt from rho: (r sin(theta)/theta) integral of
/// (1 + s^2)/|r e^{i theta} - s|^2 d rho(s).
double g_from_rho(const RhoProfile& rho, double r, double theta);

/// Checks of the identities linking rho to the moments of mu:
///   integral (1 + s^2)/s^2 d rho = V / m1
///   integral 1/s d rho           = log m1 + a
///   kappa(x) -> 1/m1 as x -> 0-
struct RhoIdentities {
  double weighted_mass = 0.0, expected_weighted_mass = 0.0;
  double inverse_moment = 0.0, expected_inverse_moment = 0.0;
  double kappa_limit = 0.0, expected_kappa_limit = 0.0;
  std::string scheme;

  double residual_weighted_mass() const;
  double residual_inverse_moment() const;
  double residual_kappa_limit() const;
};

RhoIdentities rho_identities(const Measure& m, const RhoProfile& rho);

}  // namespace freemult
