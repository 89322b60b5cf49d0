#pragma once

#include <optional>

#include "freemult/boundary.hpp"
#include "freemult/measure.hpp"
#include "freemult/transforms.hpp"

namespace freemult {

struct SubordinationOptions {
  int max_iterations = 100;
  double margin = 1e-9;  // angle kept above the boundary curve when projecting
  bool direct_first = true;  // try Newton from z before continuation
  BoundaryOptions boundary;
};

struct OmegaValue {
  Complex z;
  Complex omega;
  double residual = 0.0;  // |Phi_t(omega) - z|
  int iterations = 0;
};

/// omega_t(z) in Omega_t with Phi_t(omega_t(z)) = z, for Im z > 0. Newton on
/// log Phi_t(w) = Log z; falls back to continuation in t at i|z| followed by
/// continuation in arg z. Throws NoConvergence.
OmegaValue omega_t(const Measure& m, double t, Complex z, const SubordinationOptions& opt = {},
                   std::optional<Complex> guess = std::nullopt);

/// eta of mu^t at z (Im z > 0), as eta_mu(omega_t(z)).
Complex eta_power(const Measure& m, double t, Complex z, const SubordinationOptions& opt = {});

/// Cauchy transform of mu^t at w with Im w != 0.
Complex cauchy_power(const Measure& m, double t, Complex w, const SubordinationOptions& opt = {});

/// -Im G(x + i eps) / pi for mu^t, extrapolated from eps and 2 eps when
/// `richardson` is set. eps must lie in [1e-9, 1e-3].
double density_via_inversion(const Measure& m, double t, double x, double eps = 1e-7, bool richardson = true,
                             const SubordinationOptions& opt = {});

}  // namespace freemult
