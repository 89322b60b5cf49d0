#pragma once

#include <string>
#include <vector>

#include "freemult/boundary.hpp"
#include "freemult/measure.hpp"
#include "freemult/rho.hpp"
#include "freemult/semigroup.hpp"

namespace freemult {

struct VerifyOptions {
  std::vector<double> t_values{1.5, 2.0, 5.0};
  double mass_tol = 1e-4;
  double realness_tol = 1e-8;
  double identity_tol = 1e-9;  // G(1/z) = z / (1 - eta(z))
  double rho_tol = 1e-2;       // residuals of the rho identities
  SnapshotOptions snapshot;
  RhoOptions rho;
};

struct VerifyCheck {
  std::string name;
  double t = 0.0;  // 0 when the check does not depend on t
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;  // set when a module error stopped the check
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

/// Structural invariants of mu and its powers:
///   mass        |total mass of the snapshot - 1|
///   realness    max |arg h_t| along the boundary curve
///   g_monotone  largest relative increase of g(r, .) in theta
///   nested      distance of V_s+ endpoints from V_t+ for s < t
///   im_u        distance of Im u from (-pi, 0] on the upper half-plane
///   cauchy      |G(1/z) - z / (1 - eta(z))|, relative
///   rho_*       residuals of the rho identities
///   convexity   non-positive second differences of g on gaps of V_t+
VerifyReport verify(const Measure& m, const VerifyOptions& opt = {});

}  // namespace freemult
