#pragma once

#include <string>
#include <vector>

#include "freemult/measure.hpp"
#include "freemult/scalar.hpp"

namespace freemult {

/// A truncated power series with exact rational coefficients.
/// coeffs[i] multiplies z^(lowest + i); lowest is 1 for psi and eta, 0 for
/// Sigma.
struct MomentSeries {
  int lowest = 1;
  std::vector<Rational> coeffs;
  bool exact = true;  // false when built from floating-point input

  int order() const { return lowest + static_cast<int>(coeffs.size()) - 1; }
  /// Coefficient of z^k, zero outside the stored range.
  Rational at(int k) const;
  std::vector<std::string> to_strings() const;
};

/// psi(z) = sum_{k=1..order} m_k z^k. Exact for measures whose atoms and
/// density pieces are given by exact rationals; otherwise throws
/// ExactnessLost unless `allow_inexact`, in which case the floating-point
/// moments are used and the result is flagged inexact.
MomentSeries psi_series(const Measure& m, int order = 8, bool allow_inexact = false);

/// Sigma(w) = eta^{-1}(w) / w, by Lagrange inversion of eta = psi / (1 + psi).
/// Throws NotInvertible when m_1 = 0.
MomentSeries sigma_series(const MomentSeries& psi);

/// Moments m_1..m_order of mu^n from Sigma^n. Throws InvalidArgument for
/// n < 1.
MomentSeries power_moments(const MomentSeries& sigma, int n, int order = 8);

}  // namespace freemult
