#pragma once

// Closed forms and brute-force references used only by the tests.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "freemult/measure.hpp"
#include "freemult/measure_io.hpp"

namespace oracle {

using C = std::complex<long double>;

inline std::string data(const std::string& name) { return std::string(FREEMULT_TEST_DATA) + "/" + name; }

inline freemult::Measure load(const std::string& name) {
  return freemult::validate(freemult::read_measure_file(data(name)));
}

/// psi for a list of atoms, summed in long double.
inline C psi_atoms(const std::vector<std::pair<long double, long double>>& atoms, C z) {
  C s = 0;
  for (auto [c, p] : atoms) s += p * z * c / (1.0L - z * c);
  return s;
}

/// psi of any measure by composite Simpson on each segment (long double).
inline C psi_brute(const freemult::Measure& m, C z, int panels = 20000) {
  C s = 0;
  for (std::size_t i = 0; i < m.atom_positions().size(); ++i) {
    const long double c = m.atom_positions()[i];
    s += (long double)m.atom_masses()[i] * z * c / (1.0L - z * c);
  }
  for (const auto& seg : m.segments()) {
    const long double h = (seg.hi - seg.lo) / panels;
    auto f = [&](long double x) { return C(seg(double(x))) * z * x / (1.0L - z * x); };
    C acc = f(seg.lo) + f(seg.hi);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0L : 2.0L) * f(seg.lo + k * h);
    s += acc * h / 3.0L;
  }
  return s;
}

inline C eta_brute(const freemult::Measure& m, C z) {
  const C p = psi_brute(m, z);
  return p / (1.0L + p);
}

/// mu_B = (delta_{1/2} + delta_{3/2}) / 2. Its u has representing measure
/// rho with density 1/(1+s^2) on [1, 4/3].
namespace mu_b {

constexpr double rho_lo = 1.0;
constexpr double rho_hi = 4.0 / 3.0;

inline double g_radial(double r) {
  if (r < rho_lo) return r * (1.0 / (1.0 - r) - 1.0 / (4.0 / 3.0 - r));
  if (r > rho_hi) return r * (1.0 / (r - 4.0 / 3.0) - 1.0 / (r - 1.0));
  return std::numeric_limits<double>::infinity();
}

inline double g_angular(double r, double th) {
  const double s = std::sin(th), c = std::cos(th);
  return (std::atan((4.0 / 3.0 - r * c) / (r * s)) - std::atan((1.0 - r * c) / (r * s))) / th;
}

/// a = integral of 1/s d rho.
inline double a_constant() { return std::log(4.0 / 3.0) - 0.5 * std::log(25.0 / 18.0); }

/// Root of g(r) = level on the left branch r < 1 (or right branch r > 4/3).
inline double g_level(double level, bool left) {
  double lo = left ? 1e-12 : rho_hi + 1e-15, hi = left ? rho_lo - 1e-15 : 1e9;
  for (int i = 0; i < 300; ++i) {
    const double mid = left ? 0.5 * (lo + hi) : std::sqrt(lo * hi);
    const bool above = g_radial(mid) > level;
    if (left == above) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mu_b

/// mu_0 = (delta_0 + delta_2) / 2: eta(z) = z / (1 - z), u = log(1 - z).
namespace mu_0 {
inline double g_radial(double r) { return r < 1.0 ? r / (1.0 - r) : std::numeric_limits<double>::infinity(); }
}  // namespace mu_0

}  // namespace oracle
