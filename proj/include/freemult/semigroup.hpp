#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freemult/boundary.hpp"
#include "freemult/intervals.hpp"
#include "freemult/measure.hpp"
#include "freemult/transforms.hpp"

namespace freemult {

/// Phi_t(z) = z exp[(t - 1) u(z)], t >= 1.
Complex phi_t(const Measure& m, double t, SlitPoint z);

/// The boundary point r e^{i A_t(r)} and the quantities built on it.
struct CurvePoint {
  double r = 0.0;
  double angle = 0.0;   // A_t(r)
  Complex z;            // r e^{i A_t(r)}
  Complex u;            // u(z), boundary value from above when angle = 0
  double log_h = 0.0;   // log h_t(r); kept separately since h overflows for large t
  double h = 0.0;       // h_t(r) = Phi_t(z), real on the curve
  double arg_residual = 0.0;  // arg Phi_t(z), zero in exact arithmetic
  double l = 0.0;       // |eta(z)| = r exp(-Re u(z))
  double theta_t = 0.0; // t A_t(r) / (t - 1)
};

CurvePoint curve_point(const Measure& m, double t, double r, const BoundaryOptions& opt = {});

/// h_t(r); throws RealnessViolation when |arg Phi_t| >= 1e-6.
double h_t(const Measure& m, double t, double r, const BoundaryOptions& opt = {});

struct DensityPoint {
  double x = 0.0;   // 1 / h_t(r)
  double f = 0.0;   // density of mu^t at x
  double r = 0.0;
  int component = -1;
  double mass = 0.0;  // quadrature weight times f, so sums give integrals in x
};

/// Density of mu^t at x = 1/h_t(r). Throws DenominatorDegenerate when
/// 1 - 2 l cos(theta_t) + l^2 < 1e-14.
DensityPoint density_at(const Measure& m, double t, double r, const BoundaryOptions& opt = {});

/// Atoms of mu^t: (c^t, t p - (t - 1)) for atoms (c, p) with p > (t - 1)/t,
/// and the atom at 0 unchanged. Exact when the data and t are rational
/// (positions only for integer t).
std::vector<Atom> atoms_of_power(const Measure& m, const Scalar& t);
std::vector<Atom> atoms_of_power(const Measure& m, double t);

struct SnapshotOptions {
  std::size_t samples_per_component = 256;
  double mass_tolerance = 1e-4;
  BoundaryOptions boundary;
};

struct SemigroupSnapshot {
  double t = 0.0;
  std::vector<Atom> atoms;
  std::vector<DensityPoint> density;  // sorted by r within each component
  std::vector<Interval> components;   // V_t+ in the r variable
  IntervalSet support;                // closure of S_t plus atom points
  double atom_mass = 0.0;
  double density_mass = 0.0;
  double max_realness_residual = 0.0;
  std::vector<std::string> warnings;  // e.g. MassDeficit

  double total_mass() const noexcept { return atom_mass + density_mass; }
  /// Integral of x^k over the snapshot (atoms plus density quadrature).
  double moment(int k) const;
};

/// Assembles mu^t. Density samples use Gauss-Legendre nodes in phi with
/// log r = mid - half cos(phi) on each component, which clusters them at
/// the component ends and integrates square-root and inverse-square-root
/// edge behavior accurately.
SemigroupSnapshot snapshot(const Measure& m, const Scalar& t, const SnapshotOptions& opt = {});
SemigroupSnapshot snapshot(const Measure& m, double t, const SnapshotOptions& opt = {});

/// max supp(mu^t) = max(1 / h_t(alpha_t), largest atom).
double norm_of_power(const Measure& m, double t, const BoundaryOptions& opt = {});

}  // namespace freemult
