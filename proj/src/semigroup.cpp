#include "freemult/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freemult/error.hpp"
#include "freemult/parallel.hpp"
#include "freemult/quadrature.hpp"

namespace freemult {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealnessLimit = 1e-6;
constexpr double kDenominatorFloor = 1e-14;
constexpr double kAtomThresholdTol = 1e-12;

void check_t(double t, bool allow_one = false) {
  if (!std::isfinite(t) || !(allow_one ? t >= 1.0 : t > 1.0))
    throw Error(ErrorCode::TOutOfRange, std::string("t must be ") + (allow_one ? ">= 1" : "> 1") + ", got " + format_double(t));
}

/// Density pieces at one curve point: f, and f |dx/dr| computed without
/// forming h, which over- or underflows for large t.
struct Evaluated {
  CurvePoint cp;
  double f = 0.0;
  double f_dx_dr = 0.0;
};

Evaluated evaluate_density(const Measure& m, double t, double r, const BoundaryOptions& opt) {
  Evaluated e;
  e.cp = curve_point(m, t, r, opt);
  const CurvePoint& cp = e.cp;
  if (std::abs(cp.arg_residual) >= kRealnessLimit)
    throw Error(ErrorCode::RealnessViolation, "arg Phi_t = " + format_double(cp.arg_residual) + " at r = " + format_double(r));
  if (cp.angle == 0.0) return e;
  const double s = std::sin(cp.theta_t);
  const double den = 1.0 - 2.0 * cp.l * std::cos(cp.theta_t) + cp.l * cp.l;
  if (den < kDenominatorFloor)
    throw Error(ErrorCode::DenominatorDegenerate,
                "1 - 2 l cos(theta) + l^2 = " + format_double(den) + " at r = " + format_double(r));
  const double fx = cp.l * s / (kPi * den);  // f * x
  e.f = fx * cp.h;
  // dx/dr = -x |L'|^2 / Re(L' e^{iA}) with L = log z + (t - 1) u(z).
  const upper::Kernel k = upper::kernel(m, cp.z);
  const Complex dl = 1.0 / cp.z + (t - 1.0) * upper::u_prime(k);
  const double re = (dl * std::polar(1.0, cp.angle)).real();
  e.f_dx_dr = fx * std::norm(dl) / std::abs(re);
  return e;
}

Rational exact_decimal(double t) { return parse_rational(format_double(t)); }

}  // namespace

Complex phi_t(const Measure& m, double t, SlitPoint z) {
  check_t(t, true);
  if (t == 1.0) return z.value();
  return z.value() * std::exp((t - 1.0) * u_value(m, z));
}

CurvePoint curve_point(const Measure& m, double t, double r, const BoundaryOptions& opt) {
  check_t(t);
  CurvePoint cp;
  cp.r = r;
  cp.angle = angle_A(m, t, r, opt);
  cp.z = cp.angle == 0.0 ? Complex(r, 0.0) : std::polar(r, cp.angle);
  cp.u = upper::u(m, cp.z);
  cp.log_h = std::log(r) + (t - 1.0) * cp.u.real();
  cp.h = std::exp(cp.log_h);
  cp.arg_residual = cp.angle + (t - 1.0) * cp.u.imag();
  cp.l = r * std::exp(-cp.u.real());
  cp.theta_t = t * cp.angle / (t - 1.0);
  return cp;
}

double h_t(const Measure& m, double t, double r, const BoundaryOptions& opt) {
  const CurvePoint cp = curve_point(m, t, r, opt);
  if (std::abs(cp.arg_residual) >= kRealnessLimit)
    throw Error(ErrorCode::RealnessViolation, "arg Phi_t = " + format_double(cp.arg_residual) + " at r = " + format_double(r));
  return cp.h;
}

DensityPoint density_at(const Measure& m, double t, double r, const BoundaryOptions& opt) {
  m.require_non_dirac("density");
  const Evaluated e = evaluate_density(m, t, r, opt);
  DensityPoint p;
  p.r = r;
  p.x = std::exp(-e.cp.log_h);
  p.f = e.f;
  return p;
}

std::vector<Atom> atoms_of_power(const Measure& m, const Scalar& t) {
  m.require_non_dirac("atoms");
  check_t(t.value());
  std::vector<Atom> out;
  const bool integer_t = t.is_exact() && denominator(t.rational()) == 1;
  for (const Atom& a : m.atoms()) {
    if (a.position.value() == 0.0) {
      out.push_back({Scalar::exact(0), a.mass});
      continue;
    }
    Scalar mass;
    if (t.is_exact() && a.mass.is_exact()) {
      const Rational w = t.rational() * a.mass.rational() - (t.rational() - 1);
      if (w <= 0) continue;
      mass = Scalar::exact(w);
    } else {
      const double w = t.value() * a.mass.value() - (t.value() - 1.0);
      if (!(w > kAtomThresholdTol)) continue;
      mass = Scalar::inexact(w);
    }
    Scalar position;
    if (integer_t && a.position.is_exact()) {
      Rational p = 1;
      const long n = static_cast<long>(numerator(t.rational()));
      for (long i = 0; i < n; ++i) p *= a.position.rational();
      position = Scalar::exact(p);
    } else {
      position = Scalar::inexact(std::pow(a.position.value(), t.value()));
    }
    out.push_back({position, mass});
  }
  std::sort(out.begin(), out.end(), [](const Atom& x, const Atom& y) { return x.position.value() < y.position.value(); });
  return out;
}

std::vector<Atom> atoms_of_power(const Measure& m, double t) {
  check_t(t);
  return atoms_of_power(m, Scalar::exact(exact_decimal(t)));
}

double SemigroupSnapshot::moment(int k) const {
  double total = 0.0;
  for (const Atom& a : atoms) total += a.mass.value() * std::pow(a.position.value(), k);
  for (const DensityPoint& p : density) total += p.mass * std::pow(p.x, k);
  return total;
}

SemigroupSnapshot snapshot(const Measure& m, const Scalar& t_exact, const SnapshotOptions& opt) {
  m.require_non_dirac("snapshot");
  const double t = t_exact.value();
  check_t(t);
  SemigroupSnapshot snap;
  snap.t = t;
  snap.atoms = atoms_of_power(m, t_exact);
  for (const Atom& a : snap.atoms) {
    snap.atom_mass += a.mass.value();
    snap.support.add_point(a.position.value());
  }
  snap.components = v_plus(m, t, opt.boundary);

  const std::size_t n = opt.samples_per_component;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples per component");
  const QuadratureRule& rule = gauss_legendre(n);
  snap.density.resize(n * snap.components.size());
  std::vector<double> residual(snap.density.size(), 0.0);
  parallel_for(snap.density.size(), [&](std::size_t idx) {
    const std::size_t c = idx / n;
    const std::size_t j = idx % n;
    const Interval& comp = snap.components[c];
    const double mid = 0.5 * (std::log(comp.lo) + std::log(comp.hi));
    const double half = 0.5 * (std::log(comp.hi) - std::log(comp.lo));
    const double phi = 0.5 * kPi * (rule.nodes[j] + 1.0);
    const double r = std::exp(mid - half * std::cos(phi));
    const double dr = 0.5 * kPi * rule.weights[j] * half * std::sin(phi) * r;
    const Evaluated e = evaluate_density(m, t, r, opt.boundary);
    DensityPoint& p = snap.density[idx];
    p.r = r;
    p.x = std::exp(-e.cp.log_h);
    p.f = e.f;
    p.component = static_cast<int>(c);
    p.mass = e.f_dx_dr * dr;
    residual[idx] = std::abs(e.cp.arg_residual);
  });
  for (double v : residual) snap.max_realness_residual = std::max(snap.max_realness_residual, v);
  for (const DensityPoint& p : snap.density) snap.density_mass += p.mass;

  for (const Interval& comp : snap.components) {
    const double x_lo = std::exp(-curve_point(m, t, comp.lo, opt.boundary).log_h);
    const double x_hi = std::exp(-curve_point(m, t, comp.hi, opt.boundary).log_h);
    snap.support.add({std::min(x_lo, x_hi), std::max(x_lo, x_hi)});
  }
  const double deficit = snap.total_mass() - 1.0;
  if (std::abs(deficit) > opt.mass_tolerance)
    snap.warnings.push_back("MassDeficit: total mass differs from 1 by " + format_double(deficit));
  return snap;
}

SemigroupSnapshot snapshot(const Measure& m, double t, const SnapshotOptions& opt) {
  check_t(t);
  return snapshot(m, Scalar::exact(exact_decimal(t)), opt);
}

double norm_of_power(const Measure& m, double t, const BoundaryOptions& opt) {
  m.require_non_dirac("norm");
  double best = 0.0;
  bool any = false;
  for (const Atom& a : atoms_of_power(m, t)) {
    best = std::max(best, a.position.value());
    any = true;
  }
  const std::vector<Interval> v = v_plus(m, t, opt);
  if (!v.empty()) {
    best = std::max(best, std::exp(-curve_point(m, t, v.front().lo, opt).log_h));
    any = true;
  }
  if (!any) throw Error(ErrorCode::EmptySet, "mu^t has neither atoms nor a density component");
  return best;
}

}  // namespace freemult
