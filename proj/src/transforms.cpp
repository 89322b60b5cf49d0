#include "freemult/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "freemult/error.hpp"
#include "freemult/quadrature.hpp"

namespace freemult {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kSegmentNodes = 64;

/// Argument in [0, pi] of a number known to lie in the closed upper
/// half-plane; rounding below the axis is folded back onto it.
double arg_upper(Complex w) { return std::atan2(std::max(w.imag(), 0.0), w.real()); }

using Poly = std::vector<Complex>;

Poly real_poly(const std::vector<double>& c) { return Poly(c.begin(), c.end()); }

/// s^k * p(s)
Poly shift_up(Poly p, int k) {
  p.insert(p.begin(), static_cast<std::size_t>(k), Complex(0.0));
  return p;
}

/// Divides p by (s - w): returns the quotient and stores p(w) in remainder.
Poly divide_linear(const Poly& p, Complex w, Complex& remainder) {
  if (p.empty()) {
    remainder = 0.0;
    return {};
  }
  Poly q(p.size() - 1);
  Complex acc = p.back();
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    q[k] = acc;
    acc = p[k] + w * acc;
  }
  remainder = acc;
  return q;
}

Complex integrate_poly(const Poly& p, double lo, double hi) {
  Complex a = 0.0;
  Complex b = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    const double inv = 1.0 / static_cast<double>(k + 1);
    a = a * lo + p[k] * inv;
    b = b * hi + p[k] * inv;
  }
  return b * hi - a * lo;
}

/// log(hi - w) - log(lo - w); for w on [lo, hi] this is the value reached
/// with w approached from below, matching z = 1/w approached from above.
Complex log_ratio(double lo, double hi, Complex w) {
  Complex a = Complex(lo, 0.0) - w;
  Complex b = Complex(hi, 0.0) - w;
  if (a.imag() == 0.0) a = Complex(a.real(), 0.0);
  if (b.imag() == 0.0) b = Complex(b.real(), 0.0);
  return std::log(b) - std::log(a);
}

/// Integral over [lo, hi] of q(s) / (s - w).
Complex cauchy_integral_1(const Poly& q, double lo, double hi, Complex w) {
  Complex qw;
  const Poly r = divide_linear(q, w, qw);
  return integrate_poly(r, lo, hi) + qw * log_ratio(lo, hi, w);
}

/// Integral over [lo, hi] of q(s) / (s - w)^2.
Complex cauchy_integral_2(const Poly& q, double lo, double hi, Complex w) {
  Complex qw;
  Complex dqw;
  const Poly r1 = divide_linear(q, w, qw);
  const Poly r2 = divide_linear(r1, w, dqw);
  const Complex pole = 1.0 / (Complex(lo) - w) - 1.0 / (Complex(hi) - w);
  return qw * pole + dqw * log_ratio(lo, hi, w) + integrate_poly(r2, lo, hi);
}

double distance_to_segment(Complex w, double lo, double hi) {
  const double x = std::clamp(w.real(), lo, hi);
  return std::abs(w - Complex(x, 0.0));
}

upper::Kernel compute_kernel(const Measure& m, Complex z) {
  upper::Kernel k{z, 0.0, 0.0, 0.0, 0.0};
  const auto& xs = m.atom_positions();
  const auto& ps = m.atom_masses();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = xs[i];
    if (c == 0.0) {
      k.f += ps[i];
      continue;
    }
    const Complex d = 1.0 - z * c;
    k.f += ps[i] / d;
    k.p += ps[i] * c / d;
    k.q += ps[i] * c * c / (d * d);
    k.psi += ps[i] * (z * c) / d;
  }
  for (const PolySegment& seg : m.segments()) {
    const double len = seg.hi - seg.lo;
    const bool far = z == 0.0 || distance_to_segment(1.0 / z, seg.lo, seg.hi) > len;
    if (far) {
      const QuadratureRule& rule = gauss_legendre(kSegmentNodes);
      const double half = 0.5 * len;
      const double mid = 0.5 * (seg.lo + seg.hi);
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double s = mid + half * rule.nodes[j];
        const double w = rule.weights[j] * half * seg(s);
        const Complex d = 1.0 - z * s;
        k.p += w * s / d;
        k.q += w * s * s / (d * d);
        k.psi += w * (z * s) / d;
        k.f += w / d;
      }
    } else {
      const Complex w = 1.0 / z;
      const Poly p = real_poly(seg.coeffs);
      const Complex seg_p = -cauchy_integral_1(shift_up(p, 1), seg.lo, seg.hi, w) / z;
      k.p += seg_p;
      k.q += cauchy_integral_2(shift_up(p, 2), seg.lo, seg.hi, w) / (z * z);
      k.psi += z * seg_p;
      k.f -= cauchy_integral_1(p, seg.lo, seg.hi, w) / z;
    }
  }
  return k;
}

bool finite(const upper::Kernel& k) {
  auto ok = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  return ok(k.p) && ok(k.q) && ok(k.psi) && ok(k.f);
}

}  // namespace

SlitPoint::SlitPoint(Complex z) : z_(z) {
  if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
    throw Error(ErrorCode::DomainError, "slit point must be finite");
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw Error(ErrorCode::DomainError, "point lies on [0, inf), outside the slit plane");
}

namespace upper {

Kernel kernel(const Measure& m, Complex z) {
  if (z == 0.0) throw Error(ErrorCode::DomainError, "transforms are not evaluated at 0");
  Kernel k = compute_kernel(m, z);
  // Exact hits on a pole of psi (z = 1/c for an atom c, or 1/z at a piece
  // endpoint) only happen on the real axis; the functions are analytic
  // there, so a relative nudge of a few ulps recovers the value.
  for (int attempt = 0; attempt < 4 && !finite(k); ++attempt) {
    z *= 1.0 + 4e-15 * (attempt + 1);
    k = compute_kernel(m, z);
  }
  if (!finite(k)) throw Error(ErrorCode::DomainError, "transform kernel is not finite");
  return k;
}

Complex eta(const Kernel& k) { return k.psi / k.f; }

Complex u(const Kernel& k) {
  // p = 0 only where eta vanishes on the positive ray (or for the point
  // mass at 0), where log|kappa| is +inf.
  const double re = k.p == 0.0 ? std::numeric_limits<double>::infinity() : std::log(std::abs(k.f) / std::abs(k.p));
  // Im u = arg z - Arg eta with Arg eta = Arg psi - Arg(1 + psi); each
  // argument is taken on the closed half-plane containing z.
  const bool lower = k.z.imag() < 0.0;
  auto side = [lower](Complex w) { return lower ? std::conj(w) : w; };
  double im = arg_upper(side(k.z)) - arg_upper(side(k.psi)) + arg_upper(side(k.f));
  if (lower) im = -im;
  if (!(im > -kPi - 1e-12 && im < kPi + 1e-12))
    throw Error(ErrorCode::BranchViolation, "Im u = " + std::to_string(im) + " outside (-pi, pi)");
  return {re, im};
}

Complex u_prime(const Kernel& k) {
  return (k.p * k.p - k.q) / (k.p * k.f);
}

}  // namespace upper

Complex psi(const Measure& m, SlitPoint z) { return upper::kernel(m, z.value()).psi; }

Complex eta(const Measure& m, SlitPoint z) { return upper::eta(upper::kernel(m, z.value())); }

Complex u_value(const Measure& m, SlitPoint z) {
  const Complex u = upper::u(upper::kernel(m, z.value()));
  if (!std::isfinite(u.real())) throw Error(ErrorCode::DomainError, "u is undefined for the point mass at 0");
  const double im = u.imag();
  const double y = z.value().imag();
  if ((y > 0.0 && im > 1e-12) || (y < 0.0 && im < -1e-12) || std::abs(im) >= kPi)
    throw Error(ErrorCode::BranchViolation, "Im u has the wrong sign for this half-plane");
  return u;
}

Complex u_prime(const Measure& m, SlitPoint z) { return upper::u_prime(upper::kernel(m, z.value())); }

TransformValue evaluate(const Measure& m, SlitPoint z) {
  const upper::Kernel k = upper::kernel(m, z.value());
  return {k.psi, upper::eta(k), u_value(m, z), a_constant(m)};
}

double a_constant(const Measure& m) { return -std::log(std::abs(eta(m, SlitPoint(0.0, 1.0)))); }

Complex cauchy(const Measure& m, Complex w) {
  const auto& xs = m.atom_positions();
  const auto& ps = m.atom_masses();
  if (w.imag() == 0.0) {
    for (double c : xs)
      if (w.real() == c) throw Error(ErrorCode::DomainError, "Cauchy transform evaluated at an atom");
    for (const PolySegment& seg : m.segments())
      if (w.real() >= seg.lo && w.real() <= seg.hi)
        throw Error(ErrorCode::DomainError, "Cauchy transform evaluated on the density support");
  }
  Complex g = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) g += ps[i] / (w - xs[i]);
  for (const PolySegment& seg : m.segments()) {
    const double len = seg.hi - seg.lo;
    if (distance_to_segment(w, seg.lo, seg.hi) > len) {
      g += integrate_gl([&](double s) { return Complex(seg(s)) / (w - s); }, seg.lo, seg.hi, kSegmentNodes);
    } else {
      g -= cauchy_integral_1(real_poly(seg.coeffs), seg.lo, seg.hi, w);
    }
  }
  return g;
}

}  // namespace freemult
