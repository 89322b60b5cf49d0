#pragma once

#include <complex>

#include "freemult/measure.hpp"

namespace freemult {

using Complex = std::complex<double>;

/// A point of the slit plane C \ [0, inf), the common domain of psi, eta
/// and u. Construction throws DomainError for points on the positive ray.
class SlitPoint {
 public:
  explicit SlitPoint(Complex z);
  SlitPoint(double re, double im) : SlitPoint(Complex(re, im)) {}

  Complex value() const noexcept { return z_; }

 private:
  Complex z_;
};

struct TransformValue {
  Complex psi;
  Complex eta;
  Complex u;
  double a = 0.0;  // -log|eta(i)|
};

Complex psi(const Measure& m, SlitPoint z);
Complex eta(const Measure& m, SlitPoint z);
/// log(z / eta(z)) on the branch Im u = arg z - Arg eta(z), so Im u lies in
/// (-pi, 0] on the upper half-plane. Throws BranchViolation otherwise.
Complex u_value(const Measure& m, SlitPoint z);
Complex u_prime(const Measure& m, SlitPoint z);
TransformValue evaluate(const Measure& m, SlitPoint z);

/// The constant a = -log|eta(i)| of the Nevanlinna representation of u.
double a_constant(const Measure& m);

/// Cauchy transform G(w) = integral of 1/(w - x). Throws DomainError when w
/// lies on the support.
Complex cauchy(const Measure& m, Complex w);

/// Boundary access. These accept any z with Im z >= 0 other than 0; for z on
/// (0, inf) the result is the limit from the upper half-plane. Used by the
/// boundary-curve code, which works on the positive ray directly.
namespace upper {

struct Kernel {
  Complex z;
  Complex p;  // integral of s / (1 - z s)
  Complex q;  // integral of s^2 / (1 - z s)^2, the derivative of p
  Complex psi;  // z p, summed termwise so Im psi keeps the sign of Im z
  Complex f;    // integral of 1 / (1 - z s) = 1 + psi, without cancellation
};

Kernel kernel(const Measure& m, Complex z);
Complex eta(const Kernel& k);
Complex u(const Kernel& k);
Complex u_prime(const Kernel& k);

inline Complex u(const Measure& m, Complex z) { return u(kernel(m, z)); }
inline Complex u_prime(const Measure& m, Complex z) { return u_prime(kernel(m, z)); }

}  // namespace upper

}  // namespace freemult
