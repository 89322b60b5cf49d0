#include "freemult/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freemult/error.hpp"

namespace freemult {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConverged = 1e-13;

struct Newton {
  const Measure& m;
  double t;
  const SubordinationOptions& opt;
  int iterations = 0;

  double level() const { return 1.0 / (t - 1.0); }

  /// log Phi_t(w) and its derivative; `scale` bounds the size of the
  /// terms summed, which sets the attainable accuracy.
  Complex log_phi(Complex w, Complex& derivative, double& scale) const {
    const upper::Kernel k = upper::kernel(m, w);
    derivative = 1.0 / w + (t - 1.0) * upper::u_prime(k);
    const Complex lw = std::log(w);
    const Complex tu = (t - 1.0) * upper::u(k);
    scale = std::max({1.0, std::abs(lw), std::abs(tu)});
    return lw + tu;
  }

  bool inside(Complex w) const {
    if (!(w.imag() > 0.0)) return false;
    return g_angular(m, std::abs(w), std::arg(w)) < level();
  }

  Complex project(Complex w) const {
    const double r = std::abs(w);
    const double a = angle_A(m, t, r, opt.boundary);
    return std::polar(r, std::min(a + opt.margin, kPi * (1.0 - 1e-12)));
  }

  std::optional<Complex> solve(Complex target_log, Complex w) {
    if (!inside(w)) w = project(w);
    Complex d;
    double scale = 1.0;
    Complex f = log_phi(w, d, scale) - target_log;
    for (int it = 0; it < opt.max_iterations; ++it) {
      ++iterations;
      if (std::abs(f) <= 1e-15 * std::max(scale, std::abs(target_log))) break;
      const Complex step = f / d;
      double damping = 1.0;
      bool accepted = false;
      for (int half = 0; half < 40 && !accepted; ++half, damping *= 0.5) {
        Complex trial = w - damping * step;
        if (!inside(trial)) {
          if (!(trial.imag() > 0.0) || !(std::abs(trial) > 0.0)) continue;
          trial = project(trial);
        }
        Complex dt;
        double st = 1.0;
        const Complex ft = log_phi(trial, dt, st) - target_log;
        if (std::abs(ft) < std::abs(f)) {
          w = trial;
          f = ft;
          d = dt;
          scale = st;
          accepted = true;
        }
      }
      if (!accepted) break;
      if (std::abs(damping * step) <= 1e-16 * std::abs(w)) break;
    }
    if (!(std::abs(f) <= kConverged * std::max(scale, std::abs(target_log)))) return std::nullopt;
    return w;
  }
};

double logit(double phi) { return std::log(phi / (kPi - phi)); }
double logistic(double s) { return kPi / (1.0 + std::exp(-s)); }

}  // namespace

OmegaValue omega_t(const Measure& m, double t, Complex z, const SubordinationOptions& opt,
                   std::optional<Complex> guess) {
  m.require_non_dirac("subordination");
  if (!(t > 1.0) || !std::isfinite(t)) throw Error(ErrorCode::TOutOfRange, "t must be > 1, got " + format_double(t));
  if (!(z.imag() > 0.0)) throw Error(ErrorCode::DomainError, "omega_t needs Im z > 0");

  const Complex target = std::log(z);
  Newton outer{m, t, opt};
  std::optional<Complex> w;
  if (guess) w = outer.solve(target, *guess);
  if (!w && opt.direct_first) w = outer.solve(target, z);
  int iterations = outer.iterations;

  if (!w) {
    // Continuation in t at the anchor i|z|, where omega starts at the anchor.
    const Complex anchor(0.0, std::abs(z));
    Complex current = anchor;
    double s = 1.0;
    double ds = (t - 1.0) / 8.0;
    while (s < t) {
      const double next = std::min(t, s + ds);
      Newton step{m, next, opt};
      const auto sol = step.solve(std::log(anchor), current);
      iterations += step.iterations;
      if (sol) {
        current = *sol;
        s = next;
        ds *= 1.5;
      } else {
        ds *= 0.5;
        if (ds < 1e-9 * (t - 1.0))
          throw Error(ErrorCode::NoConvergence, "t-continuation stalled at t = " + format_double(s));
      }
    }
    // Continuation along the arc |w| = |z| from arg pi/2 to arg z.
    const double s_end = logit(std::arg(z));
    double pos = 0.0;
    double dpos = std::clamp(s_end, -0.5, 0.5);
    while (pos != s_end) {
      const double next = std::abs(s_end - pos) <= std::abs(dpos) ? s_end : pos + dpos;
      Newton step{m, t, opt};
      const Complex goal = next == s_end ? target : Complex(std::log(std::abs(z)), logistic(next));
      const auto sol = step.solve(goal, current);
      iterations += step.iterations;
      if (sol) {
        current = *sol;
        pos = next;
        dpos *= 1.5;
      } else {
        dpos *= 0.5;
        if (std::abs(dpos) < 1e-9)
          throw Error(ErrorCode::NoConvergence, "arc continuation stalled at arg = " + format_double(logistic(pos)));
      }
    }
    w = current;
  }

  OmegaValue out;
  out.z = z;
  out.omega = *w;
  out.iterations = iterations;
  const Complex phi = *w * std::exp((t - 1.0) * upper::u(m, *w));
  out.residual = std::abs(phi - z);
  return out;
}

Complex eta_power(const Measure& m, double t, Complex z, const SubordinationOptions& opt) {
  const OmegaValue w = omega_t(m, t, z, opt);
  return upper::eta(upper::kernel(m, w.omega));
}

Complex cauchy_power(const Measure& m, double t, Complex w, const SubordinationOptions& opt) {
  if (w.imag() == 0.0) throw Error(ErrorCode::DomainError, "cauchy_power needs Im w != 0");
  if (w.imag() > 0.0) return std::conj(cauchy_power(m, t, std::conj(w), opt));
  const Complex z = 1.0 / w;
  return z / (1.0 - eta_power(m, t, z, opt));
}

double density_via_inversion(const Measure& m, double t, double x, double eps, bool richardson,
                             const SubordinationOptions& opt) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "x must be positive");
  if (!(eps >= 1e-9 && eps <= 1e-3)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [1e-9, 1e-3]");
  std::optional<Complex> seed;
  auto at = [&](double e) {
    const Complex w(x, e);
    const Complex z = 1.0 / std::conj(w);  // in the upper half-plane
    const OmegaValue om = omega_t(m, t, z, opt, seed);
    seed = om.omega;
    const Complex eta = upper::eta(upper::kernel(m, om.omega));
    const Complex g = (1.0 / w) / (1.0 - std::conj(eta));
    return -g.imag() / kPi;
  };
  const double f1 = at(eps);
  if (!richardson) return std::max(0.0, f1);
  const double f2 = at(2.0 * eps);
  return std::max(0.0, 2.0 * f1 - f2);
}

}  // namespace freemult
