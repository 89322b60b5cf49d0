#include "freemult/rho.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freemult/boundary.hpp"
#include "freemult/error.hpp"
#include "freemult/parallel.hpp"
#include "freemult/transforms.hpp"

namespace freemult {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegligible = 1e-12;
constexpr double kJump = 1e-3;
constexpr double kKappaProbe = 1e-8;

double raw_density(const Measure& m, double x, double eps) {
  if (m.is_dirac()) return 0.0;  // u is constant
  return -upper::u(m, Complex(x, eps)).imag() / (kPi * (1.0 + x * x));
}

struct Sample {
  double x;
  double coarse;  // at eps
  double fine;    // at eps / 2
  double value() const { return std::max(0.0, 2.0 * fine - coarse); }
};

Sample sample(const Measure& m, double x, double eps) { return {x, raw_density(m, x, eps), raw_density(m, x, 0.5 * eps)}; }

void refine(const Measure& m, double eps, const Sample& a, const Sample& b, double scale, int depth,
            std::vector<Sample>& out) {
  if (depth <= 0 || b.x - a.x < 10.0 * eps || std::abs(b.value() - a.value()) <= kJump * scale) return;
  const Sample mid = sample(m, 0.5 * (a.x + b.x), eps);
  refine(m, eps, a, mid, scale, depth - 1, out);
  out.push_back(mid);
  refine(m, eps, mid, b, scale, depth - 1, out);
}

}  // namespace

double RhoProfile::integrate(const std::function<double(double)>& phi) const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    total += 0.5 * (grid[i + 1] - grid[i]) * (density[i] * phi(grid[i]) + density[i + 1] * phi(grid[i + 1]));
  return total;
}

double RhoProfile::mass() const {
  return integrate([](double) { return 1.0; });
}

double rho_density(const Measure& m, double x, double eps) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "rho is sampled at x > 0");
  return sample(m, x, eps).value();
}

RhoProfile extract_rho(const Measure& m, const RhoOptions& opt) {
  if (opt.grid < 3) throw Error(ErrorCode::InvalidArgument, "grid needs at least 3 points");
  if (!(opt.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  Interval w = opt.window.value_or(default_window(m));
  if (!(w.lo > 0.0 && w.hi > w.lo)) throw Error(ErrorCode::InvalidArgument, "window must satisfy 0 < lo < hi");
  if (opt.expand_window && !m.is_dirac()) {
    for (int i = 0; i < 8 && rho_density(m, w.lo, opt.eps) > kNegligible; ++i) w.lo /= 10.0;
    for (int i = 0; i < 8 && rho_density(m, w.hi, opt.eps) > kNegligible; ++i) w.hi *= 10.0;
  }

  std::vector<Sample> base(opt.grid);
  const double span = std::log(w.hi / w.lo);
  parallel_for(opt.grid, [&](std::size_t i) {
    const double x = i + 1 == opt.grid ? w.hi : w.lo * std::exp(span * double(i) / double(opt.grid - 1));
    base[i] = sample(m, x, opt.eps);
  });
  double scale = 0.0;
  for (const Sample& s : base) scale = std::max(scale, s.value());

  std::vector<Sample> all;
  all.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    all.push_back(base[i]);
    if (i + 1 < base.size()) refine(m, opt.eps, base[i], base[i + 1], scale, opt.refine_depth, all);
  }

  RhoProfile p;
  p.eps = opt.eps;
  for (const Sample& s : all) {
    p.grid.push_back(s.x);
    p.density.push_back(s.value());
    // An atom of rho makes the smoothed value double when eps halves.
    if (s.coarse > kNegligible && s.fine > 1.5 * s.coarse) p.flagged_atoms.push_back(s.x);
  }
  const double floor = std::max(kNegligible, 1e-10 * scale);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (p.density[i] <= floor) continue;
    if (!p.detected_support) p.detected_support = Interval{p.grid[i], p.grid[i]};
    p.detected_support->hi = p.grid[i];
  }
  return p;
}

double g_from_rho(const RhoProfile& rho, double r, double theta) {
  const Complex z = std::polar(r, theta);
  const double integral = rho.integrate([&](double s) { return (1.0 + s * s) / std::norm(z - s); });
  return r * std::sin(theta) / theta * integral;
}

double RhoIdentities::residual_weighted_mass() const { return std::abs(weighted_mass - expected_weighted_mass); }
double RhoIdentities::residual_inverse_moment() const { return std::abs(inverse_moment - expected_inverse_moment); }
double RhoIdentities::residual_kappa_limit() const { return std::abs(kappa_limit - expected_kappa_limit); }

RhoIdentities rho_identities(const Measure& m, const RhoProfile& rho) {
  RhoIdentities out;
  const double m1 = moment(m, 1).value;
  const double v = variance(m).value;
  out.weighted_mass = rho.integrate([](double s) { return (1.0 + s * s) / (s * s); });
  out.expected_weighted_mass = v / m1;
  out.inverse_moment = rho.integrate([](double s) { return 1.0 / s; });
  out.expected_inverse_moment = std::log(m1) + a_constant(m);
  out.kappa_limit = std::exp(u_value(m, SlitPoint(-kKappaProbe, 0.0)).real());
  out.expected_kappa_limit = 1.0 / m1;
  out.scheme = "trapezoid over " + std::to_string(rho.grid.size()) + " refined log-grid points, eps = " +
               format_double(rho.eps) + " with Richardson over eps/2; kappa at x = -" + format_double(kKappaProbe);
  return out;
}

}  // namespace freemult
