#include "freemult/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "freemult/error.hpp"
#include "freemult/intervals.hpp"
#include "freemult/transforms.hpp"

namespace freemult {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_grid(Interval w, int n) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(w.lo * std::pow(w.hi / w.lo, (i + 0.5) / n));
  return r;
}

/// Runs `body`, which returns the measured value; module errors fail the
/// check and are recorded.
VerifyCheck run_check(std::string name, double t, double threshold, const std::function<double()>& body,
                      bool inclusive = false) {
  VerifyCheck c;
  c.name = std::move(name);
  c.t = t;
  c.threshold = threshold;
  try {
    c.value = body();
    c.passed = inclusive ? c.value <= threshold : c.value < threshold;
  } catch (const Error& e) {
    c.value = std::numeric_limits<double>::quiet_NaN();
    c.detail = std::string(e.name()) + ": " + e.what();
  }
  return c;
}

double g_monotone(const Measure& m, Interval w) {
  double worst = 0.0;
  for (double r : log_grid(w, 40)) {
    double prev = g_angular(m, r, kPi / 64.0);
    for (int k = 2; k <= 64; ++k) {
      const double g = g_angular(m, r, k * kPi / 64.0);
      worst = std::max(worst, (g - prev) / std::max(prev, 1e-300));
      prev = g;
    }
  }
  return worst;
}

double nested(const std::vector<Interval>& inner, const std::vector<Interval>& outer) {
  const IntervalSet big(outer);
  double worst = 0.0;
  for (const Interval& c : inner) {
    worst = std::max({worst, big.distance(c.lo), big.distance(c.hi)});
    const bool same = std::any_of(outer.begin(), outer.end(), [&](const Interval& o) {
      return o.lo <= c.lo + 1e-9 * c.lo && c.hi <= o.hi + 1e-9 * c.hi;
    });
    if (!same) worst = std::max(worst, c.length());
  }
  return worst;
}

std::vector<Complex> upper_points(Interval w) {
  std::vector<Complex> z;
  for (double r : log_grid(w, 12))
    for (double th : {0.01, 0.3, 1.0, 2.0, 3.0, 3.13}) z.push_back(std::polar(r, th));
  return z;
}

double im_u_violation(const Measure& m, Interval w) {
  double worst = 0.0;
  for (Complex z : upper_points(w)) {
    const double im = u_value(m, SlitPoint(z)).imag();
    worst = std::max(worst, im);
    if (!(im > -kPi)) worst = std::max({worst, -kPi - im, std::numeric_limits<double>::min()});
  }
  return worst;
}

double cauchy_identity(const Measure& m, Interval w) {
  double worst = 0.0;
  for (Complex z : upper_points(w)) {
    const Complex g = cauchy(m, 1.0 / z);
    const Complex rhs = z / (1.0 - eta(m, SlitPoint(z)));
    worst = std::max(worst, std::abs(g - rhs) / std::max(1.0, std::abs(g)));
  }
  return worst;
}

double convexity_failures(const Measure& m, double t, Interval w, const BoundaryOptions& opt) {
  const std::vector<Interval> v = v_plus(m, t, opt);
  std::vector<Interval> gaps;
  double left = w.lo;
  for (const Interval& c : v) {
    if (c.lo > left) gaps.push_back({left, c.lo});
    left = std::max(left, c.hi);
  }
  if (w.hi > left) gaps.push_back({left, w.hi});
  int failures = 0;
  for (const Interval& gap : gaps) {
    const double lo = gap.lo * 1.01, hi = gap.hi / 1.01;
    if (!(hi > lo)) continue;
    std::vector<double> r, g;
    for (int i = 0; i < 40; ++i) {
      r.push_back(lo * std::pow(hi / lo, i / 39.0));
      g.push_back(g_radial(m, r.back(), opt));
    }
    for (int i = 1; i + 1 < 40; ++i) {
      const double d1 = (g[i] - g[i - 1]) / (r[i] - r[i - 1]);
      const double d2 = (g[i + 1] - g[i]) / (r[i + 1] - r[i]);
      if (!(d2 > d1)) ++failures;
    }
  }
  return failures;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport verify(const Measure& m, const VerifyOptions& opt) {
  m.require_non_dirac("verify");
  if (opt.t_values.empty()) throw Error(ErrorCode::InvalidArgument, "verify needs at least one t");
  std::vector<double> ts = opt.t_values;
  std::sort(ts.begin(), ts.end());
  for (double t : ts)
    if (!(t > 1.0)) throw Error(ErrorCode::TOutOfRange, "t must be > 1, got " + format_double(t));

  const BoundaryOptions& bopt = opt.snapshot.boundary;
  const Interval w = bopt.window.value_or(default_window(m));
  VerifyReport report;
  auto& out = report.checks;

  for (double t : ts) {
    std::optional<SemigroupSnapshot> snap;
    out.push_back(run_check("mass", t, opt.mass_tol, [&] {
      snap = snapshot(m, t, opt.snapshot);
      return std::abs(snap->total_mass() - 1.0);
    }, true));
    out.push_back(run_check("realness", t, opt.realness_tol, [&] {
      if (!snap) snap = snapshot(m, t, opt.snapshot);
      return snap->max_realness_residual;
    }));
  }
  out.push_back(run_check("g_monotone", 0.0, 1e-12, [&] { return g_monotone(m, w); }, true));
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    out.push_back(run_check("nested", ts[i], 10.0 * bopt.endpoint_tol, [&] {
      return nested(v_plus(m, ts[i], bopt), v_plus(m, ts[i + 1], bopt));
    }, true));
  }
  out.push_back(run_check("im_u", 0.0, 0.0, [&] { return im_u_violation(m, w); }, true));
  out.push_back(run_check("cauchy", 0.0, opt.identity_tol, [&] { return cauchy_identity(m, w); }));

  std::optional<RhoIdentities> id;
  auto identities = [&]() -> const RhoIdentities& {
    if (!id) id = rho_identities(m, extract_rho(m, opt.rho));
    return *id;
  };
  out.push_back(run_check("rho_weighted_mass", 0.0, opt.rho_tol, [&] { return identities().residual_weighted_mass(); }));
  out.push_back(run_check("rho_inverse_moment", 0.0, opt.rho_tol, [&] { return identities().residual_inverse_moment(); }));
  out.push_back(run_check("rho_kappa_limit", 0.0, opt.rho_tol, [&] { return identities().residual_kappa_limit(); }));

  for (double t : ts)
    out.push_back(run_check("convexity", t, 0.0, [&] { return convexity_failures(m, t, w, bopt); }, true));
  return report;
}

}  // namespace freemult
