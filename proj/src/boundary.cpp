#include "freemult/boundary.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "freemult/error.hpp"
#include "freemult/parallel.hpp"
#include "freemult/transforms.hpp"

namespace freemult {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRealAxisTol = 1e-12;
constexpr double kThetaCoarse = 1e-6;
constexpr double kThetaFine = 1e-8;
constexpr int kRefine = 32;

void check_t(double t) {
  if (!(t > 1.0) || !std::isfinite(t)) throw Error(ErrorCode::TOutOfRange, "t must be > 1, got " + format_double(t));
}

std::vector<double> log_grid(Interval w, std::size_t n) {
  std::vector<double> r(n);
  const double span = std::log(w.hi / w.lo);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = i + 1 == n ? w.hi : w.lo * std::exp(span * static_cast<double>(i) / static_cast<double>(n - 1));
  return r;
}

/// Bisects between r_out (g <= level) and r_in (g > level).
double refine_endpoint(const Measure& m, double level, double r_out, double r_in, const BoundaryOptions& opt) {
  const double tol = std::max(1e-2 * opt.endpoint_tol, 4.0 * std::numeric_limits<double>::epsilon() * r_in);
  for (int i = 0; i < 200 && std::abs(r_in - r_out) > tol; ++i) {
    const double mid = 0.5 * (r_out + r_in);
    if (g_radial(m, mid, opt) > level) r_in = mid; else r_out = mid;
  }
  return 0.5 * (r_out + r_in);
}

struct Run {
  std::size_t first;
  std::size_t last;
};

std::vector<Run> runs_of(const std::vector<double>& g, double level) {
  std::vector<Run> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > level)) continue;
    if (!out.empty() && out.back().last + 1 == i) out.back().last = i;
    else out.push_back({i, i});
  }
  return out;
}

struct Scan {
  Interval window;
  std::vector<double> r;
  std::vector<double> g;
  std::vector<Interval> components;
};

std::vector<double> g_on(const Measure& m, const std::vector<double>& r, const BoundaryOptions& opt) {
  std::vector<double> g(r.size());
  parallel_for(r.size(), [&](std::size_t i) { g[i] = g_radial(m, r[i], opt); });
  return g;
}

/// Components of {g > level} restricted to the grid r, endpoints polished.
std::vector<Interval> components_on(const Measure& m, double level, const std::vector<double>& r,
                                    const std::vector<double>& g, const BoundaryOptions& opt, bool allow_refine) {
  std::vector<Interval> out;
  for (const Run& run : runs_of(g, level)) {
    const std::size_t n = r.size();
    if (allow_refine && run.last - run.first + 1 < 3 && run.first > 0 && run.last + 1 < n) {
      // Narrow component: rescan its neighborhood on a finer grid.
      const std::vector<double> fine_r = log_grid({r[run.first - 1], r[run.last + 1]}, kRefine * (run.last - run.first + 2) + 1);
      const std::vector<double> fine_g = g_on(m, fine_r, opt);
      for (const Run& f : runs_of(fine_g, level))
        if (f.last - f.first + 1 < 3)
          throw Error(ErrorCode::GridTooCoarse, "component near r = " + format_double(fine_r[f.first]) +
                                                    " is narrower than three grid cells; increase the grid");
      for (const Interval& c : components_on(m, level, fine_r, fine_g, opt, false)) out.push_back(c);
      continue;
    }
    const double lo = run.first == 0 ? r.front() : refine_endpoint(m, level, r[run.first - 1], r[run.first], opt);
    const double hi = run.last + 1 == n ? r.back() : refine_endpoint(m, level, r[run.last + 1], r[run.last], opt);
    out.push_back({lo, hi});
  }
  return out;
}

Scan scan(const Measure& m, double t, const BoundaryOptions& opt) {
  m.require_non_dirac("boundary scan");
  check_t(t);
  if (opt.grid < 3) throw Error(ErrorCode::InvalidArgument, "grid needs at least 3 points");
  const double lev = level(t);
  Scan s;
  s.window = opt.window.value_or(default_window(m));
  if (!(s.window.lo > 0.0 && s.window.hi > s.window.lo))
    throw Error(ErrorCode::InvalidArgument, "scan window must satisfy 0 < lo < hi");
  if (opt.expand_window) {
    for (int i = 0; i < opt.max_expansions && g_radial(m, s.window.lo, opt) > lev; ++i) s.window.lo /= 10.0;
    for (int i = 0; i < opt.max_expansions && g_radial(m, s.window.hi, opt) > lev; ++i) s.window.hi *= 10.0;
  }
  s.r = log_grid(s.window, opt.grid);
  s.g = g_on(m, s.r, opt);
  s.components = components_on(m, lev, s.r, s.g, opt, true);
  return s;
}

}  // namespace

double level(double t) {
  check_t(t);
  return 1.0 / (t - 1.0);
}

double g_angular(const Measure& m, double r, double theta) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "g needs r > 0");
  if (!(theta > 0.0 && theta <= std::numbers::pi)) throw Error(ErrorCode::DomainError, "g needs theta in (0, pi]");
  const Complex u = upper::u(m, std::polar(r, theta));
  return std::max(0.0, -u.imag() / theta);
}

double g_radial(const Measure& m, double r, const BoundaryOptions& opt) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "g needs r > 0");
  const upper::Kernel k = upper::kernel(m, r);
  const Complex u = upper::u(k);
  if (std::abs(u.imag()) <= kRealAxisTol) {
    const double g = (-r * upper::u_prime(k)).real();
    if (!std::isfinite(g) || g > opt.overflow) return kInf;
    return std::max(0.0, g);
  }
  // Boundary value of u is not real: r is in the support of rho, where
  // g(r, theta) grows like 1/theta unless the imaginary part is noise.
  const double coarse = g_angular(m, r, kThetaCoarse);
  const double fine = g_angular(m, r, kThetaFine);
  if (fine > opt.overflow || fine > 10.0 * coarse) return kInf;
  const double ratio = kThetaCoarse / kThetaFine;
  const double g = (ratio * fine - coarse) / (ratio - 1.0);
  return g > opt.overflow ? kInf : std::max(0.0, g);
}

double angle_A(const Measure& m, double t, double r, const BoundaryOptions& opt) {
  const double lev = level(t);
  if (!(g_radial(m, r, opt) > lev)) return 0.0;
  double lo = 0.0;
  double hi = std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = g_angular(m, r, mid);
    if (std::isnan(g)) throw Error(ErrorCode::ToleranceNotMet, "g is undefined at r = " + format_double(r));
    if (g > lev) lo = mid; else hi = mid;
  }
  if (hi >= std::numbers::pi)
    throw Error(ErrorCode::ToleranceNotMet, "no crossing of 1/(t-1) found at r = " + format_double(r));
  return 0.5 * (lo + hi);
}

Interval default_window(const Measure& m) {
  const double lo = m.positive_support_min();
  return {lo / 10.0, 10.0 * m.support_max()};
}

std::vector<Interval> v_plus(const Measure& m, double t, const BoundaryOptions& opt) {
  return scan(m, t, opt).components;
}

BoundaryCurve boundary_curve(const Measure& m, double t, const BoundaryOptions& opt) {
  Scan s = scan(m, t, opt);
  BoundaryCurve curve;
  curve.t = t;
  curve.components = s.components;
  curve.samples.resize(s.r.size());
  parallel_for(s.r.size(), [&](std::size_t i) {
    BoundarySample& b = curve.samples[i];
    b.r = s.r[i];
    b.g = s.g[i];
    for (std::size_t c = 0; c < s.components.size(); ++c)
      if (s.components[c].contains(b.r)) b.component = static_cast<int>(c);
    b.angle = b.component >= 0 ? angle_A(m, t, b.r, opt) : 0.0;
  });
  return curve;
}

}  // namespace freemult
