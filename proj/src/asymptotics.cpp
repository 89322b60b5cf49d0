#include "freemult/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "freemult/error.hpp"
#include "freemult/parallel.hpp"
#include "freemult/semigroup.hpp"

namespace freemult {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_t(double t) {
  if (!(t > 1.0) || !std::isfinite(t)) throw Error(ErrorCode::TOutOfRange, "t must be > 1, got " + format_double(t));
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "t grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_t(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "t grid must increase");
  }
}

std::vector<double> errors(const std::vector<double>& v, const std::optional<double>& limit) {
  std::vector<double> out;
  if (!limit) return out;
  for (double x : v) out.push_back(std::abs(x - *limit));
  return out;
}

bool unit_mean(const Moment& m1) { return m1.exact ? *m1.exact == 1 : std::abs(m1.value - 1.0) <= 1e-12; }

}  // namespace

const std::vector<double>& default_t_grid() {
  static const std::vector<double> grid{25, 50, 100, 200, 400, 800};
  return grid;
}

double ScanRecord::a() const { return std::exp(log_a); }
double ScanRecord::b() const { return std::exp(log_b); }

ScanRecord scan_record(const Measure& m, double t, const BoundaryOptions& opt) {
  m.require_non_dirac("scan");
  check_t(t);
  ScanRecord rec;
  rec.t = t;
  rec.log_a = kInf;
  rec.log_b = -kInf;
  for (const Atom& a : atoms_of_power(m, t)) {
    const double x = a.position.value();
    rec.support.add_point(x);
    double log_x = std::log(x);
    if (!std::isfinite(x)) {
      // c^t overflowed; recover log c^t from the atom of mu it came from.
      log_x = -kInf;
      for (std::size_t i = 0; i < m.atom_positions().size(); ++i) {
        const double c = m.atom_positions()[i];
        if (std::isinf(std::pow(c, t)) && t * m.atom_masses()[i] > t - 1.0) log_x = std::max(log_x, t * std::log(c));
      }
    }
    rec.log_a = std::min(rec.log_a, log_x);
    if (log_x > rec.log_b) {
      rec.log_b = log_x;
      rec.norm_from_atom = true;
    }
  }
  const std::vector<Interval> v = v_plus(m, t, opt);
  rec.components = v.size();
  if (!v.empty()) {
    rec.alpha = v.front().lo;
    rec.beta = v.back().hi;
  }
  for (const Interval& comp : v) {
    const double x_lo = -curve_point(m, t, comp.lo, opt).log_h;
    const double x_hi = -curve_point(m, t, comp.hi, opt).log_h;
    const double lo = std::min(x_lo, x_hi), hi = std::max(x_lo, x_hi);
    rec.support.add({std::exp(lo), std::exp(hi)});
    rec.log_a = std::min(rec.log_a, lo);
    if (hi >= rec.log_b) {
      rec.log_b = hi;
      rec.norm_from_atom = false;
    }
  }
  if (rec.support.empty()) throw Error(ErrorCode::EmptySet, "mu^t has neither atoms nor a density component");
  return rec;
}

std::vector<double> ScanResult::norm_error() const { return errors(norm_over_t, norm_limit); }
std::vector<double> ScanResult::t_alpha_error() const { return errors(t_alpha, t_alpha_limit); }
std::vector<double> ScanResult::a_root_error() const { return errors(a_root, a_root_limit); }
std::vector<double> ScanResult::b_root_error() const { return errors(b_root, b_root_limit); }

bool ScanResult::decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

ScanResult scan(const Measure& m, const std::vector<double>& t_grid, const BoundaryOptions& opt) {
  m.require_non_dirac("scan");
  check_grid(t_grid);
  ScanResult out;
  out.t_grid = t_grid;
  out.records.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { out.records[i] = scan_record(m, t_grid[i], opt); });
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const ScanRecord& r = out.records[i];
    out.norm_over_t.push_back(r.norm() / r.t);
    out.t_alpha.push_back(r.t * r.alpha);
    out.a_root.push_back(std::exp(r.log_a / r.t));
    out.b_root.push_back(std::exp(r.log_b / r.t));
    if (i == 0) continue;
    const ScanRecord& p = out.records[i - 1];
    out.hausdorff.push_back(hausdorff_distance(p.support, r.support));
    if (r.components > p.components) out.components_nonincreasing = false;
    if (r.components > 0 && p.components > 0 && r.alpha > p.alpha + opt.endpoint_tol) out.alpha_nonincreasing = false;
  }
  for (const ScanRecord& r : out.records)
    if (r.norm_from_atom) out.notes.push_back("norm at t = " + format_double(r.t) + " is attained by an atom");
  return out;
}

ScanResult norm_growth_scan(const Measure& m, const std::vector<double>& t_grid, bool rescale,
                            const BoundaryOptions& opt) {
  m.require_non_dirac("norm scan");
  const Moment m1 = moment(m, 1);
  std::optional<Measure> scaled;
  if (!unit_mean(m1)) {
    if (!rescale) throw Error(ErrorCode::HypothesisViolated, "norm growth needs m1 = 1, got " + format_double(m1.value));
    scaled = rescale_to_unit_mean(m);
  }
  const Measure& unit = scaled ? *scaled : m;
  ScanResult out = scan(unit, t_grid, opt);
  if (scaled) out.notes.insert(out.notes.begin(), "input rescaled to unit mean (m1 was " + format_double(m1.value) + ")");
  const double v = variance(unit).value;
  out.norm_limit = std::numbers::e * v;
  out.t_alpha_limit = 1.0 / v;
  return out;
}

ScanResult endpoint_exponents(const Measure& m, const std::vector<double>& t_grid, const BoundaryOptions& opt) {
  m.require_non_dirac("endpoint scan");
  if (!(m.support_min() > 0.0))
    throw Error(ErrorCode::HypothesisViolated, "endpoint exponents need supp(mu) inside [c, d] with c > 0");
  ScanResult out = scan(m, t_grid, opt);
  out.b_root_limit = moment(m, 1).value;
  out.a_root_limit = 1.0 / moment(m, -1).value;
  return out;
}

ContinuityResult continuity_scan(const Measure& m, double t0, const std::vector<double>& deltas,
                                 const BoundaryOptions& opt) {
  m.require_non_dirac("continuity scan");
  check_t(t0);
  for (double d : deltas) check_t(t0 + d);
  ContinuityResult out;
  out.t0 = t0;
  out.deltas = deltas;
  out.distances.assign(deltas.size(), 0.0);
  const IntervalSet base = scan_record(m, t0, opt).support;
  parallel_for(deltas.size(), [&](std::size_t i) {
    if (deltas[i] == 0.0) return;
    out.distances[i] = hausdorff_distance(base, scan_record(m, t0 + deltas[i], opt).support);
  });
  std::vector<std::size_t> order(deltas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(deltas[a]) > std::abs(deltas[b]); });
  out.shrinking = true;
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double prev = out.distances[order[k - 1]], cur = out.distances[order[k]];
    if (!(cur < prev || (cur == 0.0 && prev == 0.0))) out.shrinking = false;
  }
  return out;
}

ThresholdResult component_threshold(const Measure& m, const std::vector<double>& t_grid, const BoundaryOptions& opt) {
  m.require_non_dirac("component threshold");
  check_grid(t_grid);
  ThresholdResult out;
  out.t_grid = t_grid;
  out.counts.assign(t_grid.size(), 0);
  parallel_for(t_grid.size(), [&](std::size_t i) { out.counts[i] = v_plus(m, t_grid[i], opt).size(); });
  std::optional<double> first;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0 && out.counts[i] > out.counts[i - 1]) out.nonincreasing = false;
    if (!first && out.counts[i] == 1) first = t_grid[i];
  }
  if (!first)
    throw Error(ErrorCode::NotReached,
                "V_t+ has more than one component up to t = " + format_double(t_grid.back()));
  out.t = *first;
  return out;
}

}  // namespace freemult
