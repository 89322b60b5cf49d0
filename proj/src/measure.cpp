#include "freemult/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freemult/error.hpp"
#include "freemult/quadrature.hpp"

namespace freemult {
namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kWeightTolerance = 1e-10;

bool less_than(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.value() < b.value();
}

bool equal(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.value() == b.value();
}

Scalar add(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact(a.rational() + b.rational());
  return Scalar::inexact(a.value() + b.value());
}

[[noreturn]] void invalid_piece(std::size_t index, const std::string& why) {
  throw Error(ErrorCode::InvalidPiece, "piece " + std::to_string(index) + ": " + why);
}

/// Exact integral of sum c_k s^k over [lo, hi] when every input is exact.
std::optional<Rational> exact_polynomial_integral(const DensityPiece& p) {
  if (!p.lo.is_exact() || !p.hi.is_exact()) return std::nullopt;
  Rational total = 0;
  Rational lo_pow = p.lo.rational();
  Rational hi_pow = p.hi.rational();
  for (std::size_t k = 0; k < p.params.size(); ++k) {
    if (!p.params[k].is_exact()) return std::nullopt;
    total += p.params[k].rational() * (hi_pow - lo_pow) / Rational(k + 1);
    lo_pow *= p.lo.rational();
    hi_pow *= p.hi.rational();
  }
  return total;
}

std::optional<Rational> exact_table_integral(const DensityPiece& p) {
  Rational total = 0;
  for (std::size_t i = 0; i + 3 < p.params.size(); i += 2) {
    for (std::size_t j = i; j < i + 4; ++j)
      if (!p.params[j].is_exact()) return std::nullopt;
    total += (p.params[i + 2].rational() - p.params[i].rational()) *
             (p.params[i + 1].rational() + p.params[i + 3].rational()) / 2;
  }
  return total;
}

std::vector<PolySegment> build_segments(const DensityPiece& p, std::size_t index) {
  const double lo = p.lo.value();
  const double hi = p.hi.value();
  std::vector<PolySegment> out;
  switch (p.kind) {
    case ProfileKind::Uniform:
      if (!p.params.empty()) invalid_piece(index, "uniform pieces take no params");
      out.push_back({lo, hi, {p.weight.value() / (hi - lo)}});
      break;
    case ProfileKind::Polynomial: {
      if (p.params.empty()) invalid_piece(index, "polynomial needs coefficients");
      PolySegment seg{lo, hi, {}};
      for (const Scalar& c : p.params) seg.coeffs.push_back(c.value());
      out.push_back(std::move(seg));
      break;
    }
    case ProfileKind::Table: {
      const auto& v = p.params;
      if (v.size() < 4 || v.size() % 2 != 0) invalid_piece(index, "table needs at least two (x, f) pairs");
      if (!equal(v.front(), p.lo) || !equal(v[v.size() - 2], p.hi))
        invalid_piece(index, "table must start at lo and end at hi");
      for (std::size_t i = 0; i + 3 < v.size(); i += 2) {
        const double x0 = v[i].value();
        const double f0 = v[i + 1].value();
        const double x1 = v[i + 2].value();
        const double f1 = v[i + 3].value();
        if (!(x1 > x0)) invalid_piece(index, "table abscissae must increase");
        const double slope = (f1 - f0) / (x1 - x0);
        out.push_back({x0, x1, {f0 - slope * x0, slope}});
      }
      for (std::size_t i = 1; i < v.size(); i += 2)
        if (v[i].value() < 0.0) invalid_piece(index, "negative table value");
      break;
    }
  }
  return out;
}

void check_piece(const DensityPiece& p, std::size_t index, const std::vector<PolySegment>& segs) {
  if (!less_than(p.lo, p.hi)) invalid_piece(index, "requires lo < hi");
  if (!(p.weight.value() > 0.0)) invalid_piece(index, "weight must be positive");

  if (p.kind == ProfileKind::Polynomial) {
    constexpr int kProbes = 2048;
    for (const PolySegment& s : segs) {
      double scale = 0.0;
      for (int i = 0; i <= kProbes; ++i)
        scale = std::max(scale, std::abs(s(s.lo + (s.hi - s.lo) * i / kProbes)));
      for (int i = 0; i <= kProbes; ++i) {
        const double f = s(s.lo + (s.hi - s.lo) * i / kProbes);
        if (f < -1e-14 * std::max(1.0, scale)) invalid_piece(index, "profile is negative");
      }
    }
  }

  std::optional<Rational> exact;
  if (p.kind == ProfileKind::Polynomial) exact = exact_polynomial_integral(p);
  if (p.kind == ProfileKind::Table) exact = exact_table_integral(p);
  if (exact && p.weight.is_exact()) {
    if (*exact != p.weight.rational())
      invalid_piece(index, "profile integrates to " + to_string(*exact) + ", weight is " + p.weight.text());
    return;
  }
  if (p.kind == ProfileKind::Uniform) return;
  double integral = 0.0;
  for (const PolySegment& s : segs) integral += integrate_gl(s, s.lo, s.hi, 64);
  if (std::abs(integral - p.weight.value()) > kWeightTolerance)
    invalid_piece(index, "profile integrates to " + format_double(integral) + ", weight is " + p.weight.text());
}

}  // namespace

std::string_view profile_name(ProfileKind kind) noexcept {
  switch (kind) {
    case ProfileKind::Polynomial: return "polynomial";
    case ProfileKind::Uniform: return "uniform";
    case ProfileKind::Table: return "table";
  }
  return "uniform";
}

double PolySegment::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

void Measure::require_non_dirac(std::string_view operation) const {
  if (dirac_)
    throw Error(ErrorCode::DiracMeasure,
                std::string(operation) + " requires a measure that is not a point mass");
}

std::optional<Rational> Measure::exact_mass_at_zero() const {
  for (const Atom& a : atoms_) {
    if (!a.position.is_exact() || !a.mass.is_exact()) return std::nullopt;
    if (a.position.rational() == 0) return a.mass.rational();
  }
  for (const Atom& a : atoms_)
    if (!a.mass.is_exact()) return std::nullopt;
  return Rational(0);
}

Measure validate(const MeasureSpec& spec) {
  if (spec.atoms.empty() && spec.pieces.empty())
    throw Error(ErrorCode::NotProbability, "measure has no atoms and no pieces");

  Measure m;
  for (const Atom& a : spec.atoms) {
    if (a.position.value() < 0.0 || (a.position.is_exact() && a.position.rational() < 0))
      throw Error(ErrorCode::NegativeSupport, "atom at " + a.position.text() + " lies left of 0");
    if (!(a.mass.value() > 0.0) || a.mass.value() > 1.0 + kMassTolerance)
      throw Error(ErrorCode::NotProbability, "atom mass " + a.mass.text() + " is outside (0, 1]");
  }
  m.atoms_ = spec.atoms;
  std::stable_sort(m.atoms_.begin(), m.atoms_.end(),
                   [](const Atom& a, const Atom& b) { return less_than(a.position, b.position); });
  std::vector<Atom> merged;
  for (const Atom& a : m.atoms_) {
    if (!merged.empty() && equal(merged.back().position, a.position))
      merged.back().mass = add(merged.back().mass, a.mass);
    else
      merged.push_back(a);
  }
  m.atoms_ = std::move(merged);

  for (const DensityPiece& p : spec.pieces) {
    if (p.lo.value() < 0.0 || (p.lo.is_exact() && p.lo.rational() < 0))
      throw Error(ErrorCode::NegativeSupport, "piece starts at " + p.lo.text() + " < 0");
  }
  m.pieces_ = spec.pieces;
  std::stable_sort(m.pieces_.begin(), m.pieces_.end(),
                   [](const DensityPiece& a, const DensityPiece& b) { return less_than(a.lo, b.lo); });
  for (std::size_t i = 0; i < m.pieces_.size(); ++i) {
    const auto segs = build_segments(m.pieces_[i], i);
    check_piece(m.pieces_[i], i, segs);
    m.segments_.insert(m.segments_.end(), segs.begin(), segs.end());
    if (i > 0 && less_than(m.pieces_[i].lo, m.pieces_[i - 1].hi))
      throw Error(ErrorCode::OverlapError, "pieces " + std::to_string(i - 1) + " and " +
                                               std::to_string(i) + " overlap");
  }

  bool exact_mass = true;
  bool exact_positions = true;
  for (const Atom& a : m.atoms_) {
    exact_mass = exact_mass && a.mass.is_exact();
    exact_positions = exact_positions && a.position.is_exact();
  }
  for (const DensityPiece& p : m.pieces_) exact_mass = exact_mass && p.weight.is_exact();
  if (exact_mass) {
    Rational mass = 0;
    for (const Atom& a : m.atoms_) mass += a.mass.rational();
    for (const DensityPiece& p : m.pieces_) mass += p.weight.rational();
    if (mass != 1) throw Error(ErrorCode::NotProbability, "total mass is " + to_string(mass) + ", not 1");
  } else {
    double total = 0.0;
    for (const Atom& a : m.atoms_) total += a.mass.value();
    for (const DensityPiece& p : m.pieces_) total += p.weight.value();
    if (std::abs(total - 1.0) > kMassTolerance)
      throw Error(ErrorCode::NotProbability, "total mass is " + format_double(total) + ", not 1");
  }

  m.exact_atomic_ = m.pieces_.empty() && exact_mass && exact_positions;
  for (const Atom& a : m.atoms_) {
    m.atom_x_.push_back(a.position.value());
    m.atom_p_.push_back(a.mass.value());
  }
  m.dirac_ = m.pieces_.empty() && m.atoms_.size() == 1;

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double positive_lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.atom_x_.size(); ++i) {
    const double x = m.atom_x_[i];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    if (x > 0.0) positive_lo = std::min(positive_lo, x);
    if (x == 0.0) m.mass_at_zero_ = m.atom_p_[i];
  }
  for (const PolySegment& s : m.segments_) {
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi);
    positive_lo = std::min(positive_lo, s.lo > 0.0 ? s.lo : s.hi * 1e-3);
  }
  m.support_min_ = lo;
  m.support_max_ = hi;
  m.positive_min_ = std::isfinite(positive_lo) ? positive_lo : hi;
  return m;
}

Moment moment(const Measure& m, int k, std::size_t nodes) {
  if (k < -1) throw Error(ErrorCode::InvalidArgument, "moment order must be >= -1");
  if (k == -1) {
    if (m.mass_at_zero() > 0.0) throw Error(ErrorCode::MomentUndefined, "inverse moment with an atom at 0");
    for (const PolySegment& s : m.segments())
      if (!(s.lo > 0.0)) throw Error(ErrorCode::MomentUndefined, "inverse moment with density touching 0");
  }
  Moment out;
  if (m.is_exact_atomic()) {
    Rational total = 0;
    for (const Atom& a : m.atoms()) {
      const Rational& c = a.position.rational();
      Rational power = 1;
      if (k >= 0)
        for (int i = 0; i < k; ++i) power *= c;
      else
        power = 1 / c;
      total += a.mass.rational() * power;
    }
    out.exact = total;
    out.value = to_double(total);
    return out;
  }
  double total = 0.0;
  const auto& x = m.atom_positions();
  const auto& p = m.atom_masses();
  for (std::size_t i = 0; i < x.size(); ++i) total += p[i] * std::pow(x[i], k);
  for (const PolySegment& s : m.segments())
    total += integrate_gl([&](double v) { return s(v) * std::pow(v, k); }, s.lo, s.hi, nodes);
  out.value = total;
  return out;
}

Moment variance(const Measure& m, std::size_t nodes) {
  const Moment m1 = moment(m, 1, nodes);
  const Moment m2 = moment(m, 2, nodes);
  Moment out;
  if (m1.exact && m2.exact) {
    out.exact = *m2.exact - *m1.exact * *m1.exact;
    out.value = to_double(*out.exact);
  } else {
    out.value = std::max(0.0, m2.value - m1.value * m1.value);
  }
  return out;
}

Measure rescale_to_unit_mean(const Measure& m) {
  const Moment m1 = moment(m, 1);
  if (!(m1.value > 0.0)) throw Error(ErrorCode::HypothesisViolated, "mean is zero; cannot rescale");
  auto scale = [&](const Scalar& s, int power) {
    // s * m1^power
    if (m1.exact && s.is_exact()) {
      Rational f = 1;
      for (int i = 0; i < std::abs(power); ++i) f *= *m1.exact;
      return Scalar::exact(power >= 0 ? Rational(s.rational() * f) : Rational(s.rational() / f));
    }
    return Scalar::inexact(s.value() * std::pow(m1.value, power));
  };
  MeasureSpec spec = m.spec();
  for (Atom& a : spec.atoms) a.position = scale(a.position, -1);
  for (DensityPiece& p : spec.pieces) {
    p.lo = scale(p.lo, -1);
    p.hi = scale(p.hi, -1);
    if (p.kind == ProfileKind::Polynomial) {
      for (std::size_t k = 0; k < p.params.size(); ++k) p.params[k] = scale(p.params[k], static_cast<int>(k) + 1);
    } else if (p.kind == ProfileKind::Table) {
      for (std::size_t i = 0; i < p.params.size(); ++i) p.params[i] = scale(p.params[i], i % 2 == 0 ? -1 : 1);
    }
  }
  return validate(spec);
}

}  // namespace freemult
