#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "freemult/scalar.hpp"

namespace freemult {

struct Atom {
  Scalar position;
  Scalar mass;
};

enum class ProfileKind { Polynomial, Uniform, Table };

std::string_view profile_name(ProfileKind kind) noexcept;

/// Absolutely continuous part of a measure on [lo, hi].
///  - Polynomial: params are c0..cd with density(s) = sum c_k s^k.
///  - Uniform: params empty, density = weight / (hi - lo).
///  - Table: params are x0, f0, x1, f1, ... with x0 = lo and x_last = hi,
///    linearly interpolated.
struct DensityPiece {
  Scalar lo;
  Scalar hi;
  ProfileKind kind = ProfileKind::Uniform;
  std::vector<Scalar> params;
  Scalar weight;
};

/// A polynomial density restricted to [lo, hi], monomial basis in s.
struct PolySegment {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;

  double operator()(double s) const;
};

/// Unvalidated input: whatever a file or caller supplied.
struct MeasureSpec {
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
};

/// A validated probability measure on [0, inf) with compact support.
/// Immutable; safe to share across threads.
class Measure {
 public:
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensityPiece>& pieces() const noexcept { return pieces_; }

  /// Canonical input form; validate(m.spec()) reproduces m.
  MeasureSpec spec() const { return {atoms_, pieces_}; }

  /// Single support point. Dirac measures validate but semigroup operations
  /// reject them.
  bool is_dirac() const noexcept { return dirac_; }

  /// True when every number is an exact rational and there are no pieces.
  bool is_exact_atomic() const noexcept { return exact_atomic_; }

  /// Throws DiracMeasure naming `operation` when the measure is degenerate.
  void require_non_dirac(std::string_view operation) const;

  // Double-precision views used by the numerical kernels.
  const std::vector<double>& atom_positions() const noexcept { return atom_x_; }
  const std::vector<double>& atom_masses() const noexcept { return atom_p_; }
  const std::vector<PolySegment>& segments() const noexcept { return segments_; }

  double support_min() const noexcept { return support_min_; }
  double support_max() const noexcept { return support_max_; }
  /// Smallest strictly positive support point.
  double positive_support_min() const noexcept { return positive_min_; }
  double mass_at_zero() const noexcept { return mass_at_zero_; }
  /// Exact mass at zero when the atoms are exact, else nullopt.
  std::optional<Rational> exact_mass_at_zero() const;

 private:
  friend Measure validate(const MeasureSpec& spec);

  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  std::vector<double> atom_x_;
  std::vector<double> atom_p_;
  std::vector<PolySegment> segments_;
  bool dirac_ = false;
  bool exact_atomic_ = false;
  double support_min_ = 0.0;
  double support_max_ = 0.0;
  double positive_min_ = 0.0;
  double mass_at_zero_ = 0.0;
};

/// Checks the probability axioms and returns the canonical form: duplicate
/// atoms merged, atoms sorted by position, pieces sorted by lo.
/// Throws NotProbability, NegativeSupport, OverlapError or InvalidPiece.
Measure validate(const MeasureSpec& spec);

struct Moment {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// Integral of s^k for k >= -1. Exact for rational atomic measures; pieces
/// use Gauss-Legendre with `nodes` points per polynomial segment.
Moment moment(const Measure& m, int k, std::size_t nodes = 64);

Moment variance(const Measure& m, std::size_t nodes = 64);

/// The same measure pushed forward by s -> s / m1, so the result has mean 1.
Measure rescale_to_unit_mean(const Measure& m);

}  // namespace freemult
