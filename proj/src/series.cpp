#include "freemult/series.hpp"

#include <optional>

#include "freemult/error.hpp"

namespace freemult {
namespace {

using Poly = std::vector<Rational>;  // coefficients of z^0 .. z^(size - 1)

Poly mul(const Poly& a, const Poly& b, std::size_t n) {
  Poly out(n, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// 1 / a to n terms; a[0] != 0.
Poly reciprocal(const Poly& a, std::size_t n) {
  Poly out(n, Rational(0));
  out[0] = 1 / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * out[k - j];
    out[k] = -s / a[0];
  }
  return out;
}

Poly power(const Poly& a, int e, std::size_t n) {
  Poly out(n, Rational(0));
  out[0] = 1;
  Poly base = a;
  base.resize(n, Rational(0));
  for (unsigned k = static_cast<unsigned>(e); k; k >>= 1) {
    if (k & 1) out = mul(out, base, n);
    if (k > 1) base = mul(base, base, n);
  }
  return out;
}

/// For f(w) = w h(w) with h(0) != 0, the series k(z) = f^{-1}(z) / z to n
/// terms: [z^(j-1)] k = (1/j) [w^(j-1)] h^(-j).
Poly inverse_over_z(const Poly& h, std::size_t n) {
  if (h.empty() || h[0] == 0) throw Error(ErrorCode::NotInvertible, "leading coefficient is zero");
  const Poly inv = reciprocal(h, n);
  Poly out(n, Rational(0));
  Poly p = inv;  // h^(-j)
  for (std::size_t j = 1; j <= n; ++j) {
    out[j - 1] = p[j - 1] / Rational(j);
    if (j < n) p = mul(p, inv, n);
  }
  return out;
}

Rational rpow(const Rational& x, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= x;
  return out;
}

/// Integral of s^k against a density piece, when every number is exact.
std::optional<Rational> exact_piece_moment(const DensityPiece& p, unsigned k) {
  if (!p.lo.is_exact() || !p.hi.is_exact()) return std::nullopt;
  for (const Scalar& s : p.params)
    if (!s.is_exact()) return std::nullopt;
  // integral over [a, b] of s^k (alpha + beta s)
  auto linear = [&](const Rational& a, const Rational& b, const Rational& alpha, const Rational& beta) {
    return alpha * (rpow(b, k + 1) - rpow(a, k + 1)) / Rational(k + 1) +
           beta * (rpow(b, k + 2) - rpow(a, k + 2)) / Rational(k + 2);
  };
  const Rational lo = p.lo.rational(), hi = p.hi.rational();
  switch (p.kind) {
    case ProfileKind::Uniform:
      if (!p.weight.is_exact()) return std::nullopt;
      return linear(lo, hi, p.weight.rational() / (hi - lo), 0);
    case ProfileKind::Polynomial: {
      Rational total = 0;
      for (std::size_t j = 0; j < p.params.size(); ++j) {
        const unsigned e = k + static_cast<unsigned>(j) + 1;
        total += p.params[j].rational() * (rpow(hi, e) - rpow(lo, e)) / Rational(e);
      }
      return total;
    }
    case ProfileKind::Table: {
      Rational total = 0;
      for (std::size_t i = 0; i + 3 < p.params.size(); i += 2) {
        const Rational x0 = p.params[i].rational(), f0 = p.params[i + 1].rational();
        const Rational x1 = p.params[i + 2].rational(), f1 = p.params[i + 3].rational();
        const Rational beta = (f1 - f0) / (x1 - x0);
        total += linear(x0, x1, f0 - beta * x0, beta);
      }
      return total;
    }
  }
  return std::nullopt;
}

std::optional<Rational> exact_moment(const Measure& m, unsigned k) {
  Rational total = 0;
  for (const Atom& a : m.atoms()) {
    if (!a.position.is_exact() || !a.mass.is_exact()) return std::nullopt;
    total += a.mass.rational() * rpow(a.position.rational(), k);
  }
  for (const DensityPiece& p : m.pieces()) {
    const auto v = exact_piece_moment(p, k);
    if (!v) return std::nullopt;
    total += *v;
  }
  return total;
}

void require_order(int order) {
  if (order < 3) throw Error(ErrorCode::InvalidArgument, "series order must be at least 3, got " + std::to_string(order));
}

}  // namespace

Rational MomentSeries::at(int k) const {
  const int i = k - lowest;
  if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0;
  return coeffs[static_cast<std::size_t>(i)];
}

std::vector<std::string> MomentSeries::to_strings() const {
  std::vector<std::string> out;
  for (const Rational& c : coeffs) out.push_back(to_string(c));
  return out;
}

MomentSeries psi_series(const Measure& m, int order, bool allow_inexact) {
  require_order(order);
  MomentSeries out;
  out.lowest = 1;
  for (int k = 1; k <= order; ++k) {
    if (const auto q = exact_moment(m, static_cast<unsigned>(k))) {
      out.coeffs.push_back(*q);
      continue;
    }
    if (!allow_inexact) throw Error(ErrorCode::ExactnessLost, "measure has inexact data; moments are not exact");
    out.exact = false;
    out.coeffs.push_back(Rational(moment(m, k).value));
  }
  return out;
}

MomentSeries sigma_series(const MomentSeries& psi) {
  if (psi.lowest != 1) throw Error(ErrorCode::InvalidArgument, "sigma_series expects a series starting at z^1");
  require_order(psi.order());
  if (psi.at(1) == 0) throw Error(ErrorCode::NotInvertible, "m1 = 0; eta has no compositional inverse");
  const std::size_t n = psi.coeffs.size();  // terms of eta / z
  Poly p(n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) p[i + 1] = psi.coeffs[i];
  Poly one_plus = p;
  one_plus[0] = 1;
  const Poly eta = mul(p, reciprocal(one_plus, n + 1), n + 1);
  const Poly h(eta.begin() + 1, eta.end());
  MomentSeries out;
  out.lowest = 0;
  out.coeffs = inverse_over_z(h, n);
  out.exact = psi.exact;
  return out;
}

MomentSeries power_moments(const MomentSeries& sigma, int n, int order) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be a positive integer");
  if (sigma.lowest != 0) throw Error(ErrorCode::InvalidArgument, "power_moments expects a series starting at z^0");
  require_order(order);
  const auto terms = static_cast<std::size_t>(order);  // eta / z through z^(order - 1)
  if (sigma.coeffs.size() < terms)
    throw Error(ErrorCode::InvalidArgument, "sigma series is too short for order " + std::to_string(order));
  const Poly s(sigma.coeffs.begin(), sigma.coeffs.begin() + static_cast<std::ptrdiff_t>(terms));
  const Poly sn = power(s, n, terms);
  // eta_new^{-1}(w) = w Sigma^n(w), so eta_new(z) = z k(z).
  const Poly k = inverse_over_z(sn, terms);
  Poly eta(terms + 1, Rational(0));
  for (std::size_t i = 0; i < terms; ++i) eta[i + 1] = k[i];
  Poly one_minus = eta;
  for (Rational& c : one_minus) c = -c;
  one_minus[0] = 1;
  const Poly psi = mul(eta, reciprocal(one_minus, terms + 1), terms + 1);
  MomentSeries out;
  out.lowest = 1;
  out.coeffs.assign(psi.begin() + 1, psi.end());
  out.exact = sigma.exact;
  return out;
}

}  // namespace freemult
