#pragma once

#include <cstddef>
#include <vector>

namespace freemult {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule. Rules are computed once per n and cached;
/// the returned reference stays valid for the lifetime of the program.
const QuadratureRule& gauss_legendre(std::size_t n);

/// Integrates f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
auto integrate_gl(F&& f, double a, double b, std::size_t n = 64) {
  const QuadratureRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  decltype(f(mid)) sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

}  // namespace freemult
