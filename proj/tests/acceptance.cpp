// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "freemult/asymptotics.hpp"
#include "freemult/error.hpp"
#include "freemult/semigroup.hpp"
#include "freemult/series.hpp"
#include "freemult/subordination.hpp"
#include "freemult/verify.hpp"
#include "oracles.hpp"

using namespace freemult;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!ok || detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome normalization() {
  Outcome o;
  for (const char* name : {"mu_b.toml", "mu_a.toml"}) {
    const Measure m = oracle::load(name);
    for (double t : {1.5, 2.0, 5.0}) {
      const auto start = std::chrono::steady_clock::now();
      const SemigroupSnapshot s = snapshot(m, t);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const double err = std::abs(s.total_mass() - 1.0);
      o.require(err < 1e-4 && secs < 10.0, std::string(name) + " t=" + fmt("%g", t) + " |mass-1|=" + fmt("%.1e", err) +
                                               " " + fmt("%.2f", secs) + "s");
    }
  }
  return o;
}

Outcome atom_rules() {
  Outcome o;
  const std::vector<Atom> a = atoms_of_power(oracle::load("mu_a.toml"), 2.0);
  const bool one = a.size() == 1;
  o.require(one && std::abs(a[0].position.value() - 0.25) < 1e-12 && std::abs(a[0].mass.value() - 0.5) < 1e-12,
            "mu_a t=2 atom " + (one ? a[0].position.text() + " mass " + a[0].mass.text() : std::string("missing")));
  const Measure z = oracle::load("mu_0.toml");
  for (double t : {1.5, 2.0, 5.0, 25.0, 100.0, 800.0}) {
    bool found = false;
    for (const Atom& at : atoms_of_power(z, t))
      if (at.position.value() == 0.0 && std::abs(at.mass.value() - 0.5) < 1e-12) found = true;
    o.require(found, "mu_0 atom (0, 1/2) at t=" + fmt("%g", t));
  }
  return o;
}

Outcome moment_oracle() {
  Outcome o;
  const Measure b = oracle::load("mu_b.toml");
  const MomentSeries sigma = sigma_series(psi_series(b, 8));
  for (int n : {2, 3}) {
    const MomentSeries exact = power_moments(sigma, n, 8);
    const SemigroupSnapshot s = snapshot(b, static_cast<double>(n));
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) worst = std::max(worst, rel(s.moment(k), to_double(exact.at(k))));
    o.require(worst < 1e-3, "mu_B^" + std::to_string(n) + " m1..m4 max rel err " + fmt("%.1e", worst));
    if (n == 2) o.require(exact.at(2) == Rational(3, 2), "m2(mu_B^2) = " + to_string(exact.at(2)));
  }
  return o;
}

Outcome cross_density() {
  Outcome o;
  const Measure b = oracle::load("mu_b.toml");
  for (double t : {1.5, 2.0, 5.0}) {
    const std::vector<Interval> v = v_plus(b, t);
    double worst = 0.0;
    int points = 0;
    for (const Interval& c : v) {
      const double lo = std::log(c.lo), hi = std::log(c.hi);
      for (int i = 0; i < 50; ++i) {
        const double r = std::exp(lo + (hi - lo) * (0.02 + 0.96 * i / 49.0));
        const DensityPoint p = density_at(b, t, r);
        const double f = density_via_inversion(b, t, p.x);
        worst = std::max(worst, rel(f, p.f));
        ++points;
      }
    }
    o.require(points >= 50 && worst < 1e-4, "t=" + fmt("%g", t) + " " + std::to_string(points) +
                                                " points max rel err " + fmt("%.1e", worst));
  }
  return o;
}

Outcome norm_growth() {
  Outcome o;
  const ScanResult r = norm_growth_scan(oracle::load("mu_b.toml"), {100, 200, 400, 800});
  const double limit = std::numbers::e / 4;
  std::string seq;
  for (double e : r.norm_error()) seq += fmt(" %.2e", e / limit);
  o.require(ScanResult::decreasing(r.norm_error()), "|ratio - e/4|/(e/4):" + seq + " strictly decreasing");
  o.require(r.norm_error().back() / limit < 0.02, "final " + fmt("%.2f%%", 100 * r.norm_error().back() / limit));
  const double ta = r.t_alpha.back();
  o.require(rel(ta, 4.0) < 0.02, "t alpha_t at 800 = " + fmt("%.5f", ta) + " (" + fmt("%.2f%%", 100 * rel(ta, 4.0)) + ")");
  return o;
}

Outcome endpoints() {
  Outcome o;
  const ScanResult r = endpoint_exponents(oracle::load("mu_b.toml"));
  o.require(r.b_root_error().back() < 0.02, "|b^(1/t) - 1| at 800 = " + fmt("%.4f", r.b_root_error().back()));
  o.require(r.a_root_error().back() < 0.02, "|a^(1/t) - 3/4| at 800 = " + fmt("%.4f", r.a_root_error().back()));
  o.require(ScanResult::decreasing(r.b_root_error()), "b errors decreasing");
  o.require(ScanResult::decreasing(r.a_root_error()), "a errors decreasing");
  return o;
}

Outcome continuity() {
  Outcome o;
  const ContinuityResult c = continuity_scan(oracle::load("mu_b.toml"), 2.0, {0.1, 0.01, 0.001});
  const auto& d = c.distances;
  o.require(d[0] > d[1] && d[1] > d[2], "d_H = " + fmt("%.2e", d[0]) + ", " + fmt("%.2e", d[1]) + ", " +
                                            fmt("%.2e", d[2]) + " strictly decreasing");
  o.require(d[2] < 1e-2, "final < 1e-2");
  return o;
}

Outcome components() {
  Outcome o;
  const ThresholdResult r = component_threshold(oracle::load("mu_c.toml"), {1.1, 1.5, 2, 4, 8, 16});
  std::string seq;
  for (std::size_t n : r.counts) seq += " " + std::to_string(n);
  o.require(r.nonincreasing, "counts" + seq + " non-increasing");
  o.require(r.counts.back() == 1, "reaches 1 at t = " + fmt("%g", r.t));
  return o;
}

Outcome invariants() {
  Outcome o;
  for (const char* name : {"mu_b.toml", "mu_a.toml", "mu_0.toml", "mu_c.toml", "mixed.toml", "uniform.toml"}) {
    const VerifyReport r = verify(oracle::load(name));
    std::string failed;
    for (const VerifyCheck& c : r.checks)
      if (!c.passed) failed += " " + c.name + (c.t ? "@" + fmt("%g", c.t) : "");
    o.require(r.passed(), std::string(name) + " " + std::to_string(r.checks.size()) + " checks" +
                              (failed.empty() ? "" : ", failing:" + failed));
  }
  return o;
}

Outcome series() {
  Outcome o;
  for (const char* name : {"mu_b.toml", "mu_a.toml", "mixed.toml", "mu_c.toml"}) {
    const MomentSeries sigma = sigma_series(psi_series(oracle::load(name), 8));
    const MomentSeries direct = power_moments(sigma, 6, 8);
    const MomentSeries via = power_moments(sigma_series(power_moments(sigma, 2, 8)), 3, 8);
    o.require(direct.coeffs == via.coeffs, std::string(name) + " Sigma^6 = (Sigma^2)^3");
    const Rational m1 = psi_series(oracle::load(name), 8).at(1);
    bool mult = true;
    Rational p = 1;
    for (int n = 1; n <= 6; ++n) {
      p *= m1;
      mult = mult && power_moments(sigma, n, 8).at(1) == p;
    }
    o.require(mult, std::string(name) + " m1(mu^n) = m1^n");
  }
  const MomentSeries b = sigma_series(psi_series(oracle::load("mu_b.toml"), 8));
  bool var = true;
  for (int n = 1; n <= 5; ++n) {
    const MomentSeries p = power_moments(b, n, 8);
    var = var && p.at(2) - p.at(1) * p.at(1) == Rational(n, 4);
  }
  o.require(var, "var(mu_B^n) = n/4 for n <= 5");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"normalization", normalization},   {"atom rules", atom_rules},     {"moment oracle", moment_oracle},
      {"cross-oracle density", cross_density}, {"norm growth", norm_growth}, {"endpoint exponents", endpoints},
      {"Hausdorff continuity", continuity}, {"component count", components}, {"structural invariants", invariants},
      {"series self-consistency", series}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o.pass = false;
      o.detail = std::string(e.name()) + ": " + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %-24s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
