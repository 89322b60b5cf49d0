#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freemult/boundary.hpp"
#include "freemult/intervals.hpp"
#include "freemult/measure.hpp"

namespace freemult {

/// Geometric grid used by the large-t scans.
const std::vector<double>& default_t_grid();

/// Support data of mu^t at one t.
struct ScanRecord {
  double t = 0.0;
  IntervalSet support;        // atoms plus the closure of the density support
  std::size_t components = 0; // components of V_t+
  double alpha = 0.0;         // min V_t+, 0 when V_t+ is empty
  double beta = 0.0;          // max V_t+
  double log_a = 0.0;         // log min supp(mu^t)
  double log_b = 0.0;         // log max supp(mu^t) = log ||mu^t||
  bool norm_from_atom = false;

  double a() const;
  double b() const;
  double norm() const { return b(); }
};

/// Support of mu^t and the V_t+ data it comes from. Endpoints are carried
/// in log form so that t in the thousands does not underflow.
ScanRecord scan_record(const Measure& m, double t, const BoundaryOptions& opt = {});

struct ScanResult {
  std::vector<double> t_grid;
  std::vector<ScanRecord> records;

  std::vector<double> norm_over_t;
  std::vector<double> t_alpha;
  std::vector<double> a_root;     // a_t^{1/t}
  std::vector<double> b_root;     // b_t^{1/t}
  std::vector<double> hausdorff;  // between consecutive supports

  // Limits the sequences are compared against, when the mode defines them.
  std::optional<double> norm_limit;   // e V
  std::optional<double> t_alpha_limit;  // 1 / V
  std::optional<double> a_root_limit;   // 1 / integral x^{-1} d mu
  std::optional<double> b_root_limit;   // m1

  bool components_nonincreasing = true;
  bool alpha_nonincreasing = true;
  std::vector<std::string> notes;

  /// |sequence - limit| per t; empty when the limit is not set.
  std::vector<double> norm_error() const;
  std::vector<double> t_alpha_error() const;
  std::vector<double> a_root_error() const;
  std::vector<double> b_root_error() const;
  /// True when every entry is strictly smaller than the previous one.
  static bool decreasing(const std::vector<double>& v);
};

/// Records and derived sequences for an increasing grid of t > 1.
ScanResult scan(const Measure& m, const std::vector<double>& t_grid, const BoundaryOptions& opt = {});

/// ||mu^t|| / t against e V. Requires m1 = 1: other means are rescaled when
/// `rescale` is set (noted in the result), else HypothesisViolated.
ScanResult norm_growth_scan(const Measure& m, const std::vector<double>& t_grid = default_t_grid(),
                            bool rescale = true, const BoundaryOptions& opt = {});

/// a_t^{1/t} and b_t^{1/t} against (integral x^{-1} d mu)^{-1} and m1.
/// Throws HypothesisViolated when mu has mass at 0.
ScanResult endpoint_exponents(const Measure& m, const std::vector<double>& t_grid = default_t_grid(),
                              const BoundaryOptions& opt = {});

struct ContinuityResult {
  double t0 = 0.0;
  std::vector<double> deltas;
  std::vector<double> distances;  // d_H(supp mu^t0, supp mu^(t0 + delta))
  /// Distances shrink strictly as |delta| decreases (ties at zero allowed).
  bool shrinking = false;
};

ContinuityResult continuity_scan(const Measure& m, double t0, const std::vector<double>& deltas,
                                 const BoundaryOptions& opt = {});

struct ThresholdResult {
  double t = 0.0;  // first grid t with a single component
  std::vector<double> t_grid;
  std::vector<std::size_t> counts;
  bool nonincreasing = true;
};

/// Throws NotReached, naming the largest t scanned, when no grid t has a
/// single component.
ThresholdResult component_threshold(const Measure& m, const std::vector<double>& t_grid = default_t_grid(),
                                    const BoundaryOptions& opt = {});

}  // namespace freemult
