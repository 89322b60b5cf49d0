#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freemult/asymptotics.hpp"
#include "freemult/boundary.hpp"
#include "freemult/rho.hpp"
#include "freemult/semigroup.hpp"
#include "freemult/subordination.hpp"
#include "freemult/verify.hpp"

namespace freemult {

/// Everything a command depends on. Serialized into every output header so
/// a result can be reproduced from its own first line.
struct RunConfig {
  std::string command;
  std::string measure;
  std::string output;           // empty: standard output
  std::string format = "csv";   // csv | json

  std::optional<double> t;
  std::optional<Interval> window;
  std::optional<std::size_t> grid;  // boundary scan (2000) or rho grid (4000)
  std::size_t samples = 256;
  double endpoint_tol = 1e-10;
  double overflow = 1e12;
  double mass_tol = 1e-4;
  double realness_tol = 1e-8;
  double eps = 1e-7;

  // transform
  std::vector<Complex> at;
  std::string which = "eta";
  // density-oracle
  std::vector<double> x;
  // oracle
  int n = 2;
  int order = 8;
  // scan and verify
  std::string mode;
  std::vector<double> tgrid;
  double t0 = 2.0;
  std::vector<double> deltas{0.1, 0.01, 0.001};

  /// Throws InvalidArgument for non-positive tolerances and sizes.
  void check() const;

  nlohmann::json to_json() const;
  /// FNV-1a 64 of the compact config JSON (keys sorted), as 16 hex digits.
  std::string hash() const;

  BoundaryOptions boundary() const;
  SnapshotOptions snapshot() const;
  RhoOptions rho() const;
  SubordinationOptions subordination() const;
  VerifyOptions verify() const;
};

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace freemult
