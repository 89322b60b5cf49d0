#include "freemult/config.hpp"

#include <cstdio>

#include "freemult/error.hpp"

namespace freemult {
namespace {

void positive(double v, const char* name) {
  if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive");
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void RunConfig::check() const {
  positive(endpoint_tol, "endpoint tolerance");
  positive(overflow, "overflow");
  positive(mass_tol, "mass tolerance");
  positive(realness_tol, "realness tolerance");
  positive(eps, "eps");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "samples must be at least 2");
  if (grid && *grid < 3) throw Error(ErrorCode::InvalidArgument, "grid must be at least 3");
  if (format != "csv" && format != "json") throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
  if (window && !(window->lo > 0.0 && window->hi > window->lo))
    throw Error(ErrorCode::InvalidArgument, "window must satisfy 0 < lo < hi");
}

nlohmann::json RunConfig::to_json() const {
  using nlohmann::json;
  json j;
  j["command"] = command;
  j["measure"] = measure;
  j["format"] = format;
  j["t"] = t ? json(*t) : json(nullptr);
  j["window"] = window ? json::array({window->lo, window->hi}) : json(nullptr);
  j["grid"] = grid ? json(*grid) : json(nullptr);
  j["samples"] = samples;
  j["endpoint_tol"] = endpoint_tol;
  j["overflow"] = overflow;
  j["mass_tol"] = mass_tol;
  j["realness_tol"] = realness_tol;
  j["eps"] = eps;
  json pts = json::array();
  for (Complex z : at) pts.push_back({z.real(), z.imag()});
  j["at"] = pts;
  j["which"] = which;
  j["x"] = x;
  j["n"] = n;
  j["order"] = order;
  j["mode"] = mode;
  j["tgrid"] = tgrid;
  j["t0"] = t0;
  j["deltas"] = deltas;
  return j;
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json().dump())));
  return buf;
}

BoundaryOptions RunConfig::boundary() const {
  BoundaryOptions o;
  o.overflow = overflow;
  o.endpoint_tol = endpoint_tol;
  if (grid) o.grid = *grid;
  o.window = window;
  return o;
}

SnapshotOptions RunConfig::snapshot() const {
  SnapshotOptions o;
  o.samples_per_component = samples;
  o.mass_tolerance = mass_tol;
  o.boundary = boundary();
  return o;
}

RhoOptions RunConfig::rho() const {
  RhoOptions o;
  o.window = window;
  if (grid) o.grid = *grid;
  o.eps = eps;
  return o;
}

SubordinationOptions RunConfig::subordination() const {
  SubordinationOptions o;
  o.boundary = boundary();
  return o;
}

VerifyOptions RunConfig::verify() const {
  VerifyOptions o;
  if (!tgrid.empty()) o.t_values = tgrid;
  o.mass_tol = mass_tol;
  o.realness_tol = realness_tol;
  o.snapshot = snapshot();
  o.rho.eps = eps;
  return o;
}

}  // namespace freemult
