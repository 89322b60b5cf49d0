#include "freemult/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "freemult/asymptotics.hpp"
#include "freemult/config.hpp"
#include "freemult/error.hpp"
#include "freemult/measure_io.hpp"
#include "freemult/rho.hpp"
#include "freemult/semigroup.hpp"
#include "freemult/series.hpp"
#include "freemult/subordination.hpp"
#include "freemult/transforms.hpp"
#include "freemult/verify.hpp"

namespace freemult::cli {
namespace {

using nlohmann::json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

/// What a command produced. `result` replaces the table in JSON output
/// when set; `text` is emitted verbatim after the header.
struct Output {
  Table table;
  std::optional<json> result;
  std::optional<std::string> text;
  int status = 0;
  std::vector<std::string> notes;
};

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  return format_double(v.get<double>());
}

/// Doubles that JSON cannot carry (inf, nan) become strings.
json number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

void emit(const RunConfig& cfg, const Output& o, std::ostream& os) {
  if (cfg.format == "json") {
    json j;
    j["command"] = cfg.command;
    j["config_hash"] = cfg.hash();
    j["config"] = cfg.to_json();
    if (o.result) {
      j["result"] = *o.result;
    } else if (o.text) {
      j["result"] = *o.text;
    } else {
      j["columns"] = o.table.columns;
      j["rows"] = o.table.rows;
    }
    os << j.dump(2) << '\n';
    return;
  }
  os << "# command=" << cfg.command << " config_hash=" << cfg.hash() << " config=" << cfg.to_json().dump() << '\n';
  if (o.text) {
    os << *o.text;
    return;
  }
  for (std::size_t i = 0; i < o.table.columns.size(); ++i) os << (i ? "," : "") << o.table.columns[i];
  os << '\n';
  for (const auto& row : o.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
    os << '\n';
  }
}

Measure load(const RunConfig& cfg) { return validate(read_measure_file(cfg.measure)); }

double require_t(const RunConfig& cfg, bool allow_one = false) {
  if (!cfg.t) throw Error(ErrorCode::InvalidArgument, "--t is required");
  const double t = *cfg.t;
  if (!std::isfinite(t) || !(allow_one ? t >= 1.0 : t > 1.0))
    throw Error(ErrorCode::TOutOfRange, std::string("t must be ") + (allow_one ? ">= 1" : "> 1") + ", got " + format_double(t));
  return t;
}

json scalar_json(const Scalar& s) { return s.is_exact() ? json(s.text()) : number(s.value()); }

std::vector<Interval> density_support(const Measure& m, double t, const BoundaryOptions& opt) {
  std::vector<Interval> out;
  for (const Interval& c : v_plus(m, t, opt)) {
    const double a = std::exp(-curve_point(m, t, c.lo, opt).log_h);
    const double b = std::exp(-curve_point(m, t, c.hi, opt).log_h);
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

Output cmd_transform(const RunConfig& cfg) {
  const Measure m = load(cfg);
  if (cfg.at.empty()) throw Error(ErrorCode::InvalidArgument, "--at is required");
  Output o;
  o.table.columns = {"re_z", "im_z", "re", "im"};
  for (Complex z : cfg.at) {
    Complex v;
    if (cfg.which == "cauchy") v = cauchy(m, z);
    else if (cfg.which == "psi") v = psi(m, SlitPoint(z));
    else if (cfg.which == "eta") v = eta(m, SlitPoint(z));
    else if (cfg.which == "u") v = u_value(m, SlitPoint(z));
    else if (cfg.which == "uprime") v = u_prime(m, SlitPoint(z));
    else throw Error(ErrorCode::InvalidArgument, "--which must be psi, eta, u, uprime or cauchy");
    o.table.rows.push_back({z.real(), z.imag(), number(v.real()), number(v.imag())});
  }
  return o;
}

Output cmd_boundary(const RunConfig& cfg) {
  const Measure m = load(cfg);
  const BoundaryCurve c = boundary_curve(m, require_t(cfg), cfg.boundary());
  Output o;
  o.table.columns = {"r", "angle", "g", "component"};
  for (const BoundarySample& s : c.samples) o.table.rows.push_back({s.r, s.angle, number(s.g), s.component});
  return o;
}

Output cmd_density(const RunConfig& cfg) {
  const double t = require_t(cfg, true);
  const Measure m = load(cfg);
  Output o;
  if (t == 1.0) {
    o.text = serialize_measure(m);
    return o;
  }
  const SemigroupSnapshot s = snapshot(m, t, cfg.snapshot());
  o.table.columns = {"x", "f", "r", "component"};
  for (const DensityPoint& p : s.density) o.table.rows.push_back({p.x, number(p.f), p.r, p.component});
  o.notes = s.warnings;
  return o;
}

Output cmd_density_oracle(const RunConfig& cfg) {
  const double t = require_t(cfg);
  const Measure m = load(cfg);
  if (cfg.x.empty()) throw Error(ErrorCode::InvalidArgument, "--x is required");
  Output o;
  o.table.columns = {"x", "f"};
  for (double x : cfg.x) o.table.rows.push_back({x, density_via_inversion(m, t, x, cfg.eps, true, cfg.subordination())});
  return o;
}

Output cmd_support(const RunConfig& cfg) {
  const double t = require_t(cfg);
  const Measure m = load(cfg);
  const std::vector<Interval> parts = density_support(m, t, cfg.boundary());
  const std::vector<Atom> atoms = atoms_of_power(m, t);
  Output o;
  o.table.columns = {"kind", "lo", "hi", "mass"};
  json intervals = json::array(), atom_list = json::array();
  for (const Interval& p : parts) {
    o.table.rows.push_back({"interval", p.lo, p.hi, nullptr});
    intervals.push_back({p.lo, p.hi});
  }
  for (const Atom& a : atoms) {
    o.table.rows.push_back({"atom", scalar_json(a.position), scalar_json(a.position), scalar_json(a.mass)});
    atom_list.push_back({{"position", scalar_json(a.position)}, {"mass", scalar_json(a.mass)}});
  }
  o.result = json{{"intervals", intervals}, {"atoms", atom_list}};
  return o;
}

Output cmd_atoms(const RunConfig& cfg) {
  const double t = require_t(cfg);
  const Measure m = load(cfg);
  Output o;
  o.table.columns = {"position", "mass"};
  for (const Atom& a : atoms_of_power(m, t)) o.table.rows.push_back({scalar_json(a.position), scalar_json(a.mass)});
  return o;
}

Output cmd_norm(const RunConfig& cfg) {
  const double t = require_t(cfg);
  const Measure m = load(cfg);
  Output o;
  o.table.columns = {"t", "norm"};
  o.table.rows.push_back({t, number(norm_of_power(m, t, cfg.boundary()))});
  return o;
}

Output cmd_rho(const RunConfig& cfg) {
  const Measure m = load(cfg);
  const RhoProfile p = extract_rho(m, cfg.rho());
  Output o;
  o.table.columns = {"x", "rho_density"};
  for (std::size_t i = 0; i < p.grid.size(); ++i) o.table.rows.push_back({p.grid[i], p.density[i]});
  for (double x : p.flagged_atoms) o.notes.push_back("rho may have an atom near x = " + format_double(x));
  return o;
}

Output cmd_oracle(const RunConfig& cfg) {
  const Measure m = load(cfg);
  const MomentSeries moments = power_moments(sigma_series(psi_series(m, cfg.order)), cfg.n, cfg.order);
  Output o;
  o.table.columns = {"k", "moment"};
  const std::vector<std::string> text = moments.to_strings();
  for (std::size_t k = 0; k < text.size(); ++k) o.table.rows.push_back({k + 1, text[k]});
  o.result = text;
  return o;
}

Output cmd_scan(const RunConfig& cfg) {
  const Measure m = load(cfg);
  const BoundaryOptions b = cfg.boundary();
  Output o;
  auto err = [](const std::vector<double>& v, std::size_t i) { return v.empty() ? json(nullptr) : json(v[i]); };
  if (cfg.mode == "norm" || cfg.mode == "endpoints") {
    const std::vector<double> grid = cfg.tgrid.empty() ? default_t_grid() : cfg.tgrid;
    const ScanResult r = cfg.mode == "norm" ? norm_growth_scan(m, grid, true, b) : endpoint_exponents(m, grid, b);
    if (cfg.mode == "norm") {
      o.table.columns = {"t", "norm", "norm_over_t", "norm_error", "t_alpha", "t_alpha_error", "components"};
      const auto ne = r.norm_error(), ae = r.t_alpha_error();
      for (std::size_t i = 0; i < grid.size(); ++i)
        o.table.rows.push_back({grid[i], number(r.records[i].norm()), number(r.norm_over_t[i]), err(ne, i),
                                r.t_alpha[i], err(ae, i), r.records[i].components});
    } else {
      o.table.columns = {"t", "a_t", "b_t", "a_root", "a_root_error", "b_root", "b_root_error"};
      const auto ae = r.a_root_error(), be = r.b_root_error();
      for (std::size_t i = 0; i < grid.size(); ++i)
        o.table.rows.push_back({grid[i], number(r.records[i].a()), number(r.records[i].b()), r.a_root[i], err(ae, i),
                                r.b_root[i], err(be, i)});
    }
    o.notes = r.notes;
    if (!r.components_nonincreasing) o.notes.push_back("component count increased along the grid");
  } else if (cfg.mode == "continuity") {
    const ContinuityResult r = continuity_scan(m, cfg.t0, cfg.deltas, b);
    o.table.columns = {"t0", "delta", "hausdorff"};
    for (std::size_t i = 0; i < r.deltas.size(); ++i) o.table.rows.push_back({r.t0, r.deltas[i], r.distances[i]});
    if (!r.shrinking) o.notes.push_back("distances do not shrink strictly with |delta|");
  } else if (cfg.mode == "components") {
    const std::vector<double> grid = cfg.tgrid.empty() ? std::vector<double>{1.1, 1.5, 2, 4, 8, 16} : cfg.tgrid;
    const ThresholdResult r = component_threshold(m, grid, b);
    o.table.columns = {"t", "components"};
    for (std::size_t i = 0; i < grid.size(); ++i) o.table.rows.push_back({grid[i], r.counts[i]});
    o.notes.push_back("first t with one component: " + format_double(r.t));
    if (!r.nonincreasing) o.notes.push_back("component count increased along the grid");
  } else {
    throw Error(ErrorCode::InvalidArgument, "--mode must be norm, endpoints, continuity or components");
  }
  return o;
}

Output cmd_verify(const RunConfig& cfg) {
  const Measure m = load(cfg);
  const VerifyReport r = verify(m, cfg.verify());
  Output o;
  o.table.columns = {"check", "t", "value", "threshold", "status", "detail"};
  for (const VerifyCheck& c : r.checks)
    o.table.rows.push_back({c.name, c.t == 0.0 ? json(nullptr) : json(c.t), number(c.value), c.threshold,
                            c.passed ? "PASS" : "FAIL", c.detail});
  o.status = r.passed() ? 0 : 1;
  return o;
}

void error_record(std::ostream& err, std::string_view code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

/// "A,B" -> {A, B}
std::vector<double> pair_of(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw Error(ErrorCode::InvalidArgument, std::string("bad number in ") + what);
    v.push_back(x);
  }
  if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, std::string(what) + " takes two comma-separated numbers");
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free multiplicative convolution powers: transforms, supports, densities and checks", "freemult"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  std::string window, format;
  std::vector<std::string> at;
  std::optional<double> t;
  std::optional<std::size_t> grid;

  std::map<std::string, std::function<Output(const RunConfig&)>> handlers{
      {"transform", cmd_transform}, {"boundary", cmd_boundary}, {"density", cmd_density},
      {"density-oracle", cmd_density_oracle}, {"support", cmd_support}, {"atoms", cmd_atoms},
      {"norm", cmd_norm}, {"rho", cmd_rho}, {"oracle", cmd_oracle}, {"scan", cmd_scan}, {"verify", cmd_verify}};
  const std::map<std::string, std::string> descriptions{
      {"transform", "evaluate psi, eta, u, u' or the Cauchy transform"},
      {"boundary", "sample the boundary curve of Omega_t"},
      {"density", "density of mu^t on its support"},
      {"density-oracle", "density of mu^t by Stieltjes inversion through omega_t"},
      {"support", "support of mu^t: density intervals and atoms"},
      {"atoms", "atoms of mu^t"},
      {"norm", "max of the support of mu^t"},
      {"rho", "representing measure of u"},
      {"oracle", "exact moments of mu^n from the Sigma series"},
      {"scan", "large-t and continuity scans"},
      {"verify", "run the invariant suite"}};

  for (const auto& [name, handler] : handlers) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("--measure", cfg.measure, "measure file (TOML)")->required();
    sub->add_option("--output", cfg.output, "write to this file instead of standard output");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--endpoint-tol", cfg.endpoint_tol, "absolute tolerance for V_t+ endpoints");
    sub->add_option("--mass-tol", cfg.mass_tol, "allowed deviation of the total mass from 1");
    sub->add_option("--realness-tol", cfg.realness_tol, "allowed |arg h_t| in verify");
    if (name == "transform") {
      sub->add_option("--at", at, "point RE,IM (repeatable)")->required();
      sub->add_option("--which", cfg.which, "psi|eta|u|uprime|cauchy")
          ->check(CLI::IsMember({"psi", "eta", "u", "uprime", "cauchy"}));
    }
    if (name == "boundary" || name == "density" || name == "density-oracle" || name == "support" ||
        name == "atoms" || name == "norm")
      sub->add_option("--t", t, "power t")->required();
    if (name == "boundary" || name == "rho") {
      sub->add_option("--window", window, "LO,HI");
      sub->add_option("--grid", grid, "grid points");
    }
    if (name == "density") sub->add_option("--samples", cfg.samples, "Gauss-Legendre samples per component");
    if (name == "density-oracle") {
      sub->add_option("--x", cfg.x, "abscissa (repeatable or comma-separated)")->required()->delimiter(',');
      sub->add_option("--eps", cfg.eps, "distance from the real axis, in [1e-9, 1e-3]");
    }
    if (name == "rho" || name == "verify") sub->add_option("--eps", cfg.eps, "distance from the real axis");
    if (name == "oracle") {
      sub->add_option("--n", cfg.n, "integer power")->required();
      sub->add_option("--order", cfg.order, "number of moments");
    }
    if (name == "scan") {
      sub->add_option("--mode", cfg.mode, "norm|endpoints|continuity|components")
          ->required()
          ->check(CLI::IsMember({"norm", "endpoints", "continuity", "components"}));
      sub->add_option("--tgrid", cfg.tgrid, "increasing t values")->delimiter(',');
      sub->add_option("--t0", cfg.t0, "base t for continuity");
      sub->add_option("--deltas", cfg.deltas, "t offsets for continuity")->delimiter(',');
    }
    if (name == "verify") sub->add_option("--tgrid", cfg.tgrid, "t values to check")->delimiter(',');
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_record(err, "UsageError", e.what());
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.t = t;
    cfg.grid = grid;
    cfg.format = !format.empty() ? format : (cfg.command == "support" || cfg.command == "oracle") ? "json" : "csv";
    if (!window.empty()) {
      const auto v = pair_of(window, "--window");
      cfg.window = Interval{v[0], v[1]};
    }
    for (const std::string& s : at) {
      const auto v = pair_of(s, "--at");
      cfg.at.emplace_back(v[0], v[1]);
    }
    cfg.check();
    const Output o = handlers.at(cfg.command)(cfg);
    if (cfg.output.empty()) {
      emit(cfg, o, out);
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + cfg.output);
      emit(cfg, o, file);
    }
    for (const std::string& n : o.notes) err << json{{"note", n}}.dump() << '\n';
    return o.status;
  } catch (const Error& e) {
    error_record(err, e.name(), e.what());
    return 2;
  } catch (const std::exception& e) {
    error_record(err, "InternalError", e.what());
    return 2;
  }
}

}  // namespace freemult::cli
