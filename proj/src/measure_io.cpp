#include "freemult/measure_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "freemult/error.hpp"

namespace freemult {
namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

/// Maps toml++ (line, column) positions back to byte offsets in the source,
/// so numeric literals can be recovered verbatim.
class SourceText {
 public:
  explicit SourceText(std::string_view text) : text_(text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') line_starts_.push_back(i + 1);
  }

  std::string_view slice(const toml::source_region& region) const {
    const auto begin = offset(region.begin);
    const auto end = offset(region.end);
    if (begin >= end || end > text_.size()) return {};
    return text_.substr(begin, end - begin);
  }

 private:
  std::size_t offset(const toml::source_position& pos) const {
    if (pos.line == 0 || pos.line > line_starts_.size()) return text_.size() + 1;
    return line_starts_[pos.line - 1] + (pos.column - 1);
  }

  std::string_view text_;
  std::vector<std::size_t> line_starts_;
};

Scalar read_scalar(const toml::node& node, const SourceText& source, std::string_view where) {
  if (auto s = node.value<std::string>()) return Scalar::parse(*s);
  if (node.is_integer() || node.is_floating_point()) {
    std::string_view literal = source.slice(node.source());
    // Trim anything the region may include past the literal itself.
    const auto stop = literal.find_first_of(",] \t\r\n#");
    if (stop != std::string_view::npos) literal = literal.substr(0, stop);
    if (!literal.empty()) {
      try {
        Scalar s = Scalar::parse(literal);
        const double parsed = node.is_integer() ? static_cast<double>(*node.value<int64_t>())
                                                : *node.value<double>();
        if (s.value() == parsed) return s;
      } catch (const Error&) {
      }
    }
    if (node.is_integer()) return Scalar::exact(Rational(*node.value<int64_t>()));
    return Scalar::parse(format_double(*node.value<double>()));
  }
  parse_error("expected a number at " + std::string(where));
}

ProfileKind read_kind(std::string_view name) {
  if (name == "uniform") return ProfileKind::Uniform;
  if (name == "polynomial") return ProfileKind::Polynomial;
  if (name == "table") return ProfileKind::Table;
  parse_error("unknown piece kind '" + std::string(name) + "'");
}

DensityPiece read_piece(const toml::table& t, const SourceText& source, std::size_t index) {
  const std::string where = "pieces[" + std::to_string(index) + "]";
  auto field = [&](const char* key) -> const toml::node& {
    const toml::node* n = t.get(key);
    if (!n) parse_error(where + " is missing '" + key + "'");
    return *n;
  };
  DensityPiece p;
  p.lo = read_scalar(field("lo"), source, where + ".lo");
  p.hi = read_scalar(field("hi"), source, where + ".hi");
  p.weight = read_scalar(field("weight"), source, where + ".weight");
  const auto kind = field("kind").value<std::string>();
  if (!kind) parse_error(where + ".kind must be a string");
  p.kind = read_kind(*kind);
  if (const toml::node* rule = t.get("rule")) {
    const auto r = rule->value<std::string>();
    if (!r || *r != "linear") parse_error(where + ".rule: only \"linear\" interpolation is supported");
  }
  if (const toml::node* params = t.get("params")) {
    const toml::array* arr = params->as_array();
    if (!arr) parse_error(where + ".params must be an array");
    for (const toml::node& item : *arr) {
      if (const toml::array* pair = item.as_array()) {
        if (p.kind != ProfileKind::Table || pair->size() != 2)
          parse_error(where + ".params: nested entries must be [x, f] pairs of a table");
        p.params.push_back(read_scalar(*pair->get(0), source, where + ".params"));
        p.params.push_back(read_scalar(*pair->get(1), source, where + ".params"));
      } else {
        p.params.push_back(read_scalar(item, source, where + ".params"));
      }
    }
  }
  return p;
}

void write_scalar(std::ostream& os, const Scalar& s) { os << '"' << s.text() << '"'; }

}  // namespace

MeasureSpec parse_measure(std::string_view toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "malformed measure file: " << e.description() << " at " << e.source().begin;
    parse_error(msg.str());
  }
  const SourceText source(toml_text);
  MeasureSpec spec;
  for (auto&& [key, value] : root) {
    if (key != "atoms" && key != "pieces") parse_error("unknown top-level key '" + std::string(key.str()) + "'");
  }
  if (const toml::node* atoms = root.get("atoms")) {
    const toml::array* arr = atoms->as_array();
    if (!arr) parse_error("'atoms' must be an array of [position, mass] pairs");
    for (const toml::node& item : *arr) {
      const toml::array* pair = item.as_array();
      if (!pair || pair->size() != 2) parse_error("each atom must be a [position, mass] pair");
      spec.atoms.push_back({read_scalar(*pair->get(0), source, "atoms"),
                            read_scalar(*pair->get(1), source, "atoms")});
    }
  }
  if (const toml::node* pieces = root.get("pieces")) {
    const toml::array* arr = pieces->as_array();
    if (!arr) parse_error("'pieces' must be an array of tables");
    std::size_t index = 0;
    for (const toml::node& item : *arr) {
      const toml::table* t = item.as_table();
      if (!t) parse_error("'pieces' entries must be tables");
      spec.pieces.push_back(read_piece(*t, source, index++));
    }
  }
  return spec;
}

MeasureSpec read_measure_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open measure file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

std::string serialize_measure(const Measure& m) {
  std::ostringstream os;
  os << "atoms = [";
  for (std::size_t i = 0; i < m.atoms().size(); ++i) {
    os << (i == 0 ? "\n  [" : ",\n  [");
    write_scalar(os, m.atoms()[i].position);
    os << ", ";
    write_scalar(os, m.atoms()[i].mass);
    os << "]";
  }
  os << (m.atoms().empty() ? "]\n" : ",\n]\n");
  for (const DensityPiece& p : m.pieces()) {
    os << "\n[[pieces]]\nlo = ";
    write_scalar(os, p.lo);
    os << "\nhi = ";
    write_scalar(os, p.hi);
    os << "\nkind = \"" << profile_name(p.kind) << "\"\nweight = ";
    write_scalar(os, p.weight);
    os << "\nparams = [";
    if (p.kind == ProfileKind::Table) {
      for (std::size_t i = 0; i + 1 < p.params.size(); i += 2) {
        os << (i == 0 ? "[" : ", [");
        write_scalar(os, p.params[i]);
        os << ", ";
        write_scalar(os, p.params[i + 1]);
        os << "]";
      }
    } else {
      for (std::size_t i = 0; i < p.params.size(); ++i) {
        if (i) os << ", ";
        write_scalar(os, p.params[i]);
      }
    }
    os << "]\n";
    if (p.kind == ProfileKind::Table) os << "rule = \"linear\"\n";
  }
  return os.str();
}

}  // namespace freemult
