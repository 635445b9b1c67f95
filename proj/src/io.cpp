#include "slicecalc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

namespace slicecalc {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& field, const std::string& msg) {
  throw ParseError(field + ": " + msg);
}

int require_int(const json& doc, const char* key) {
  if (!doc.contains(key)) schema(key, "missing");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) schema(key, "expected an integer");
  return v.get<int>();
}

std::size_t blade_from_key(const std::string& key, int n) {
  if (key.empty() || key == "0") return 0;
  std::size_t mask = 0;
  int last = 0;
  for (char ch : key) {
    if (ch < '1' || ch > '9') schema("components[\"" + key + "\"]", "blade keys are digit strings");
    const int i = ch - '0';
    if (i > n) schema("components[\"" + key + "\"]", "blade index exceeds n = " + std::to_string(n));
    if (i <= last) schema("components[\"" + key + "\"]", "blade digits must be strictly increasing");
    last = i;
    mask |= std::size_t{1} << (i - 1);
  }
  return mask;
}

std::string key_from_blade(std::size_t mask) {
  if (mask == 0) return "0";
  std::string out;
  for (int i = 0; i < kMaxAlgebraDim; ++i) {
    if (mask & (std::size_t{1} << i)) out.push_back(static_cast<char>('1' + i));
  }
  return out;
}

Eigen::MatrixXd parse_matrix(const json& m, int d, const std::string& field) {
  if (!m.is_array()) schema(field, "expected an array of rows");
  if (static_cast<int>(m.size()) != d) {
    schema(field, "has " + std::to_string(m.size()) + " rows, expected d = " + std::to_string(d));
  }
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) schema(rf, "expected an array of numbers");
    if (static_cast<int>(row.size()) != d) {
      schema(rf, "has " + std::to_string(row.size()) + " entries, expected " + std::to_string(d));
    }
    for (int j = 0; j < d; ++j) {
      const json& x = row[static_cast<std::size_t>(j)];
      if (!x.is_number()) schema(rf + "[" + std::to_string(j) + "]", "expected a number");
      out(i, j) = x.get<double>();
    }
  }
  return out;
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double parse_real(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(what + ": not a number: '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(what + ": not an integer: '" + std::string(s) + "'");
  return v;
}

// "c=5,m=2" -> {{"c","5"},{"m","2"}}
std::vector<std::pair<std::string, std::string>> parse_params(std::string_view text,
                                                              const std::string& what) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(what + ": expected key=value, got '" + std::string(item) + "'");
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<Multivector> parse_coeff_list(const json& arr, int n, const std::string& field) {
  if (!arr.is_array()) schema(field, "expected an array");
  std::vector<Multivector> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& c = arr[i];
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (c.is_number()) {
      out.push_back(Multivector::scalar(n, c.get<double>()));
    } else if (c.is_string()) {
      try {
        out.push_back(parse_multivector(c.get<std::string>(), n));
      } catch (const Error& e) {
        schema(f, e.what());
      }
    } else {
      schema(f, "expected a number or a multivector string");
    }
  }
  return out;
}

FunctionSpec literal_function(std::string_view text, int n) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("function literal: ") + e.what());
  }
  if (!doc.is_object()) schema("function", "expected an object");
  double center = 0.0;
  if (doc.contains("center")) {
    if (!doc["center"].is_number()) schema("center", "expected a real number");
    center = doc["center"].get<double>();
  }
  std::vector<Multivector> power;
  std::vector<Multivector> laurent;
  if (doc.contains("coeffs")) power = parse_coeff_list(doc["coeffs"], n, "coeffs");
  if (doc.contains("laurent")) laurent = parse_coeff_list(doc["laurent"], n, "laurent");
  if (power.empty() && laurent.empty()) schema("function", "needs coeffs or laurent");
  SliceSeriesFunction f(n, center, power, laurent);
  FunctionSpec spec{f, std::nullopt};
  if (f.has_laurent() && f.power_terms() <= 1) spec.extended.emplace(f);
  return spec;
}

}  // namespace

int max_algebra_dim() {
  const char* env = std::getenv("SLICECALC_MAX_N");
  if (env == nullptr || *env == '\0') return kMaxAlgebraDim;
  const int v = parse_int(env, "SLICECALC_MAX_N");
  if (v < 0) throw ParseError("SLICECALC_MAX_N must be nonnegative");
  return std::min(v, kMaxAlgebraDim);
}

CliffordMatrix parse_operator(const json& doc) {
  if (!doc.is_object()) schema("<root>", "expected an object");
  const int n = require_int(doc, "n");
  const int d = require_int(doc, "d");
  const int cap = max_algebra_dim();
  if (n < 0 || n > cap) schema("n", "must lie in [0, " + std::to_string(cap) + "], got " + std::to_string(n));
  if (d < 1) schema("d", "must be positive, got " + std::to_string(d));
  if (!doc.contains("components")) schema("components", "missing");
  const json& comps = doc.at("components");
  if (!comps.is_object()) schema("components", "expected an object keyed by blade");
  CliffordMatrix t(n, d);
  std::vector<bool> seen(t.blade_count(), false);
  for (const auto& [key, value] : comps.items()) {
    const std::size_t mask = blade_from_key(key, n);
    if (seen[mask]) schema("components[\"" + key + "\"]", "blade given twice");
    seen[mask] = true;
    t.blade(mask) = parse_matrix(value, d, "components[\"" + key + "\"]");
  }
  return t;
}

CliffordMatrix parse_operator_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON");
  }
  return parse_operator(doc);
}

CliffordMatrix parse_operator_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_operator_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json operator_to_json(const CliffordMatrix& t) {
  json comps = json::object();
  for (std::size_t a = 0; a < t.blade_count(); ++a) {
    const auto& m = t.blade(a);
    if (m.cwiseAbs().maxCoeff() == 0.0 && a != 0) continue;
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    comps[key_from_blade(a)] = std::move(rows);
  }
  return {{"n", t.n()}, {"d", t.d()}, {"components", std::move(comps)}};
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_spectrum_csv(std::ostream& os, const SpectrumReport& spec) {
  auto rows = spec.components;
  std::sort(rows.begin(), rows.end(), [](const SpectrumComponent& a, const SpectrumComponent& b) {
    return a.u != b.u ? a.u < b.u : a.r < b.r;
  });
  os << "u,r,multiplicity,method\n";
  const std::string method = to_string(spec.method);
  for (const auto& c : rows) {
    os << format_double(c.u) << ',' << format_double(c.r) << ',' << c.multiplicity << ',' << method
       << '\n';
  }
}

void write_plot_csv(std::ostream& os, const SpectrumReport& spec) {
  os << "u,v\n";
  for (const auto& c : spec.components) {
    os << format_double(c.u) << ',' << format_double(c.r) << '\n';
    if (c.r > 0.0) os << format_double(c.u) << ',' << format_double(-c.r) << '\n';
  }
}

ImagUnit parse_plane(std::string_view text, int n) {
  if (n < 1) throw ParseError("plane: the algebra has no imaginary units (n = 0)");
  if (!text.empty() && text.front() == 'e') {
    const int i = parse_int(text.substr(1), "plane");
    if (i < 1 || i > n) throw ParseError("plane: e" + std::to_string(i) + " is not a unit of R_" + std::to_string(n));
    return ImagUnit::unit(n, i);
  }
  std::vector<double> dirs;
  while (true) {
    const auto comma = text.find(',');
    dirs.push_back(parse_real(text.substr(0, comma), "plane"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (static_cast<int>(dirs.size()) > n) throw ParseError("plane: more directions than n");
  dirs.resize(static_cast<std::size_t>(n), 0.0);
  try {
    return ImagUnit(dirs);
  } catch (const DomainError&) {
    throw ParseError("plane: zero direction");
  }
}

FunctionSpec parse_function_spec(std::string_view text, int n) {
  const Multivector one = Multivector::scalar(n, 1.0);
  if (!text.empty() && text.front() == '{') return literal_function(text, n);
  if (text == "one") return {series::constant(one), std::nullopt};
  if (text == "exp") return {series::exp(n), std::nullopt};
  if (text == "sin") return {series::sin(n), std::nullopt};
  if (text == "cos") return {series::cos(n), std::nullopt};
  if (text == "geom") return {series::geometric(n), std::nullopt};
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (head == "poly") {
    int m = -1;
    for (const auto& [k, v] : parse_params(rest, "poly")) {
      if (k != "m") throw ParseError("poly: unknown parameter '" + k + "'");
      m = parse_int(v, "poly:m");
    }
    if (m < 0) throw ParseError("poly: needs m=<nonnegative integer>");
    return {series::monomial(m, one), std::nullopt};
  }
  if (head == "ratpole") {
    std::optional<double> c;
    int m = 1;
    for (const auto& [k, v] : parse_params(rest, "ratpole")) {
      if (k == "c") {
        c = parse_real(v, "ratpole:c");
      } else if (k == "m") {
        m = parse_int(v, "ratpole:m");
      } else {
        throw ParseError("ratpole: unknown parameter '" + k + "'");
      }
    }
    if (!c) throw ParseError("ratpole: needs c=<real>");
    if (m < 1) throw ParseError("ratpole: m must be positive");
    const auto f = series::pole(*c, m, one);
    return {f, ExtendedFunction(f)};
  }
  throw ParseError("unknown function '" + std::string(text) + "'");
}

}  // namespace slicecalc
