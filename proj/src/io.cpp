#include "skell/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skell/error.hpp"

namespace skell::io {
namespace {

using nlohmann::json;

Vector vector_field(const json& doc, const char* key, int n) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("config is missing '") + key + "'");
  const json& a = doc.at(key);
  if (!a.is_array() || static_cast<int>(a.size()) != n) {
    throw InvalidArgument(std::string("'") + key + "' must be an array of " + std::to_string(n) + " numbers");
  }
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    if (!a[i].is_number()) throw InvalidArgument(std::string("'") + key + "' must contain numbers");
    v[i] = a[i].get<double>();
  }
  return v;
}

Matrix matrix_field(const json& doc, const char* key, int n) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("config is missing '") + key + "'");
  const json& a = doc.at(key);
  Matrix m(n, n);
  const std::string shape_msg = std::string("'") + key + "' must be " + std::to_string(n) + "x" + std::to_string(n);
  if (!a.is_array()) throw InvalidArgument(shape_msg);
  if (static_cast<int>(a.size()) == n * n && a[0].is_number()) {
    for (int i = 0; i < n * n; ++i) {
      if (!a[i].is_number()) throw InvalidArgument(shape_msg);
      m(i / n, i % n) = a[i].get<double>();
    }
    return m;
  }
  if (static_cast<int>(a.size()) != n) throw InvalidArgument(shape_msg);
  for (int i = 0; i < n; ++i) {
    if (!a[i].is_array() || static_cast<int>(a[i].size()) != n) throw InvalidArgument(shape_msg);
    for (int j = 0; j < n; ++j) {
      if (!a[i][j].is_number()) throw InvalidArgument(shape_msg);
      m(i, j) = a[i][j].get<double>();
    }
  }
  return m;
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("config field '") + key + "' has the wrong type");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, const std::string& where) {
  std::size_t b = field.find_first_not_of(" \t");
  std::size_t e = field.find_last_not_of(" \t");
  if (b == std::string::npos) throw InvalidArgument("empty numeric field in " + where);
  const char* first = field.data() + b;
  const char* last = field.data() + e + 1;
  if (*first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InvalidArgument("non-numeric field '" + field + "' in " + where);
  }
  return v;
}

}  // namespace

ModelConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  ModelConfig c;
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) throw InvalidArgument("config needs an integer 'n'");
  c.n = doc.at("n").get<int>();
  if (c.n < 1) throw InvalidArgument("'n' must be >= 1");
  c.mu = vector_field(doc, "mu", c.n);
  c.omega = matrix_field(doc, "Omega", c.n);
  c.alpha = vector_field(doc, "alpha", c.n);
  c.family = get_or<std::string>(doc, "family", "normal");
  if (doc.contains("nu") && !doc.at("nu").is_null()) {
    if (!doc.at("nu").is_number()) throw InvalidArgument("'nu' must be a number");
    c.nu = doc.at("nu").get<double>();
  }
  if (doc.contains("mixing")) c.mixing = doc.at("mixing");
  c.seed = get_or<std::uint64_t>(doc, "seed", 0);
  c.n_draws = get_or<std::int64_t>(doc, "n_draws", 1000);
  c.variant = get_or<std::string>(doc, "variant", "conditioning");
  c.grid_file = get_or<std::string>(doc, "grid_file", "");
  c.out = get_or<std::string>(doc, "out", "");
  c.format = get_or<std::string>(doc, "format", "csv");
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoFailure("error while reading '" + path + "'");
  return s.str();
}

ModelConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoFailure("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json model_to_json(const ModelConfig& c) {
  json j = {{"n", c.n}, {"mu", to_json(c.mu)}, {"Omega", to_json(c.omega)}, {"alpha", to_json(c.alpha)},
            {"family", c.family}};
  if (c.nu) j["nu"] = *c.nu;
  if (!c.mixing.is_null()) j["mixing"] = c.mixing;
  return j;
}

SkewEllipticalParams make_params(const ModelConfig& c) {
  if (!c.mu.allFinite() || !c.omega.allFinite() || !c.alpha.allFinite()) {
    throw InvalidArgument("model parameters must be finite");
  }
  return SkewEllipticalParams::from_shape(c.mu, c.omega, c.alpha);
}

DensityGenerator make_generator(const ModelConfig& c) {
  if (c.family == "normal") return DensityGenerator::normal();
  if (c.family == "student_t") {
    if (!c.nu) throw InvalidArgument("family student_t needs 'nu'");
    return DensityGenerator::student_t(*c.nu);
  }
  if (c.family == "smsn") {
    if (c.mixing.is_null()) {
      if (!c.nu) throw InvalidArgument("family smsn needs 'mixing' or 'nu'");
      return DensityGenerator::smsn(MixingLaw::inverse_gamma(*c.nu));
    }
    if (!c.mixing.is_object()) throw InvalidArgument("'mixing' must be an object");
    const std::string type = get_or<std::string>(c.mixing, "type", "");
    if (type == "inverse_gamma") {
      const double nu = get_or<double>(c.mixing, "nu", c.nu.value_or(0.0));
      return DensityGenerator::smsn(MixingLaw::inverse_gamma(nu));
    }
    if (type == "discrete") {
      const auto points = get_or<std::vector<double>>(c.mixing, "points", {});
      const auto weights = get_or<std::vector<double>>(c.mixing, "weights", {});
      return DensityGenerator::smsn(MixingLaw::discrete(points, weights));
    }
    throw InvalidArgument("unknown mixing type '" + type + "' (expected inverse_gamma or discrete)");
  }
  throw InvalidArgument("unknown family '" + c.family + "' (expected normal, student_t or smsn)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  CsvTable t;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv(line);
    if (!have_header) {
      t.header = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                            " fields");
    }
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_double(f, path + ":" + std::to_string(lineno)));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidArgument(path + ": empty CSV (a header row is required)");
  t.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(t.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) t.values(i, j) = rows[i][j];
  }
  return t;
}

Matrix read_matrix_csv(const std::string& path, Index cols) {
  CsvTable t = read_csv(path);
  if (t.values.cols() != cols) {
    throw InvalidArgument(path + ": expected " + std::to_string(cols) + " columns, found " +
                          std::to_string(t.values.cols()));
  }
  return t.values;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& header,
                      const Eigen::Ref<const SampleMatrix>& m) {
  write_csv_row(out, header);
  std::string line;
  for (Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) line.push_back(',');
      line += format_double(m(i, j));
    }
    line.push_back('\n');
    out << line;
  }
}

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoFailure("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoFailure("error while writing '" + path + "'");
}

}  // namespace skell::io
