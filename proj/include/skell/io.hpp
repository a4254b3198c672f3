#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skell/linalg.hpp"
#include "skell/model.hpp"

namespace skell::io {

/// Model document plus run fields:
///   {"n": 2, "mu": [...], "Omega": [[...], [...]], "alpha": [...],
///    "family": "normal" | "student_t" | "smsn", "nu": 5,
///    "mixing": {"type": "inverse_gamma", "nu": 5} | {"type": "discrete", "points": [...], "weights": [...]},
///    "seed": 42, "n_draws": 1000, "variant": "conditioning", "grid_file": "t.csv",
///    "out": "out.csv", "format": "csv"}
/// Omega may also be a flat row-major array of n*n numbers.
struct ModelConfig {
  int n = 0;
  Vector mu;
  Matrix omega;
  Vector alpha;
  std::string family = "normal";
  std::optional<double> nu;
  nlohmann::json mixing;  // null unless given

  std::uint64_t seed = 0;
  std::int64_t n_draws = 1000;
  std::string variant = "conditioning";
  std::string grid_file;
  std::string out;
  std::string format = "csv";
};

/// Parses and checks shapes. Throws InvalidArgument on malformed content.
ModelConfig parse_config(const nlohmann::json& doc);
/// Reads a file; IoFailure if it cannot be read or is not JSON.
ModelConfig load_config(const std::string& path);
nlohmann::json model_to_json(const ModelConfig& cfg);

SkewEllipticalParams make_params(const ModelConfig& cfg);
DensityGenerator make_generator(const ModelConfig& cfg);

/// Shortest round-trip decimal representation ('.' decimal point, never locale dependent).
std::string format_double(double v);

/// Numeric CSV with a header row. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;
};
CsvTable read_csv(const std::string& path);
/// Matrix in the file, checking it has `cols` columns.
Matrix read_matrix_csv(const std::string& path, Index cols);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& header, const Eigen::Ref<const SampleMatrix>& m);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);  // array of rows

/// Writes to `path`, or to stdout when path is empty or "-". IoFailure on error.
void write_output(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace skell::io
