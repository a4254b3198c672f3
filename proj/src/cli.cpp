#include "skell/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skell/charfn.hpp"
#include "skell/density.hpp"
#include "skell/error.hpp"
#include "skell/io.hpp"
#include "skell/moments.hpp"
#include "skell/parallel.hpp"
#include "skell/sampling.hpp"
#include "skell/verification.hpp"

namespace skell::cli {
namespace {

using nlohmann::json;
using io::format_double;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> n_draws;
  std::optional<std::string> variant;
  std::optional<std::string> grid;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> threads;
};

// Resolved settings: config file first, flags override.
struct Run {
  std::optional<io::ModelConfig> cfg;
  std::uint64_t seed = 0;
  std::int64_t n_draws = 1000;
  std::string variant = "conditioning";
  std::string grid;
  std::string out;
  std::string format = "csv";
  int threads = 1;

  const io::ModelConfig& model() const {
    if (!cfg) throw InvalidArgument("this command needs a model: pass --config <path>");
    return *cfg;
  }
  bool json_output() const { return format == "json"; }
};

Run resolve(const CommonOptions& o) {
  Run r;
  if (!o.config.empty()) {
    r.cfg = io::load_config(o.config);
    r.seed = r.cfg->seed;
    r.n_draws = r.cfg->n_draws;
    r.variant = r.cfg->variant;
    r.grid = r.cfg->grid_file;
    r.out = r.cfg->out;
    r.format = r.cfg->format;
  }
  if (o.seed) r.seed = *o.seed;
  if (o.n_draws) r.n_draws = *o.n_draws;
  if (o.variant) r.variant = *o.variant;
  if (o.grid) r.grid = *o.grid;
  if (o.out) r.out = *o.out;
  if (o.format) r.format = *o.format;
  if (r.format != "csv" && r.format != "json") throw InvalidArgument("--format must be csv or json");
  if (r.n_draws < 1) throw InvalidArgument("n_draws must be >= 1");
  if (o.threads && *o.threads < 1) throw InvalidArgument("--threads must be >= 1");
  r.threads = resolve_threads(o.threads);
  set_default_threads(r.threads);
  return r;
}

std::vector<std::string> names(const char* prefix, int n) {
  std::vector<std::string> h;
  for (int i = 1; i <= n; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

Matrix grid_matrix(const Run& run, int n) {
  if (run.grid.empty()) throw InvalidArgument("this command needs evaluation points: pass --grid <csv>");
  return io::read_matrix_csv(run.grid, n);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json number_or_string(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

// ---------------------------------------------------------------------------

void cmd_sample(const Run& run) {
  const auto& cfg = run.model();
  const auto params = io::make_params(cfg);
  const auto gen = io::make_generator(cfg);
  const Variant variant = variant_from_string(run.variant);
  const SampleMatrix x = sample_representation(params, gen, variant, run.n_draws, {run.seed, 0}, run.threads);
  std::ostringstream s;
  if (run.json_output()) {
    json rows = json::array();
    for (Index i = 0; i < x.rows(); ++i) rows.push_back(std::vector<double>(x.row(i).data(), x.row(i).data() + x.cols()));
    s << dump({{"variant", to_string(variant)}, {"seed", run.seed}, {"columns", names("x", cfg.n)}, {"rows", rows}});
  } else {
    io::write_matrix_csv(s, names("x", cfg.n), x);
  }
  io::write_output(run.out, s.str());
}

void cmd_pdf(const Run& run) {
  const auto& cfg = run.model();
  const SkewEllipticalDensity density(io::make_params(cfg), io::make_generator(cfg));
  const Matrix pts = grid_matrix(run, cfg.n);
  std::vector<double> pdf(pts.rows()), logpdf(pts.rows());
  parallel_for(pts.rows(), run.threads, [&](std::int64_t i) {
    const Vector x = pts.row(i).transpose();
    logpdf[i] = density.log_pdf(x);
    pdf[i] = std::exp(logpdf[i]);
  });
  std::ostringstream s;
  if (run.json_output()) {
    json points = json::array();
    for (Index i = 0; i < pts.rows(); ++i) points.push_back(io::to_json(Vector(pts.row(i).transpose())));
    json lp = json::array();
    for (double v : logpdf) lp.push_back(number_or_string(v));
    s << dump({{"points", points}, {"pdf", pdf}, {"log_pdf", lp}});
  } else {
    auto header = names("x", cfg.n);
    header.push_back("pdf");
    header.push_back("log_pdf");
    io::write_csv_row(s, header);
    for (Index i = 0; i < pts.rows(); ++i) {
      std::vector<std::string> row;
      for (Index j = 0; j < pts.cols(); ++j) row.push_back(format_double(pts(i, j)));
      row.push_back(format_double(pdf[i]));
      row.push_back(format_double(logpdf[i]));
      io::write_csv_row(s, row);
    }
  }
  io::write_output(run.out, s.str());
}

void cmd_cf(const Run& run, const std::string& method) {
  const auto& cfg = run.model();
  const auto params = io::make_params(cfg);
  const auto gen = io::make_generator(cfg);
  const Matrix grid = grid_matrix(run, cfg.n);
  std::vector<CfValue> values(grid.rows());

  std::string m = method;
  if (m == "auto") {
    m = gen.family() == DensityGenerator::Family::normal      ? "skew_normal"
        : gen.family() == DensityGenerator::Family::student_t ? "skew_t"
                                                              : "generic";
  }
  if (m == "monte_carlo") {
    const auto est = empirical_cf(sample_conditioning(params, gen, run.n_draws, {run.seed, 0}, run.threads), grid,
                                  run.threads);
    const double err = 4.0 / std::sqrt(static_cast<double>(run.n_draws));
    for (std::size_t i = 0; i < est.size(); ++i) values[i] = {est[i].value, "monte_carlo", err};
  } else {
    std::function<CfValue(const Vector&)> eval;
    if (m == "skew_normal") {
      if (gen.family() != DensityGenerator::Family::normal) throw InvalidArgument("skew_normal needs the normal family");
      eval = [&](const Vector& t) { return cf_skew_normal(params, t); };
    } else if (m == "skew_t" || m == "skew_t_printed") {
      if (gen.family() != DensityGenerator::Family::student_t) throw InvalidArgument(m + " needs the student_t family");
      const auto reading = m == "skew_t" ? PrefactorReading::corrected : PrefactorReading::printed;
      eval = [&, reading](const Vector& t) { return cf_skew_t(params, gen.dof(), t, reading); };
    } else if (m == "conditional_integral") {
      eval = [&](const Vector& t) { return cf_conditional_integral(params, gen, t); };
    } else if (m == "generic" || m == "generic_printed") {
      const auto reading = m == "generic" ? RadialReading::corrected : RadialReading::printed;
      eval = [&, reading](const Vector& t) { return cf_generic(params, gen, t, reading); };
    } else {
      throw InvalidArgument("unknown --method '" + m +
                            "' (expected auto, skew_normal, skew_t, skew_t_printed, conditional_integral, generic, "
                            "generic_printed or monte_carlo)");
    }
    parallel_for(grid.rows(), run.threads, [&](std::int64_t i) { values[i] = eval(grid.row(i).transpose()); });
  }

  std::ostringstream s;
  if (run.json_output()) {
    json rows = json::array();
    for (Index i = 0; i < grid.rows(); ++i) {
      rows.push_back({{"t", io::to_json(Vector(grid.row(i).transpose()))},
                      {"re", values[i].value.real()},
                      {"im", values[i].value.imag()},
                      {"method", values[i].method},
                      {"err", number_or_string(values[i].err_estimate)}});
    }
    s << dump({{"values", rows}});
  } else {
    auto header = names("t", cfg.n);
    for (const char* h : {"re", "im", "method", "err"}) header.push_back(h);
    io::write_csv_row(s, header);
    for (Index i = 0; i < grid.rows(); ++i) {
      std::vector<std::string> row;
      for (Index j = 0; j < grid.cols(); ++j) row.push_back(format_double(grid(i, j)));
      row.push_back(format_double(values[i].value.real()));
      row.push_back(format_double(values[i].value.imag()));
      row.push_back(values[i].method);
      row.push_back(format_double(values[i].err_estimate));
      io::write_csv_row(s, row);
    }
  }
  io::write_output(run.out, s.str());
}

json moment_json(const MomentSet& m) {
  json j = {{"M1", io::to_json(m.m1)}};
  if (m.max_order >= 2) j["M2"] = io::to_json(m.m2);
  if (m.max_order >= 3) j["M3"] = io::to_json(m.m3);
  if (m.max_order >= 4) j["M4"] = io::to_json(m.m4);
  return j;
}

void moment_csv(std::ostream& s, const MomentSet& m, const MomentSet* se) {
  io::write_csv_row(s, se ? std::vector<std::string>{"block", "row", "col", "value", "se"}
                          : std::vector<std::string>{"block", "row", "col", "value"});
  auto block = [&](const char* name, const Matrix& v, const Matrix* e) {
    for (Index i = 0; i < v.rows(); ++i) {
      for (Index j = 0; j < v.cols(); ++j) {
        std::vector<std::string> row{name, std::to_string(i), std::to_string(j), format_double(v(i, j))};
        if (e) row.push_back(format_double((*e)(i, j)));
        io::write_csv_row(s, row);
      }
    }
  };
  const Matrix m1 = m.m1;
  const Matrix se1 = se ? Matrix(se->m1) : Matrix();
  block("M1", m1, se ? &se1 : nullptr);
  if (m.max_order >= 2) block("M2", m.m2, se ? &se->m2 : nullptr);
  if (m.max_order >= 3) block("M3", m.m3, se ? &se->m3 : nullptr);
  if (m.max_order >= 4) block("M4", m.m4, se ? &se->m4 : nullptr);
}

void cmd_moments(const Run& run, const std::string& empirical, int max_order) {
  std::ostringstream s;
  if (!empirical.empty()) {
    const io::CsvTable table = io::read_csv(empirical);
    const SampleMatrix x = table.values;
    const MomentEstimate est = mc_moment_set(x, max_order, run.threads);
    if (run.json_output()) {
      json j = moment_json(est.estimate);
      j["se"] = moment_json(est.se);
      j["N"] = x.rows();
      s << dump(j);
    } else {
      moment_csv(s, est.estimate, &est.se);
    }
  } else {
    const auto& cfg = run.model();
    const MomentSet m = se_moments(io::make_params(cfg), io::make_generator(cfg), max_order);
    if (run.json_output()) {
      json j = moment_json(m);
      j["ratios"] = io::to_json(m.ratios);
      s << dump(j);
    } else {
      moment_csv(s, m, nullptr);
    }
  }
  io::write_output(run.out, s.str());
}

void cmd_qform(const Run& run, const std::string& a_path, const std::string& b_path) {
  const auto& cfg = run.model();
  if (a_path.empty()) throw InvalidArgument("qform needs --A <csv>");
  const Matrix a = io::read_matrix_csv(a_path, cfg.n);
  const Matrix b = b_path.empty() ? a : io::read_matrix_csv(b_path, cfg.n);
  if (a.rows() != cfg.n || b.rows() != cfg.n) throw InvalidArgument("A and B must be n x n");
  const auto params = io::make_params(cfg);
  const auto gen = io::make_generator(cfg);
  const QuadraticFormMean mean = qform_mean(params, gen, a);
  const QuadraticFormSecond second = qform_second(params, gen, a, b);
  std::ostringstream s;
  if (run.json_output()) {
    s << dump({{"mean", mean.trace_form},
               {"mean_expanded", mean.expanded_form},
               {"second", second.second_moment},
               {"var", second.var_a},
               {"cov", second.cov_ab}});
  } else {
    io::write_csv_row(s, {"quantity", "value"});
    io::write_csv_row(s, {"mean", format_double(mean.trace_form)});
    io::write_csv_row(s, {"mean_expanded", format_double(mean.expanded_form)});
    io::write_csv_row(s, {"second", format_double(second.second_moment)});
    io::write_csv_row(s, {"var", format_double(second.var_a)});
    io::write_csv_row(s, {"cov", format_double(second.cov_ab)});
  }
  io::write_output(run.out, s.str());
}

void cmd_validate(const Run& run) {
  const auto& cfg = run.model();
  const auto params = io::make_params(cfg);
  const auto gen = io::make_generator(cfg);
  gen.check_dimension(params.dim());
  if (cfg.variant.size()) variant_from_string(run.variant);
  std::ostringstream s;
  if (run.json_output()) {
    s << dump({{"valid", true},
               {"n", params.dim()},
               {"family", gen.name()},
               {"skewing", io::to_json(params.skewing())},
               {"scaled_skewing", io::to_json(params.scaled_skewing())},
               {"latent_correlation", io::to_json(params.latent_correlation())}});
  } else {
    io::write_csv_row(s, {"quantity", "value"});
    io::write_csv_row(s, {"valid", "true"});
    io::write_csv_row(s, {"n", std::to_string(params.dim())});
    io::write_csv_row(s, {"family", gen.name()});
    for (int i = 0; i < params.dim(); ++i) {
      io::write_csv_row(s, {"skewing" + std::to_string(i + 1), format_double(params.skewing()[i])});
    }
  }
  io::write_output(run.out, s.str());
}

void cmd_adjudicate(const Run& run, const std::string& suite, const std::string& log, bool stamp) {
  const auto& cfg = run.model();
  const auto params = io::make_params(cfg);
  const auto gen = io::make_generator(cfg);
  SuiteOptions opt;
  opt.draws = run.n_draws;
  opt.seed = run.seed;
  opt.threads = run.threads;
  auto reports = run_suite(suite, params, gen, opt);

  const std::string when = now_utc();
  if (stamp) {
    for (auto& r : reports) r.metadata.timestamp = when;
  }
  if (!log.empty()) {
    std::ofstream out(log, std::ios::binary | std::ios::app);
    if (!out) throw IoFailure("cannot open '" + log + "' for appending");
    auto stamped = reports;
    for (auto& r : stamped) r.metadata.timestamp = when;
    write_jsonl(out, stamped);
    if (!out) throw IoFailure("error while appending to '" + log + "'");
  }

  // Pairwise agreement between characteristic-function routes evaluated on the same grid.
  json agreement = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      const auto& a = reports[i];
      const auto& b = reports[j];
      if (a.verdict == "error" || b.verdict == "error" || a.reference != b.reference || a.grid != b.grid) continue;
      if (a.reference != "cf:monte_carlo") continue;
      double worst = 0.0;
      for (std::size_t k = 0; k < a.subject_values.size(); ++k) {
        worst = std::max(worst, std::abs(a.subject_values[k] - b.subject_values[k]));
      }
      agreement.push_back({{"a", a.subject}, {"b", b.subject}, {"max_abs_difference", worst}});
    }
  }

  std::ostringstream s;
  if (run.json_output()) {
    json rs = json::array();
    json summary = json::array();
    for (const auto& r : reports) {
      rs.push_back(to_json(r));
      summary.push_back(summary_line(r));
    }
    s << dump({{"suite", suite}, {"summary", summary}, {"route_agreement", agreement}, {"reports", rs}});
  } else {
    io::write_csv_row(s, {"subject", "reference", "verdict", "max_standardized_deviation", "seed", "N"});
    for (const auto& r : reports) {
      io::write_csv_row(s, {r.subject, r.reference, r.verdict, format_double(r.max_standardized_deviation()),
                            std::to_string(r.metadata.seed), std::to_string(r.metadata.n)});
    }
  }
  io::write_output(run.out, s.str());
}

int report_error(const char* kind, const std::string& message, int code) {
  json j = {{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Sampling, densities, characteristic functions and moments of skew-elliptical laws"};
  app.name("skell");
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--config", common.config, "model JSON document");
  app.add_option("--seed", common.seed, "random seed");
  app.add_option("--n-draws", common.n_draws, "number of Monte Carlo draws");
  app.add_option("--variant", common.variant, "sampler: conditioning, rep_a, rep_b_corrected, rep_b_printed, "
                                              "rep_c_corrected, rep_c_printed");
  app.add_option("--grid", common.grid, "CSV of evaluation points (header row, n columns)");
  app.add_option("--out", common.out, "output path (default stdout)");
  app.add_option("--format", common.format, "csv or json");
  app.add_option("--threads", common.threads, "worker threads (default SKELL_THREADS or all cores)");

  auto* sample = app.add_subcommand("sample", "draw from the law");
  auto* pdf = app.add_subcommand("pdf", "density and log-density at grid points");
  auto* cf = app.add_subcommand("cf", "characteristic function at grid points");
  std::string method = "auto";
  cf->add_option("--method", method,
                 "auto, skew_normal, skew_t, skew_t_printed, conditional_integral, generic, generic_printed, "
                 "monte_carlo");
  auto* moments = app.add_subcommand("moments", "moments up to order four");
  std::string empirical;
  int max_order = 4;
  moments->add_option("--empirical", empirical, "CSV of draws; report sample moments and standard errors");
  moments->add_option("--max-order", max_order, "highest order (1-4)")->check(CLI::Range(1, 4));
  auto* qform = app.add_subcommand("qform", "moments of Y'AY and Y'BY");
  std::string a_path, b_path;
  qform->add_option("--A", a_path, "CSV of the symmetric matrix A");
  qform->add_option("--B", b_path, "CSV of the symmetric matrix B (default A)");
  auto* validate = app.add_subcommand("validate", "check a model document");
  auto* adjudicate = app.add_subcommand("adjudicate", "compare formulas against simulation");
  std::string suite = "default";
  std::string log;
  bool stamp = false;
  adjudicate->add_option("--suite", suite, "default, representations, cf, skew_uniform, angular or moments");
  adjudicate->add_option("--log", log, "append reports as JSON lines (with timestamps)");
  adjudicate->add_flag("--timestamp", stamp, "put the current time into the --out reports");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kInvalidInput);
  }

  try {
    const Run r = resolve(common);
    if (sample->parsed()) cmd_sample(r);
    else if (pdf->parsed()) cmd_pdf(r);
    else if (cf->parsed()) cmd_cf(r, method);
    else if (moments->parsed()) cmd_moments(r, empirical, max_order);
    else if (qform->parsed()) cmd_qform(r, a_path, b_path);
    else if (validate->parsed()) cmd_validate(r);
    else if (adjudicate->parsed()) cmd_adjudicate(r, suite, log, stamp);
    return kOk;
  } catch (const InvalidArgument& e) {
    return report_error(e.kind(), e.what(), kInvalidInput);
  } catch (const NumericalFailure& e) {
    return report_error(e.kind(), e.what(), kNumericalFailure);
  } catch (const IoFailure& e) {
    return report_error(e.kind(), e.what(), kIoFailure);
  } catch (const std::bad_alloc&) {
    return report_error("numerical_failure", "out of memory", kNumericalFailure);
  } catch (const std::exception& e) {
    return report_error("numerical_failure", e.what(), kNumericalFailure);
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace skell::cli
