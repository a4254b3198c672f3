#include "skell/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "skell/charfn.hpp"
#include "skell/error.hpp"
#include "skell/parallel.hpp"
#include "skell/special_functions.hpp"

namespace skell {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int effective_threads(int threads) { return threads > 0 ? threads : default_threads(); }

// Neumaier summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::int64_t shard_count(std::int64_t n) { return (n + kShardSize - 1) / kShardSize; }

// Sums f(row, e) over rows for every e in [0, entries): per-shard compensated sums
// reduced in shard order.
template <typename F>
std::vector<double> sharded_sums(std::int64_t rows, std::size_t entries, int threads, F f) {
  const std::int64_t shards = shard_count(rows);
  std::vector<std::vector<CompensatedSum>> partial(shards, std::vector<CompensatedSum>(entries));
  for_each_shard(rows, effective_threads(threads), [&](std::int64_t s, std::int64_t begin, std::int64_t end) {
    auto& acc = partial[s];
    for (std::int64_t r = begin; r < end; ++r) {
      for (std::size_t e = 0; e < entries; ++e) acc[e].add(f(r, e));
    }
  });
  std::vector<double> out(entries);
  for (std::size_t e = 0; e < entries; ++e) {
    CompensatedSum total;
    for (std::int64_t s = 0; s < shards; ++s) total.add(partial[s][e].value());
    out[e] = total.value();
  }
  return out;
}

struct MomentEntry {
  int order;
  std::array<int, 4> idx;
};

std::vector<MomentEntry> unique_entries(int n, int max_order) {
  std::vector<MomentEntry> out;
  for (int order = 1; order <= max_order; ++order) {
    std::array<int, 4> idx{0, 0, 0, 0};
    // Enumerate non-decreasing index tuples.
    while (true) {
      out.push_back({order, idx});
      int pos = order - 1;
      while (pos >= 0 && idx[pos] == n - 1) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int q = pos + 1; q < order; ++q) idx[q] = idx[pos];
    }
  }
  return out;
}

void place(MomentSet& m, int n, const MomentEntry& e, double v) {
  std::array<int, 4> p = e.idx;
  std::sort(p.begin(), p.begin() + e.order);
  do {
    switch (e.order) {
      case 1: m.m1[p[0]] = v; break;
      case 2: m.m2(p[0], p[1]) = v; break;
      case 3: m.m3(p[0] + n * p[1], p[2]) = v; break;
      case 4: m.m4(p[0] + n * p[1], p[2] + n * p[3]) = v; break;
    }
  } while (std::next_permutation(p.begin(), p.begin() + e.order));
}

MomentSet empty_set(int n, int max_order) {
  MomentSet m;
  m.max_order = max_order;
  m.m1 = Vector::Zero(n);
  if (max_order >= 2) m.m2 = Matrix::Zero(n, n);
  if (max_order >= 3) m.m3 = Matrix::Zero(n * n, n);
  if (max_order >= 4) m.m4 = Matrix::Zero(n * n, n * n);
  return m;
}

double entry_of(const MomentSet& m, int n, const MomentEntry& e) {
  const auto& p = e.idx;
  switch (e.order) {
    case 1: return m.m1[p[0]];
    case 2: return m.m2(p[0], p[1]);
    case 3: return m.m3(p[0] + n * p[1], p[2]);
    default: return m.m4(p[0] + n * p[1], p[2] + n * p[3]);
  }
}

nlohmann::json entry_label(const MomentEntry& e) {
  std::vector<int> idx(e.idx.begin(), e.idx.begin() + e.order);
  return {{"moment", "M" + std::to_string(e.order)}, {"index", idx}};
}

AdjudicationReport make_report(std::string subject, std::string reference, const SuiteOptions& opt,
                               std::int64_t draws) {
  AdjudicationReport r;
  r.subject = std::move(subject);
  r.reference = std::move(reference);
  r.metadata.seed = opt.seed;
  r.metadata.n = draws;
  return r;
}

void mark_error(AdjudicationReport& r, const std::exception& e) {
  r.verdict = "error";
  r.error = e.what();
  r.subject_values.clear();
  r.reference_values.clear();
  r.deviations.clear();
  r.se.clear();
  r.grid.clear();
}

}  // namespace

// ---------------------------------------------------------------------------
// Estimators

MomentEstimate mc_moment_set(const SampleMatrix& x, int max_order, int threads) {
  const std::int64_t rows = x.rows();
  const int n = static_cast<int>(x.cols());
  if (rows < 2) throw InvalidArgument("moment estimation needs at least two draws");
  if (n < 1 || n > kMaxMomentDim) throw InvalidArgument("sample dimension out of range");
  if (max_order < 1 || max_order > 4) throw InvalidArgument("moment order must be in 1..4");
  const auto entries = unique_entries(n, max_order);

  auto product = [&](std::int64_t r, std::size_t e) {
    const auto& en = entries[e];
    double v = x(r, en.idx[0]);
    for (int k = 1; k < en.order; ++k) v *= x(r, en.idx[k]);
    return v;
  };
  const double inv = 1.0 / static_cast<double>(rows);
  std::vector<double> mean = sharded_sums(rows, entries.size(), threads, product);
  for (auto& m : mean) m *= inv;
  std::vector<double> ss = sharded_sums(rows, entries.size(), threads, [&](std::int64_t r, std::size_t e) {
    const double d = product(r, e) - mean[e];
    return d * d;
  });

  MomentEstimate out{empty_set(n, max_order), empty_set(n, max_order)};
  const double denom = static_cast<double>(rows - 1) * static_cast<double>(rows);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    place(out.estimate, n, entries[e], mean[e]);
    place(out.se, n, entries[e], std::sqrt(ss[e] / denom));
  }
  return out;
}

std::vector<CfEstimate> empirical_cf(const SampleMatrix& x, const Matrix& grid, int threads) {
  const std::int64_t rows = x.rows();
  if (rows < 2) throw InvalidArgument("empirical characteristic function needs at least two draws");
  if (grid.cols() != x.cols()) throw InvalidArgument("grid and sample dimensions differ");
  std::vector<CfEstimate> out;
  out.reserve(grid.rows());
  std::vector<double> c(rows), s(rows);
  const double inv = 1.0 / static_cast<double>(rows);
  for (Index g = 0; g < grid.rows(); ++g) {
    const Vector t = grid.row(g).transpose();
    parallel_for(shard_count(rows), effective_threads(threads), [&](std::int64_t shard) {
      const std::int64_t begin = shard * kShardSize;
      const std::int64_t end = std::min(rows, begin + kShardSize);
      for (std::int64_t r = begin; r < end; ++r) {
        const double p = x.row(r).dot(t);
        c[r] = std::cos(p);
        s[r] = std::sin(p);
      }
    });
    auto pick = [&](std::int64_t r, std::size_t e) { return e == 0 ? c[r] : s[r]; };
    std::vector<double> mean = sharded_sums(rows, 2, threads, pick);
    mean[0] *= inv;
    mean[1] *= inv;
    const std::vector<double> ss = sharded_sums(rows, 2, threads, [&](std::int64_t r, std::size_t e) {
      const double d = pick(r, e) - mean[e];
      return d * d;
    });
    const double denom = static_cast<double>(rows - 1) * static_cast<double>(rows);
    out.push_back({{mean[0], mean[1]}, std::sqrt(ss[0] / denom), std::sqrt(ss[1] / denom)});
  }
  return out;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // the series converges slowly and the survival is 1 to double precision
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  const std::size_t n = samples.size();
  if (n < 100) throw InvalidArgument("KS test needs at least 100 samples");
  std::sort(samples.begin(), samples.end());
  double lo = 1.0, hi = 0.0, d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("cdf returned a value outside [0, 1]");
    lo = std::min(lo, f);
    hi = std::max(hi, f);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  if (hi == lo) throw InvalidArgument("cdf is constant over the sample (degenerate reference)");
  const double rn = std::sqrt(static_cast<double>(n));
  const double p = kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d);
  return {d, p, p > 0.01};
}

KsResult two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 100 || b.size() < 100) throw InvalidArgument("KS test needs at least 100 samples per sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double p = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
  return {d, p, p > 0.01};
}

ChiSquareResult chi_square_gof(std::vector<double> samples, const std::function<double(double)>& cdf, int bins) {
  const std::size_t n = samples.size();
  if (n < 100) throw InvalidArgument("chi-square test needs at least 100 samples");
  if (bins < 2) throw InvalidArgument("chi-square test needs at least two bins");
  std::sort(samples.begin(), samples.end());
  const double lo = samples[static_cast<std::size_t>(0.001 * n)];
  const double hi = samples[std::min(n - 1, static_cast<std::size_t>(std::ceil(0.999 * n)) - 1)];
  if (!(hi > lo)) throw InvalidArgument("chi-square test: sample is degenerate");

  std::vector<double> edges(bins + 1);
  for (int k = 0; k <= bins; ++k) edges[k] = lo + (hi - lo) * k / bins;
  std::vector<double> expected, observed;
  double prev_f = 0.0;
  std::size_t prev_count = 0;
  for (int k = 0; k <= bins + 1; ++k) {
    const double f = k <= bins ? cdf(edges[k]) : 1.0;
    const std::size_t count =
        k <= bins ? static_cast<std::size_t>(std::upper_bound(samples.begin(), samples.end(), edges[k]) -
                                             samples.begin())
                  : n;
    expected.push_back(n * (f - prev_f));
    observed.push_back(static_cast<double>(count - prev_count));
    prev_f = f;
    prev_count = count;
  }
  // Merge cells until each expected count reaches 5.
  std::vector<double> e_cells, o_cells;
  double e_acc = 0.0, o_acc = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    e_acc += expected[k];
    o_acc += observed[k];
    if (e_acc >= 5.0) {
      e_cells.push_back(e_acc);
      o_cells.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (e_cells.empty()) throw InvalidArgument("chi-square test: too few expected counts");
    e_cells.back() += e_acc;
    o_cells.back() += o_acc;
  }
  double stat = 0.0;
  for (std::size_t k = 0; k < e_cells.size(); ++k) {
    const double d = o_cells[k] - e_cells[k];
    stat += d * d / e_cells[k];
  }
  const int dof = static_cast<int>(e_cells.size()) - 1;
  if (dof < 1) throw InvalidArgument("chi-square test: fewer than two usable cells");
  const double p = boost::math::gamma_q(0.5 * dof, 0.5 * stat);
  return {stat, dof, p, p > 0.01};
}

Matrix random_grid(int n, int count, double radius, Rng& rng) {
  if (n < 1 || count < 0) throw InvalidArgument("random_grid: bad shape");
  Matrix g(count, n);
  for (int i = 0; i < count; ++i) {
    const Vector dir = sample_unit_sphere(n, rng);
    g.row(i) = (radius * std::pow(rng.uniform(), 1.0 / n)) * dir.transpose();
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reports

double AdjudicationReport::max_standardized_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    const double d = std::abs(deviations[i]);
    double z;
    if (std::isnan(d)) {
      z = kInf;
    } else if (se[i] > 0.0) {
      z = d / se[i];
    } else {
      z = d == 0.0 ? 0.0 : kInf;
    }
    worst = std::max(worst, z);
  }
  return worst;
}

void finalize(AdjudicationReport& r) {
  if (r.subject_values.size() != r.reference_values.size() || r.se.size() != r.subject_values.size() ||
      r.grid.size() != r.se.size()) {
    throw InvalidArgument("adjudication report has inconsistent lengths");
  }
  r.deviations.resize(r.subject_values.size());
  for (std::size_t i = 0; i < r.deviations.size(); ++i) r.deviations[i] = r.subject_values[i] - r.reference_values[i];
  r.verdict = r.max_standardized_deviation() <= kAdjudicationSe ? "consistent" : "inconsistent";
}

nlohmann::json to_json(const AdjudicationReport& r) {
  nlohmann::json meta = {{"seed", r.metadata.seed}, {"N", r.metadata.n}};
  meta["timestamp"] = r.metadata.timestamp ? nlohmann::json(*r.metadata.timestamp) : nlohmann::json(nullptr);
  nlohmann::json j = {{"subject", r.subject},
                      {"reference", r.reference},
                      {"grid", r.grid},
                      {"deviations", r.deviations},
                      {"se", r.se},
                      {"verdict", r.verdict},
                      {"metadata", meta},
                      {"subject_values", r.subject_values},
                      {"reference_values", r.reference_values},
                      {"criterion_se", kAdjudicationSe}};
  const double z = r.max_standardized_deviation();
  j["max_standardized_deviation"] = std::isfinite(z) ? nlohmann::json(z) : nlohmann::json("inf");
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void write_jsonl(std::ostream& out, const std::vector<AdjudicationReport>& reports) {
  for (const auto& r : reports) out << to_json(r).dump() << '\n';
}

std::string summary_line(const AdjudicationReport& r) {
  std::ostringstream s;
  s << r.subject << " vs " << r.reference << ": " << r.verdict;
  if (r.verdict == "error") {
    s << " (" << r.error << ")";
  } else {
    s.precision(3);
    s << " (max " << r.max_standardized_deviation() << " se)";
  }
  return s.str();
}

// ---------------------------------------------------------------------------
// Suites

std::vector<AdjudicationReport> adjudicate_representations(const SkewEllipticalParams& params,
                                                           const DensityGenerator& gen,
                                                           const std::vector<Variant>& variants,
                                                           const SuiteOptions& opt) {
  const int n = params.dim();
  const auto reference =
      mc_moment_set(sample_conditioning(params, gen, opt.draws, {opt.seed, 0}, opt.threads), 4, opt.threads);
  // M1, M2 and the marginal third and fourth moments.
  std::vector<MomentEntry> entries;
  for (const auto& e : unique_entries(n, 2)) entries.push_back(e);
  for (int i = 0; i < n; ++i) {
    entries.push_back({3, {i, i, i, 0}});
    entries.push_back({4, {i, i, i, i}});
  }

  std::vector<AdjudicationReport> out;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    auto r = make_report("sampler:" + std::string(to_string(variants[v])), "sampler:conditioning", opt, opt.draws);
    try {
      const auto subject = mc_moment_set(
          sample_representation(params, gen, variants[v], opt.draws, {opt.seed, 1 + v}, opt.threads), 4,
          opt.threads);
      for (const auto& e : entries) {
        r.grid.push_back(entry_label(e));
        r.subject_values.push_back(entry_of(subject.estimate, n, e));
        r.reference_values.push_back(entry_of(reference.estimate, n, e));
        r.se.push_back(std::hypot(entry_of(subject.se, n, e), entry_of(reference.se, n, e)));
      }
      finalize(r);
    } catch (const Error& e) {
      mark_error(r, e);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AdjudicationReport> adjudicate_cf_routes(const SkewEllipticalParams& params,
                                                     const DensityGenerator& gen, const SuiteOptions& opt) {
  const int n = params.dim();
  Rng grid_rng(opt.seed, 1000);
  const Matrix grid = random_grid(n, opt.grid_points, opt.grid_radius, grid_rng);
  const auto mc = empirical_cf(sample_conditioning(params, gen, opt.draws, {opt.seed, 0}, opt.threads), grid,
                               opt.threads);

  using Route = std::pair<std::string, std::function<CfValue(const Vector&)>>;
  std::vector<Route> routes;
  const auto family = gen.family();
  if (family == DensityGenerator::Family::normal) {
    routes.push_back({"cf:skew_normal_closed_form", [&](const Vector& t) { return cf_skew_normal(params, t); }});
  }
  if (family == DensityGenerator::Family::student_t) {
    routes.push_back({"cf:skew_t_corrected", [&](const Vector& t) {
                        return cf_skew_t(params, gen.dof(), t, PrefactorReading::corrected);
                      }});
    routes.push_back({"cf:skew_t_printed", [&](const Vector& t) {
                        return cf_skew_t(params, gen.dof(), t, PrefactorReading::printed);
                      }});
  }
  if (family == DensityGenerator::Family::normal || family == DensityGenerator::Family::student_t) {
    routes.push_back({"cf:conditional_integral", [&](const Vector& t) { return cf_conditional_integral(params, gen, t); }});
  }
  routes.push_back({"cf:generic_corrected", [&](const Vector& t) {
                      return cf_generic(params, gen, t, RadialReading::corrected);
                    }});
  routes.push_back({"cf:generic_printed", [&](const Vector& t) {
                      return cf_generic(params, gen, t, RadialReading::printed);
                    }});

  std::vector<AdjudicationReport> out;
  for (const auto& [name, eval] : routes) {
    auto r = make_report(name, "cf:monte_carlo", opt, opt.draws);
    try {
      for (Index g = 0; g < grid.rows(); ++g) {
        const Vector t = grid.row(g).transpose();
        const CfValue v = eval(t);
        const std::vector<double> tv(t.data(), t.data() + n);
        r.grid.push_back({{"t", tv}, {"part", "re"}});
        r.subject_values.push_back(v.value.real());
        r.reference_values.push_back(mc[g].value.real());
        r.se.push_back(mc[g].se_re);
        r.grid.push_back({{"t", tv}, {"part", "im"}});
        r.subject_values.push_back(v.value.imag());
        r.reference_values.push_back(mc[g].value.imag());
        r.se.push_back(mc[g].se_im);
      }
      finalize(r);
    } catch (const Error& e) {
      mark_error(r, e);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AdjudicationReport> adjudicate_skew_uniform(const Vector& skewing, const SuiteOptions& opt) {
  const int n = static_cast<int>(skewing.size());
  Rng grid_rng(opt.seed, 1001);
  const Matrix grid = random_grid(n, opt.grid_points, opt.grid_radius, grid_rng);
  const Vector zero = Vector::Zero(n);
  const auto mc_zero = empirical_cf(sample_skew_uniform(zero, opt.draws, {opt.seed, 10}, opt.threads), grid,
                                    opt.threads);
  const auto mc_skew = empirical_cf(sample_skew_uniform(skewing, opt.draws, {opt.seed, 11}, opt.threads), grid,
                                    opt.threads);

  struct Case {
    std::string name;
    Vector skew;
    SkewUniformForm form;
    const std::vector<CfEstimate>* mc;
  };
  const std::vector<Case> cases = {
      {"skew_uniform:symmetric_claim", zero, SkewUniformForm::symmetric_claim, &mc_zero},
      {"skew_uniform:sphere_cf(delta=0)", zero, SkewUniformForm::sphere_cf, &mc_zero},
      {"skew_uniform:sphere_cf", skewing, SkewUniformForm::sphere_cf, &mc_skew},
      {"skew_uniform:hypergeometric", skewing, SkewUniformForm::hypergeometric, &mc_skew},
  };
  std::vector<AdjudicationReport> out;
  for (const auto& c : cases) {
    auto r = make_report(c.name, "skew_uniform:monte_carlo", opt, opt.draws);
    try {
      for (Index g = 0; g < grid.rows(); ++g) {
        const Vector t = grid.row(g).transpose();
        const CfValue v = cf_skew_uniform(c.skew, t, c.form);
        const std::vector<double> tv(t.data(), t.data() + n);
        const auto& m = (*c.mc)[g];
        r.grid.push_back({{"t", tv}, {"part", "re"}});
        r.subject_values.push_back(v.value.real());
        r.reference_values.push_back(m.value.real());
        r.se.push_back(m.se_re);
        r.grid.push_back({{"t", tv}, {"part", "im"}});
        r.subject_values.push_back(v.value.imag());
        r.reference_values.push_back(m.value.imag());
        r.se.push_back(m.se_im);
      }
      finalize(r);
    } catch (const Error& e) {
      mark_error(r, e);
    }
    out.push_back(std::move(r));
  }
  return out;
}

AdjudicationReport adjudicate_angular_argument(int max_n) {
  AdjudicationReport r;
  r.subject = "sphere_cf:angular_squared_argument";
  r.reference = "sphere_cf:bessel";
  try {
    for (int n = 2; n <= max_n; ++n) {
      for (int k = 0; k <= 40; ++k) {
        const double t = 0.5 * k;
        r.grid.push_back({{"n", n}, {"norm_t", t}});
        r.subject_values.push_back(omega_n_angular_squared_argument(n, t * t));
        r.reference_values.push_back(omega_n(n, t * t, OmegaMethod::bessel));
        r.se.push_back(1e-9);
      }
    }
    finalize(r);
  } catch (const Error& e) {
    mark_error(r, e);
  }
  return r;
}

namespace {

AdjudicationReport compare_moments(std::string subject, const MomentSet& analytic, const MomentEstimate& mc,
                                   int n, int order_lo, int order_hi, const SuiteOptions& opt) {
  auto r = make_report(std::move(subject), "moments:monte_carlo", opt, opt.draws);
  for (const auto& e : unique_entries(n, order_hi)) {
    if (e.order < order_lo) continue;
    r.grid.push_back(entry_label(e));
    r.subject_values.push_back(entry_of(analytic, n, e));
    r.reference_values.push_back(entry_of(mc.estimate, n, e));
    r.se.push_back(entry_of(mc.se, n, e));
  }
  finalize(r);
  return r;
}

std::vector<AdjudicationReport> moment_suite(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                             const SuiteOptions& opt, bool ablation) {
  const int n = params.dim();
  const auto mc =
      mc_moment_set(sample_conditioning(params, gen, opt.draws, {opt.seed, 20}, opt.threads), 4, opt.threads);
  std::vector<AdjudicationReport> out;
  MomentSet analytic;
  try {
    analytic = se_moments(params, gen, 4);
    out.push_back(compare_moments("moments:analytic", analytic, mc, n, 1, 4, opt));
  } catch (const Error& e) {
    auto r = make_report("moments:analytic", "moments:monte_carlo", opt, opt.draws);
    mark_error(r, e);
    out.push_back(std::move(r));
    return out;
  }
  if (!ablation) return out;
  MomentSet without = analytic;
  FourthMomentTerms terms;
  terms.b3 = false;
  without.m4 = se_fourth_moment(params, analytic.ratios, terms);
  out.push_back(compare_moments("moments:M4", analytic, mc, n, 4, 4, opt));
  out.push_back(compare_moments("moments:M4_without_B3", without, mc, n, 4, 4, opt));
  return out;
}

}  // namespace

AdjudicationReport adjudicate_moments(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                      const SuiteOptions& opt) {
  return moment_suite(params, gen, opt, false).front();
}

std::vector<AdjudicationReport> adjudicate_fourth_moment(const SkewEllipticalParams& params,
                                                         const DensityGenerator& gen, const SuiteOptions& opt) {
  auto all = moment_suite(params, gen, opt, true);
  if (all.size() > 1) all.erase(all.begin());
  return all;
}

std::vector<AdjudicationReport> run_suite(const std::string& name, const SkewEllipticalParams& params,
                                          const DensityGenerator& gen, const SuiteOptions& opt) {
  const bool all = name == "default";
  if (!all && name != "representations" && name != "cf" && name != "skew_uniform" && name != "angular" &&
      name != "moments") {
    throw InvalidArgument("unknown suite '" + name +
                          "' (expected default, representations, cf, skew_uniform, angular or moments)");
  }
  std::vector<AdjudicationReport> out;
  auto append = [&](std::vector<AdjudicationReport> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  if (all || name == "representations") {
    append(adjudicate_representations(params, gen,
                                      {Variant::rep_a, Variant::rep_b_corrected, Variant::rep_b_printed,
                                       Variant::rep_c_corrected, Variant::rep_c_printed},
                                      opt));
  }
  if (all || name == "cf") append(adjudicate_cf_routes(params, gen, opt));
  if (all || name == "skew_uniform") append(adjudicate_skew_uniform(params.skewing(), opt));
  if (all || name == "angular") out.push_back(adjudicate_angular_argument());
  if (all || name == "moments") {
    bool finite = true;
    try {
      radial_ratios(gen, params.dim(), 4);
    } catch (const MomentNotFinite&) {
      finite = false;
    }
    if (finite) {
      append(moment_suite(params, gen, opt, true));
    } else {
      auto r = make_report("moments:analytic", "moments:monte_carlo", opt, opt.draws);
      mark_error(r, MomentNotFinite("fourth radial moment does not exist for this family"));
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace skell
