#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skell/linalg.hpp"
#include "skell/model.hpp"
#include "skell/moments.hpp"
#include "skell/rng.hpp"
#include "skell/sampling.hpp"

namespace skell {

// ---------------------------------------------------------------------------
// Estimators

/// Sample moments and per-entry standard errors (sample standard deviation of the
/// per-draw products over sqrt(N)). Sums run shard by shard with compensation and
/// are combined in shard order, so the result does not depend on the thread count.
struct MomentEstimate {
  MomentSet estimate;
  MomentSet se;
};
MomentEstimate mc_moment_set(const SampleMatrix& samples, int max_order = 4, int threads = 0);

struct CfEstimate {
  std::complex<double> value;
  double se_re;
  double se_im;
};
/// Empirical characteristic function on every row of `grid` (points x n), sharing draws.
std::vector<CfEstimate> empirical_cf(const SampleMatrix& samples, const Matrix& grid, int threads = 0);

struct KsResult {
  double statistic;
  double p_value;
  bool pass;  // p_value > 0.01
};
/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);
/// One-sample test. Needs at least 100 points; a cdf that is constant over the
/// sample (all 0 or all 1) is rejected as invalid input.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);
KsResult two_sample_ks(std::vector<double> a, std::vector<double> b);

struct ChiSquareResult {
  double statistic;
  int dof;
  double p_value;
  bool pass;  // p_value > 0.01
};
/// Histogram goodness of fit: `bins` cells between the 0.1% and 99.9% sample
/// quantiles plus two open tail cells; cells with expected count below 5 are merged.
ChiSquareResult chi_square_gof(std::vector<double> samples, const std::function<double(double)>& cdf,
                               int bins = 50);

/// `count` points uniform in the ball of the given radius in R^n.
Matrix random_grid(int n, int count, double radius, Rng& rng);

// ---------------------------------------------------------------------------
// Adjudication

inline constexpr double kAdjudicationSe = 4.0;

struct AdjudicationMetadata {
  std::uint64_t seed = 0;
  std::int64_t n = 0;  // Monte Carlo draws behind the reference (0 when deterministic)
  std::optional<std::string> timestamp;
};

/// One subject compared with one reference over a grid. verdict is
/// "consistent" iff max |deviation| / se <= 4, "inconsistent" otherwise, and
/// "error" when the subject could not be evaluated.
struct AdjudicationReport {
  std::string subject;
  std::string reference;
  std::vector<nlohmann::json> grid;
  std::vector<double> subject_values;
  std::vector<double> reference_values;
  std::vector<double> deviations;
  std::vector<double> se;
  std::string verdict;
  std::string error;
  AdjudicationMetadata metadata;

  /// max |deviation| / se; a zero deviation over a zero se counts as 0.
  double max_standardized_deviation() const;
};

/// Fills deviations and the verdict from subject/reference values and se.
void finalize(AdjudicationReport& report);

nlohmann::json to_json(const AdjudicationReport& report);
/// One JSON object per line.
void write_jsonl(std::ostream& out, const std::vector<AdjudicationReport>& reports);
/// "subject vs reference: verdict (max k.kk se)".
std::string summary_line(const AdjudicationReport& report);

struct SuiteOptions {
  std::int64_t draws = 1'000'000;
  std::uint64_t seed = 20240601;
  int threads = 0;
  int grid_points = 10;
  double grid_radius = 3.0;
};

/// Every representation variant against the conditioning sampler on M1, M2 and the
/// marginal third and fourth moments (two-sample standard errors).
std::vector<AdjudicationReport> adjudicate_representations(const SkewEllipticalParams& params,
                                                           const DensityGenerator& gen,
                                                           const std::vector<Variant>& variants,
                                                           const SuiteOptions& opt);

/// Every characteristic-function route applicable to the family against the
/// empirical CF of the conditioning sampler on a random grid.
std::vector<AdjudicationReport> adjudicate_cf_routes(const SkewEllipticalParams& params,
                                                     const DensityGenerator& gen, const SuiteOptions& opt);

/// Skew-uniform forms against simulation: the symmetric 0F1 claim and the
/// quadrature form at zero skewing, and the quadrature form at the given skewing.
std::vector<AdjudicationReport> adjudicate_skew_uniform(const Vector& skewing, const SuiteOptions& opt);

/// The squared-argument angular integral against the Bessel form of the sphere
/// characteristic function (deterministic; tolerance 1e-9 plays the role of se).
AdjudicationReport adjudicate_angular_argument(int max_n = 10);

/// Analytic fourth moments with and without the cubic-skewing block against simulation.
std::vector<AdjudicationReport> adjudicate_fourth_moment(const SkewEllipticalParams& params,
                                                         const DensityGenerator& gen, const SuiteOptions& opt);

/// Analytic M1..M4 (all entries) against simulation.
AdjudicationReport adjudicate_moments(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                      const SuiteOptions& opt);

/// Suites by name: representations, cf, skew_uniform, angular, moments, default (all of them).
std::vector<AdjudicationReport> run_suite(const std::string& name, const SkewEllipticalParams& params,
                                          const DensityGenerator& gen, const SuiteOptions& opt);

}  // namespace skell
