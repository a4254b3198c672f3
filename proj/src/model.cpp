#include "skell/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "skell/error.hpp"
#include "skell/quadrature.hpp"
#include "skell/special_functions.hpp"

namespace skell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kUnderflowFloor = 1e-300;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double student_log_generator(double dof, int k, double u) {
  return log_gamma(0.5 * (dof + k)) - log_gamma(0.5 * dof) - 0.5 * k * std::log(dof * kPi) -
         0.5 * (dof + k) * std::log1p(u / dof);
}

double inverse_gamma_half_moment(double dof, int k) {
  if (k == 0) return 1.0;
  if (!(dof > k)) {
    throw MomentNotFinite("E eta^{k/2} of the inverse-gamma mixing law requires nu > k (nu = " +
                          fmt(dof) + ", k = " + std::to_string(k) + ")");
  }
  return std::exp(0.5 * k * std::log(0.5 * dof) + log_gamma(0.5 * (dof - k)) - log_gamma(0.5 * dof));
}

const quadrature::Options kHalfLine{1e-13, 1e-12, 4000};

}  // namespace

// ---------------------------------------------------------------------------
// Parameters

SkewEllipticalParams SkewEllipticalParams::from_shape(Vector location, Matrix dispersion, Vector shape) {
  const Index n = location.size();
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (dispersion.rows() != n || dispersion.cols() != n) {
    throw InvalidArgument("dispersion must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (shape.size() != n) throw InvalidArgument("shape vector length must equal the dimension");
  if (!location.allFinite() || !dispersion.allFinite() || !shape.allFinite()) {
    throw InvalidArgument("parameters must be finite");
  }
  if (!is_symmetric(dispersion)) throw InvalidArgument("dispersion matrix is not symmetric");
  if (!is_positive_definite(dispersion)) {
    throw InvalidArgument("dispersion matrix is not positive definite");
  }

  SkewEllipticalParams p;
  p.location_ = std::move(location);
  p.dispersion_ = 0.5 * (dispersion + dispersion.transpose());
  p.shape_ = std::move(shape);
  p.scales_ = p.dispersion_.diagonal().cwiseSqrt();
  const Vector inv = p.scales_.cwiseInverse();
  p.correlation_ = inv.asDiagonal() * p.dispersion_ * inv.asDiagonal();
  p.correlation_.diagonal().setOnes();
  const Vector r_shape = p.correlation_ * p.shape_;
  p.skewing_ = r_shape / std::sqrt(1.0 + p.shape_.dot(r_shape));
  p.derive_from_correlation_and_skewing();
  return p;
}

SkewEllipticalParams SkewEllipticalParams::from_skewing(Vector location, const Vector& scales,
                                                        const Matrix& latent_correlation,
                                                        const Vector& skewing) {
  const Index n = location.size();
  if (scales.size() != n || skewing.size() != n) {
    throw InvalidArgument("scales and skewing vector must have the dimension of the location");
  }
  if ((scales.array() <= 0.0).any()) throw InvalidArgument("scales must be positive");
  const auto fm = forward_map(latent_correlation, skewing);
  Matrix dispersion = scales.asDiagonal() * fm.correlation * scales.asDiagonal();
  return from_shape(std::move(location), std::move(dispersion), fm.shape);
}

void SkewEllipticalParams::derive_from_correlation_and_skewing() {
  if ((skewing_.array().abs() >= 1.0).any()) {
    throw InvalidArgument("inadmissible parameters: a skewing entry is not in (-1, 1)");
  }
  complement_ = (1.0 - skewing_.array().square()).sqrt().matrix();
  const Vector inv = complement_.cwiseInverse();
  latent_correlation_ =
      inv.asDiagonal() * (correlation_ - skewing_ * skewing_.transpose()) * inv.asDiagonal();
  latent_correlation_ = 0.5 * (latent_correlation_ + latent_correlation_.transpose());
  if (!is_positive_definite(latent_correlation_)) {
    throw InvalidArgument(
        "inadmissible (dispersion, shape) pair: latent correlation is not positive definite");
  }
  latent_sqrt_ = symmetric_sqrt(latent_correlation_);
  latent_shape_ = skewing_.cwiseProduct(inv);
  scaled_skewing_ = scales_.cwiseProduct(skewing_);
  residual_ = dispersion_ - scaled_skewing_ * scaled_skewing_.transpose();
  residual_ = 0.5 * (residual_ + residual_.transpose());
}

ForwardMapResult forward_map(const Matrix& latent_correlation, const Vector& skewing) {
  const Index n = skewing.size();
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (latent_correlation.rows() != n || latent_correlation.cols() != n) {
    throw InvalidArgument("latent correlation must be n x n");
  }
  if (!is_symmetric(latent_correlation)) throw InvalidArgument("latent correlation is not symmetric");
  if ((latent_correlation.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw InvalidArgument("latent correlation must have unit diagonal");
  }
  if (!is_positive_definite(latent_correlation)) {
    throw InvalidArgument("latent correlation is not positive definite");
  }
  if ((skewing.array().abs() >= 1.0).any()) throw InvalidArgument("skewing entries must lie in (-1, 1)");

  const Vector d = (1.0 - skewing.array().square()).sqrt().matrix();
  const Vector l = skewing.cwiseQuotient(d);
  ForwardMapResult out;
  out.correlation = d.asDiagonal() * latent_correlation * d.asDiagonal() + skewing * skewing.transpose();
  const Vector pl = latent_correlation.llt().solve(l);
  out.shape = pl.cwiseQuotient(d) / std::sqrt(1.0 + l.dot(pl));
  return out;
}

// ---------------------------------------------------------------------------
// Mixing laws

MixingLaw MixingLaw::inverse_gamma(double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof)) throw InvalidArgument("degrees of freedom must be > 0");
  MixingLaw m;
  m.kind_ = Kind::inverse_gamma;
  m.dof_ = dof;
  return m;
}

MixingLaw MixingLaw::discrete(std::vector<double> points, std::vector<double> weights) {
  if (points.empty() || points.size() != weights.size()) {
    throw InvalidArgument("discrete mixing law needs matching non-empty points and weights");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] > 0.0) || !std::isfinite(points[i])) {
      throw InvalidArgument("mixing points must be positive and finite");
    }
    if (!(weights[i] >= 0.0)) throw InvalidArgument("mixing weights must be non-negative");
    total += weights[i];
  }
  if (!(total > 0.0)) throw InvalidArgument("mixing weights must not all be zero");
  for (auto& w : weights) w /= total;
  MixingLaw m;
  m.kind_ = Kind::discrete;
  m.points_ = std::move(points);
  m.weights_ = std::move(weights);
  return m;
}

MixingLaw MixingLaw::custom(std::function<double(Rng&)> sampler, std::vector<double> half_moments) {
  if (!sampler) throw InvalidArgument("custom mixing law needs a sampler");
  MixingLaw m;
  m.kind_ = Kind::custom;
  m.sampler_ = std::move(sampler);
  m.half_moments_ = std::move(half_moments);
  return m;
}

double MixingLaw::half_moment(int k) const {
  if (k < 0) throw InvalidArgument("moment order must be >= 0");
  if (k == 0) return 1.0;
  switch (kind_) {
    case Kind::inverse_gamma: return inverse_gamma_half_moment(dof_, k);
    case Kind::discrete: {
      double s = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * std::pow(points_[i], 0.5 * k);
      return s;
    }
    case Kind::custom:
      if (static_cast<std::size_t>(k) > half_moments_.size() || !std::isfinite(half_moments_[k - 1])) {
        throw MomentNotFinite("E eta^{k/2} was not declared for the custom mixing law (k = " +
                              std::to_string(k) + ")");
      }
      return half_moments_[k - 1];
  }
  return 1.0;
}

double MixingLaw::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::inverse_gamma: return dof_ / rng.chi_square(dof_);
    case Kind::discrete: {
      const double u = rng.uniform();
      double acc = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i) {
        acc += weights_[i];
        if (u < acc) return points_[i];
      }
      return points_.back();
    }
    case Kind::custom: {
      const double eta = sampler_(rng);
      if (!(eta > 0.0)) throw NumericalFailure("custom mixing sampler returned a non-positive value");
      return eta;
    }
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Density generators

DensityGenerator DensityGenerator::normal() { return DensityGenerator{}; }

DensityGenerator DensityGenerator::student_t(double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof)) throw InvalidArgument("degrees of freedom must be > 0");
  DensityGenerator g;
  g.family_ = Family::student_t;
  g.dof_ = dof;
  return g;
}

DensityGenerator DensityGenerator::smsn(MixingLaw mixing) {
  DensityGenerator g;
  g.family_ = Family::smsn;
  g.mixing_ = std::make_shared<const MixingLaw>(std::move(mixing));
  return g;
}

DensityGenerator DensityGenerator::custom(std::function<double(double)> profile, int base_dim,
                                          std::string label) {
  if (!profile) throw InvalidArgument("custom generator needs a profile function");
  if (base_dim < 2) throw InvalidArgument("custom generator base dimension must be >= 2");
  DensityGenerator g;
  g.family_ = Family::custom;
  g.base_dim_ = base_dim;
  g.profile_ = std::make_shared<const std::function<double(double)>>(std::move(profile));
  g.label_ = std::move(label);
  g.scale_ = normalizing_constant_quadrature(g, base_dim);
  if (!(g.scale_ > 0.0) || !std::isfinite(g.scale_)) {
    throw InvalidArgument("custom generator is not integrable in dimension " + std::to_string(base_dim));
  }
  return g;
}

std::string DensityGenerator::name() const {
  switch (family_) {
    case Family::normal: return "normal";
    case Family::student_t: return "student_t(nu=" + fmt(dof_) + ")";
    case Family::smsn:
      switch (mixing_->kind()) {
        case MixingLaw::Kind::inverse_gamma: return "smsn(inverse_gamma, nu=" + fmt(mixing_->dof()) + ")";
        case MixingLaw::Kind::discrete: return "smsn(discrete)";
        case MixingLaw::Kind::custom: return "smsn(custom)";
      }
      return "smsn";
    case Family::custom: return label_;
  }
  return "unknown";
}

void DensityGenerator::check_dimension(int n) const {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (family_ == Family::custom && base_dim_ != n + 1) {
    throw InvalidArgument("custom generator was given in dimension " + std::to_string(base_dim_) +
                          " but a " + std::to_string(n) + "-dimensional law needs dimension " +
                          std::to_string(n + 1));
  }
}

double DensityGenerator::custom_value(int k, double u) const {
  if (k > base_dim_) {
    throw InvalidArgument("custom generator cannot be raised above its base dimension " +
                          std::to_string(base_dim_));
  }
  if (k == base_dim_) {
    const double v = (*profile_)(u);
    if (std::isnan(v) || v < 0.0) {
      throw InvalidArgument("custom generator returned a negative or NaN value at u = " + fmt(u));
    }
    const double scaled = scale_ * v;
    return scaled < kUnderflowFloor ? 0.0 : scaled;
  }
  return reduce_generator_quadrature(*this, k, u);
}

double DensityGenerator::log_value(int k, double u) const {
  if (k < 1) throw InvalidArgument("generator dimension must be >= 1");
  if (!(u >= 0.0)) throw InvalidArgument("generator argument must be >= 0");
  switch (family_) {
    case Family::normal: return -0.5 * k * std::log(2.0 * kPi) - 0.5 * u;
    case Family::student_t: return student_log_generator(dof_, k, u);
    case Family::smsn:
      switch (mixing_->kind()) {
        case MixingLaw::Kind::inverse_gamma: return student_log_generator(mixing_->dof(), k, u);
        case MixingLaw::Kind::discrete: {
          // log sum_j w_j (2 pi eta_j)^{-k/2} exp(-u / (2 eta_j))
          const auto& pts = mixing_->points();
          const auto& ws = mixing_->weights();
          double top = kNegInf;
          std::vector<double> terms(pts.size(), kNegInf);
          for (std::size_t j = 0; j < pts.size(); ++j) {
            if (ws[j] <= 0.0) continue;
            terms[j] = std::log(ws[j]) - 0.5 * k * std::log(2.0 * kPi * pts[j]) - 0.5 * u / pts[j];
            top = std::max(top, terms[j]);
          }
          double s = 0.0;
          for (double t : terms) s += std::exp(t - top);
          return top + std::log(s);
        }
        case MixingLaw::Kind::custom:
          throw InvalidArgument(
              "generator values of a mixture need an inverse-gamma or discrete mixing law");
      }
      break;
    case Family::custom: {
      const double v = custom_value(k, u);
      return v > 0.0 ? std::log(v) : kNegInf;
    }
  }
  return kNegInf;
}

double DensityGenerator::operator()(int k, double u) const {
  if (family_ == Family::custom) {
    if (k < 1) throw InvalidArgument("generator dimension must be >= 1");
    if (!(u >= 0.0)) throw InvalidArgument("generator argument must be >= 0");
    return custom_value(k, u);
  }
  return std::exp(log_value(k, u));
}

double DensityGenerator::mixing_half_moment(int k) const {
  switch (family_) {
    case Family::normal: return 1.0;
    case Family::student_t: return inverse_gamma_half_moment(dof_, k);
    case Family::smsn: return mixing_->half_moment(k);
    case Family::custom: throw InvalidArgument("custom generators have no mixing variable");
  }
  return 1.0;
}

double DensityGenerator::sample_mixing(Rng& rng) const {
  switch (family_) {
    case Family::normal: return 1.0;
    case Family::student_t: return dof_ / rng.chi_square(dof_);
    case Family::smsn: return mixing_->sample(rng);
    case Family::custom: throw InvalidArgument("custom generators have no mixing variable");
  }
  return 1.0;
}

double reduce_generator(const DensityGenerator& gen, int k, double u) { return gen(k, u); }

double reduce_generator_quadrature(const DensityGenerator& gen, int k, double u) {
  if (k < 1) throw InvalidArgument("generator dimension must be >= 1");
  if (!(u >= 0.0)) throw InvalidArgument("generator argument must be >= 0");
  if (gen.family() == DensityGenerator::Family::custom && k >= gen.base_dim()) {
    throw InvalidArgument("reduction needs k < base dimension");
  }
  auto f = [&](double s) { return gen(k + 1, s * s + u); };
  const auto r = quadrature::integrate_half_line(f, 0.0, kHalfLine);
  return 2.0 * quadrature::require_converged(r, "generator reduction").value;
}

std::function<double(double)> conditional_generator(const DensityGenerator& gen, int n, double q) {
  gen.check_dimension(n);
  if (!(q >= 0.0)) throw InvalidArgument("conditional generator needs q >= 0");
  const double lg = gen.log_value(n, q);
  if (!std::isfinite(lg)) {
    throw NumericalFailure("conditional generator undefined: g^(" + std::to_string(n) +
                           ")(q) underflows at q = " + fmt(q));
  }
  return [gen, n, q, lg](double u) { return std::exp(gen.log_value(n + 1, u + q) - lg); };
}

double normalizing_constant(const DensityGenerator& gen, int k) {
  if (k < 1) throw InvalidArgument("dimension must be >= 1");
  if (gen.family() == DensityGenerator::Family::custom) return normalizing_constant_quadrature(gen, k);
  return 1.0;
}

double normalizing_constant_quadrature(const DensityGenerator& gen, int k) {
  if (k < 1) throw InvalidArgument("dimension must be >= 1");
  // integral_0^inf u^{k/2-1} g(u) du = 2 integral_0^inf s^{k-1} g(s^2) ds
  auto f = [&](double s) {
    const double g = gen(k, s * s);
    return g == 0.0 ? 0.0 : std::pow(s, k - 1) * g;
  };
  const auto r = quadrature::integrate_half_line(f, 0.0, kHalfLine);
  const double integral = 2.0 * quadrature::require_converged(r, "normalizing constant").value;
  return std::exp(log_gamma(0.5 * k) - 0.5 * k * std::log(kPi)) / integral;
}

// ---------------------------------------------------------------------------
// Radial law

struct RadialLaw::InverseCdfTable {
  std::vector<double> nodes;       // r at the panel edges
  std::vector<double> cumulative;  // mass below each node
  double total = 0.0;
};

double chi_moment(int m, double k) {
  return std::exp(0.5 * k * std::numbers::ln2 + log_gamma(0.5 * (m + k)) - log_gamma(0.5 * m));
}

struct RadialLaw::LazyTable {
  std::once_flag once;
  std::shared_ptr<const InverseCdfTable> table;
};

RadialLaw::RadialLaw(DensityGenerator gen, int n) : gen_(std::move(gen)), n_(n) {
  gen_.check_dimension(n);
  if (gen_.family() == DensityGenerator::Family::custom) lazy_ = std::make_shared<LazyTable>();
}

const RadialLaw::InverseCdfTable& RadialLaw::table() const {
  std::call_once(lazy_->once, [this] {
    // Panels uniform in x on [0, 1) with r = x / (1 - x); the last panel is the tail.
    constexpr int kPanels = 2048;
    auto table = std::make_shared<InverseCdfTable>();
    table->nodes.resize(kPanels);
    table->cumulative.resize(kPanels + 1);
    table->cumulative[0] = 0.0;
    auto h = [this](double r) { return density(r); };
    for (int i = 0; i < kPanels; ++i) {
      const double x = static_cast<double>(i) / kPanels;
      table->nodes[i] = x / (1.0 - x);
    }
    quadrature::Options panel_opt{1e-15, 1e-12, 200};
    for (int i = 0; i + 1 < kPanels; ++i) {
      const auto r = quadrature::integrate(h, table->nodes[i], table->nodes[i + 1], panel_opt);
      table->cumulative[i + 1] = table->cumulative[i] + r.value;
    }
    const auto tail = quadrature::integrate_half_line(h, table->nodes.back(), kHalfLine);
    table->cumulative[kPanels] = table->cumulative[kPanels - 1] + tail.value;
    table->total = table->cumulative[kPanels];
    if (std::abs(table->total - 1.0) > 1e-6) {
      throw NumericalFailure("radial inverse-CDF table: density integrates to " + fmt(table->total) +
                             " instead of 1");
    }
    lazy_->table = std::move(table);
  });
  return *lazy_->table;
}

double RadialLaw::density(double r) const {
  if (!(r > 0.0)) return 0.0;
  const double m = n_ + 1.0;
  const double lg = gen_.log_value(n_ + 1, r * r);
  if (!std::isfinite(lg)) return 0.0;
  return std::exp(std::numbers::ln2 + 0.5 * m * std::log(kPi) - log_gamma(0.5 * m) + n_ * std::log(r) + lg);
}

double RadialLaw::moment(int k) const {
  if (k < 0) throw InvalidArgument("moment order must be >= 0");
  if (k == 0) return 1.0;
  if (gen_.family() == DensityGenerator::Family::custom) return moment_quadrature(k);
  return chi_moment(n_ + 1, k) * gen_.mixing_half_moment(k);
}

double RadialLaw::moment_quadrature(int k) const {
  if (k < 0) throw InvalidArgument("moment order must be >= 0");
  auto f = [&](double r) {
    const double h = density(r);
    return h == 0.0 ? 0.0 : std::pow(r, k) * h;
  };
  const auto res = quadrature::integrate_half_line(f, 0.0, kHalfLine);
  if (!res.converged || !std::isfinite(res.value)) {
    throw MomentNotFinite("E R0^" + std::to_string(k) +
                          " did not converge by quadrature; the moment may not exist");
  }
  return res.value;
}

double RadialLaw::sample(Rng& rng) const {
  if (lazy_) return sample_tabulated(rng);
  const double chi = std::sqrt(rng.chi_square(n_ + 1.0));
  if (gen_.family() == DensityGenerator::Family::normal) return chi;
  return std::sqrt(gen_.sample_mixing(rng)) * chi;
}

double RadialLaw::sample_tabulated(Rng& rng) const {
  const auto& t = table();
  const double target = rng.uniform() * t.total;
  const auto it = std::upper_bound(t.cumulative.begin(), t.cumulative.end(), target);
  const std::size_t i = static_cast<std::size_t>(std::distance(t.cumulative.begin(), it)) - 1;
  const double lo_mass = t.cumulative[i];
  auto h = [this](double r) { return density(r); };

  double lo = t.nodes[std::min(i, t.nodes.size() - 1)];
  double hi;
  if (i + 1 < t.nodes.size()) {
    hi = t.nodes[i + 1];
  } else {
    // Tail panel: grow the bracket until it holds the target mass.
    hi = 2.0 * lo + 1.0;
    while (lo_mass + quadrature::integrate(h, lo, hi, {1e-15, 1e-12, 400}).value < target && hi < 1e300) {
      hi *= 2.0;
    }
  }
  const double left = lo;
  const double width = hi - lo;
  double r = lo + width * (target - lo_mass) / std::max(t.cumulative[std::min(i + 1, t.cumulative.size() - 1)] - lo_mass, 1e-300);
  r = std::clamp(r, lo, hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double mass = lo_mass + quadrature::integrate(h, left, r, {1e-15, 1e-13, 50}).value;
    const double diff = mass - target;
    if (std::abs(diff) <= 1e-13 * t.total) break;
    if (diff > 0.0) hi = r; else lo = r;
    const double dens = density(r);
    double next = dens > 0.0 ? r - diff / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    r = next;
  }
  return r;
}

double radial_density(const DensityGenerator& gen, int n, double r) { return RadialLaw(gen, n).density(r); }

double radial_moment(const DensityGenerator& gen, int n, int k) { return RadialLaw(gen, n).moment(k); }

}  // namespace skell
