#include "skell/sampling.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "skell/error.hpp"
#include "skell/parallel.hpp"

namespace skell {
namespace {

int effective_threads(int threads) { return threads > 0 ? threads : default_threads(); }

void check_count(std::int64_t count) {
  if (count < 1) throw InvalidArgument("number of draws must be >= 1");
}

// Common affine part: x = mu + skew_dir * a + loading * v.
struct Affine {
  Vector mu;
  Vector skew_dir;  // scaled skewing vector
  Matrix loading;   // diag(scales .* complement) * latent_sqrt
  int n;

  explicit Affine(const SkewEllipticalParams& p)
      : mu(p.location()),
        skew_dir(p.scaled_skewing()),
        loading(p.scales().cwiseProduct(p.skewing_complement()).asDiagonal() * p.latent_correlation_sqrt()),
        n(p.dim()) {}

  void write(double a, const double* v, double* row) const {
    for (int i = 0; i < n; ++i) {
      double s = mu[i] + skew_dir[i] * a;
      for (int j = 0; j < n; ++j) s += loading(i, j) * v[j];
      row[i] = s;
    }
  }
};

template <typename DrawRow>
SampleMatrix run_sharded(int n, std::int64_t count, const RngState& state, int threads, DrawRow draw_row) {
  check_count(count);
  SampleMatrix out(count, n);
  for_each_shard(count, effective_threads(threads), [&](std::int64_t shard, std::int64_t begin, std::int64_t end) {
    Rng rng(state, static_cast<std::uint64_t>(shard));
    std::vector<double> scratch(n + 1);
    for (std::int64_t r = begin; r < end; ++r) draw_row(rng, scratch.data(), out.row(r).data());
  });
  return out;
}

// d1 for the split of the radial variable: d1^2 ~ Beta(1/2, b); b = 0 means d1 = 1.
double draw_split(Rng& rng, double b) {
  if (b <= 0.0) return 1.0;
  return std::sqrt(rng.beta(0.5, b));
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::conditioning: return "conditioning";
    case Variant::rep_a: return "rep_a";
    case Variant::rep_b_corrected: return "rep_b_corrected";
    case Variant::rep_b_printed: return "rep_b_printed";
    case Variant::rep_c_corrected: return "rep_c_corrected";
    case Variant::rep_c_printed: return "rep_c_printed";
  }
  return "unknown";
}

Variant variant_from_string(std::string_view s) {
  if (s == "rep_b_paper") return Variant::rep_b_printed;
  if (s == "rep_c_paper") return Variant::rep_c_printed;
  for (auto v : {Variant::conditioning, Variant::rep_a, Variant::rep_b_corrected, Variant::rep_b_printed,
                 Variant::rep_c_corrected, Variant::rep_c_printed}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidArgument("unknown representation variant '" + std::string(s) + "'");
}

void sample_unit_sphere(int n, Rng& rng, double* out) {
  if (n < 1) throw InvalidArgument("sphere dimension must be >= 1");
  if (n == 1) {
    out[0] = (rng.next_u64() >> 63) ? 1.0 : -1.0;
    return;
  }
  while (true) {
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
      out[i] = rng.normal();
      ss += out[i] * out[i];
    }
    if (ss > 0.0) {
      const double inv = 1.0 / std::sqrt(ss);
      for (int i = 0; i < n; ++i) out[i] *= inv;
      return;
    }
  }
}

Vector sample_unit_sphere(int n, Rng& rng) {
  if (n < 1) throw InvalidArgument("sphere dimension must be >= 1");
  Vector v(n);
  sample_unit_sphere(n, rng, v.data());
  return v;
}

double sample_radial(const RadialLaw& law, Rng& rng) { return law.sample(rng); }

SampleMatrix sample_conditioning(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                 std::int64_t count, const RngState& state, int threads) {
  const int n = params.dim();
  gen.check_dimension(n);
  const Affine affine(params);
  if (gen.is_scale_mixture()) {
    return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
      const double scale = std::sqrt(gen.sample_mixing(rng));
      const double u0 = scale * std::abs(rng.normal());
      for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
      affine.write(u0, v, row);
    });
  }
  const RadialLaw law(gen, n);
  return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
    const double r0 = law.sample(rng);
    sample_unit_sphere(n + 1, rng, v);
    for (int i = 0; i <= n; ++i) v[i] *= r0;
    affine.write(std::abs(v[0]), v + 1, row);
  });
}

SampleMatrix sample_representation(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                   Variant variant, std::int64_t count, const RngState& state, int threads) {
  const int n = params.dim();
  gen.check_dimension(n);
  if (variant == Variant::conditioning) return sample_conditioning(params, gen, count, state, threads);
  const Affine affine(params);
  const RadialLaw law(gen, n);

  switch (variant) {
    case Variant::rep_a:
      return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
        const double r0 = law.sample(rng);
        sample_unit_sphere(n + 1, rng, v);
        const double a = r0 * std::abs(v[0]);
        for (int i = 1; i <= n; ++i) v[i] *= r0;
        affine.write(a, v + 1, row);
      });

    case Variant::rep_b_corrected:
    case Variant::rep_b_printed: {
      const bool printed = variant == Variant::rep_b_printed;
      const double b = printed ? 0.5 * (n - 1) : 0.5 * n;
      return run_sharded(n, count, state, threads, [&, printed, b](Rng& rng, double* v, double* row) {
        const double r0 = law.sample(rng);
        const double d1 = draw_split(rng, b);
        const double d2 = std::sqrt(std::max(0.0, 1.0 - d1 * d1));
        const double u1 = printed ? rng.uniform() : 1.0;
        sample_unit_sphere(n, rng, v);
        for (int i = 0; i < n; ++i) v[i] *= r0 * d2;
        affine.write(r0 * d1 * u1, v, row);
      });
    }

    case Variant::rep_c_corrected:
      if (gen.is_scale_mixture()) {
        // R1 = sqrt(eta) chi_1 and Rn = sqrt(eta) chi_n, drawn as independent chi
        // variables sharing the mixing scale.
        return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
          const double scale = std::sqrt(gen.sample_mixing(rng));
          const double r1 = scale * std::sqrt(rng.chi_square(1.0));
          const double rn = scale * std::sqrt(rng.chi_square(n));
          sample_unit_sphere(n, rng, v);
          for (int i = 0; i < n; ++i) v[i] *= rn;
          affine.write(r1, v, row);
        });
      }
      return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
        const double r0 = law.sample(rng);
        const double d1 = draw_split(rng, 0.5 * n);
        const double r1 = r0 * d1;
        const double rn = r0 * std::sqrt(std::max(0.0, 1.0 - d1 * d1));
        sample_unit_sphere(n, rng, v);
        for (int i = 0; i < n; ++i) v[i] *= rn;
        affine.write(r1, v, row);
      });

    case Variant::rep_c_printed:
      return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
        const double r0 = law.sample(rng);
        const double d1 = draw_split(rng, 0.5 * (n - 1));
        const double r1 = r0 * d1;
        const double rn = r0 * std::sqrt(std::max(0.0, 1.0 - d1 * d1));
        const double u1 = rng.uniform();
        sample_unit_sphere(n, rng, v);
        for (int i = 0; i < n; ++i) v[i] *= rn;
        affine.write(r1 * u1, v, row);
      });

    case Variant::conditioning: break;
  }
  throw InvalidArgument("unhandled representation variant");
}

SampleMatrix sample_smsn(const SkewEllipticalParams& params, const MixingLaw& mixing, std::int64_t count,
                         const RngState& state, int threads) {
  const int n = params.dim();
  const Affine centred([&] {
    return SkewEllipticalParams::from_shape(Vector::Zero(n), params.dispersion(), params.shape());
  }());
  const Vector mu = params.location();
  return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
    const double eta = mixing.sample(rng);
    const double u0 = std::abs(rng.normal());
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    centred.write(u0, v, row);
    const double s = std::sqrt(eta);
    for (int i = 0; i < n; ++i) row[i] = mu[i] + s * row[i];
  });
}

SampleMatrix sample_skew_uniform(const Vector& skewing, std::int64_t count, const RngState& state, int threads) {
  const int n = static_cast<int>(skewing.size());
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if ((skewing.array().abs() >= 1.0).any()) throw InvalidArgument("skewing entries must lie in (-1, 1)");
  const Vector complement = (1.0 - skewing.array().square()).sqrt().matrix();
  return run_sharded(n, count, state, threads, [&](Rng& rng, double* v, double* row) {
    const double d1 = draw_split(rng, 0.5 * (n - 1));
    const double d2 = std::sqrt(std::max(0.0, 1.0 - d1 * d1));
    const double u1 = rng.uniform();
    sample_unit_sphere(n, rng, v);
    for (int i = 0; i < n; ++i) row[i] = d1 * u1 * skewing[i] + d2 * complement[i] * v[i];
  });
}

}  // namespace skell
