#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "skell/error.hpp"

namespace skell::quadrature {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_intervals = 2000;
};

template <typename T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <typename T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// QUADPACK-style 15-point panel with the scaled |K - G| error heuristic.
template <typename T, typename F>
Panel<T> kronrod_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 15> fx{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fx[2 * j] = f(center - dx);
    fx[2 * j + 1] = f(center + dx);
  }
  fx[14] = f(center);

  T kronrod = fx[14] * kKronrodWeights[7];
  T gauss = fx[14] * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const T pair = fx[2 * j] + fx[2 * j + 1];
    kronrod += pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
  }
  const T mean = kronrod * 0.5;
  double asc = kKronrodWeights[7] * magnitude(fx[14] - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (magnitude(fx[2 * j] - mean) + magnitude(fx[2 * j + 1] - mean));
  }
  asc *= std::abs(half);

  double err = magnitude((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
  return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
/// The panel with the largest error estimate is bisected until the summed estimate
/// falls below max(abs_tol, rel_tol * |integral|) or max_intervals is reached.
template <typename F>
auto integrate(F&& f, double a, double b, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::priority_queue<detail::Panel<T>> panels;
  auto first = detail::kronrod_panel<T>(f, a, b);
  result.evaluations = 15;
  T total = first.value;
  double total_err = first.error;
  panels.push(first);

  int intervals = 1;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
    if (total_err <= target) {
      result.converged = true;
      break;
    }
    if (intervals >= opt.max_intervals) break;
    const auto worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at machine precision
    panels.pop();
    const auto left = detail::kronrod_panel<T>(f, worst.a, mid);
    const auto right = detail::kronrod_panel<T>(f, mid, worst.b);
    result.evaluations += 30;
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    panels.push(left);
    panels.push(right);
    ++intervals;
  }

  // Re-sum from the panels to shed accumulated cancellation error.
  T sum{};
  double err = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  result.value = sum;
  result.error = err;
  if (!result.converged) {
    result.converged = err <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(sum));
  }
  return result;
}

/// Integral over [a, inf) using the substitution x = a + s / (1 - s), s in [0, 1).
template <typename F>
auto integrate_half_line(F&& f, double a, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  auto mapped = [&](double s) -> T {
    const double one_minus = 1.0 - s;
    if (one_minus <= 0.0) return T{};
    const double x = a + s / one_minus;
    const T v = f(x);
    if (v == T{}) return T{};
    return v * (1.0 / (one_minus * one_minus));
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

/// Integral over the whole real line, split at zero.
template <typename F>
auto integrate_real_line(F&& f, const Options& opt = {}) -> Result<std::decay_t<decltype(f(0.0))>> {
  auto right = integrate_half_line(f, 0.0, opt);
  auto left = integrate_half_line([&](double x) { return f(-x); }, 0.0, opt);
  Result<std::decay_t<decltype(f(0.0))>> out;
  out.value = left.value + right.value;
  out.error = left.error + right.error;
  out.evaluations = left.evaluations + right.evaluations;
  out.converged = left.converged && right.converged;
  return out;
}

/// Throws QuadratureFailure naming `what` unless the result converged.
template <typename T>
const Result<T>& require_converged(const Result<T>& r, const std::string& what) {
  if (!r.converged) throw QuadratureFailure(what + ": adaptive quadrature did not converge", r.error);
  return r;
}

}  // namespace skell::quadrature
