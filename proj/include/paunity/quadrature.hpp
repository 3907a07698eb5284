#pragma once

// Double-exponential quadrature on finite intervals (tanh-sinh) and on the
// half line (exp-sinh). Both refine by halving the step and stop when two
// successive estimates agree to the requested relative tolerance.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <type_traits>

namespace paunity::quad {

struct Options {
  double rel_tol = 1e-10;
  /// Step of the coarsest level is 2^-first_level; level 4 is about 200 nodes.
  int first_level = 4;
  int max_level = 12;
};

template <class T>
struct Result {
  T value{};
  double rel_change = 0.0;
  std::size_t nodes = 0;
  int levels = 0;
  bool converged = false;
};

inline double relative_change(double now, double before) {
  const double scale = std::abs(now);
  if (scale == 0.0) return std::abs(now - before);
  return std::abs(now - before) / scale;
}

/// Componentwise; entries that are exactly zero in both estimates count as converged.
template <class Derived>
double relative_change(const Eigen::DenseBase<Derived>& now,
                       const Eigen::DenseBase<Derived>& before) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < now.size(); ++i) {
    const double diff = std::abs(now.derived().data()[i] - before.derived().data()[i]);
    const double scale = std::abs(now.derived().data()[i]);
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return worst;
}

struct DefaultChange {
  template <class T>
  double operator()(const T& now, const T& before) const {
    return relative_change(now, before);
  }
};

namespace detail {

// tanh-sinh nodes stay at least ~1e-300 (relative) away from the endpoints.
inline constexpr double kTanhSinhTMax = 6.085;
// exp-sinh abscissae span roughly [1e-300, 1e300].
inline constexpr double kExpSinhTMax = 6.78;

template <class F>
auto call_finite(F& f, double x, double from_left, double from_right) {
  if constexpr (std::is_invocable_v<F&, double, double, double>) {
    return f(x, from_left, from_right);
  } else {
    return f(x);
  }
}

// Generic level driver: `sum_level(h, odd_only)` returns the weighted sum of
// the integrand over nodes k*h (all k, or odd k only) and the node count.
template <class T, class SumLevel, class Change>
Result<T> refine(SumLevel&& sum_level, const Options& opt, Change&& change) {
  Result<T> out;
  double h = std::ldexp(1.0, -opt.first_level);
  auto [sum, count] = sum_level(h, false);
  out.nodes = count;
  T estimate = h * sum;
  for (int level = opt.first_level + 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    auto [extra, extra_count] = sum_level(h, true);
    out.nodes += extra_count;
    sum += extra;
    T refined = h * sum;
    out.rel_change = change(refined, estimate);
    out.levels = level - opt.first_level + 1;
    estimate = std::move(refined);
    if (out.rel_change < opt.rel_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = std::move(estimate);
  return out;
}

template <class T>
void accumulate(std::optional<T>& acc, const T& term) {
  if (acc) {
    *acc += term;
  } else {
    acc = term;
  }
}

}  // namespace detail

/// Integrates f over (a, b). The integrand may take (x) or
/// (x, x - a, b - x); the distances are computed without cancellation, which
/// matters for integrands singular at an endpoint.
template <class F, class Change = DefaultChange>
auto tanh_sinh(F f, double a, double b, const Options& opt = {}, Change change = {}) {
  using T = std::decay_t<decltype(detail::call_finite(f, 0.0, 0.0, 0.0))>;
  const double half = 0.5 * (b - a);
  auto sum_level = [&](double h, bool odd_only) {
    std::optional<T> acc;
    std::size_t count = 0;
    const long kmax = static_cast<long>(std::floor(detail::kTanhSinhTMax / h));
    for (long k = -kmax; k <= kmax; ++k) {
      if (odd_only && (k % 2 == 0)) continue;
      const double t = k * h;
      const double u = 0.5 * std::numbers::pi * std::sinh(t);
      const double e = std::exp(-2.0 * std::abs(u));
      // 1 - tanh|u| and sech^2 u, both without overflow.
      const double one_minus_tanh = 2.0 * e / (1.0 + e);
      const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
      const double weight = half * 0.5 * std::numbers::pi * std::cosh(t) * sech2;
      double from_left, from_right;
      if (u >= 0.0) {
        from_right = half * one_minus_tanh;
        from_left = 2.0 * half - from_right;
      } else {
        from_left = half * one_minus_tanh;
        from_right = 2.0 * half - from_left;
      }
      const double x = (u >= 0.0) ? b - from_right : a + from_left;
      detail::accumulate(acc, T(weight * detail::call_finite(f, x, from_left, from_right)));
      ++count;
    }
    return std::pair<T, std::size_t>{std::move(*acc), count};
  };
  return detail::refine<T>(sum_level, opt, change);
}

/// Integrates f over (0, infinity); suited to integrands with algebraic or
/// logarithmic behaviour at 0 and algebraic or exponential decay at infinity.
template <class F, class Change = DefaultChange>
auto exp_sinh(F f, const Options& opt = {}, Change change = {}) {
  using T = std::decay_t<decltype(f(1.0))>;
  auto sum_level = [&](double h, bool odd_only) {
    std::optional<T> acc;
    std::size_t count = 0;
    const long kmax = static_cast<long>(std::floor(detail::kExpSinhTMax / h));
    for (long k = -kmax; k <= kmax; ++k) {
      if (odd_only && (k % 2 == 0)) continue;
      const double t = k * h;
      const double x = std::exp(0.5 * std::numbers::pi * std::sinh(t));
      const double weight = 0.5 * std::numbers::pi * std::cosh(t) * x;
      detail::accumulate(acc, T(weight * f(x)));
      ++count;
    }
    return std::pair<T, std::size_t>{std::move(*acc), count};
  };
  return detail::refine<T>(sum_level, opt, change);
}

}  // namespace paunity::quad
