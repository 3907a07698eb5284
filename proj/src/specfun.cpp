#include "paunity/specfun.hpp"

#include "paunity/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace paunity::specfun {

namespace {

constexpr double kSeriesTol = 1e-17;
constexpr int kSmallTermsToStop = 3;
constexpr std::size_t kMaxSeriesTerms = 200000;

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Neumaier variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  void add(T term) {
    const T t = sum_ + term;
    if constexpr (std::is_same_v<T, double>) {
      comp_ += (std::abs(sum_) >= std::abs(term)) ? (sum_ - t) + term : (term - t) + sum_;
    } else {
      auto part = [](double s, double x, double tt) {
        return (std::abs(s) >= std::abs(x)) ? (s - tt) + x : (x - tt) + s;
      };
      comp_ += T(part(sum_.real(), term.real(), t.real()), part(sum_.imag(), term.imag(), t.imag()));
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

// Sums sum_k term_k where term_{k+1} = term_k * ratio(k); stops after three
// consecutive terms below kSeriesTol relative to the partial sum.
template <class T, class Ratio>
EvalResult<T> sum_series(Ratio&& ratio) {
  CompensatedSum<T> acc;
  T term = T(1.0);
  double abs_sum = 0.0;
  int small = 0;
  std::size_t k = 0;
  for (; k < kMaxSeriesTerms; ++k) {
    acc.add(term);
    abs_sum += std::abs(term);
    if (std::abs(term) <= kSeriesTol * std::abs(acc.value())) {
      if (++small >= kSmallTermsToStop) break;
    } else {
      small = 0;
    }
    term *= ratio(k);
    // A nonpositive-integer upper parameter ends the polynomial exactly.
    if (term == T(0.0)) break;
  }
  if (k == kMaxSeriesTerms) {
    throw std::runtime_error("hypergeometric series did not converge");
  }
  EvalResult<T> out;
  out.value = acc.value();
  out.terms_used = k + 1;
  out.est_abs_error = std::abs(term) + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return out;
}

// A lower parameter at a nonpositive integer is harmless only when an upper
// parameter terminates the series first.
void check_lower_parameter(double c, std::span<const double> uppers) {
  if (!is_nonpositive_integer(c)) return;
  for (double a : uppers) {
    if (is_nonpositive_integer(a) && a > c) return;
  }
  throw std::domain_error("hypergeometric lower parameter is a nonpositive integer: " +
                          std::to_string(c));
}

}  // namespace

double log_factorial(unsigned n) {
  static const std::array<double, 21> table = [] {
    std::array<double, 21> t{};
    double f = 1.0;
    t[0] = 0.0;
    for (unsigned i = 1; i < t.size(); ++i) {
      f *= i;
      t[i] = std::log(f);
    }
    return t;
  }();
  if (n < table.size()) return table[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double_factorial requires n >= -1");
  if (n > 30) return std::exp(log_double_factorial(n));
  double out = 1.0;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

double log_double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("log_double_factorial requires n >= -1");
  if (n <= 30) return std::log(double_factorial(n));
  if (n % 2 == 0) {
    const unsigned half = static_cast<unsigned>(n / 2);
    return half * std::numbers::ln2 + log_factorial(half);
  }
  // (2j+1)!! = (2j+1)! / (2^j j!)
  const unsigned j = static_cast<unsigned>((n - 1) / 2);
  return log_factorial(static_cast<unsigned>(n)) - j * std::numbers::ln2 - log_factorial(j);
}

namespace {

template <class T>
T legendre_p_impl(unsigned n, T x) {
  if (n == 0) return T(1.0);
  T prev = T(1.0);
  T cur = x;
  for (unsigned k = 1; k < n; ++k) {
    const T next = (static_cast<double>(2 * k + 1) * x * cur - static_cast<double>(k) * prev) /
                   static_cast<double>(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

// P^mu_nu for mu >= 0 by upward recurrence in the degree, given sqrt(x^2-1).
template <class T>
T legendre_p_assoc_nonneg(unsigned mu, unsigned nu, T x, T root) {
  T pmm = T(1.0);
  for (unsigned i = 1; i <= mu; ++i) pmm *= static_cast<double>(2 * i - 1) * root;
  if (nu == mu) return pmm;
  T prev = pmm;
  T cur = static_cast<double>(2 * mu + 1) * x * pmm;
  for (unsigned l = mu + 1; l < nu; ++l) {
    const T next = (static_cast<double>(2 * l + 1) * x * cur - static_cast<double>(l + mu) * prev) /
                   static_cast<double>(l - mu + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

template <class T>
T legendre_p_assoc_impl(int order, unsigned degree, T x, T root) {
  const unsigned mu = static_cast<unsigned>(std::abs(order));
  if (mu > degree) {
    throw std::invalid_argument("legendre_p_assoc: |order| exceeds degree");
  }
  T value = legendre_p_assoc_nonneg(mu, degree, x, root);
  if (order < 0) {
    value *= std::exp(log_factorial(degree - mu) - log_factorial(degree + mu));
  }
  return value;
}

}  // namespace

double legendre_p(unsigned n, double x) { return legendre_p_impl(n, x); }

std::complex<double> legendre_p(unsigned n, std::complex<double> w) {
  return legendre_p_impl(n, w);
}

double legendre_p_assoc(int order, unsigned degree, double x) {
  if (!(x > 1.0)) throw std::domain_error("legendre_p_assoc requires x > 1");
  const double root = std::sqrt((x - 1.0) * (x + 1.0));
  return legendre_p_assoc_impl(order, degree, x, root);
}

std::complex<double> legendre_p_assoc(int order, unsigned degree, std::complex<double> w,
                                      std::complex<double> sqrt_w2m1) {
  return legendre_p_assoc_impl(order, degree, w, sqrt_w2m1);
}

double legendre_q_log_form(unsigned n, double x, double x_minus_1) {
  const double log_ratio = std::log(x + 1.0) - std::log(x_minus_1);
  double finite = 0.0;
  if (n >= 1) {
    for (unsigned k = 0; 2 * k + 1 <= n; ++k) {
      const double coeff = static_cast<double>(2 * n - 4 * k - 1) /
                           (static_cast<double>(n - k) * static_cast<double>(2 * k + 1));
      finite += coeff * legendre_p(n - 2 * k - 1, x);
    }
  }
  return 0.5 * legendre_p(n, x) * log_ratio - finite;
}

double legendre_q(unsigned n, double x, double x_minus_1) {
  if (!(x >= 1.0) || !(x_minus_1 > 0.0)) {
    throw std::domain_error("legendre_q requires x > 1");
  }
  const double root = std::sqrt(x_minus_1 * (x + 1.0));
  const double log_growth = std::log1p(x_minus_1 + root);  // ln(x + sqrt(x^2-1))
  // Cancellation in the log form costs about (x + sqrt(x^2-1))^(2n+1).
  if ((2.0 * n + 1.0) * log_growth <= std::log(1e3)) {
    return legendre_q_log_form(n, x, x_minus_1);
  }
  const double q0 = (x_minus_1 < 0.5) ? 0.5 * (std::log(x + 1.0) - std::log(x_minus_1))
                                      : std::atanh(1.0 / x);
  if (n == 0) return q0;
  // Q_n is the minimal solution of the Legendre recurrence for x > 1, so the
  // ratios r_j = Q_j / Q_{j-1} are stable under backward recurrence.
  const unsigned extra = static_cast<unsigned>(std::ceil(20.0 / log_growth)) + 10;
  const unsigned top = n + extra;
  double r = 0.0;
  std::vector<double> ratios(n + 1);
  for (unsigned j = top; j >= 1; --j) {
    r = static_cast<double>(j) / (static_cast<double>(2 * j + 1) * x - static_cast<double>(j + 1) * r);
    if (j <= n) ratios[j] = r;
  }
  double q = q0;
  for (unsigned j = 1; j <= n; ++j) q *= ratios[j];
  return q;
}

double legendre_q(unsigned n, double x) { return legendre_q(n, x, x - 1.0); }

EvalResult<std::complex<double>> gauss_2f1(double a, double b, double c, std::complex<double> z) {
  if (std::abs(z) > 0.95) throw std::domain_error("gauss_2f1 requires |z| <= 0.95");
  const std::array<double, 2> uppers{a, b};
  check_lower_parameter(c, uppers);
  return sum_series<std::complex<double>>([&](std::size_t k) {
    const double kk = static_cast<double>(k);
    return z * ((a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)));
  });
}

EvalResult<double> generalized_pfq(std::span<const double> a, std::span<const double> b, double z) {
  if (a.size() > b.size() + 1) {
    throw std::domain_error("generalized_pfq: series diverges for p > q + 1");
  }
  if (a.size() == b.size() + 1 && std::abs(z) >= 1.0) {
    throw std::domain_error("generalized_pfq: |z| must be < 1 when p = q + 1");
  }
  for (double c : b) check_lower_parameter(c, a);
  return sum_series<double>([&](std::size_t k) {
    const double kk = static_cast<double>(k);
    double ratio = z / (kk + 1.0);
    for (double ai : a) ratio *= ai + kk;
    for (double bi : b) ratio /= bi + kk;
    return ratio;
  });
}

namespace {

template <class T>
T laguerre_impl(unsigned m, T x) {
  if (m == 0) return T(1.0);
  T prev = T(1.0);
  T cur = T(1.0) - x;
  for (unsigned k = 1; k < m; ++k) {
    const T next = ((static_cast<double>(2 * k + 1) - x) * cur - static_cast<double>(k) * prev) /
                   static_cast<double>(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double laguerre(unsigned m, double x) { return laguerre_impl(m, x); }

std::complex<double> laguerre(unsigned m, std::complex<double> x) { return laguerre_impl(m, x); }

EvalResult<double> kummer_u_int(unsigned m, double x) {
  if (!(x > 0.0)) throw std::domain_error("kummer_u_int requires x > 0");
  if (m == 0) return {1.0, 0.0, 1};
  const double log_gamma_m = log_factorial(m - 1);
  auto integrand = [&](double t) {
    const double log_f = -x * t + (m - 1.0) * std::log(t) - m * std::log1p(t) - log_gamma_m;
    return std::exp(log_f);
  };
  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.max_level = 14;
  const auto res = quad::exp_sinh(integrand, opt);
  return {res.value, std::abs(res.value) * std::max(res.rel_change, 1e-15), res.nodes};
}

double hyperbolic_order(unsigned i, unsigned n, double x) {
  if (n < 1 || i < 1 || i > n) {
    throw std::invalid_argument("hyperbolic_order requires 1 <= i <= n");
  }
  // With x >= 0, or n even, every term has the same sign and the series is
  // well conditioned. Otherwise use the root-of-unity representation
  // h_i(x, n) = (1/n) sum_v w^{-v(i-1)} exp(w^v x), w = e^{2 pi i / n}.
  if (x >= 0.0 || n % 2 == 0) {
    const unsigned start = i - 1;
    double term = 1.0;
    for (unsigned j = 1; j <= start; ++j) term *= x / j;
    if (x == 0.0) return start == 0 ? 1.0 : 0.0;
    CompensatedSum<double> acc;
    int small = 0;
    for (std::size_t k = 0; k < kMaxSeriesTerms; ++k) {
      acc.add(term);
      if (std::abs(term) <= kSeriesTol * std::abs(acc.value())) {
        if (++small >= kSmallTermsToStop) break;
      } else {
        small = 0;
      }
      const unsigned base = static_cast<unsigned>(n * k + start);
      for (unsigned j = 1; j <= n; ++j) term *= x / static_cast<double>(base + j);
    }
    return acc.value();
  }
  std::complex<double> acc = 0.0;
  for (unsigned v = 0; v < n; ++v) {
    const double angle = 2.0 * std::numbers::pi * v / n;
    const std::complex<double> root = std::polar(1.0, angle);
    acc += std::polar(1.0, -angle * (i - 1.0)) * std::exp(root * x);
  }
  return acc.real() / n;
}

}  // namespace paunity::specfun
