#pragma once

// Special functions needed by the photon-added state formulas, evaluated in
// double precision. Series-based functions also report a heuristic error
// estimate and the number of terms used.

#include <complex>
#include <cstddef>
#include <span>

namespace paunity::specfun {

template <class T>
struct EvalResult {
  T value{};
  double est_abs_error = 0.0;
  std::size_t terms_used = 0;
};

/// ln(n!).
double log_factorial(unsigned n);

/// n!! with (-1)!! = 0!! = 1. Exact for n <= 30.
double double_factorial(int n);
double log_double_factorial(int n);

/// Legendre polynomial P_n by the three-term recurrence.
double legendre_p(unsigned n, double x);
std::complex<double> legendre_p(unsigned n, std::complex<double> w);

/// Associated Legendre function of the first kind off the cut (x > 1), with no
/// Condon-Shortley phase: P^mu_nu(x) = (x^2-1)^{mu/2} d^mu P_nu / dx^mu.
/// Negative orders use P^{-mu}_nu = (nu-mu)!/(nu+mu)! P^mu_nu.
/// Throws std::invalid_argument when |order| > degree.
double legendre_p_assoc(int order, unsigned degree, double x);

/// Complex-argument variant. The caller fixes the branch by passing
/// sqrt_w2m1, a square root of w^2 - 1.
std::complex<double> legendre_p_assoc(int order, unsigned degree, std::complex<double> w,
                                      std::complex<double> sqrt_w2m1);

/// Legendre function of the second kind Q_n(x), x > 1.
double legendre_q(unsigned n, double x);
/// Same, with x - 1 supplied by the caller (avoids cancellation near x = 1).
double legendre_q(unsigned n, double x, double x_minus_1);

/// Q_n as 1/2 P_n ln((x+1)/(x-1)) minus the finite Legendre sum. Accurate only
/// while (x + sqrt(x^2-1))^(2n+1) is moderate; legendre_q switches to the
/// minimal-solution recurrence outside that range.
double legendre_q_log_form(unsigned n, double x, double x_minus_1);

/// Gauss 2F1(a, b; c; z) by direct summation, |z| <= 0.95.
EvalResult<std::complex<double>> gauss_2f1(double a, double b, double c, std::complex<double> z);

/// pFq(a; b; z) by direct summation. Requires p <= q + 1, and |z| < 1 when p = q + 1.
EvalResult<double> generalized_pfq(std::span<const double> a, std::span<const double> b, double z);

/// Laguerre polynomial L_m.
double laguerre(unsigned m, double x);
std::complex<double> laguerre(unsigned m, std::complex<double> x);

/// U(m, 1, x) for integer m >= 0 and x > 0, from
/// U(m,1,x) = 1/Gamma(m) int_0^inf e^{-xt} t^{m-1} (1+t)^{-m} dt.
EvalResult<double> kummer_u_int(unsigned m, double x);

/// Hyperbolic function of order n: h_i(x, n) = sum_k x^{nk+i-1} / (nk+i-1)!, 1 <= i <= n.
double hyperbolic_order(unsigned i, unsigned n, double x);

}  // namespace paunity::specfun
