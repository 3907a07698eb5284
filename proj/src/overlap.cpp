#include "paunity/overlap.hpp"

#include "paunity/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace paunity {

namespace sf = specfun;

namespace {

constexpr double kMaxOverlapArgument = 0.9;

// Series oracles keep every term above this squared-norm level.
const Truncation kOracleTruncation{1e-30, 2'000'000};

cplx overlap_argument(const SqueezeParam& xi, const SqueezeParam& zeta) {
  const cplx s = std::conj(xi.zeta()) * zeta.zeta();
  if (std::abs(s) > kMaxOverlapArgument) {
    throw std::domain_error("|conj(xi) zeta| exceeds 0.9; closed-form overlaps need continuation");
  }
  return s;
}

// (zeta/2)^p with the integer power taken on modulus and phase separately.
cplx half_power(cplx zeta, unsigned p) {
  if (p == 0) return 1.0;
  return std::polar(std::pow(0.5 * std::abs(zeta), static_cast<double>(p)), p * std::arg(zeta));
}

double log_inverse_sqrt_norms(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta,
                              unsigned m) {
  return -0.5 * (pasvs_log_norm(zeta, m) + pasvs_log_norm(xi, n));
}

// conj(xi)^{-p/2} zeta^{p/2} P^{-p}_nu(w) for w = (1-s)^{-1/2}. Fractional
// powers take the argument of each factor before exponentiating, and the root
// of w^2 - 1 is |s|^{1/2} e^{i(arg conj xi + arg zeta)/2} (1-s)^{-1/2}. The
// phases then cancel between the prefactor and the Legendre function, which
// the reduced branch uses when either label is zero.
cplx legendre_overlap_factor(const SqueezeParam& xi, const SqueezeParam& zeta, unsigned p,
                             unsigned degree, cplx s) {
  const cplx w = 1.0 / std::sqrt(1.0 - s);
  if (p == 0) return sf::legendre_p(degree, w);
  if (xi.modulus() == 0.0 || zeta.modulus() == 0.0) {
    const cplx reduced = sf::legendre_p_assoc(-static_cast<int>(p), degree, w, cplx(1.0));
    return std::pow(zeta.zeta(), static_cast<int>(p)) *
           std::pow(1.0 - s, -0.5 * static_cast<double>(p)) * reduced;
  }
  const double arg_xib = std::arg(std::conj(xi.zeta()));
  const double arg_zeta = zeta.phase();
  const double half_p = 0.5 * p;
  const cplx xi_pow = std::polar(std::pow(xi.modulus(), -half_p), -half_p * arg_xib);
  const cplx zeta_pow = std::polar(std::pow(zeta.modulus(), half_p), half_p * arg_zeta);
  const cplx root =
      std::polar(std::sqrt(std::abs(s)), 0.5 * (arg_xib + arg_zeta)) / std::sqrt(1.0 - s);
  return xi_pow * zeta_pow * sf::legendre_p_assoc(-static_cast<int>(p), degree, w, root);
}

cplx pasvs_overlap_ordered(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta, unsigned m,
                           OverlapForm form) {
  const cplx s = overlap_argument(xi, zeta);
  if (form == OverlapForm::Series) {
    return inner(pasvs(xi, n, kOracleTruncation), pasvs(zeta, m, kOracleTruncation));
  }
  const unsigned p = (n - m) / 2;
  const double log_pre = log_inverse_sqrt_norms(xi, n, zeta, m);
  switch (form) {
    case OverlapForm::Hypergeometric: {
      const double lp = log_pre + 0.25 * (std::log(zeta.one_minus_y()) + std::log(xi.one_minus_y())) +
                        sf::log_factorial(n) - sf::log_factorial(p);
      const auto f = sf::gauss_2f1(0.5 * (n + 1), 0.5 * (n + 2), p + 1.0, s);
      return std::exp(lp) * half_power(zeta.zeta(), p) * f.value;
    }
    case OverlapForm::Terminating: {
      const double lp = log_pre + sf::log_factorial(n) - sf::log_factorial(p);
      const auto f = sf::gauss_2f1(-0.5 * (static_cast<double>(m) - 1.0), -0.5 * m, p + 1.0, s);
      const cplx power = std::pow(1.0 - s, -static_cast<int>((n + m) / 2));
      return std::exp(lp) * sv_overlap(xi, zeta) * half_power(zeta.zeta(), p) * power * f.value;
    }
    case OverlapForm::Legendre: {
      const double lp = log_pre + sf::log_factorial(n);
      const cplx power = std::pow(1.0 - s, -0.25 * (m + n));
      return std::exp(lp) * sv_overlap(xi, zeta) * power *
             legendre_overlap_factor(xi, zeta, p, (m + n) / 2, s);
    }
    case OverlapForm::Series:
      break;
  }
  return 0.0;
}

cplx pasops_overlap_ordered(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta,
                            unsigned m, PasopsOverlapForm form) {
  const cplx s = overlap_argument(xi, zeta);
  switch (form) {
    case PasopsOverlapForm::Series:
      return inner(pasops(xi, n, kOracleTruncation), pasops(zeta, m, kOracleTruncation));
    case PasopsOverlapForm::Bridge:
      return pasvs_overlap_ordered(xi, n + 1, zeta, m + 1, OverlapForm::Hypergeometric);
    case PasopsOverlapForm::Legendre: {
      const unsigned p = (n - m) / 2;
      const double lp =
          -0.5 * (pasops_log_norm(zeta, m) + pasops_log_norm(xi, n)) + sf::log_factorial(n + 1);
      const cplx power = std::pow(1.0 - s, -0.25 * (static_cast<double>(m + n) - 2.0));
      return std::exp(lp) * sops_overlap(xi, zeta) * power *
             legendre_overlap_factor(xi, zeta, p, (m + n + 2) / 2, s);
    }
  }
  return 0.0;
}

double max_pairwise(const std::vector<cplx>& values) {
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      worst = std::max(worst, std::abs(values[i] - values[j]));
    }
  }
  return worst;
}

}  // namespace

cplx sv_overlap(const SqueezeParam& xi, const SqueezeParam& zeta) {
  const cplx s = std::conj(xi.zeta()) * zeta.zeta();
  return std::pow(zeta.one_minus_y() * xi.one_minus_y(), 0.25) * std::pow(1.0 - s, -0.5);
}

cplx sops_overlap(const SqueezeParam& xi, const SqueezeParam& zeta) {
  const cplx s = std::conj(xi.zeta()) * zeta.zeta();
  return std::pow(zeta.one_minus_y() * xi.one_minus_y(), 0.75) * std::pow(1.0 - s, -1.5);
}

double pasvs_log_norm(const SqueezeParam& zeta, unsigned m) {
  const double omy = zeta.one_minus_y();
  const double x = 1.0 / std::sqrt(omy);
  return sf::log_factorial(m) - 0.5 * m * std::log(omy) + std::log(sf::legendre_p(m, x));
}

double pasvs_norm(const SqueezeParam& zeta, unsigned m) { return std::exp(pasvs_log_norm(zeta, m)); }

double pasops_log_norm(const SqueezeParam& zeta, unsigned m) {
  const double omy = zeta.one_minus_y();
  const double x = 1.0 / std::sqrt(omy);
  return sf::log_factorial(m + 1) - 0.5 * (static_cast<double>(m) - 1.0) * std::log(omy) +
         std::log(sf::legendre_p(m + 1, x));
}

double pasops_norm(const SqueezeParam& zeta, unsigned m) {
  return std::exp(pasops_log_norm(zeta, m));
}

cplx pasvs_overlap(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta, unsigned m,
                   OverlapForm form) {
  overlap_argument(xi, zeta);
  if ((n + m) % 2 != 0) return 0.0;
  if (n < m) return std::conj(pasvs_overlap_ordered(zeta, m, xi, n, form));
  return pasvs_overlap_ordered(xi, n, zeta, m, form);
}

OverlapResult pasvs_overlap_checked(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta,
                                    unsigned m) {
  OverlapResult out;
  const std::vector<cplx> forms{pasvs_overlap(xi, n, zeta, m, OverlapForm::Hypergeometric),
                                pasvs_overlap(xi, n, zeta, m, OverlapForm::Terminating),
                                pasvs_overlap(xi, n, zeta, m, OverlapForm::Legendre)};
  out.value = forms.front();
  out.form_spread = max_pairwise(forms);
  out.oracle_error = std::abs(out.value - pasvs_overlap(xi, n, zeta, m, OverlapForm::Series));
  return out;
}

cplx pasops_overlap(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta, unsigned m,
                    PasopsOverlapForm form) {
  overlap_argument(xi, zeta);
  if ((n + m) % 2 != 0) return 0.0;
  if (n < m) return std::conj(pasops_overlap_ordered(zeta, m, xi, n, form));
  return pasops_overlap_ordered(xi, n, zeta, m, form);
}

OverlapResult pasops_overlap_checked(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta,
                                     unsigned m) {
  OverlapResult out;
  const std::vector<cplx> forms{pasops_overlap(xi, n, zeta, m, PasopsOverlapForm::Legendre),
                                pasops_overlap(xi, n, zeta, m, PasopsOverlapForm::Bridge)};
  out.value = forms.front();
  out.form_spread = max_pairwise(forms);
  out.oracle_error = std::abs(out.value - pasops_overlap(xi, n, zeta, m, PasopsOverlapForm::Series));
  return out;
}

namespace {

// 1/lambda + 1, ..., mu/lambda + 1, (mu+1)/lambda, ..., (lambda-1)/lambda.
std::vector<double> circle_lower_parameters(unsigned lambda, unsigned mu) {
  std::vector<double> b;
  for (unsigned j = 1; j < lambda; ++j) {
    const double frac = static_cast<double>(j) / lambda;
    b.push_back(j <= mu ? frac + 1.0 : frac);
  }
  return b;
}

}  // namespace

double csc_norm(const CircleParam& param, CircleNormForm form) {
  if (param.z() == cplx(0.0)) return 1.0;
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  if (form == CircleNormForm::Hypergeometric) {
    const std::vector<double> b = circle_lower_parameters(lambda, mu);
    return sf::generalized_pfq({}, b, param.y()).value;
  }
  const double x = std::norm(param.t());
  return std::exp(sf::log_factorial(mu) - mu * std::log(x)) * sf::hyperbolic_order(mu + 1, lambda, x);
}

cplx pacsc_norm_laguerre_sum(const CircleParam& param, unsigned m) {
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  if (param.z() == cplx(0.0)) {
    return std::exp(sf::log_factorial(m + mu) - sf::log_factorial(mu));
  }
  const double x = std::norm(param.t());
  cplx sum = 0.0;
  for (unsigned v = 0; v < lambda; ++v) {
    const double angle = 2.0 * std::numbers::pi * v / lambda;
    const cplx point = std::polar(x, angle);
    sum += std::polar(1.0, -angle * mu) * std::exp(point) * sf::laguerre(m, -point);
  }
  const double log_pre = sf::log_factorial(mu) + sf::log_factorial(m) - mu * std::log(x) -
                         std::log(lambda * csc_norm(param, CircleNormForm::Hypergeometric));
  return std::exp(log_pre) * sum;
}

double pacsc_norm(const CircleParam& param, unsigned m, PacscNormForm form) {
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  if (param.z() == cplx(0.0)) {
    return std::exp(sf::log_factorial(m + mu) - sf::log_factorial(mu));
  }
  if (form == PacscNormForm::Laguerre) return pacsc_norm_laguerre_sum(param, m).real();
  std::vector<double> a;
  for (unsigned j = 1; j <= lambda; ++j) a.push_back(static_cast<double>(m + mu + j) / lambda);
  const std::vector<double> bb = circle_lower_parameters(lambda, mu);
  std::vector<double> b{1.0};
  b.insert(b.end(), bb.begin(), bb.end());
  b.insert(b.end(), bb.begin(), bb.end());
  const double series = sf::generalized_pfq(a, b, param.y()).value;
  const double norm_mu = csc_norm(param, CircleNormForm::Hypergeometric);
  return std::exp(sf::log_factorial(m + mu) - sf::log_factorial(mu)) * series / norm_mu;
}

namespace {

// Term-by-term sum of exp(log_term(k)) relative to the leading term, stopped
// once terms fall below double resolution of the running sum.
template <class LogTerm>
double log_term_sum(LogTerm log_term) {
  const double lead = log_term(0u);
  double sum = 0.0;
  for (unsigned k = 0; k < 10'000'000u; ++k) {
    const double t = std::exp(log_term(k) - lead);
    sum += t;
    if (k > 8 && t < 1e-18 * sum) return lead + std::log(sum);
  }
  throw std::runtime_error("norm series did not converge");
}

double pasvs_family_series(const SqueezeParam& zeta, unsigned top, double prefactor_power) {
  if (zeta.modulus() == 0.0) return std::exp(sf::log_factorial(top));
  const double log_q = std::log(zeta.y() / 4.0);
  const double log_sum = log_term_sum([&](unsigned k) {
    return sf::log_factorial(2 * k + top) - 2.0 * sf::log_factorial(k) + k * log_q;
  });
  return std::exp(log_sum + prefactor_power * std::log(zeta.one_minus_y()));
}

}  // namespace

double pasvs_norm_series(const SqueezeParam& zeta, unsigned m) {
  return pasvs_family_series(zeta, m, 0.5);
}

double pasops_norm_series(const SqueezeParam& zeta, unsigned m) {
  return pasvs_family_series(zeta, m + 1, 1.5);
}

double csc_norm_series(const CircleParam& param) {
  if (param.z() == 0.0) return 1.0;
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  const double log_r2 = 2.0 * std::log(std::abs(param.z()));
  return std::exp(log_term_sum([&](unsigned k) {
    return sf::log_factorial(mu) - sf::log_factorial(k * lambda + mu) + k * log_r2;
  }));
}

double pacsc_norm_series(const CircleParam& param, unsigned m) {
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  if (param.z() == 0.0) return std::exp(sf::log_factorial(m + mu) - sf::log_factorial(mu));
  const double log_r2 = 2.0 * std::log(std::abs(param.z()));
  const double log_num = log_term_sum([&](unsigned k) {
    const unsigned n = k * lambda + mu;
    return sf::log_factorial(mu) + sf::log_factorial(n + m) - 2.0 * sf::log_factorial(n) + k * log_r2;
  });
  return std::exp(log_num) / csc_norm_series(param);
}

}  // namespace paunity
