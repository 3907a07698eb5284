#include "paunity/fockstate.hpp"

#include "paunity/overlap.hpp"
#include "paunity/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paunity {

namespace sf = specfun;

SqueezeParam::SqueezeParam(cplx zeta) : zeta_(zeta) {
  if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()) || !(std::abs(zeta) < 1.0)) {
    throw std::domain_error("squeeze parameter must lie inside the unit disc");
  }
}

SqueezeParam SqueezeParam::from_squeeze(double r, double phi) {
  return SqueezeParam(std::polar(std::tanh(r), phi));
}

double SqueezeParam::one_minus_y() const {
  const double a = std::abs(zeta_);
  return (1.0 - a) * (1.0 + a);
}

CircleParam::CircleParam(cplx z, unsigned lambda, unsigned mu) : z_(z), lambda_(lambda), mu_(mu) {
  if (lambda < 1) throw std::domain_error("lambda must be >= 1");
  if (mu >= lambda) throw std::domain_error("mu must satisfy 0 <= mu < lambda");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error("circle parameter must be finite");
  }
}

cplx CircleParam::t() const {
  if (z_ == cplx(0.0)) return 0.0;
  return std::polar(std::pow(std::abs(z_), 1.0 / lambda_), std::arg(z_) / lambda_);
}

double CircleParam::y() const {
  return std::norm(z_) / std::pow(static_cast<double>(lambda_), static_cast<double>(lambda_));
}

FockVector::FockVector(std::size_t offset, std::size_t stride, std::vector<cplx> coeffs,
                       double tail_bound)
    : offset_(offset), stride_(stride), coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (stride_ == 0) throw std::invalid_argument("FockVector stride must be positive");
  if (!(tail_bound_ >= 0.0)) throw std::invalid_argument("FockVector tail bound must be >= 0");
}

FockVector FockVector::number_state(std::size_t n) { return FockVector(n, 1, {cplx(1.0)}); }

cplx FockVector::amplitude(std::size_t n) const {
  if (n < offset_) return 0.0;
  const std::size_t d = n - offset_;
  if (d % stride_ != 0) return 0.0;
  const std::size_t i = d / stride_;
  return i < coeffs_.size() ? coeffs_[i] : cplx(0.0);
}

std::size_t FockVector::max_photon_number() const {
  return coeffs_.empty() ? offset_ : photon_number(coeffs_.size() - 1);
}

double FockVector::squared_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

namespace {

// Builds c_k = exp(log_abs(k)) e^{i k phase} on |offset + k stride>, stopping at
// the first K with |c_{K+1}|^2 / (1 - rho^2) < eps, where rho bounds every
// later coefficient ratio: max of the current ratio and its limit.
template <class LogAbs>
FockVector build_truncated(std::size_t offset, std::size_t stride, LogAbs&& log_abs, double phase,
                           double ratio_limit, const Truncation& trunc) {
  std::vector<cplx> coeffs;
  double tail = 0.0;
  double l_next = log_abs(0);
  for (std::size_t k = 0;; ++k) {
    if (k >= trunc.max_terms) {
      throw std::runtime_error("Fock truncation exceeded " + std::to_string(trunc.max_terms) +
                               " terms");
    }
    coeffs.push_back(std::polar(std::exp(l_next), static_cast<double>(k) * phase));
    const double l1 = log_abs(k + 1);
    const double l2 = log_abs(k + 2);
    const double rho = std::max(std::exp(l2 - l1), ratio_limit);
    l_next = l1;
    if (rho < 1.0) {
      const double bound = std::exp(2.0 * l1) / ((1.0 - rho) * (1.0 + rho));
      if (bound < trunc.eps) {
        tail = bound;
        break;
      }
    }
  }
  return FockVector(offset, stride, std::move(coeffs), tail);
}

void check_normalized(const FockVector& v, const char* what) {
  const double s = v.squared_norm();
  if (s > 1.0 + 1e-9 || s + v.tail_bound() < 1.0 - 1e-9) {
    throw std::runtime_error(std::string(what) + ": closed-form normalization disagrees with "
                             "the coefficient sum (squared norm " + std::to_string(s) + ")");
  }
}

void check_squeeze_for_truncation(const SqueezeParam& p) {
  if (p.modulus() >= 1.0 - 1e-12) {
    throw std::domain_error("|zeta| too close to 1 for a truncated Fock expansion");
  }
}

// Squeezed families: |c_k| = exp(prefix) sqrt((2k+shift)!)/k! (|zeta|/2)^k.
FockVector squeezed_family(const SqueezeParam& p, unsigned shift, double prefix,
                           const Truncation& trunc) {
  const double log_half_mod = std::log(0.5 * p.modulus());
  auto log_abs = [&](std::size_t k) {
    return prefix + 0.5 * sf::log_factorial(static_cast<unsigned>(2 * k + shift)) -
           sf::log_factorial(static_cast<unsigned>(k)) + static_cast<double>(k) * log_half_mod;
  };
  return build_truncated(shift, 2, log_abs, p.phase(), p.modulus(), trunc);
}

}  // namespace

FockVector pasvs(const SqueezeParam& param, unsigned m, const Truncation& trunc) {
  check_squeeze_for_truncation(param);
  if (param.zeta() == cplx(0.0)) return FockVector(m, 2, {cplx(1.0)});
  const double prefix = -0.5 * pasvs_log_norm(param, m) + 0.25 * std::log(param.one_minus_y());
  FockVector v = squeezed_family(param, m, prefix, trunc);
  check_normalized(v, "pasvs");
  return v;
}

FockVector pasops(const SqueezeParam& param, unsigned m, const Truncation& trunc) {
  check_squeeze_for_truncation(param);
  if (param.zeta() == cplx(0.0)) return FockVector(m + 1, 2, {cplx(1.0)});
  const double prefix = -0.5 * pasops_log_norm(param, m) + 0.75 * std::log(param.one_minus_y());
  FockVector v = squeezed_family(param, m + 1, prefix, trunc);
  check_normalized(v, "pasops");
  return v;
}

FockVector sns(const SqueezeParam& param, unsigned m, const Truncation& trunc) {
  check_squeeze_for_truncation(param);
  if (param.zeta() == cplx(0.0)) return FockVector(m, 2, {cplx(1.0)});
  // S|m> = sum_k B_mk |zeta,k>, k = m, m-2, ..., with
  // B_mk = sqrt(m!) [(1-y)^{k/2} P_k(x)]^{1/2} (-conj zeta)^{(m-k)/2} / ((m-k)!! sqrt(k!)).
  const double omy = param.one_minus_y();
  const double x = 1.0 / std::sqrt(omy);
  const double log_mod = std::log(param.modulus());
  const double phase = std::arg(-std::conj(param.zeta()));
  FockVector acc(m % 2, 2, {});
  double tail_amp = 0.0;
  for (unsigned k = m % 2; k <= m; k += 2) {
    const unsigned half = (m - k) / 2;
    const double log_b = 0.5 * sf::log_factorial(m) +
                         0.5 * (0.5 * k * std::log(omy) + std::log(sf::legendre_p(k, x))) +
                         half * log_mod - sf::log_double_factorial(static_cast<int>(m - k)) -
                         0.5 * sf::log_factorial(k);
    const cplx b = std::polar(std::exp(log_b), half * phase);
    const FockVector part = pasvs(param, k, trunc);
    acc = combine(1.0, acc, b, part);
    tail_amp += std::abs(b) * std::sqrt(part.tail_bound());
  }
  FockVector out(acc.offset(), acc.stride(), acc.coeffs(), tail_amp * tail_amp);
  check_normalized(out, "sns");
  return out;
}

FockVector csc(const CircleParam& param, const Truncation& trunc) {
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  if (param.z() == cplx(0.0)) return FockVector(mu, lambda, {cplx(1.0)});
  const double prefix = -0.5 * std::log(csc_norm(param)) + 0.5 * sf::log_factorial(mu);
  const double log_mod = std::log(std::abs(param.z()));
  auto log_abs = [&](std::size_t k) {
    return prefix - 0.5 * sf::log_factorial(static_cast<unsigned>(k * lambda + mu)) +
           static_cast<double>(k) * log_mod;
  };
  FockVector v = build_truncated(mu, lambda, log_abs, std::arg(param.z()), 0.0, trunc);
  check_normalized(v, "csc");
  return v;
}

FockVector pacsc(const CircleParam& param, unsigned m, const Truncation& trunc) {
  const unsigned lambda = param.lambda();
  const unsigned mu = param.mu();
  if (param.z() == cplx(0.0)) return FockVector(m + mu, lambda, {cplx(1.0)});
  const double prefix = -0.5 * (std::log(pacsc_norm(param, m)) + std::log(csc_norm(param))) +
                        0.5 * sf::log_factorial(mu);
  const double log_mod = std::log(std::abs(param.z()));
  auto log_abs = [&](std::size_t k) {
    const auto base = static_cast<unsigned>(k * lambda + mu);
    return prefix + 0.5 * sf::log_factorial(base + m) - sf::log_factorial(base) +
           static_cast<double>(k) * log_mod;
  };
  FockVector v = build_truncated(m + mu, lambda, log_abs, std::arg(param.z()), 0.0, trunc);
  check_normalized(v, "pacsc");
  return v;
}

// The ladder operators scale the discarded tail by roughly the photon number at
// the truncation edge; the reported tail bound uses that factor.
FockVector apply_raising(const FockVector& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::sqrt(static_cast<double>(v.photon_number(i) + 1)) * v.coeffs()[i];
  }
  const double edge = static_cast<double>(v.max_photon_number() + v.stride() + 1);
  return FockVector(v.offset() + 1, v.stride(), std::move(out), v.tail_bound() * edge);
}

FockVector apply_lowering(const FockVector& v) {
  const double edge = static_cast<double>(v.max_photon_number() + v.stride());
  if (v.offset() == 0) {
    // The |0> component is annihilated.
    if (v.size() <= 1) return FockVector(v.stride() - 1, v.stride(), {}, v.tail_bound() * edge);
    std::vector<cplx> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) {
      out[i - 1] = std::sqrt(static_cast<double>(v.photon_number(i))) * v.coeffs()[i];
    }
    return FockVector(v.stride() - 1, v.stride(), std::move(out), v.tail_bound() * edge);
  }
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::sqrt(static_cast<double>(v.photon_number(i))) * v.coeffs()[i];
  }
  return FockVector(v.offset() - 1, v.stride(), std::move(out), v.tail_bound() * edge);
}

cplx inner(const FockVector& u, const FockVector& v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx b = v.amplitude(u.photon_number(i));
    if (b != cplx(0.0)) s += std::conj(u.coeffs()[i]) * b;
  }
  return s;
}

FockVector combine(cplx alpha, const FockVector& u, cplx beta, const FockVector& v) {
  if (u.size() == 0) {
    std::vector<cplx> c(v.coeffs());
    for (auto& x : c) x *= beta;
    return FockVector(v.offset(), v.stride(), std::move(c), std::norm(beta) * v.tail_bound());
  }
  if (v.size() == 0) {
    std::vector<cplx> c(u.coeffs());
    for (auto& x : c) x *= alpha;
    return FockVector(u.offset(), u.stride(), std::move(c), std::norm(alpha) * u.tail_bound());
  }
  const std::size_t lo = std::min(u.offset(), v.offset());
  const std::size_t hi = std::max(u.max_photon_number(), v.max_photon_number());
  const std::size_t shift = std::max(u.offset(), v.offset()) - lo;
  const std::size_t stride = std::gcd(std::gcd(u.stride(), v.stride()), shift);
  const std::size_t step = stride == 0 ? 1 : stride;
  std::vector<cplx> c((hi - lo) / step + 1, cplx(0.0));
  for (std::size_t i = 0; i < u.size(); ++i) c[(u.photon_number(i) - lo) / step] += alpha * u.coeffs()[i];
  for (std::size_t i = 0; i < v.size(); ++i) c[(v.photon_number(i) - lo) / step] += beta * v.coeffs()[i];
  const double tail_amp =
      std::abs(alpha) * std::sqrt(u.tail_bound()) + std::abs(beta) * std::sqrt(v.tail_bound());
  return FockVector(lo, step, std::move(c), tail_amp * tail_amp);
}

double max_abs_difference(const FockVector& u, const FockVector& v) {
  const FockVector d = combine(1.0, u, -1.0, v);
  double worst = 0.0;
  for (const auto& c : d.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace paunity
