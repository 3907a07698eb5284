#include "paunity/complete.hpp"

#include "paunity/overlap.hpp"
#include "paunity/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paunity {

namespace sf = specfun;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_unit_interval(double y) {
  if (!(y > 0.0 && y < 1.0)) throw std::domain_error("weight argument must lie in (0, 1)");
}

// x - 1 for x = (1-y)^{-1/2}, without cancellation as y -> 0.
double x_minus_one(double y, double one_minus_y) {
  const double s = std::sqrt(one_minus_y);
  return y / (s * (1.0 + s));
}

// [2 pi n!]^{-1} (1-y)^{n/2} Q_n((1-y)^{-1/2}).
double legendre_q_weight(unsigned n, double y, double one_minus_y) {
  const double x = 1.0 / std::sqrt(one_minus_y);
  const double q = sf::legendre_q(n, x, x_minus_one(y, one_minus_y));
  return std::exp(0.5 * n * std::log(one_minus_y) - sf::log_factorial(n)) * q / kTwoPi;
}

// x^mu e^{-x} U(m, 1, x) in log form; -inf once e^{-x} underflows.
double log_circle_density(unsigned mu, unsigned m, double x) {
  if (x > 800.0) return -std::numeric_limits<double>::infinity();
  return mu * std::log(x) - x + std::log(sf::kummer_u_int(m, x).value);
}

}  // namespace

void validate(const WeightFunction& w) {
  switch (w.family) {
    case Family::Pasvs:
      if (w.m < 1) throw std::invalid_argument("PASVS weight requires m >= 1");
      break;
    case Family::Pasops:
      break;
    case Family::Pacsc:
      if (w.lambda < 1) throw std::invalid_argument("lambda must be >= 1");
      if (w.mu >= w.lambda) throw std::invalid_argument("mu must satisfy 0 <= mu < lambda");
      break;
  }
}

double weight_h_closed(unsigned m, double y, double one_minus_y) {
  if (m < 1) throw std::invalid_argument("weight_h requires m >= 1");
  if (!(y > 0.0) || !(one_minus_y > 0.0)) {
    throw std::domain_error("weight argument must lie in (0, 1)");
  }
  if (m == 1) return 1.0 / (kTwoPi * std::sqrt(one_minus_y));
  return legendre_q_weight(m - 2, y, one_minus_y);
}

double weight_h(unsigned m, double y, WeightForm form) {
  if (m < 1) throw std::invalid_argument("weight_h requires m >= 1");
  check_unit_interval(y);
  const double omy = 1.0 - y;
  switch (form) {
    case WeightForm::Closed:
      return weight_h_closed(m, y, omy);
    case WeightForm::Hypergeometric: {
      if (y < 0.05) throw std::domain_error("hypergeometric weight form needs y >= 0.05");
      const auto f = sf::gauss_2f1(0.5 * m, 0.5 * (m - 1.0), m - 0.5, omy);
      const double pre = std::exp((m - 1.5) * std::log(omy) -
                                  sf::log_double_factorial(static_cast<int>(2 * m) - 3));
      return pre * f.value.real() / kTwoPi;
    }
    case WeightForm::Integral: {
      // The convolution integral only exists from m = 2 on.
      if (m == 1) return weight_h_closed(1, y, omy);
      const double a = 0.5 * m;
      const double b = 0.5 * (m - 2.0);
      const double c = 0.5 * (m - 3.0);
      auto integrand = [&](double t, double from_left, double from_right) {
        return std::pow(t, -a) * std::pow(from_left, b) * std::pow(from_right, c);
      };
      quad::Options opt;
      opt.rel_tol = 1e-13;
      opt.max_level = 14;
      const auto res = quad::tanh_sinh(integrand, y, 1.0, opt);
      return res.value / (2.0 * kTwoPi * std::exp(sf::log_factorial(m - 2)));
    }
  }
  return 0.0;
}

double weight_h1m(unsigned m, double y, double one_minus_y) {
  if (!(y > 0.0) || !(one_minus_y > 0.0)) {
    throw std::domain_error("weight argument must lie in (0, 1)");
  }
  // Only m >= 1 is given in closed form; m = 0 uses h_{10} = h_1.
  if (m == 0) return weight_h_closed(1, y, one_minus_y);
  return legendre_q_weight(m - 1, y, one_minus_y);
}

double weight_h1m(unsigned m, double y) {
  check_unit_interval(y);
  return weight_h1m(m, y, 1.0 - y);
}

double weight_hmum(unsigned lambda, unsigned mu, unsigned m, double y) {
  if (lambda < 1 || mu >= lambda) throw std::invalid_argument("require 0 <= mu < lambda");
  if (!(y > 0.0)) throw std::domain_error("circle weight requires y > 0");
  const double l = static_cast<double>(lambda);
  const double x = l * std::pow(y, 1.0 / l);
  const double log_pre = -std::log(std::numbers::pi) - (l - mu) * std::log(l) +
                         (mu + 1.0 - l) / l * std::log(y) - x;
  if (m == 0) return std::exp(log_pre);
  return std::exp(log_pre) * sf::kummer_u_int(m, x).value;
}

double weight(const WeightFunction& w, double y) {
  validate(w);
  switch (w.family) {
    case Family::Pasvs:
      return weight_h(w.m, y);
    case Family::Pasops:
      return weight_h1m(w.m, y);
    case Family::Pacsc:
      return weight_hmum(w.lambda, w.mu, w.m, y);
  }
  return 0.0;
}

double moment_reference(const WeightFunction& w, unsigned k) {
  validate(w);
  switch (w.family) {
    case Family::Pasvs:
    case Family::Pasops: {
      // The factorial in the denominator is (m+2k)!, as the beta-function
      // evaluation of the Mellin transform gives; (m+k)! already fails at
      // m = 1, k = 1 against the explicit h_1.
      const unsigned mm = w.family == Family::Pasvs ? w.m : w.m + 1;
      return std::exp(2.0 * sf::log_double_factorial(static_cast<int>(2 * k)) -
                      std::log(std::numbers::pi) - sf::log_factorial(mm + 2 * k));
    }
    case Family::Pacsc: {
      const unsigned base = k * w.lambda + w.mu;
      return std::exp(2.0 * sf::log_factorial(base) - sf::log_factorial(base + w.m));
    }
  }
  return 0.0;
}

std::vector<MomentReport> moment_check(const WeightFunction& w, unsigned k_max,
                                       const quad::Options& opt) {
  validate(w);
  const Eigen::Index count = static_cast<Eigen::Index>(k_max) + 1;
  quad::Result<Eigen::VectorXd> res;
  if (w.family == Family::Pacsc) {
    // With x = lambda y^{1/lambda} the moment becomes int x^{k lambda+mu} e^{-x} U(m,1,x) dx.
    auto integrand = [&](double x) {
      Eigen::VectorXd v(count);
      const double base = log_circle_density(w.mu, w.m, x);
      const double lx = std::log(x);
      for (Eigen::Index k = 0; k < count; ++k) {
        v[k] = std::exp(base + static_cast<double>(k * w.lambda) * lx);
      }
      return v;
    };
    res = quad::exp_sinh(integrand, opt);
  } else {
    auto integrand = [&](double y, double, double one_minus_y) {
      const double h = w.family == Family::Pasvs ? weight_h_closed(w.m, y, one_minus_y)
                                                 : weight_h1m(w.m, y, one_minus_y);
      Eigen::VectorXd v(count);
      double power = 1.0;
      for (Eigen::Index k = 0; k < count; ++k) {
        v[k] = power * h;
        power *= y;
      }
      return v;
    };
    res = quad::tanh_sinh(integrand, 0.0, 1.0, opt);
  }
  std::vector<MomentReport> out;
  out.reserve(static_cast<std::size_t>(count));
  for (unsigned k = 0; k <= k_max; ++k) {
    MomentReport r;
    r.k = k;
    r.lhs = res.value[k];
    r.rhs = moment_reference(w, k);
    r.abs_err = std::abs(r.lhs - r.rhs);
    r.rel_err = r.abs_err / std::abs(r.rhs);
    r.nodes_used = res.nodes;
    r.converged = res.converged;
    out.push_back(r);
  }
  return out;
}

double OperatorMatrix::hermiticity_error() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::identity_deviation() const {
  const auto n = entries.rows();
  return (entries - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double OperatorMatrix::max_diagonal_deviation() const {
  return (entries.diagonal().array() - 1.0).abs().maxCoeff();
}

double OperatorMatrix::max_offdiagonal() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(entries(i, j)));
    }
  }
  return worst;
}

UnityResolution unity_resolution_matrix(const WeightFunction& w, std::size_t basis_dim,
                                        const quad::Options& opt) {
  validate(w);
  if (basis_dim < 1 || basis_dim > 64) throw std::invalid_argument("basis_dim must be in 1..64");
  const auto dim = static_cast<Eigen::Index>(basis_dim);
  const bool circle = w.family == Family::Pacsc;
  const std::size_t stride = circle ? w.lambda : 2;
  const std::size_t offset = circle ? w.m + w.mu : (w.family == Family::Pasvs ? w.m : w.m + 1);

  // The normalization of the state cancels against the measure, leaving
  // amplitudes a_i(r) with A_ij = int a_i a_j dr times the angular factor.
  // For the squeezed families r = y and the measure is h(y) d^2 zeta with
  // d^2 zeta = dy dphi / 2; for circle states r = x = |z|^{2/lambda}.
  quad::Result<Eigen::MatrixXd> res;
  if (circle) {
    auto integrand = [&](double x) {
      const double lg = log_circle_density(w.mu, w.m, x) - std::log(kTwoPi);
      const double lx = std::log(x);
      Eigen::VectorXd a(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto base = static_cast<unsigned>(i * w.lambda + w.mu);
        a[i] = std::exp(0.5 * lg + 0.5 * sf::log_factorial(base + w.m) - sf::log_factorial(base) +
                        0.5 * static_cast<double>(i * w.lambda) * lx);
      }
      return Eigen::MatrixXd(a * a.transpose());
    };
    res = quad::exp_sinh(integrand, opt);
  } else {
    const unsigned shift = static_cast<unsigned>(offset);
    auto integrand = [&](double y, double, double one_minus_y) {
      const double h = w.family == Family::Pasvs ? weight_h_closed(w.m, y, one_minus_y)
                                                 : weight_h1m(w.m, y, one_minus_y);
      const double lg = std::log(0.5 * h);
      const double lq = 0.5 * std::log(y) - std::numbers::ln2;
      Eigen::VectorXd a(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto k = static_cast<unsigned>(i);
        a[i] = std::exp(0.5 * lg + 0.5 * sf::log_factorial(2 * k + shift) - sf::log_factorial(k) +
                        k * lq);
      }
      return Eigen::MatrixXd(a * a.transpose());
    };
    res = quad::tanh_sinh(integrand, 0.0, 1.0, opt);
  }

  // Angular factor: sum over equally spaced phases of e^{i(i-j)phi}.
  const std::size_t nodes = 2 * basis_dim * stride + 1;
  Eigen::MatrixXcd angular(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      cplx s = 0.0;
      for (std::size_t l = 0; l < nodes; ++l) {
        const double phi = kTwoPi * static_cast<double>(l) / static_cast<double>(nodes);
        s += std::polar(1.0, static_cast<double>(i - j) * phi);
      }
      angular(i, j) = s * (kTwoPi / static_cast<double>(nodes));
    }
  }

  UnityResolution out;
  out.matrix.basis_offset = offset;
  out.matrix.basis_stride = stride;
  out.matrix.entries = angular.cwiseProduct(res.value.cast<cplx>());
  out.nodes = res.nodes;
  out.rel_change = res.rel_change;
  out.converged = res.converged;
  double worst = -1.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double d = std::abs(out.matrix.entries(i, j) - (i == j ? 1.0 : 0.0));
      if (d > worst) {
        worst = d;
        out.worst_row = static_cast<std::size_t>(i);
        out.worst_col = static_cast<std::size_t>(j);
      }
    }
  }
  return out;
}

namespace {

struct SqueezeScalars {
  double omy;
  double x;
  double x_minus_1;
  double log_mod;
};

SqueezeScalars scalars(const SqueezeParam& zeta) {
  const double omy = zeta.one_minus_y();
  return {omy, 1.0 / std::sqrt(omy), x_minus_one(zeta.y(), omy), std::log(zeta.modulus())};
}

// ln [(1-y)^{k/2} P_k((1-y)^{-1/2})].
double log_scaled_legendre(const SqueezeScalars& s, unsigned k) {
  return 0.5 * k * std::log(s.omy) + std::log(sf::legendre_p(k, s.x));
}

// Coefficient of |zeta,k> (normalized PASVS) in |m,zeta>.
cplx sns_coefficient(const SqueezeParam& zeta, const SqueezeScalars& s, unsigned m, unsigned k) {
  if (k > m || (m - k) % 2 != 0) return 0.0;
  if (zeta.modulus() == 0.0) return m == k ? 1.0 : 0.0;
  const unsigned half = (m - k) / 2;
  const double log_b = 0.5 * sf::log_factorial(m) + 0.5 * log_scaled_legendre(s, k) +
                       half * s.log_mod - sf::log_double_factorial(static_cast<int>(m - k)) -
                       0.5 * sf::log_factorial(k);
  return std::polar(std::exp(log_b), half * std::arg(-std::conj(zeta.zeta())));
}

// Coefficient of |i,zeta> in |zeta,k>.
cplx pasvs_coefficient(const SqueezeParam& zeta, const SqueezeScalars& s, unsigned k, unsigned i) {
  if (i > k || (k - i) % 2 != 0) return 0.0;
  if (zeta.modulus() == 0.0) return k == i ? 1.0 : 0.0;
  const unsigned half = (k - i) / 2;
  const double log_m = -0.5 * log_scaled_legendre(s, k) + 0.5 * sf::log_factorial(k) +
                       half * s.log_mod - sf::log_double_factorial(static_cast<int>(k - i)) -
                       0.5 * sf::log_factorial(i);
  return std::polar(std::exp(log_m), half * std::arg(std::conj(zeta.zeta())));
}

// <i|zeta,k> for number states.
cplx fock_coefficient(const SqueezeParam& zeta, unsigned k, unsigned i) {
  if (i < k || (i - k) % 2 != 0) return 0.0;
  if (zeta.modulus() == 0.0) return k == i ? 1.0 : 0.0;
  const unsigned j = (i - k) / 2;
  const double log_c = -0.5 * pasvs_log_norm(zeta, k) + 0.25 * std::log(zeta.one_minus_y()) +
                       0.5 * sf::log_factorial(i) - sf::log_factorial(j) +
                       j * std::log(0.5 * zeta.modulus());
  return std::polar(std::exp(log_c), j * zeta.phase());
}

// Rows k = 0..cutoff: components of |zeta,k> on the first basis_dim basis vectors.
Eigen::MatrixXcd basis_components(const SqueezeParam& zeta, unsigned cutoff, std::size_t basis_dim,
                                  DiscreteBasis basis) {
  const auto rows = static_cast<Eigen::Index>(cutoff) + 1;
  const auto cols = static_cast<Eigen::Index>(basis_dim);
  Eigen::MatrixXcd f(rows, cols);
  const SqueezeScalars s = scalars(zeta);
  for (Eigen::Index k = 0; k < rows; ++k) {
    for (Eigen::Index i = 0; i < cols; ++i) {
      const auto kk = static_cast<unsigned>(k);
      const auto ii = static_cast<unsigned>(i);
      f(k, i) = basis == DiscreteBasis::Fock ? fock_coefficient(zeta, kk, ii)
                                             : pasvs_coefficient(zeta, s, kk, ii);
    }
  }
  return f;
}

template <class Coefficient>
OperatorMatrix assemble_discrete(const SqueezeParam& zeta, unsigned cutoff, std::size_t basis_dim,
                                 DiscreteBasis basis, Coefficient&& coefficient) {
  if (basis_dim < 1) throw std::invalid_argument("basis_dim must be positive");
  const auto n = static_cast<Eigen::Index>(cutoff) + 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k; l < n; l += 2) {
      c(k, l) = coefficient(static_cast<unsigned>(k), static_cast<unsigned>(l));
      c(l, k) = std::conj(c(k, l));
    }
  }
  const Eigen::MatrixXcd f = basis_components(zeta, cutoff, basis_dim, basis);
  OperatorMatrix out;
  out.basis_offset = 0;
  out.basis_stride = 1;
  out.entries = f.transpose() * c * f.conjugate();
  return out;
}

}  // namespace

Eigen::MatrixXcd pasvs_sns_matrix(const SqueezeParam& zeta, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  const SqueezeScalars s = scalars(zeta);
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(k, i) = pasvs_coefficient(zeta, s, static_cast<unsigned>(k), static_cast<unsigned>(i));
    }
  }
  return out;
}

Eigen::MatrixXcd sns_pasvs_matrix(const SqueezeParam& zeta, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  const SqueezeScalars s = scalars(zeta);
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      out(m, k) = sns_coefficient(zeta, s, static_cast<unsigned>(m), static_cast<unsigned>(k));
    }
  }
  return out;
}

cplx discrete_coefficient(const SqueezeParam& zeta, unsigned k, unsigned l) {
  if ((k + l) % 2 != 0) return 0.0;
  if (k > l) return std::conj(discrete_coefficient(zeta, l, k));
  if (zeta.modulus() == 0.0) return k == l ? 1.0 : 0.0;
  const SqueezeScalars s = scalars(zeta);
  const unsigned p = (l - k) / 2;
  const double root = std::sqrt(s.x_minus_1 * (s.x + 1.0));
  const double assoc =
      sf::legendre_p_assoc(-static_cast<int>(p), (k + l) / 2, cplx(s.x), cplx(root)).real();
  const double magnitude =
      std::exp(-0.5 * std::log(s.omy) + 0.5 * (sf::log_factorial(l) - sf::log_factorial(k))) *
      std::sqrt(sf::legendre_p(k, s.x) * sf::legendre_p(l, s.x)) * assoc;
  // (-e^{-i phi})^p
  return std::polar(magnitude, p * (std::numbers::pi - zeta.phase()));
}

cplx discrete_coefficient_reference(const SqueezeParam& zeta, unsigned k, unsigned l) {
  if ((k + l) % 2 != 0) return 0.0;
  if (zeta.modulus() == 0.0) return k == l ? 1.0 : 0.0;
  const SqueezeScalars s = scalars(zeta);
  cplx sum = 0.0;
  int small = 0;
  for (unsigned m = std::max(k, l); m < 20000; m += 2) {
    const cplx term = sns_coefficient(zeta, s, m, k) * std::conj(sns_coefficient(zeta, s, m, l));
    sum += term;
    if (std::abs(term) <= 1e-20 * std::abs(sum)) {
      if (++small >= 3) return sum;
    } else {
      small = 0;
    }
  }
  throw std::runtime_error("discrete coefficient sum did not converge");
}

OperatorMatrix discrete_completeness_matrix(const SqueezeParam& zeta, unsigned m_cutoff,
                                            std::size_t basis_dim, DiscreteBasis basis) {
  return assemble_discrete(zeta, m_cutoff, basis_dim, basis,
                           [&](unsigned k, unsigned l) { return discrete_coefficient(zeta, k, l); });
}

OperatorMatrix discrete_completeness_reference(const SqueezeParam& zeta, unsigned m_cutoff,
                                               std::size_t basis_dim, DiscreteBasis basis) {
  return assemble_discrete(zeta, m_cutoff, basis_dim, basis, [&](unsigned k, unsigned l) {
    return discrete_coefficient_reference(zeta, k, l);
  });
}

std::vector<CarlemanPoint> carleman_sequence(unsigned m, const std::vector<unsigned>& k_list) {
  std::vector<CarlemanPoint> out;
  out.reserve(k_list.size());
  for (unsigned k : k_list) {
    if (k < 2) throw std::invalid_argument("Carleman test needs k >= 2");
    const double log_moment = 2.0 * sf::log_double_factorial(static_cast<int>(2 * k)) -
                              std::log(std::numbers::pi) - sf::log_factorial(m + 2 * k);
    CarlemanPoint p;
    p.k = k;
    p.log_a = -log_moment / (2.0 * k);
    p.ratio = p.log_a / std::log(static_cast<double>(k));
    out.push_back(p);
  }
  return out;
}

}  // namespace paunity
