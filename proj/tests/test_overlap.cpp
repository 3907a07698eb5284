#include "paunity/overlap.hpp"
#include "paunity/specfun.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace paunity;
namespace sf = paunity::specfun;

namespace {

const Truncation kDeep{1e-30, 2'000'000};

// Brute-force sums of the unnormalized squared coefficients, term by term in log space.
template <class LogTerm>
double log_series(LogTerm log_term) {
  double sum = 0.0;
  const double lead = log_term(0u);
  for (unsigned k = 0; k < 200000; ++k) {
    const double t = std::exp(log_term(k) - lead);
    sum += t;
    if (k > 10 && t < 1e-19 * sum) break;
  }
  return lead + std::log(sum);
}

double pasvs_norm_series(double y, unsigned m, unsigned photon_shift, double prefactor_power) {
  const double log_sum = log_series([&](unsigned k) {
    return sf::log_factorial(2 * k + m + photon_shift) - 2.0 * sf::log_factorial(k) +
           k * std::log(y / 4.0 + 1e-300);
  });
  return std::exp(log_sum + prefactor_power * std::log1p(-y));
}

double csc_norm_series(double abs_z, unsigned lambda, unsigned mu) {
  return std::exp(log_series([&](unsigned k) {
    return sf::log_factorial(mu) - sf::log_factorial(k * lambda + mu) + 2.0 * k * std::log(abs_z);
  }));
}

double pacsc_norm_series(double abs_z, unsigned lambda, unsigned mu, unsigned m) {
  const double num = log_series([&](unsigned k) {
    return sf::log_factorial(mu) - 2.0 * sf::log_factorial(k * lambda + mu) +
           sf::log_factorial(k * lambda + mu + m) + 2.0 * k * std::log(abs_z);
  });
  return std::exp(num) / csc_norm_series(abs_z, lambda, mu);
}

const std::array<double, 3> kModuli{0.2, 0.4, 0.6};
const std::array<std::pair<double, double>, 8> kPhasePairs{{
    {0.0, 0.0}, {0.0, 1.0}, {std::numbers::pi / 3, 0.0}, {-2.0, 2.9},
    {1.5, -1.5}, {2.5, -2.9}, {-0.7, 0.4}, {3.0, 3.0},
}};

}  // namespace

TEST(SqueezedVacuum, OverlapClosedFormMatchesSeries) {
  const SqueezeParam xi(std::polar(0.5, 0.3));
  const SqueezeParam zeta(std::polar(0.7, -1.9));
  const auto series = inner(pasvs(xi, 0, kDeep), pasvs(zeta, 0, kDeep));
  EXPECT_LT(std::abs(sv_overlap(xi, zeta) - series), 1e-13);
  EXPECT_LT(std::abs(sv_overlap(xi, xi) - 1.0), 1e-15);
  const auto one = inner(pasops(xi, 0, kDeep), pasops(zeta, 0, kDeep));
  EXPECT_LT(std::abs(sops_overlap(xi, zeta) - one), 1e-13);
}

TEST(PasvsNorm, SpecialValues) {
  EXPECT_DOUBLE_EQ(pasvs_norm(SqueezeParam(0.0), 5), 120.0);
  EXPECT_DOUBLE_EQ(pasvs_norm(SqueezeParam(0.6), 0), 1.0);
  // m = 4 at |zeta| = 0.6: an exact rational, 4! (1-y)^{-2} P_4(5/4).
  EXPECT_NEAR(pasvs_norm(SqueezeParam(std::polar(0.6, 1.0)), 4), 304.4986724853515625, 1e-12);
  EXPECT_NEAR(pasvs_log_norm(SqueezeParam(0.6), 4), std::log(304.4986724853515625), 1e-14);
}

TEST(PasvsNorm, MatchesSeries) {
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (unsigned m = 0; m <= 10; ++m) {
      const double closed = pasvs_norm(SqueezeParam(r), m);
      EXPECT_NEAR(closed / pasvs_norm_series(r * r, m, 0, 0.5), 1.0, 1e-9) << r << " " << m;
    }
  }
}

TEST(PasopsNorm, SpecialValuesAndSeries) {
  EXPECT_DOUBLE_EQ(pasops_norm(SqueezeParam(0.4), 0), 1.0);
  EXPECT_DOUBLE_EQ(pasops_norm(SqueezeParam(0.0), 3), 24.0);
  for (double r : {0.1, 0.5, 0.8}) {
    const SqueezeParam p(r);
    for (unsigned m = 0; m <= 8; ++m) {
      EXPECT_NEAR(pasops_norm(p, m) / pasvs_norm_series(r * r, m, 1, 1.5), 1.0, 1e-9);
      // One-photon norms are shifted vacuum norms up to (1-y).
      EXPECT_NEAR(pasops_norm(p, m) / (pasvs_norm(p, m + 1) * p.one_minus_y()), 1.0, 1e-12);
    }
  }
}

TEST(PasvsOverlap, StructuralCases) {
  const SqueezeParam xi(std::polar(0.3, 0.4));
  const SqueezeParam zeta(std::polar(0.5, -1.0));
  EXPECT_EQ(pasvs_overlap(xi, 3, zeta, 2), cplx(0.0));
  for (unsigned m = 0; m <= 6; ++m) {
    EXPECT_LT(std::abs(pasvs_overlap(zeta, m, zeta, m) - 1.0), 1e-12);
  }
  EXPECT_LT(std::abs(pasvs_overlap(xi, 0, zeta, 0) - sv_overlap(xi, zeta)), 1e-15);
  EXPECT_THROW(pasvs_overlap(SqueezeParam(0.95), 2, SqueezeParam(0.96), 0), std::domain_error);
}

TEST(PasvsOverlap, FrozenValues) {
  const auto a = pasvs_overlap(SqueezeParam(0.2), 4, SqueezeParam(std::polar(0.4, std::numbers::pi / 3)), 2);
  EXPECT_LT(std::abs(a - cplx(0.13420922464864688294, 0.51633816372140336391)), 1e-13);
  const auto b = pasvs_overlap(SqueezeParam(std::polar(0.5, 2.5)), 6, SqueezeParam(std::polar(0.6, -2.9)), 0);
  EXPECT_LT(std::abs(b - cplx(0.0055832862392388977117, -0.042673701493154764882)), 1e-14);
}

TEST(PasvsOverlap, FormsAgreeOnGrid) {
  const std::array forms{OverlapForm::Hypergeometric, OverlapForm::Terminating,
                         OverlapForm::Legendre, OverlapForm::Series};
  double worst = 0.0;
  for (double rx : kModuli) {
    for (double rz : kModuli) {
      for (const auto& [px, pz] : kPhasePairs) {
        const SqueezeParam xi(std::polar(rx, px));
        const SqueezeParam zeta(std::polar(rz, pz));
        for (unsigned n = 0; n <= 8; ++n) {
          for (unsigned m = n % 2; m <= 8; m += 2) {
            std::array<cplx, 4> v;
            for (std::size_t f = 0; f < forms.size(); ++f) v[f] = pasvs_overlap(xi, n, zeta, m, forms[f]);
            for (std::size_t i = 0; i < v.size(); ++i) {
              for (std::size_t j = i + 1; j < v.size(); ++j) worst = std::max(worst, std::abs(v[i] - v[j]));
            }
          }
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(PasvsOverlap, HermitianAndBounded) {
  for (const auto& [px, pz] : kPhasePairs) {
    const SqueezeParam xi(std::polar(0.45, px));
    const SqueezeParam zeta(std::polar(0.65, pz));
    for (unsigned n = 0; n <= 7; ++n) {
      for (unsigned m = n % 2; m <= 7; m += 2) {
        const cplx a = pasvs_overlap(xi, n, zeta, m);
        const cplx b = pasvs_overlap(zeta, m, xi, n);
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-13);
        EXPECT_LE(std::abs(a), 1.0 + 1e-12);
      }
    }
  }
}

TEST(PasvsOverlap, CheckedReportsSpreadAndOracle) {
  const auto r = pasvs_overlap_checked(SqueezeParam(std::polar(0.6, 1.1)), 7, SqueezeParam(std::polar(0.4, -0.3)), 3);
  EXPECT_LT(r.form_spread, 1e-12);
  EXPECT_LT(r.oracle_error, 1e-12);
}

TEST(PasopsOverlap, FormsAgreeOnGrid) {
  const std::array forms{PasopsOverlapForm::Legendre, PasopsOverlapForm::Bridge,
                         PasopsOverlapForm::Series};
  double worst = 0.0;
  for (double rx : kModuli) {
    for (double rz : kModuli) {
      for (const auto& [px, pz] : kPhasePairs) {
        const SqueezeParam xi(std::polar(rx, px));
        const SqueezeParam zeta(std::polar(rz, pz));
        for (unsigned n = 0; n <= 8; ++n) {
          for (unsigned m = n % 2; m <= 8; m += 2) {
            std::array<cplx, 3> v;
            for (std::size_t f = 0; f < forms.size(); ++f) v[f] = pasops_overlap(xi, n, zeta, m, forms[f]);
            worst = std::max({worst, std::abs(v[0] - v[1]), std::abs(v[0] - v[2]), std::abs(v[1] - v[2])});
          }
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-9);
  const SqueezeParam z(std::polar(0.5, 0.2));
  EXPECT_LT(std::abs(pasops_overlap(z, 0, SqueezeParam(0.3), 0) - sops_overlap(z, SqueezeParam(0.3))), 1e-14);
}

TEST(CscNorm, SpecialValuesAndForms) {
  EXPECT_DOUBLE_EQ(csc_norm(CircleParam(0.0, 3, 1)), 1.0);
  // lambda = 1 is the coherent-state normalization e^{|z|^2}.
  EXPECT_NEAR(csc_norm(CircleParam(1.5, 1, 0)), std::exp(2.25), 1e-12);
  EXPECT_NEAR(csc_norm(CircleParam(0.7, 3, 1)), 1.0204643379857251188, 1e-14);
  for (unsigned lambda = 1; lambda <= 5; ++lambda) {
    for (unsigned mu = 0; mu < lambda; ++mu) {
      for (double r : {0.3, 1.0, 2.5, 6.0}) {
        const CircleParam p(std::polar(r, 0.7), lambda, mu);
        const double series = csc_norm_series(r, lambda, mu);
        EXPECT_NEAR(csc_norm(p) / series, 1.0, 1e-9);
        EXPECT_NEAR(csc_norm(p, CircleNormForm::Hyperbolic) / series, 1.0, 1e-9);
      }
    }
  }
}

TEST(PacscNorm, SpecialValues) {
  EXPECT_DOUBLE_EQ(pacsc_norm(CircleParam(0.0, 3, 2), 2), 12.0);
  const cplx t = std::polar(1.2, 0.5);
  for (unsigned m = 0; m <= 5; ++m) {
    const double expected = std::exp(sf::log_factorial(m)) * sf::laguerre(m, -std::norm(t));
    EXPECT_NEAR(pacsc_norm(CircleParam(t, 1, 0), m) / expected, 1.0, 1e-12);
  }
  EXPECT_NEAR(pacsc_norm(CircleParam(0.5, 2, 1), 2), 6.5779068274773056975, 1e-12);
  EXPECT_NEAR(pacsc_norm(CircleParam(2.5, 3, 2), 4), 631.41834597491976462, 1e-9);
}

TEST(PacscNorm, FormsAgreeWithSeries) {
  for (unsigned lambda = 1; lambda <= 4; ++lambda) {
    for (unsigned mu = 0; mu < lambda; ++mu) {
      for (unsigned m = 0; m <= 5; ++m) {
        for (double r : {0.4, 1.3, 3.0}) {
          const CircleParam p(std::polar(r, -0.4), lambda, mu);
          const double hyp = pacsc_norm(p, m);
          const double lag = pacsc_norm(p, m, PacscNormForm::Laguerre);
          const double series = pacsc_norm_series(r, lambda, mu, m);
          EXPECT_NEAR(hyp / series, 1.0, 1e-9) << lambda << mu << m << " " << r;
          EXPECT_NEAR(lag / series, 1.0, 1e-9) << lambda << mu << m << " " << r;
          EXPECT_NEAR(hyp / lag, 1.0, 1e-9);
          const cplx sum = pacsc_norm_laguerre_sum(p, m);
          EXPECT_LT(std::abs(sum.imag()), 1e-10 * std::abs(sum.real()));
        }
      }
    }
  }
}
