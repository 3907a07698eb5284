#include "paunity/fockstate.hpp"
#include "paunity/overlap.hpp"
#include "paunity/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace paunity;
namespace sf = paunity::specfun;

namespace {

// Deep truncation so that edge effects stay far below the comparison tolerances.
const Truncation kDeep{1e-32, 2'000'000};

double max_abs(const FockVector& v) {
  double m = 0.0;
  for (const auto& c : v.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

FockVector scaled(const FockVector& v, cplx s) { return combine(s, v, 0.0, FockVector()); }

}  // namespace

TEST(SqueezeParam, UnitDisc) {
  EXPECT_NO_THROW(SqueezeParam(0.999));
  EXPECT_THROW(SqueezeParam(1.0), std::domain_error);
  EXPECT_THROW(SqueezeParam(std::polar(1.2, 0.3)), std::domain_error);
  const auto p = SqueezeParam::from_squeeze(std::atanh(0.5), 0.7);
  EXPECT_NEAR(p.modulus(), 0.5, 1e-15);
  EXPECT_NEAR(p.phase(), 0.7, 1e-15);
  EXPECT_NEAR(p.one_minus_y(), 0.75, 1e-15);
}

TEST(CircleParam, PrincipalRoot) {
  EXPECT_THROW(CircleParam(1.0, 3, 3), std::domain_error);
  EXPECT_THROW(CircleParam(1.0, 0, 0), std::domain_error);
  for (unsigned lambda = 1; lambda <= 5; ++lambda) {
    for (double arg : {-3.0, -1.0, 0.0, 0.5, 3.1}) {
      const cplx z = std::polar(2.3, arg);
      const CircleParam p(z, lambda, 0);
      EXPECT_LE(std::abs(std::pow(p.t(), static_cast<double>(lambda)) - z), 1e-13 * std::abs(z));
      EXPECT_NEAR(std::arg(p.t()), arg / lambda, 1e-15);
    }
  }
  EXPECT_NEAR(CircleParam(2.0, 2, 1).y(), 1.0, 1e-15);
  EXPECT_NEAR(CircleParam(std::polar(3.0, 1.0), 3, 0).y(), 9.0 / 27.0, 1e-15);
}

TEST(Pasvs, ZeroSqueezingIsNumberState) {
  const auto v = pasvs(SqueezeParam(0.0), 3);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.photon_number(0), 3u);
  EXPECT_EQ(v.coeffs()[0], cplx(1.0));
}

TEST(Pasvs, SqueezedVacuumCoefficients) {
  const auto v = pasvs(SqueezeParam(0.5), 0);
  EXPECT_EQ(v.offset(), 0u);
  EXPECT_EQ(v.stride(), 2u);
  ASSERT_GE(v.size(), 10u);
  for (unsigned k = 0; k < v.size(); ++k) {
    const double expected = std::pow(0.75, 0.25) *
                            std::exp(0.5 * sf::log_factorial(2 * k) - sf::log_factorial(k)) *
                            std::pow(0.25, k);
    EXPECT_NEAR(v.coeffs()[k].real(), expected, 1e-15);
  }
}

TEST(Pasvs, NormalizedByClosedForm) {
  const auto v = pasvs(SqueezeParam(0.5), 2);
  EXPECT_NEAR(v.squared_norm() + v.tail_bound(), 1.0, 1e-12);
  EXPECT_LT(v.tail_bound(), 1e-12);
  EXPECT_THROW(pasvs(SqueezeParam(1.0 - 1e-13), 0), std::domain_error);
}

TEST(Pasvs, SupportAndParity) {
  for (unsigned m = 0; m < 6; ++m) {
    const auto v = pasvs(SqueezeParam(std::polar(0.6, 1.0)), m);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_GE(v.photon_number(i), m);
      EXPECT_EQ(v.photon_number(i) % 2, m % 2);
    }
    EXPECT_EQ(v.amplitude(m + 1), cplx(0.0));
  }
}

TEST(Pasvs, TruncationIsHonest) {
  for (double r : {0.2, 0.6, 0.9}) {
    const SqueezeParam p(std::polar(r, -0.4));
    const auto coarse = pasvs(p, 3);
    const auto fine = pasvs(p, 3, Truncation{1e-28, 2'000'000});
    EXPECT_GT(fine.size(), coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      EXPECT_LT(std::abs(coarse.coeffs()[i] - fine.coeffs()[i]), 1e-13);
    }
    double dropped = 0.0;
    for (std::size_t i = coarse.size(); i < fine.size(); ++i) dropped += std::norm(fine.coeffs()[i]);
    EXPECT_LE(dropped, coarse.tail_bound());
  }
}

TEST(Pasops, ZeroSqueezingAndSqueezedOnePhoton) {
  const auto v = pasops(SqueezeParam(0.0), 4);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.photon_number(0), 5u);
  const SqueezeParam p(std::polar(0.3, 0.2));
  const auto s = pasops(p, 0);
  ASSERT_GE(s.size(), 8u);
  for (unsigned k = 0; k < s.size(); ++k) {
    const cplx expected = std::pow(1.0 - 0.09, 0.75) *
                          std::exp(0.5 * sf::log_factorial(2 * k + 1) - sf::log_factorial(k)) *
                          std::pow(p.zeta() / 2.0, static_cast<int>(k));
    EXPECT_LT(std::abs(s.coeffs()[k] - expected), 1e-15);
  }
}

TEST(Pasops, ProportionalToShiftedPasvs) {
  const SqueezeParam p(std::polar(0.55, 2.0));
  for (unsigned m = 0; m < 6; ++m) {
    // Both are normalized, so the proportionality scalar
    // [N_{m+1} / N_{1m}]^{1/2} (1-y)^{1/2} must equal 1.
    const double scalar = std::sqrt(pasvs_norm(p, m + 1) / pasops_norm(p, m)) * std::sqrt(p.one_minus_y());
    EXPECT_NEAR(scalar, 1.0, 1e-12);
    EXPECT_LT(max_abs_difference(pasops(p, m), scaled(pasvs(p, m + 1), scalar)), 1e-12);
  }
}

TEST(Sns, SpecialCases) {
  const auto v = sns(SqueezeParam(0.0), 4);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.photon_number(0), 4u);
  const SqueezeParam p(0.4);
  EXPECT_LT(max_abs_difference(sns(p, 0), pasvs(p, 0)), 1e-15);
  EXPECT_EQ(sns(p, 3).offset(), 1u);
}

TEST(Sns, LadderIdentity) {
  for (double arg : {0.0, 0.9, -2.2}) {
    const SqueezeParam p(std::polar(0.4, arg));
    const double r = std::atanh(p.modulus());
    for (unsigned m = 1; m <= 10; ++m) {
      const auto v = sns(p, m, kDeep);
      const auto lhs = combine(std::cosh(r), apply_lowering(v), -std::polar(std::sinh(r), arg),
                               apply_raising(v));
      const auto rhs = scaled(sns(p, m - 1, kDeep), std::sqrt(static_cast<double>(m)));
      EXPECT_LT(max_abs_difference(lhs, rhs), 1e-10) << "m=" << m << " arg=" << arg;
    }
  }
}

TEST(Sns, Orthonormality) {
  const SqueezeParam p(std::polar(0.5, 0.9));
  std::vector<FockVector> basis;
  for (unsigned m = 0; m <= 12; ++m) basis.push_back(sns(p, m, kDeep));
  for (unsigned n = 0; n <= 12; ++n) {
    for (unsigned m = 0; m <= 12; ++m) {
      EXPECT_LT(std::abs(inner(basis[n], basis[m]) - (n == m ? 1.0 : 0.0)), 1e-10)
          << "n=" << n << " m=" << m;
    }
  }
}

TEST(Csc, SpecialCases) {
  const auto v = csc(CircleParam(0.0, 3, 2));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.photon_number(0), 2u);
  // lambda = 1 is the Glauber coherent state.
  const cplx t = std::polar(1.3, 0.4);
  const auto c = csc(CircleParam(t, 1, 0));
  ASSERT_GE(c.size(), 15u);
  for (unsigned k = 0; k < c.size(); ++k) {
    const cplx expected = std::exp(-0.5 * std::norm(t)) * std::pow(t, static_cast<int>(k)) /
                          std::sqrt(std::exp(sf::log_factorial(k)));
    EXPECT_LT(std::abs(c.coeffs()[k] - expected), 1e-15);
  }
}

TEST(Csc, EigenstateOfPowerOfLowering) {
  for (unsigned lambda = 1; lambda <= 4; ++lambda) {
    for (unsigned mu = 0; mu < lambda; ++mu) {
      const cplx z = std::polar(1.7, 0.6 * mu - 1.0);
      const auto v = csc(CircleParam(z, lambda, mu), kDeep);
      FockVector lowered = v;
      for (unsigned j = 0; j < lambda; ++j) lowered = apply_lowering(lowered);
      EXPECT_LT(max_abs_difference(lowered, scaled(v, z)), 1e-11);
    }
  }
}

TEST(Pacsc, SpecialCasesAndSupport) {
  const auto v = pacsc(CircleParam(0.0, 3, 1), 2);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.photon_number(0), 3u);
  // lambda = 2, mu = 0: photon-added even coherent state on |2k + m>.
  const auto e = pacsc(CircleParam(0.8, 2, 0), 1);
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(e.photon_number(i) % 2, 1u);
  const auto w = pacsc(CircleParam(std::polar(2.0, 0.3), 3, 2), 2);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_GE(w.photon_number(i), 4u);
    EXPECT_EQ(w.photon_number(i) % 3, 1u);
  }
}

TEST(Pacsc, PhotonAddedCoherentState) {
  const cplx t = std::polar(0.9, -1.1);
  for (unsigned m = 0; m <= 4; ++m) {
    const auto v = pacsc(CircleParam(t, 1, 0), m);
    const double norm = std::exp(sf::log_factorial(m)) * sf::laguerre(m, -std::norm(t));
    for (unsigned k = 0; k < v.size(); ++k) {
      const cplx expected = std::exp(-0.5 * std::norm(t)) / std::sqrt(norm) *
                            std::exp(0.5 * sf::log_factorial(k + m) - sf::log_factorial(k)) *
                            std::pow(t, static_cast<int>(k));
      EXPECT_LT(std::abs(v.coeffs()[k] - expected), 1e-14);
    }
  }
}

TEST(Ladder, BasicActions) {
  const auto vac = FockVector::number_state(0);
  const auto lowered = apply_lowering(vac);
  EXPECT_EQ(lowered.squared_norm(), 0.0);
  const auto v = pasvs(SqueezeParam(std::polar(0.5, 0.3)), 2);
  const auto commutator = combine(1.0, apply_lowering(apply_raising(v)), -1.0,
                                  apply_raising(apply_lowering(v)));
  EXPECT_LT(max_abs_difference(commutator, v), 1e-14);
}

TEST(Ladder, SqueezedVacuumKernel) {
  for (double arg : {0.0, 1.3, -2.8}) {
    const SqueezeParam p(std::polar(0.6, arg));
    const auto v = pasvs(p, 0, kDeep);
    const auto k = combine(1.0, apply_lowering(v), -p.zeta(), apply_raising(v));
    EXPECT_LT(max_abs(k), 1e-12);
  }
}

TEST(Ladder, PhotonAddedRecursion) {
  // a (a^dag)^m |zeta> = m (a^dag)^{m-1} |zeta> + zeta (a^dag)^{m+1} |zeta> on unnormalized vectors.
  for (double r : {0.3, 0.6}) {
    const SqueezeParam p(std::polar(r, 0.8));
    auto raw = [&](unsigned m) { return scaled(pasvs(p, m, kDeep), std::sqrt(pasvs_norm(p, m))); };
    for (unsigned m = 1; m <= 10; ++m) {
      const auto lhs = apply_lowering(raw(m));
      const auto rhs = combine(static_cast<double>(m), raw(m - 1), p.zeta(), raw(m + 1));
      EXPECT_LT(max_abs_difference(lhs, rhs), 1e-10 * std::max(1.0, max_abs(lhs))) << "m=" << m;
    }
  }
}

TEST(Inner, SupportsAndNorms) {
  EXPECT_EQ(inner(FockVector::number_state(2), FockVector::number_state(3)), cplx(0.0));
  const auto v = pasvs(SqueezeParam(std::polar(0.7, 0.1)), 3);
  const double n = inner(v, v).real();
  EXPECT_LE(n, 1.0 + 1e-12);
  EXPECT_GE(n, 1.0 - 1e-9);
  // Different strides and offsets.
  const auto c = csc(CircleParam(1.0, 3, 0));
  const auto s = pasvs(SqueezeParam(0.3), 0);
  cplx brute = 0.0;
  for (std::size_t n = 0; n < 200; ++n) brute += std::conj(c.amplitude(n)) * s.amplitude(n);
  EXPECT_LT(std::abs(inner(c, s) - brute), 1e-15);
}
