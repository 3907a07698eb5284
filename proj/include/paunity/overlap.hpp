#pragma once

// Normalization coefficients and overlaps in closed form, each with its
// alternate closed forms and a brute-force series counterpart.

#include "paunity/fockstate.hpp"

namespace paunity {

struct OverlapResult {
  cplx value{};
  /// Largest pairwise deviation among the equivalent closed forms.
  double form_spread = 0.0;
  /// Deviation of the reference closed form from the series inner product.
  double oracle_error = 0.0;
};

/// <xi|zeta> for squeezed vacua.
cplx sv_overlap(const SqueezeParam& xi, const SqueezeParam& zeta);
/// Same for squeezed one-photon states.
cplx sops_overlap(const SqueezeParam& xi, const SqueezeParam& zeta);

/// || (a^dag)^m S|0> ||^2 = m! (1-y)^{-m/2} P_m((1-y)^{-1/2}).
double pasvs_norm(const SqueezeParam& zeta, unsigned m);
double pasvs_log_norm(const SqueezeParam& zeta, unsigned m);
/// || (a^dag)^m S|1> ||^2 = (m+1)! (1-y)^{-(m-1)/2} P_{m+1}((1-y)^{-1/2}).
double pasops_norm(const SqueezeParam& zeta, unsigned m);
double pasops_log_norm(const SqueezeParam& zeta, unsigned m);

enum class OverlapForm {
  Hypergeometric,  // 2F1((n+1)/2, (n+2)/2; p+1; conj(xi) zeta), integer powers only
  Terminating,     // polynomial 2F1 in the lower index times (1 - conj(xi) zeta)^{-(n+m)/2}
  Legendre,        // associated Legendre function of (1 - conj(xi) zeta)^{-1/2}
  Series,          // inner product of truncated Fock vectors
};

/// <xi,n|zeta,m> between normalized PASVS. Zero when n - m is odd; n < m is
/// obtained from the conjugate of the swapped overlap. Throws
/// std::domain_error when |conj(xi) zeta| > 0.9.
cplx pasvs_overlap(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta, unsigned m,
                   OverlapForm form = OverlapForm::Hypergeometric);
/// Hypergeometric value with the spread of all closed forms and the series error.
OverlapResult pasvs_overlap_checked(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta,
                                    unsigned m);

enum class PasopsOverlapForm {
  Legendre,  // associated Legendre function, one-photon variant
  Bridge,    // PASOPS(zeta, m) equals PASVS(zeta, m+1) once both are normalized
  Series,
};

cplx pasops_overlap(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta, unsigned m,
                    PasopsOverlapForm form = PasopsOverlapForm::Legendre);
OverlapResult pasops_overlap_checked(const SqueezeParam& xi, unsigned n, const SqueezeParam& zeta,
                                     unsigned m);

enum class CircleNormForm {
  Hypergeometric,  // generalized hypergeometric series in y = |z|^2 / lambda^lambda
  Hyperbolic,      // mu! |t|^{-2mu} h_{mu+1}(|t|^2, lambda)
};

/// Squared norm of sum_k (mu!/(k lambda+mu)!)^{1/2} z^k |k lambda + mu>.
double csc_norm(const CircleParam& param, CircleNormForm form = CircleNormForm::Hypergeometric);

enum class PacscNormForm {
  Hypergeometric,  // lambda F_{2 lambda - 1} series
  Laguerre,        // root-of-unity sum of exp and Laguerre terms
};

/// N_{mu m}: squared norm of (a^dag)^m |z, mu> for normalized |z, mu>.
double pacsc_norm(const CircleParam& param, unsigned m,
                  PacscNormForm form = PacscNormForm::Hypergeometric);
/// The Laguerre sum before taking the real part; its imaginary part should vanish.
cplx pacsc_norm_laguerre_sum(const CircleParam& param, unsigned m);

/// Brute-force counterparts: direct sums of the squared Fock coefficients.
double pasvs_norm_series(const SqueezeParam& zeta, unsigned m);
double pasops_norm_series(const SqueezeParam& zeta, unsigned m);
double csc_norm_series(const CircleParam& param);
double pacsc_norm_series(const CircleParam& param, unsigned m);

}  // namespace paunity
