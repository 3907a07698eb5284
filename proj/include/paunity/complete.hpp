#pragma once

// Completeness of the photon-added families: radial weight functions, their
// moment problems, continuous and discrete resolutions of unity, and the
// Carleman uniqueness test.

#include "paunity/fockstate.hpp"
#include "paunity/quadrature.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace paunity {

enum class Family { Pasvs, Pasops, Pacsc };

struct WeightFunction {
  Family family = Family::Pasvs;
  unsigned m = 1;
  /// Circle families only.
  unsigned mu = 0;
  unsigned lambda = 1;
};

/// Throws std::invalid_argument for PASVS with m = 0 (no measure is known) or
/// inconsistent circle labels.
void validate(const WeightFunction& w);

enum class WeightForm {
  Closed,          // Legendre Q form
  Hypergeometric,  // 2F1 in 1 - y; needs y >= 0.05
  Integral,        // Mellin-convolution integral by tanh-sinh quadrature
};

/// PASVS weight h_m(y), m >= 1, 0 < y < 1.
double weight_h(unsigned m, double y, WeightForm form = WeightForm::Closed);
/// Closed form with 1 - y supplied by the caller, for y close to 1.
double weight_h_closed(unsigned m, double y, double one_minus_y);
/// PASOPS weight h_{1m}(y). m = 0 is filled in by h_{10} = h_1.
double weight_h1m(unsigned m, double y);
double weight_h1m(unsigned m, double y, double one_minus_y);
/// PACSC weight h_{mu m}(y), y > 0.
double weight_hmum(unsigned lambda, unsigned mu, unsigned m, double y);
/// Dispatch on the family.
double weight(const WeightFunction& w, double y);

struct MomentReport {
  unsigned k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::size_t nodes_used = 0;
  bool converged = false;
};

/// Target moment: [(2k)!!]^2 / (pi (m+2k)!) for PASVS (m -> m+1 for PASOPS),
/// ((k lambda+mu)!)^2 / (k lambda+m+mu)! for PACSC.
double moment_reference(const WeightFunction& w, unsigned k);

/// Moments k = 0..k_max of the weight, all from a single vector-valued quadrature.
std::vector<MomentReport> moment_check(const WeightFunction& w, unsigned k_max,
                                       const quad::Options& opt = {});

struct OperatorMatrix {
  std::size_t basis_offset = 0;
  std::size_t basis_stride = 1;
  Eigen::MatrixXcd entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  double hermiticity_error() const;
  double identity_deviation() const;
  double max_diagonal_deviation() const;
  double max_offdiagonal() const;
};

struct UnityResolution {
  OperatorMatrix matrix;
  std::size_t nodes = 0;
  double rel_change = 0.0;
  bool converged = false;
  /// Entry with the largest deviation from the identity.
  std::size_t worst_row = 0;
  std::size_t worst_col = 0;
};

/// Integral of the measure times |state><state| over the first basis_dim
/// states of the family's subspace. The angular integral is a direct sum over
/// 2 basis_dim stride + 1 equally spaced nodes, exact for these trigonometric
/// polynomials; the radial integral is double-exponential quadrature.
UnityResolution unity_resolution_matrix(const WeightFunction& w, std::size_t basis_dim,
                                        const quad::Options& opt = {});

/// Rows k: coefficients of PASVS |zeta,k> on squeezed number states |i,zeta>.
Eigen::MatrixXcd pasvs_sns_matrix(const SqueezeParam& zeta, std::size_t dim);
/// Rows m: coefficients of |m,zeta> on normalized PASVS |zeta,k>.
Eigen::MatrixXcd sns_pasvs_matrix(const SqueezeParam& zeta, std::size_t dim);

enum class DiscreteBasis {
  Fock,  // number states |0>, ..., |dim-1>
  Sns,   // squeezed number states |0,zeta>, ..., |dim-1,zeta>
};

/// Truncated double sum over PASVS pairs (k, l <= m_cutoff, k - l even) with
/// the closed-form Legendre coefficients, represented in the chosen basis.
OperatorMatrix discrete_completeness_matrix(const SqueezeParam& zeta, unsigned m_cutoff,
                                            std::size_t basis_dim,
                                            DiscreteBasis basis = DiscreteBasis::Fock);

/// Same truncation, with each coefficient obtained by summing the projector
/// onto squeezed number states over all m and re-expanding in PASVS.
OperatorMatrix discrete_completeness_reference(const SqueezeParam& zeta, unsigned m_cutoff,
                                               std::size_t basis_dim,
                                               DiscreteBasis basis = DiscreteBasis::Fock);

/// Closed-form coefficient of |zeta,k><zeta,l| in the discrete resolution.
cplx discrete_coefficient(const SqueezeParam& zeta, unsigned k, unsigned l);
/// The same coefficient as sum_m B_mk conj(B_ml).
cplx discrete_coefficient_reference(const SqueezeParam& zeta, unsigned k, unsigned l);

struct CarlemanPoint {
  unsigned k = 0;
  double log_a = 0.0;
  double ratio = 0.0;  // ln a_k / ln k
};

/// a_k = mu_k^{-1/(2k)} for the PASVS moments mu_k; requires k >= 2.
std::vector<CarlemanPoint> carleman_sequence(unsigned m, const std::vector<unsigned>& k_list);

}  // namespace paunity
