#pragma once

// Photon-added squeezed and circle states as truncated Fock-space vectors on a
// strided subspace {offset, offset + stride, ...}.

#include <complex>
#include <cstddef>
#include <vector>

namespace paunity {

using cplx = std::complex<double>;

/// Squeezing label zeta inside the open unit disc.
class SqueezeParam {
 public:
  explicit SqueezeParam(cplx zeta);
  /// zeta = tanh(r) e^{i phi}.
  static SqueezeParam from_squeeze(double r, double phi);

  cplx zeta() const { return zeta_; }
  double modulus() const { return std::abs(zeta_); }
  double phase() const { return std::arg(zeta_); }
  double y() const { return std::norm(zeta_); }
  /// 1 - |zeta|^2 computed as (1-|zeta|)(1+|zeta|).
  double one_minus_y() const;

 private:
  cplx zeta_;
};

/// Eigenvalue label of a^lambda on the subspace |k lambda + mu>.
class CircleParam {
 public:
  CircleParam(cplx z, unsigned lambda, unsigned mu);

  cplx z() const { return z_; }
  unsigned lambda() const { return lambda_; }
  unsigned mu() const { return mu_; }
  /// Principal root: t^lambda = z, arg t = arg z / lambda.
  cplx t() const;
  /// |z|^2 / lambda^lambda.
  double y() const;

 private:
  cplx z_;
  unsigned lambda_;
  unsigned mu_;
};

class FockVector {
 public:
  FockVector() = default;
  FockVector(std::size_t offset, std::size_t stride, std::vector<cplx> coeffs, double tail_bound = 0.0);

  /// Unit vector on |n>.
  static FockVector number_state(std::size_t n);

  std::size_t offset() const { return offset_; }
  std::size_t stride() const { return stride_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// Bound on the squared norm of the discarded terms.
  double tail_bound() const { return tail_bound_; }

  std::size_t photon_number(std::size_t index) const { return offset_ + index * stride_; }
  /// Amplitude on |n>; zero off the support.
  cplx amplitude(std::size_t n) const;
  /// Largest photon number stored.
  std::size_t max_photon_number() const;
  double squared_norm() const;

 private:
  std::size_t offset_ = 0;
  std::size_t stride_ = 1;
  std::vector<cplx> coeffs_;
  double tail_bound_ = 0.0;
};

struct Truncation {
  /// Target for the discarded squared norm.
  double eps = 1e-14;
  std::size_t max_terms = 2'000'000;
};

/// Photon-added squeezed vacuum, normalized (a^dag)^m S|0>; offset m, stride 2.
FockVector pasvs(const SqueezeParam& param, unsigned m, const Truncation& trunc = {});
/// Photon-added squeezed one-photon state; offset m+1, stride 2.
FockVector pasops(const SqueezeParam& param, unsigned m, const Truncation& trunc = {});
/// Squeezed number state S|m>, as a finite combination of PASVS; offset m mod 2, stride 2.
FockVector sns(const SqueezeParam& param, unsigned m, const Truncation& trunc = {});
/// Coherent state on a circle; offset mu, stride lambda.
FockVector csc(const CircleParam& param, const Truncation& trunc = {});
/// Photon-added coherent state on a circle; offset m+mu, stride lambda.
FockVector pacsc(const CircleParam& param, unsigned m, const Truncation& trunc = {});

/// a^dag v and a v, exact and not renormalized.
FockVector apply_raising(const FockVector& v);
FockVector apply_lowering(const FockVector& v);

/// <u|v> over the common photon numbers.
cplx inner(const FockVector& u, const FockVector& v);

/// alpha u + beta v on the union of supports, with stride the gcd of the
/// stride and offset pattern. Tail bounds add.
FockVector combine(cplx alpha, const FockVector& u, cplx beta, const FockVector& v);

/// Largest |u_n - v_n| over all photon numbers.
double max_abs_difference(const FockVector& u, const FockVector& v);

}  // namespace paunity
