#pragma once

// Asymmetric Gaussian kernel and the functions derived from it.
//
// With bandwidths (s+, s-) the kernel uses s+ for errors e >= 0 and s- for
// e < 0. Every derived function follows the same branch rule, so at e == 0
// the positive branch is used.

namespace acorr {

class KernelBandwidths {
 public:
  /// Throws UsageError unless both bandwidths are finite and positive.
  KernelBandwidths(double sigma_plus, double sigma_minus);

  static KernelBandwidths symmetric(double sigma) { return {sigma, sigma}; }

  double sigma_plus() const noexcept { return sigma_plus_; }
  double sigma_minus() const noexcept { return sigma_minus_; }
  bool is_symmetric() const noexcept { return sigma_plus_ == sigma_minus_; }

  /// Bandwidth governing an error of value e.
  double for_error(double e) const noexcept { return e >= 0.0 ? sigma_plus_ : sigma_minus_; }

  friend bool operator==(const KernelBandwidths&, const KernelBandwidths&) = default;

 private:
  double sigma_plus_;
  double sigma_minus_;
};

/// Symmetric Gaussian kernel exp(-e^2 / 2 sigma^2).
double gaussian_kernel(double e, double sigma);

/// Score of the symmetric kernel, (e / sigma^2) exp(-e^2 / 2 sigma^2).
double gaussian_score(double e, double sigma);

/// Asymmetric kernel value in (0, 1]. Throws DomainError for non-finite e.
double eval_kernel(double e, const KernelBandwidths& bw);

/// psi(e) = -d/de eval_kernel(e). Odd in sign: sign(psi(e)) == sign(e).
double eval_score(double e, const KernelBandwidths& bw);

/// First derivative of psi.
double eval_score_prime(double v, const KernelBandwidths& bw);

/// Second derivative of psi.
double eval_score_double_prime(double v, const KernelBandwidths& bw);

/// Fixed-point weight xi(e) = psi(e) / (2 e), strictly positive.
double eval_weight_xi(double e, const KernelBandwidths& bw);

/// Effective LMS step size mu * psi(e) / e of one MACC update.
double variable_step_size(double e, double mu, const KernelBandwidths& bw);

}  // namespace acorr
