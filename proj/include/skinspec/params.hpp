#pragma once

#include <cstddef>

namespace skinspec {

/// Coefficients of a tridiagonal 2-Toeplitz matrix with corner perturbations.
///
/// Diagonal alternates alpha1, alpha2; superdiagonal beta1, beta2; subdiagonal
/// gamma1, gamma2. `a` and `b` are added to the first and last diagonal entries.
/// Admissible when gamma1*beta1 > 0 and gamma2*beta2 > 0.
struct PerturbedDimerParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta1 = 1.0;
    double beta2 = 1.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double a = 0.0;
    double b = 0.0;

    /// Throws InvalidArgument unless all values are finite and both band products are positive.
    void validate() const;

    [[nodiscard]] bool admissible() const noexcept;

    friend bool operator==(const PerturbedDimerParams&, const PerturbedDimerParams&) = default;
};

/// s = sqrt(gamma1*gamma2 / (beta1*beta2)), the per-cell decay ratio of bulk eigenvectors.
[[nodiscard]] double skin_ratio(const PerturbedDimerParams& p);

/// beta = sqrt(gamma2*beta2 / (gamma1*beta1)).
[[nodiscard]] double beta_ratio(const PerturbedDimerParams& p);

/// sqrt(gamma1*beta1*gamma2*beta2).
[[nodiscard]] double coupling_scale(const PerturbedDimerParams& p);

/// Coefficients of R A R for the order-n matrix A, R the exchange matrix.
///
/// For odd n this is the swap (beta1, gamma1, beta2, gamma2) -> (gamma2, beta2, gamma1, beta1)
/// with a and b exchanged; for even n the diagonal roles swap as well.
[[nodiscard]] PerturbedDimerParams mirror_params(const PerturbedDimerParams& p, std::size_t n);

}  // namespace skinspec
