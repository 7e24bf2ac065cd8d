#pragma once

#include <cstddef>
#include <vector>

#include "skinspec/params.hpp"

namespace skinspec::polycore {

enum class ChebyshevKind { first, second };

/// T_n(x) or U_n(x) by the three-term recurrence.
[[nodiscard]] double cheb_eval(ChebyshevKind kind, int n, double x);

/// Roots cos(k pi / (n+1)), k = 1..n, of U_n in decreasing order. Rejects n < 1.
[[nodiscard]] std::vector<double> cheb_u_roots(int n);

/// Normalized coordinate y(x) = ((x-a1)(x-a2) - g1 b1 - g2 b2) / (2 sqrt(g1 b1 g2 b2)).
[[nodiscard]] double y_map(const PerturbedDimerParams& params, double x);

/// Input of the normalized recurrence families p_hat, q_hat.
struct RecurrenceSpec {
    double mu = 0.0;          ///< normalized spectral coordinate
    double beta_ratio = 1.0;  ///< sqrt(g2 b2 / (g1 b1)), must be positive
    double xi_p = 1.0;
    double xi_q = 1.0;

    /// Corner perturbation implied by the initial values (xi_p - xi_q).
    [[nodiscard]] double corner_a() const noexcept { return xi_p - xi_q; }

    /// Initial data of the exact eigenvector for eigenvalue lambda:
    /// xi_q = alpha1 - lambda, xi_p = alpha1 + a - lambda, mu = y(lambda).
    [[nodiscard]] static RecurrenceSpec for_eigenvalue(const PerturbedDimerParams& params, double lambda);
};

/// p_hat_0..p_hat_K and q_hat_0..q_hat_K.
///
/// Stored entries may be rescaled: the true value at k is p_hat[k] * exp(scale_log[k])
/// (same factor for q_hat). Rescaling only happens once magnitudes pass 2^512,
/// so for |mu| <= 1 every scale_log entry is zero.
struct HatSequences {
    std::vector<double> p_hat;
    std::vector<double> q_hat;
    std::vector<double> scale_log;

    [[nodiscard]] std::size_t size() const noexcept { return p_hat.size(); }
    /// Unscaled value (may overflow to +-inf for exceptional mu).
    [[nodiscard]] double p(std::size_t k) const;
    [[nodiscard]] double q(std::size_t k) const;
};

/// Runs the Chebyshev recurrence x_{k+1} = 2 mu x_k - x_{k-1} from
///   p0 = xi_p,  p1 = 2 mu xi_p + (xi_p - xi_q)/beta,
///   q0 = xi_q,  q1 = (2 mu + beta) xi_p + (xi_p - xi_q)/beta.
[[nodiscard]] HatSequences hat_sequences(const RecurrenceSpec& spec, std::size_t k_max);

}  // namespace skinspec::polycore
