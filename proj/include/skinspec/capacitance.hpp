#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skinspec/params.hpp"
#include "skinspec/tridiagonal.hpp"

namespace skinspec::capacitance {

/// One-dimensional chain of N resonators with per-resonator gauge potentials.
///
/// Resonator i occupies (x_i^L, x_i^R) with x_1^L = 0, x_i^R = x_i^L + lengths[i] and
/// x_{i+1}^L = x_i^R + spacings[i].
struct ResonatorChain {
    std::vector<double> lengths;   ///< N values > 0
    std::vector<double> spacings;  ///< N-1 values > 0
    std::vector<double> gammas;    ///< N nonzero values
    double delta = 1e-3;           ///< material contrast, in (0, 1)
    double v = 1.0;
    double v_b = 1.0;

    [[nodiscard]] std::size_t size() const noexcept { return lengths.size(); }
    void validate() const;

    [[nodiscard]] std::vector<double> left_edges() const;
    [[nodiscard]] std::vector<double> right_edges() const;

    /// Equal lengths ell, spacings alternating s1, s2, s1, ..., constant gamma.
    [[nodiscard]] static ResonatorChain dimer(std::size_t n, double ell, double s1, double s2, double gamma);
};

/// Gauge capacitance matrix; every row sums to zero.
[[nodiscard]] TridiagonalMatrix gauge_capacitance(const ResonatorChain& chain);

/// V^{-1} C with V = diag(lengths): the standard-form matrix of C a = lambda V a.
[[nodiscard]] TridiagonalMatrix generalized_capacitance(const ResonatorChain& chain);

/// True when lengths and gammas are constant and spacings alternate with period two.
[[nodiscard]] bool is_dimer(const ResonatorChain& chain);

/// 2-Toeplitz coefficients (eta_i in the gamma slots) with corner perturbations such that
/// build_perturbed(dimer_coefficients(chain), N) == gauge_capacitance(chain).
[[nodiscard]] PerturbedDimerParams dimer_coefficients(const ResonatorChain& chain);

/// N resonators, gamma_i = -gamma for i <= N/2 and +gamma after. Spacings alternate
/// s1, s2 mirror-symmetrically about the junction, with s2 across the junction.
[[nodiscard]] ResonatorChain interface_chain(std::size_t n, double gamma, double ell, double s1, double s2);

struct FrequencyReport {
    std::vector<double> eigenvalues;           ///< ascending, all N
    std::vector<double> omegas;                ///< v_b sqrt(delta lambda) for lambda >= 0, ascending
    std::vector<double> negative_eigenvalues;  ///< lambda < 0 (imaginary omega), reported separately
};

/// Eigenvalues with |lambda| <= kZeroEigenvalueTolerance * ‖C‖_∞ are treated as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-12;

[[nodiscard]] FrequencyReport subwavelength_frequencies(const ResonatorChain& chain);

struct ModeProfile {
    std::vector<double> xs;
    std::vector<double> values;
    std::vector<int> resonator_index_map;  ///< zero-based resonator index, -1 outside resonators
};

/// Piecewise-linear mode sum_j a_j V_j(x): constant on resonators, linear across gaps,
/// constant beyond the ends (extended by one gap width on each side).
[[nodiscard]] ModeProfile mode_profile(const ResonatorChain& chain, std::span<const double> eigvec,
                                       std::size_t samples_per_gap);

}  // namespace skinspec::capacitance
