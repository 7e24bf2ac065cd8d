#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "skinspec/params.hpp"
#include "skinspec/tridiagonal.hpp"

namespace skinspec::toeplitz2 {

/// Order-n tridiagonal 2-Toeplitz matrix with corner perturbations (a, b). Rejects n < 2.
[[nodiscard]] TridiagonalMatrix build_perturbed(const PerturbedDimerParams& params, std::size_t n);

/// det(x I − A_n) evaluated through the P*_k(pi_2(x)) Chebyshev representation.
[[nodiscard]] double char_poly(const PerturbedDimerParams& params, std::size_t n, double x);

enum class EigenClass { bulk, exceptional };

/// Route that produced an eigenvector.
enum class VectorSource {
    exact_forward,      ///< closed form built from the first corner
    exact_mirrored,     ///< closed form of R A R, reversed (built from the last corner)
    inverse_iteration,  ///< numerical fallback
};

struct Eigenpair {
    double lambda = 0.0;
    std::vector<double> vector;  ///< unit sup-norm
    double mu = 0.0;             ///< y(lambda)
    EigenClass klass = EigenClass::bulk;
    double theta = 0.0;          ///< arccos(mu) for bulk pairs, NaN otherwise
    VectorSource source = VectorSource::exact_forward;
    double residual = 0.0;       ///< ‖A v − λ v‖_∞ / ‖v‖_∞
};

/// |mu| <= 1 + 1e-10 counts as bulk.
inline constexpr double kBulkTolerance = 1e-10;

/// Classifies mu and returns (klass, theta).
[[nodiscard]] std::pair<EigenClass, double> classify(double mu);

/// All n eigenpairs sorted by lambda. Eigenvalues come from Sturm bisection on the
/// symmetrized matrix; vectors from the closed forms, falling back to inverse iteration.
[[nodiscard]] std::vector<Eigenpair> eigen_all(const PerturbedDimerParams& params, std::size_t n,
                                               unsigned threads = 0);

/// Closed-form eigenvector for eigenvalue lambda, assembled from the first corner.
///
/// Entries interleave s^k q_hat_k and −(1/beta1) s^k (alpha1 − lambda) p_hat_k, computed
/// in log-magnitude form and normalized once to unit sup-norm. Throws InvalidArgument
/// when the result is not an eigenvector to 1e-9 max(1, |lambda|) relative residual.
[[nodiscard]] std::vector<double> eigenvector_exact(const PerturbedDimerParams& params, std::size_t n,
                                                    double lambda);

/// Same assembly without the residual gate; nullopt when the recurrence degenerates (zero vector).
[[nodiscard]] std::optional<std::vector<double>> eigenvector_formula(const PerturbedDimerParams& params,
                                                                     std::size_t n, double lambda);

/// Eigenvector of R A R (the parameter-swapped matrix mirror_params(params, n)) for
/// eigenvalue lambda: the entry-reversed closed-form vector of A. Same error contract
/// as eigenvector_exact, checked against the swapped matrix.
[[nodiscard]] std::vector<double> mirrored_eigenvector(const PerturbedDimerParams& params, std::size_t n,
                                                       double lambda);

/// Order 4m+2 interface matrix [[R A^{(0,a)} R, G12], [G21, A^{(0,b)}]] with the two
/// order-(2m+1) blocks coupled by gamma2 at (2m, 2m+1) and (2m+1, 2m) (zero-based).
[[nodiscard]] TridiagonalMatrix build_interface(const PerturbedDimerParams& params, std::size_t m, double a,
                                                double b);

struct DecayOptions {
    /// Largest bound constant (for a unit sup-norm vector) still reported as satisfied.
    double max_constant = 100.0;
};

struct DecayReport {
    double rate_fit = 0.0;        ///< slope of the log upper envelope (per cell, or per site for interfaces)
    double rate_theory = 0.0;     ///< log s, or −gamma_ell/2 for interfaces
    double bound_constant = 0.0;  ///< minimal M for the unit sup-norm vector
    bool satisfied = false;
    std::size_t peak_index = 0;   ///< 1-based index of the largest entry
    std::optional<double> rate_fit_left;  ///< interface only: slope left of the interface
};

/// Checks |v_j| <= M j s^{floor((j-1)/2)} (1-based j) and fits the decay of even entries.
[[nodiscard]] DecayReport decay_report(std::span<const double> vector, const PerturbedDimerParams& params,
                                       const DecayOptions& options = {});

/// Checks |v_j| <= M |m-j| exp(-gamma_ell |m-j| / 2) for j != m (1-based m) and fits both sides.
[[nodiscard]] DecayReport interface_localization_check(std::span<const double> vector, std::size_t m,
                                                       double gamma_ell, const DecayOptions& options = {});

/// Outcome of checking the interlacing brackets on mu for a sorted spectrum.
struct BracketReport {
    std::size_t exceptional_count = 0;  ///< #{lambda : |y(lambda)| > 1 + kBulkTolerance}
    std::size_t exceptional_limit = 0;  ///< 11 for odd order, 12 for even order
    std::size_t checked = 0;            ///< number of (k, side) brackets tested
    std::size_t violations = 0;
    double worst_excess = 0.0;          ///< largest distance outside a bracket
};

/// For n = 2m+1 the k-th smallest and k-th largest eigenvalue satisfy
/// cos(k pi/m) <= y <= cos((k-2) pi/m), k = 3..m-3; for n = 2m the lower end is
/// cos((k+1) pi/m) and k = 3..m-4. `slack` widens every bracket.
[[nodiscard]] BracketReport check_brackets(const PerturbedDimerParams& params, std::size_t n,
                                           std::span<const double> eigenvalues, double slack = 1e-12);

}  // namespace skinspec::toeplitz2
