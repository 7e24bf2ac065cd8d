#pragma once

#include <cstddef>
#include <vector>

#include "skinspec/tridiagonal.hpp"

namespace skinspec::oracle {

/// Symmetric tridiagonal matrix with positive off-diagonal.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    [[nodiscard]] std::size_t order() const noexcept { return diag.size(); }
};

/// D^{-1} T D for the diagonal D that makes T symmetric (offdiag_i = sqrt(sub_i * super_i)).
/// Rejects any band product <= 0.
[[nodiscard]] SymTridiagonal symmetrize(const TridiagonalMatrix& t);

/// Number of eigenvalues of s strictly below x.
[[nodiscard]] std::size_t sturm_count(const SymTridiagonal& s, double x);

/// Gershgorin interval [lo, hi] containing the spectrum.
struct Interval {
    double lo;
    double hi;
};
[[nodiscard]] Interval gershgorin_bounds(const SymTridiagonal& s);

/// All eigenvalues in ascending order by bisection, each to width tol * max(1, |lambda|).
///
/// Brackets for different eigenvalues are refined independently (on up to
/// `threads` workers); output order does not depend on the schedule.
/// Throws NumericalError if a bracket fails to shrink within 200 halvings.
[[nodiscard]] std::vector<double> sturm_eigenvalues(const SymTridiagonal& s, double tol, unsigned threads = 1);

/// Eigenvector of the (possibly nonsymmetric) tridiagonal t for an eigenvalue
/// approximation lambda, by inverse iteration with partial-pivoted elimination.
///
/// Returns a unit sup-norm vector with ‖t v − λ v‖_∞ ≤ 1e-9 max(1, |λ|).
/// Throws NumericalError after 50 iterations without meeting that bound.
[[nodiscard]] std::vector<double> inverse_iteration_vector(const TridiagonalMatrix& t, double lambda);

/// det(x I − T) by the leading-principal-minor recurrence.
[[nodiscard]] double determinant_sweep(const TridiagonalMatrix& t, double x);

}  // namespace skinspec::oracle
