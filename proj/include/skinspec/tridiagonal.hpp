#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skinspec {

/// Real tridiagonal matrix stored by bands.
///
/// `super[i]` is entry (i, i+1) and `sub[i]` is entry (i+1, i), both zero-based.
struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> super;
    std::vector<double> sub;

    [[nodiscard]] std::size_t order() const noexcept { return diag.size(); }

    /// Throws InvalidArgument when the band lengths do not match the order.
    void validate() const;

    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
    [[nodiscard]] std::vector<double> multiply_transposed(std::span<const double> x) const;

    /// Maximum absolute row sum.
    [[nodiscard]] double inf_norm() const;

    /// R T R with R the exchange (anti-identity) matrix.
    [[nodiscard]] TridiagonalMatrix reversed() const;

    [[nodiscard]] TridiagonalMatrix transposed() const;

    friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;
};

/// ‖T v − λ v‖_∞.
[[nodiscard]] double residual_inf(const TridiagonalMatrix& t, std::span<const double> v, double lambda);

/// ‖T v − λ v‖_∞ / ‖v‖_∞; infinity for the zero vector.
[[nodiscard]] double relative_residual(const TridiagonalMatrix& t, std::span<const double> v, double lambda);

[[nodiscard]] double sup_norm(std::span<const double> v) noexcept;

/// Scales v in place to unit sup-norm with a positive entry of largest magnitude.
/// Returns false (leaving v unchanged) when v is zero or not finite.
bool normalize_sup(std::vector<double>& v);

}  // namespace skinspec
