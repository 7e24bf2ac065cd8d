#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "skinspec/params.hpp"
#include "skinspec/tridiagonal.hpp"

namespace skinspec::spectral {

using Complex = std::complex<double>;
using Matrix2c = std::array<std::array<Complex, 2>, 2>;

/// f(z) = B_{-1} z^{-1} + B_0 + B_1 z with B_0 = [[a1, b1], [g1, a2]],
/// B_1 = [[0, 0], [b2, 0]], B_{-1} = [[0, g2], [0, 0]]. Requires |z| = 1 to 1e-12.
[[nodiscard]] Matrix2c symbol(const PerturbedDimerParams& params, Complex z);

[[nodiscard]] Complex det2(const Matrix2c& m);

/// Both eigenvalues of a 2x2 complex matrix.
[[nodiscard]] std::array<Complex, 2> eig2(const Matrix2c& m);

struct SymbolCurve {
    std::vector<double> thetas;
    std::vector<Complex> points;
    bool closed = true;
};

/// det f(e^{i theta}) at n_samples equispaced theta in [0, 2 pi). Requires n_samples >= 64.
[[nodiscard]] SymbolCurve det_curve(const PerturbedDimerParams& params, std::size_t n_samples);

/// Eigenvalue branches of f(e^{i theta}), tracked by nearest-point continuation.
///
/// When the branches exchange after one period, `swapped` is set and the union is
/// a single closed curve (first branch followed by the second) of period 4 pi.
struct EigenLoops {
    SymbolCurve first;
    SymbolCurve second;
    bool swapped = false;

    /// Closed polylines making up the union of both branches.
    [[nodiscard]] std::vector<SymbolCurve> closed_components() const;
};

[[nodiscard]] EigenLoops eig_curves(const PerturbedDimerParams& params, std::size_t n_samples);

/// Counterclockwise-positive winding number of the closed sampled curve around point.
///
/// Throws PointOnCurve if point is within 1e-8 of a sample and InsufficientSampling if
/// any argument increment exceeds pi/2.
[[nodiscard]] int winding(const SymbolCurve& curve, Complex point);

/// Sum of windings of the closed components of the eigenvalue-loop union.
[[nodiscard]] int winding(const EigenLoops& loops, Complex point);

/// Crossing-number winding of the closed polygon through the samples (no sampling check).
[[nodiscard]] int polygon_winding(const SymbolCurve& curve, Complex point);

/// min over theta of |det f(e^{i theta})|, refined by golden-section search around the best sample.
struct DetMinimum {
    double theta = 0.0;
    double abs_det = 0.0;
};
[[nodiscard]] DetMinimum min_abs_det(const PerturbedDimerParams& params, std::size_t n_samples);

/// Smallest singular value of z I − M by inverse iteration on (zI−M)^H (zI−M).
[[nodiscard]] double sigma_min(const TridiagonalMatrix& m, Complex z);

struct GridSpec {
    double re0 = -1.0;
    double re1 = 1.0;
    double im0 = -1.0;
    double im1 = 1.0;
    std::size_t nx = 16;
    std::size_t ny = 16;

    [[nodiscard]] double re(std::size_t ix) const;
    [[nodiscard]] double im(std::size_t iy) const;
};

struct PseudoGrid {
    GridSpec spec;
    std::vector<double> sigma_min;  ///< row-major, index iy * nx + ix

    [[nodiscard]] double at(std::size_t ix, std::size_t iy) const { return sigma_min[iy * spec.nx + ix]; }
};

/// sigma_min(zI − M) on every node of the grid. Requires nx, ny >= 16.
[[nodiscard]] PseudoGrid pseudospectrum(const TridiagonalMatrix& m, const GridSpec& grid, unsigned threads = 0);

/// Winding of the eigenvalue-loop union at every grid node (row-major like PseudoGrid).
/// Nodes on the curve are reported with kOnCurve.
inline constexpr int kOnCurve = 1 << 20;
[[nodiscard]] std::vector<int> winding_grid(const EigenLoops& loops, const GridSpec& grid, unsigned threads = 0);

}  // namespace skinspec::spectral
