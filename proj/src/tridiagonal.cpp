#include "skinspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "skinspec/error.hpp"

namespace skinspec {

void TridiagonalMatrix::validate() const {
    const std::size_t n = order();
    if (n == 0) {
        throw InvalidArgument("tridiagonal matrix must have order >= 1");
    }
    if (super.size() != n - 1 || sub.size() != n - 1) {
        throw InvalidArgument("band lengths inconsistent with order " + std::to_string(n));
    }
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
    const std::size_t n = order();
    if (x.size() != n) {
        throw InvalidArgument("vector length does not match matrix order");
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += sub[i - 1] * x[i - 1];
        if (i + 1 < n) acc += super[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

std::vector<double> TridiagonalMatrix::multiply_transposed(std::span<const double> x) const {
    return transposed().multiply(x);
}

double TridiagonalMatrix::inf_norm() const {
    const std::size_t n = order();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(sub[i - 1]);
        if (i + 1 < n) row += std::abs(super[i]);
        best = std::max(best, row);
    }
    return best;
}

TridiagonalMatrix TridiagonalMatrix::reversed() const {
    TridiagonalMatrix r;
    r.diag.assign(diag.rbegin(), diag.rend());
    // (R T R)_{i,i+1} = T_{n-1-i, n-2-i}
    r.super.assign(sub.rbegin(), sub.rend());
    r.sub.assign(super.rbegin(), super.rend());
    return r;
}

TridiagonalMatrix TridiagonalMatrix::transposed() const {
    return TridiagonalMatrix{diag, sub, super};
}

double sup_norm(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double residual_inf(const TridiagonalMatrix& t, std::span<const double> v, double lambda) {
    const auto tv = t.multiply(v);
    double r = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i) {
        r = std::max(r, std::abs(tv[i] - lambda * v[i]));
    }
    return r;
}

double relative_residual(const TridiagonalMatrix& t, std::span<const double> v, double lambda) {
    const double norm = sup_norm(v);
    if (norm == 0.0) return std::numeric_limits<double>::infinity();
    return residual_inf(t, v, lambda) / norm;
}

bool normalize_sup(std::vector<double>& v) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) return false;
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            arg = i;
        }
    }
    if (best == 0.0) return false;
    const double scale = (v[arg] < 0.0 ? -1.0 : 1.0) / best;
    for (double& x : v) x *= scale;
    return true;
}

}  // namespace skinspec
