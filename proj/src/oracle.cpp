#include "skinspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "skinspec/error.hpp"
#include "skinspec/parallel.hpp"

namespace skinspec::oracle {

SymTridiagonal symmetrize(const TridiagonalMatrix& t) {
    t.validate();
    SymTridiagonal s;
    s.diag = t.diag;
    s.offdiag.resize(t.super.size());
    for (std::size_t i = 0; i < t.super.size(); ++i) {
        const double product = t.super[i] * t.sub[i];
        if (!(product > 0.0)) {
            throw InvalidArgument("band product at position " + std::to_string(i) +
                                  " is not positive; matrix is not symmetrizable");
        }
        s.offdiag[i] = std::sqrt(std::abs(t.super[i])) * std::sqrt(std::abs(t.sub[i]));
    }
    return s;
}

namespace {

constexpr double kPivotFloor = 1e-300;

double pivot_floor(const SymTridiagonal& s) {
    double emax = 0.0;
    for (double e : s.offdiag) emax = std::max(emax, e * e);
    return std::max(kPivotFloor, emax * std::numeric_limits<double>::min());
}

std::size_t sturm_count_with_floor(const SymTridiagonal& s, double x, double floor) {
    std::size_t count = 0;
    double q = s.diag[0] - x;
    if (std::abs(q) < floor) q = -floor;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < s.diag.size(); ++i) {
        const double e = s.offdiag[i - 1];
        q = s.diag[i] - x - (e * e) / q;
        if (std::abs(q) < floor) q = -floor;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& s, double x) {
    if (s.diag.empty()) return 0;
    return sturm_count_with_floor(s, x, pivot_floor(s));
}

Interval gershgorin_bounds(const SymTridiagonal& s) {
    const std::size_t n = s.diag.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(s.offdiag[i - 1]);
        if (i + 1 < n) radius += std::abs(s.offdiag[i]);
        lo = std::min(lo, s.diag[i] - radius);
        hi = std::max(hi, s.diag[i] + radius);
    }
    // Widen slightly so the Sturm counts at the ends are certified 0 and n.
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
    return {lo - pad, hi + pad};
}

std::vector<double> sturm_eigenvalues(const SymTridiagonal& s, double tol, unsigned threads) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("bisection tolerance must be positive");
    }
    const std::size_t n = s.diag.size();
    if (n == 0) return {};
    if (s.offdiag.size() + 1 != n) {
        throw InvalidArgument("offdiag length must be order - 1");
    }
    const double floor = pivot_floor(s);
    const Interval bounds = gershgorin_bounds(s);

    std::vector<double> values(n);
    parallel_for(
        n,
        [&](std::size_t k) {
            // Invariant: count(lo) <= k < count(hi).
            double lo = bounds.lo;
            double hi = bounds.hi;
            for (int step = 0;; ++step) {
                const double mid = 0.5 * (lo + hi);
                const double width = hi - lo;
                if (width < tol * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) {
                    values[k] = mid;
                    return;
                }
                if (step >= 200) {
                    throw NumericalError("bisection did not converge for eigenvalue " + std::to_string(k));
                }
                if (sturm_count_with_floor(s, mid, floor) > k) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        },
        threads);
    return values;
}

namespace {

/// LU factorization of a tridiagonal matrix with partial pivoting (LAPACK gttrf layout).
struct TridiagonalLU {
    std::vector<double> dl;   // multipliers
    std::vector<double> d;    // U diagonal
    std::vector<double> du;   // U first superdiagonal
    std::vector<double> du2;  // U second superdiagonal (fill-in)
    std::vector<bool> swapped;

    TridiagonalLU(const TridiagonalMatrix& t, double shift, double tiny) {
        const std::size_t n = t.order();
        d.resize(n);
        dl.assign(n > 0 ? n - 1 : 0, 0.0);
        du.assign(n > 0 ? n - 1 : 0, 0.0);
        du2.assign(n > 1 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, false);
        for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) du[i] = t.super[i];
        std::vector<double> lower(t.sub);

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(lower[i])) {
                if (d[i] == 0.0) d[i] = tiny;
                const double f = lower[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                const double f = d[i] / lower[i];
                d[i] = lower[i];
                dl[i] = f;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            } else {
                b[i + 1] -= dl[i] * b[i];
            }
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double acc = b[ii];
            if (ii + 1 < n) acc -= du[ii] * b[ii + 1];
            if (ii + 2 < n) acc -= du2[ii] * b[ii + 2];
            b[ii] = acc / d[ii];
        }
    }
};

}  // namespace

std::vector<double> inverse_iteration_vector(const TridiagonalMatrix& t, double lambda) {
    t.validate();
    const std::size_t n = t.order();
    const double scale = std::max(1.0, std::abs(lambda));
    const double target = 1e-9 * scale;
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(t.inf_norm(), 1.0);

    const TridiagonalLU lu(t, lambda, tiny);

    std::vector<double> v(n, 1.0);
    double previous = std::numeric_limits<double>::infinity();
    bool ramped = false;
    for (int iter = 0; iter < 50; ++iter) {
        lu.solve(v);
        if (!normalize_sup(v)) {
            // Overflow in the solve means lambda is (numerically) exact; restart from the ramp.
            v.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
            ramped = true;
            continue;
        }
        const double r = residual_inf(t, v, lambda);
        if (r <= target) return v;
        if (!ramped && iter >= 3 && r > 0.5 * previous) {
            for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
            ramped = true;
        }
        previous = r;
    }
    throw NumericalError("inverse iteration did not converge for lambda = " + std::to_string(lambda));
}

double determinant_sweep(const TridiagonalMatrix& t, double x) {
    t.validate();
    double prev = 1.0;
    double cur = x - t.diag[0];
    for (std::size_t i = 1; i < t.order(); ++i) {
        const double next = (x - t.diag[i]) * cur - t.sub[i - 1] * t.super[i - 1] * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace skinspec::oracle
