#include "skinspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "skinspec/error.hpp"
#include "skinspec/parallel.hpp"

namespace skinspec::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOnCurveDistance = 1e-8;

void require_samples(std::size_t n_samples) {
    if (n_samples < 64) {
        throw InvalidArgument("symbol curves need at least 64 samples, got " + std::to_string(n_samples));
    }
}

Complex unit(double theta) { return std::polar(1.0, theta); }

}  // namespace

Matrix2c symbol(const PerturbedDimerParams& params, Complex z) {
    params.validate();
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
        throw InvalidArgument("symbol is evaluated on the unit circle only");
    }
    Matrix2c f;
    f[0][0] = params.alpha1;
    f[0][1] = params.beta1 + params.gamma2 / z;
    f[1][0] = params.gamma1 + params.beta2 * z;
    f[1][1] = params.alpha2;
    return f;
}

Complex det2(const Matrix2c& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

std::array<Complex, 2> eig2(const Matrix2c& m) {
    const Complex half_trace = 0.5 * (m[0][0] + m[1][1]);
    const Complex half_gap = 0.5 * (m[0][0] - m[1][1]);
    const Complex root = std::sqrt(half_gap * half_gap + m[0][1] * m[1][0]);
    return {half_trace + root, half_trace - root};
}

SymbolCurve det_curve(const PerturbedDimerParams& params, std::size_t n_samples) {
    require_samples(n_samples);
    SymbolCurve curve;
    curve.thetas.resize(n_samples);
    curve.points.resize(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n_samples);
        curve.thetas[k] = theta;
        curve.points[k] = det2(symbol(params, unit(theta)));
    }
    curve.closed = true;
    return curve;
}

namespace {

// True when pairing (next[1], next[0]) continues (prev[0], prev[1]) better than the identity pairing.
bool prefers_swap(const std::array<Complex, 2>& prev, const std::array<Complex, 2>& next) {
    const double keep = std::abs(next[0] - prev[0]) + std::abs(next[1] - prev[1]);
    const double swap = std::abs(next[1] - prev[0]) + std::abs(next[0] - prev[1]);
    return swap < keep;
}

}  // namespace

EigenLoops eig_curves(const PerturbedDimerParams& params, std::size_t n_samples) {
    require_samples(n_samples);
    EigenLoops loops;
    loops.first.thetas.resize(n_samples);
    loops.second.thetas.resize(n_samples);
    loops.first.points.resize(n_samples);
    loops.second.points.resize(n_samples);

    auto start = eig2(symbol(params, unit(0.0)));
    auto ordered = [](const Complex& x, const Complex& y) {
        return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
    };
    if (!ordered(start[0], start[1])) std::swap(start[0], start[1]);

    std::array<Complex, 2> prev = start;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n_samples);
        auto cur = k == 0 ? start : eig2(symbol(params, unit(theta)));
        if (k > 0 && prefers_swap(prev, cur)) std::swap(cur[0], cur[1]);
        loops.first.thetas[k] = theta;
        loops.second.thetas[k] = theta;
        loops.first.points[k] = cur[0];
        loops.second.points[k] = cur[1];
        prev = cur;
    }
    loops.swapped = prefers_swap(prev, start);
    loops.first.closed = !loops.swapped;
    loops.second.closed = !loops.swapped;
    return loops;
}

std::vector<SymbolCurve> EigenLoops::closed_components() const {
    if (!swapped) return {first, second};
    SymbolCurve joined;
    joined.thetas = first.thetas;
    joined.points = first.points;
    for (std::size_t k = 0; k < second.points.size(); ++k) {
        joined.thetas.push_back(second.thetas[k] + kTwoPi);
        joined.points.push_back(second.points[k]);
    }
    joined.closed = true;
    return {joined};
}

int winding(const SymbolCurve& curve, Complex point) {
    const std::size_t n = curve.points.size();
    if (n < 3) {
        throw InvalidArgument("winding needs a closed curve with at least three samples");
    }
    for (const Complex& p : curve.points) {
        if (std::abs(p - point) < kOnCurveDistance) {
            throw PointOnCurve("point lies on the sampled curve");
        }
    }
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex from = curve.points[k] - point;
        const Complex to = curve.points[(k + 1) % n] - point;
        const double step = std::arg(to / from);
        if (std::abs(step) > 0.5 * std::numbers::pi) {
            throw InsufficientSampling("argument increment exceeds pi/2; raise the number of samples");
        }
        total += step;
    }
    const double turns = std::round(total / kTwoPi);
    if (std::abs(total - kTwoPi * turns) >= 0.01) {
        throw NumericalError("winding sum is not an integer multiple of 2 pi");
    }
    return static_cast<int>(turns);
}

int winding(const EigenLoops& loops, Complex point) {
    int total = 0;
    for (const auto& component : loops.closed_components()) total += winding(component, point);
    return total;
}

int polygon_winding(const SymbolCurve& curve, Complex point) {
    const std::size_t n = curve.points.size();
    int w = 0;
    const double px = point.real();
    const double py = point.imag();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex p = curve.points[k];
        const Complex q = curve.points[(k + 1) % n];
        const double side = (q.real() - p.real()) * (py - p.imag()) - (px - p.real()) * (q.imag() - p.imag());
        if (p.imag() <= py) {
            if (q.imag() > py && side > 0.0) ++w;
        } else if (q.imag() <= py && side < 0.0) {
            --w;
        }
    }
    return w;
}

DetMinimum min_abs_det(const PerturbedDimerParams& params, std::size_t n_samples) {
    const SymbolCurve curve = det_curve(params, n_samples);
    std::size_t best = 0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        if (std::abs(curve.points[k]) < std::abs(curve.points[best])) best = k;
    }
    auto value = [&](double theta) { return std::abs(det2(symbol(params, unit(theta)))); };

    const double h = kTwoPi / static_cast<double>(n_samples);
    double lo = curve.thetas[best] - h;
    double hi = curve.thetas[best] + h;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = value(x1);
    double f2 = value(x2);
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = value(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = value(x2);
        }
    }
    DetMinimum out{curve.thetas[best], std::abs(curve.points[best])};
    for (auto [theta, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
        if (f < out.abs_det) out = {theta, f};
    }
    out.theta = std::fmod(out.theta + kTwoPi, kTwoPi);
    return out;
}

namespace {

/// Complex tridiagonal LU with partial pivoting; `singular` is set on an exactly zero pivot.
struct ComplexTridiagonalLU {
    std::vector<Complex> dl, d, du, du2;
    std::vector<bool> swapped;
    bool singular = false;

    ComplexTridiagonalLU(std::vector<Complex> diag, std::vector<Complex> upper, std::vector<Complex> lower)
        : d(std::move(diag)), du(std::move(upper)) {
        const std::size_t n = d.size();
        dl.assign(n > 0 ? n - 1 : 0, 0.0);
        du2.assign(n > 1 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, false);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(lower[i])) {
                if (d[i] == 0.0) {
                    singular = true;
                    return;
                }
                const Complex f = lower[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                const Complex f = d[i] / lower[i];
                d[i] = lower[i];
                dl[i] = f;
                const Complex tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if (n > 0 && d[n - 1] == 0.0) singular = true;
    }

    void solve(std::vector<Complex>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) {
                const Complex tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            } else {
                b[i + 1] -= dl[i] * b[i];
            }
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Complex acc = b[ii];
            if (ii + 1 < n) acc -= du[ii] * b[ii + 1];
            if (ii + 2 < n) acc -= du2[ii] * b[ii + 2];
            b[ii] = acc / d[ii];
        }
    }
};

double norm2(const std::vector<Complex>& v) {
    double acc = 0.0;
    for (const Complex& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

}  // namespace

double sigma_min(const TridiagonalMatrix& m, Complex z) {
    m.validate();
    const std::size_t n = m.order();
    std::vector<Complex> diag(n), upper(n - 1), lower(n - 1);
    std::vector<Complex> diag_h(n), upper_h(n - 1), lower_h(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = z - m.diag[i];
        diag_h[i] = std::conj(diag[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        upper[i] = -m.super[i];
        lower[i] = -m.sub[i];
        upper_h[i] = -m.sub[i];
        lower_h[i] = -m.super[i];
    }
    const ComplexTridiagonalLU a(diag, upper, lower);
    const ComplexTridiagonalLU ah(diag_h, upper_h, lower_h);
    if (a.singular || ah.singular) return 0.0;

    std::vector<Complex> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j);
        x[j] = Complex(1.0 + 0.5 * std::cos(0.7 * t), 0.5 * std::sin(1.3 * t));
    }
    double nx = norm2(x);
    for (auto& e : x) e /= nx;

    double sigma = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 500; ++iter) {
        ah.solve(x);
        const double rho = norm2(x);
        if (!std::isfinite(rho)) return 0.0;
        const double next = 1.0 / rho;
        a.solve(x);
        nx = norm2(x);
        if (!std::isfinite(nx) || nx == 0.0) return 0.0;
        for (auto& e : x) e /= nx;
        const bool converged = std::abs(next - sigma) <= 1e-11 * next;
        sigma = next;
        if (converged) break;
    }
    return sigma;
}

double GridSpec::re(std::size_t ix) const {
    return nx > 1 ? re0 + (re1 - re0) * static_cast<double>(ix) / static_cast<double>(nx - 1) : re0;
}

double GridSpec::im(std::size_t iy) const {
    return ny > 1 ? im0 + (im1 - im0) * static_cast<double>(iy) / static_cast<double>(ny - 1) : im0;
}

namespace {

void require_grid(const GridSpec& grid) {
    if (grid.nx < 16 || grid.ny < 16) {
        throw InvalidArgument("grid resolution must be at least 16 x 16");
    }
    const double bounds[] = {grid.re0, grid.re1, grid.im0, grid.im1};
    for (double b : bounds) {
        if (!std::isfinite(b)) throw InvalidArgument("grid bounds must be finite");
    }
    if (!(grid.re0 < grid.re1) || !(grid.im0 < grid.im1)) {
        throw InvalidArgument("grid bounds must satisfy re0 < re1 and im0 < im1");
    }
}

}  // namespace

PseudoGrid pseudospectrum(const TridiagonalMatrix& m, const GridSpec& grid, unsigned threads) {
    require_grid(grid);
    m.validate();
    PseudoGrid out;
    out.spec = grid;
    out.sigma_min.resize(grid.nx * grid.ny);
    parallel_for(
        grid.nx * grid.ny,
        [&](std::size_t idx) {
            const std::size_t ix = idx % grid.nx;
            const std::size_t iy = idx / grid.nx;
            out.sigma_min[idx] = sigma_min(m, Complex(grid.re(ix), grid.im(iy)));
        },
        threads);
    return out;
}

std::vector<int> winding_grid(const EigenLoops& loops, const GridSpec& grid, unsigned threads) {
    require_grid(grid);
    const auto components = loops.closed_components();
    std::vector<int> out(grid.nx * grid.ny, 0);
    parallel_for(
        grid.nx * grid.ny,
        [&](std::size_t idx) {
            const Complex z(grid.re(idx % grid.nx), grid.im(idx / grid.nx));
            int total = 0;
            for (const auto& c : components) {
                try {
                    total += winding(c, z);
                } catch (const PointOnCurve&) {
                    out[idx] = kOnCurve;
                    return;
                } catch (const InsufficientSampling&) {
                    total += polygon_winding(c, z);
                }
            }
            out[idx] = total;
        },
        threads);
    return out;
}

}  // namespace skinspec::spectral
