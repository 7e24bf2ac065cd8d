#include "skinspec/toeplitz2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "skinspec/error.hpp"
#include "skinspec/oracle.hpp"
#include "skinspec/parallel.hpp"
#include "skinspec/polycore.hpp"

namespace skinspec::toeplitz2 {

TridiagonalMatrix build_perturbed(const PerturbedDimerParams& params, std::size_t n) {
    if (n < 2) {
        throw InvalidArgument("2-Toeplitz matrix needs order >= 2, got " + std::to_string(n));
    }
    TridiagonalMatrix t;
    t.diag.resize(n);
    t.super.resize(n - 1);
    t.sub.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        t.diag[i] = i % 2 == 0 ? params.alpha1 : params.alpha2;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        t.super[i] = i % 2 == 0 ? params.beta1 : params.beta2;
        t.sub[i] = i % 2 == 0 ? params.gamma1 : params.gamma2;
    }
    t.diag.front() += params.a;
    t.diag.back() += params.b;
    return t;
}

namespace {

// (sqrt Pi)^k U_k(y), with the k = -1 term equal to zero.
double p_star(double root_pi, double y, long k) {
    if (k < 0) return 0.0;
    return std::pow(root_pi, static_cast<double>(k)) *
           polycore::cheb_eval(polycore::ChebyshevKind::second, static_cast<int>(k), y);
}

}  // namespace

double char_poly(const PerturbedDimerParams& params, std::size_t n, double x) {
    if (n < 2) {
        throw InvalidArgument("characteristic polynomial needs order >= 2");
    }
    params.validate();
    const double y = polycore::y_map(params, x);
    const double root_pi = coupling_scale(params);
    const double g1b1 = params.gamma1 * params.beta1;
    const double g2b2 = params.gamma2 * params.beta2;
    const double a = params.a;
    const double b = params.b;
    const long m = static_cast<long>(n / 2);
    if (n % 2 == 1) {
        return (x - params.alpha1 - a - b) * p_star(root_pi, y, m) +
               (a * b * (x - params.alpha2) - a * g1b1 - b * g2b2) * p_star(root_pi, y, m - 1);
    }
    return p_star(root_pi, y, m) +
           (a * (params.alpha2 - x) + b * (params.alpha1 - x) + a * b + g2b2) * p_star(root_pi, y, m - 1) +
           a * b * g1b1 * p_star(root_pi, y, m - 2);
}

std::pair<EigenClass, double> classify(double mu) {
    if (std::abs(mu) <= 1.0 + kBulkTolerance) {
        return {EigenClass::bulk, std::acos(std::clamp(mu, -1.0, 1.0))};
    }
    return {EigenClass::exceptional, std::numeric_limits<double>::quiet_NaN()};
}

std::optional<std::vector<double>> eigenvector_formula(const PerturbedDimerParams& params, std::size_t n,
                                                       double lambda) {
    if (n < 2) {
        throw InvalidArgument("eigenvector needs order >= 2");
    }
    params.validate();
    const auto spec = polycore::RecurrenceSpec::for_eigenvalue(params, lambda);
    const std::size_t m = n / 2;
    const std::size_t k_max = n % 2 == 1 ? m : m - 1;
    const auto hats = polycore::hat_sequences(spec, k_max);

    // Signed cell factor: (gamma1/beta2) * beta has magnitude s.
    const double cell = (params.gamma1 / params.beta2) * spec.beta_ratio;
    const double log_cell = std::log(std::abs(cell));
    const bool cell_negative = cell < 0.0;
    const double even_factor = -(params.alpha1 - lambda) / params.beta1;

    std::vector<double> log_mag(n, -std::numeric_limits<double>::infinity());
    std::vector<int> sign(n, 0);
    auto put = [&](std::size_t j, double value, double extra_log, std::size_t k) {
        if (value == 0.0 || !std::isfinite(value)) {
            sign[j] = 0;
            return;
        }
        const bool flip = (value < 0.0) != (cell_negative && k % 2 == 1);
        sign[j] = flip ? -1 : 1;
        log_mag[j] = std::log(std::abs(value)) + extra_log + static_cast<double>(k) * log_cell + hats.scale_log[k];
    };
    for (std::size_t k = 0; 2 * k < n; ++k) {
        put(2 * k, hats.q_hat[k], 0.0, k);
        if (2 * k + 1 < n) {
            const double product = even_factor * hats.p_hat[k];
            put(2 * k + 1, product, 0.0, k);
        }
    }

    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (sign[j] != 0) top = std::max(top, log_mag[j]);
    }
    if (!std::isfinite(top)) return std::nullopt;

    std::vector<double> v(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (sign[j] != 0) v[j] = sign[j] * std::exp(log_mag[j] - top);
    }
    if (!normalize_sup(v)) return std::nullopt;
    return v;
}

namespace {

double residual_limit(double lambda) { return 1e-9 * std::max(1.0, std::abs(lambda)); }

std::vector<double> reversed_copy(const std::vector<double>& v) { return {v.rbegin(), v.rend()}; }

}  // namespace

std::vector<double> eigenvector_exact(const PerturbedDimerParams& params, std::size_t n, double lambda) {
    auto v = eigenvector_formula(params, n, lambda);
    if (!v) {
        throw InvalidArgument("closed-form eigenvector degenerates at lambda = " + std::to_string(lambda));
    }
    const double r = relative_residual(build_perturbed(params, n), *v, lambda);
    if (!(r <= residual_limit(lambda))) {
        throw InvalidArgument("lambda = " + std::to_string(lambda) +
                              " is not an eigenvalue to working accuracy (residual " + std::to_string(r) + ")");
    }
    return std::move(*v);
}

std::vector<double> mirrored_eigenvector(const PerturbedDimerParams& params, std::size_t n, double lambda) {
    auto v = eigenvector_formula(params, n, lambda);
    if (!v) {
        throw InvalidArgument("closed-form eigenvector degenerates at lambda = " + std::to_string(lambda));
    }
    auto w = reversed_copy(*v);
    normalize_sup(w);
    const double r = relative_residual(build_perturbed(mirror_params(params, n), n), w, lambda);
    if (!(r <= residual_limit(lambda))) {
        throw InvalidArgument("lambda = " + std::to_string(lambda) +
                              " is not an eigenvalue of the mirrored matrix (residual " + std::to_string(r) + ")");
    }
    return w;
}

std::vector<Eigenpair> eigen_all(const PerturbedDimerParams& params, std::size_t n, unsigned threads) {
    params.validate();
    const TridiagonalMatrix t = build_perturbed(params, n);
    const auto lambdas = oracle::sturm_eigenvalues(oracle::symmetrize(t), 1e-15, threads);
    const PerturbedDimerParams mirror = mirror_params(params, n);

    std::vector<Eigenpair> pairs(n);
    parallel_for(
        n,
        [&](std::size_t i) {
            Eigenpair& e = pairs[i];
            e.lambda = lambdas[i];
            e.mu = polycore::y_map(params, e.lambda);
            std::tie(e.klass, e.theta) = classify(e.mu);
            const double limit = residual_limit(e.lambda);

            if (auto v = eigenvector_formula(params, n, e.lambda)) {
                const double r = relative_residual(t, *v, e.lambda);
                if (r <= limit) {
                    e.vector = std::move(*v);
                    e.source = VectorSource::exact_forward;
                    e.residual = r;
                    return;
                }
            }
            if (auto w = eigenvector_formula(mirror, n, e.lambda)) {
                auto v = reversed_copy(*w);
                normalize_sup(v);
                const double r = relative_residual(t, v, e.lambda);
                if (r <= limit) {
                    e.vector = std::move(v);
                    e.source = VectorSource::exact_mirrored;
                    e.residual = r;
                    return;
                }
            }
            e.vector = oracle::inverse_iteration_vector(t, e.lambda);
            e.source = VectorSource::inverse_iteration;
            e.residual = relative_residual(t, e.vector, e.lambda);
        },
        threads);
    return pairs;
}

TridiagonalMatrix build_interface(const PerturbedDimerParams& params, std::size_t m, double a, double b) {
    if (m < 1) {
        throw InvalidArgument("interface matrix needs m >= 1");
    }
    params.validate();
    const std::size_t half = 2 * m + 1;
    PerturbedDimerParams left = params;
    left.a = 0.0;
    left.b = a;
    PerturbedDimerParams right = params;
    right.a = 0.0;
    right.b = b;
    const TridiagonalMatrix g11 = build_perturbed(left, half).reversed();
    const TridiagonalMatrix g22 = build_perturbed(right, half);

    TridiagonalMatrix t;
    t.diag = g11.diag;
    t.diag.insert(t.diag.end(), g22.diag.begin(), g22.diag.end());
    t.super = g11.super;
    t.super.push_back(params.gamma2);
    t.super.insert(t.super.end(), g22.super.begin(), g22.super.end());
    t.sub = g11.sub;
    t.sub.push_back(params.gamma2);
    t.sub.insert(t.sub.end(), g22.sub.begin(), g22.sub.end());
    return t;
}

namespace {

std::vector<double> unit_magnitudes(std::span<const double> vector) {
    if (vector.empty()) {
        throw InvalidArgument("decay report needs a nonempty vector");
    }
    const double norm = sup_norm(vector);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("decay report needs a nonzero finite vector");
    }
    std::vector<double> u(vector.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::abs(vector[i]) / norm;
    return u;
}

// First index whose magnitude ties the maximum; mirror-symmetric modes have two equal peaks.
std::size_t peak_of(const std::vector<double>& u) {
    const double top = *std::max_element(u.begin(), u.end());
    std::size_t j = 0;
    while (u[j] < top * (1.0 - 1e-9)) ++j;
    return j + 1;
}

// Least-squares slope of log-envelope values against abscissae; NaN with fewer than two finite points.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& logs) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(logs[i])) continue;
        sx += xs[i];
        sy += logs[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * logs[i];
        ++count;
    }
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    const double c = static_cast<double>(count);
    const double denom = c * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (c * sxy - sx * sy) / denom;
}

// Running maximum taken toward the decaying end, so oscillation nodes do not pull the fit down.
std::vector<double> log_envelope(const std::vector<double>& values, bool decreasing) {
    std::vector<double> logs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        logs[i] = values[i] > 0.0 ? std::log(values[i]) : -std::numeric_limits<double>::infinity();
    }
    if (decreasing) {
        for (std::size_t i = logs.size(); i-- > 1;) logs[i - 1] = std::max(logs[i - 1], logs[i]);
    } else {
        for (std::size_t i = 1; i < logs.size(); ++i) logs[i] = std::max(logs[i], logs[i - 1]);
    }
    return logs;
}

}  // namespace

DecayReport decay_report(std::span<const double> vector, const PerturbedDimerParams& params,
                         const DecayOptions& options) {
    const auto u = unit_magnitudes(vector);
    const double s = skin_ratio(params);
    const double log_s = std::log(s);
    const std::size_t n = u.size();

    DecayReport report;
    report.rate_theory = log_s;
    report.peak_index = peak_of(u);

    double log_m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= n; ++j) {
        const double value = u[j - 1];
        if (value == 0.0) continue;
        const double cells = static_cast<double>((j - 1) / 2);
        log_m = std::max(log_m, std::log(value) - std::log(static_cast<double>(j)) - cells * log_s);
    }
    report.bound_constant = std::exp(log_m);
    report.satisfied = std::isfinite(report.bound_constant) && report.bound_constant <= options.max_constant;

    std::vector<double> ks;
    std::vector<double> values;
    for (std::size_t j = 4; j + 3 <= n; j += 2) {
        ks.push_back(static_cast<double>(j / 2));
        values.push_back(u[j - 1]);
    }
    report.rate_fit = fit_slope(ks, log_envelope(values, s < 1.0));
    return report;
}

DecayReport interface_localization_check(std::span<const double> vector, std::size_t m, double gamma_ell,
                                         const DecayOptions& options) {
    const auto u = unit_magnitudes(vector);
    const std::size_t n = u.size();
    if (m < 1 || m >= n) {
        throw InvalidArgument("interface index must lie in [1, N-1] for a vector of length " + std::to_string(n));
    }
    const double rate = gamma_ell / 2.0;

    DecayReport report;
    report.rate_theory = -rate;
    report.peak_index = peak_of(u);

    double log_m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= n; ++j) {
        if (j == m || u[j - 1] == 0.0) continue;
        const double d = std::abs(static_cast<double>(m) - static_cast<double>(j));
        log_m = std::max(log_m, std::log(u[j - 1]) - std::log(d) + rate * d);
    }
    report.bound_constant = std::exp(log_m);
    report.satisfied = std::isfinite(report.bound_constant) && report.bound_constant <= options.max_constant;

    std::vector<double> xs;
    std::vector<double> values;
    for (std::size_t j = 3; j + 1 <= m; ++j) {
        xs.push_back(static_cast<double>(j));
        values.push_back(u[j - 1]);
    }
    report.rate_fit_left = fit_slope(xs, log_envelope(values, false));

    xs.clear();
    values.clear();
    for (std::size_t j = m + 1; j + 2 <= n; ++j) {
        xs.push_back(static_cast<double>(j));
        values.push_back(u[j - 1]);
    }
    report.rate_fit = fit_slope(xs, log_envelope(values, true));
    return report;
}

BracketReport check_brackets(const PerturbedDimerParams& params, std::size_t n, std::span<const double> eigenvalues,
                             double slack) {
    if (eigenvalues.size() != n) {
        throw InvalidArgument("expected " + std::to_string(n) + " eigenvalues, got " +
                              std::to_string(eigenvalues.size()));
    }
    if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end())) {
        throw InvalidArgument("eigenvalues must be sorted ascending");
    }
    const bool odd = n % 2 == 1;
    const std::size_t m = n / 2;

    BracketReport report;
    report.exceptional_limit = odd ? 11 : 12;
    std::vector<double> mus(n);
    for (std::size_t i = 0; i < n; ++i) {
        mus[i] = polycore::y_map(params, eigenvalues[i]);
        if (std::abs(mus[i]) > 1.0 + kBulkTolerance) ++report.exceptional_count;
    }

    const double step = std::numbers::pi / static_cast<double>(m);
    const std::size_t k_last = odd ? (m >= 3 ? m - 3 : 0) : (m >= 4 ? m - 4 : 0);
    for (std::size_t k = 3; k <= k_last; ++k) {
        const double lower = std::cos(static_cast<double>(odd ? k : k + 1) * step) - slack;
        const double upper = std::cos(static_cast<double>(k - 2) * step) + slack;
        for (double mu : {mus[k - 1], mus[n - k]}) {
            ++report.checked;
            const double excess = std::max(lower - mu, mu - upper);
            if (excess > 0.0) {
                ++report.violations;
                report.worst_excess = std::max(report.worst_excess, excess);
            }
        }
    }
    return report;
}

}  // namespace skinspec::toeplitz2
