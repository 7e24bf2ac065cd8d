#include "skinspec/polycore.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skinspec/error.hpp"

namespace skinspec::polycore {

double cheb_eval(ChebyshevKind kind, int n, double x) {
    if (n < 0) {
        throw InvalidArgument("Chebyshev degree must be nonnegative, got " + std::to_string(n));
    }
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = kind == ChebyshevKind::first ? x : 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> cheb_u_roots(int n) {
    if (n < 1) {
        throw InvalidArgument("U_n has no roots for n < 1");
    }
    std::vector<double> roots(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        // cos(pi/2) is not exactly zero in floating point; pin the symmetric midpoint.
        roots[static_cast<std::size_t>(k - 1)] = (2 * k == n + 1) ? 0.0 : std::cos(k * std::numbers::pi / (n + 1));
    }
    return roots;
}

double y_map(const PerturbedDimerParams& params, double x) {
    params.validate();
    const double g1b1 = params.gamma1 * params.beta1;
    const double g2b2 = params.gamma2 * params.beta2;
    return ((x - params.alpha1) * (x - params.alpha2) - g1b1 - g2b2) / (2.0 * std::sqrt(g1b1) * std::sqrt(g2b2));
}

RecurrenceSpec RecurrenceSpec::for_eigenvalue(const PerturbedDimerParams& params, double lambda) {
    RecurrenceSpec spec;
    spec.mu = y_map(params, lambda);
    spec.beta_ratio = skinspec::beta_ratio(params);
    spec.xi_q = params.alpha1 - lambda;
    spec.xi_p = params.alpha1 + params.a - lambda;
    return spec;
}

double HatSequences::p(std::size_t k) const { return p_hat.at(k) * std::exp(scale_log.at(k)); }

double HatSequences::q(std::size_t k) const { return q_hat.at(k) * std::exp(scale_log.at(k)); }

namespace {

constexpr double kRescaleThreshold = 0x1p512;
const double kRescaleLog = 512.0 * std::numbers::ln2;

}  // namespace

HatSequences hat_sequences(const RecurrenceSpec& spec, std::size_t k_max) {
    if (!(spec.beta_ratio > 0.0) || !std::isfinite(spec.beta_ratio)) {
        throw InvalidArgument("beta_ratio must be positive");
    }
    const double beta = spec.beta_ratio;
    const double corner = (spec.xi_p - spec.xi_q) / beta;

    HatSequences out;
    out.p_hat.reserve(k_max + 1);
    out.q_hat.reserve(k_max + 1);
    out.scale_log.reserve(k_max + 1);

    double p_prev = spec.xi_p;
    double q_prev = spec.xi_q;
    double log_scale = 0.0;
    out.p_hat.push_back(p_prev);
    out.q_hat.push_back(q_prev);
    out.scale_log.push_back(0.0);
    if (k_max == 0) return out;

    double p_cur = 2.0 * spec.mu * spec.xi_p + corner;
    double q_cur = (2.0 * spec.mu + beta) * spec.xi_p + corner;
    out.p_hat.push_back(p_cur);
    out.q_hat.push_back(q_cur);
    out.scale_log.push_back(0.0);

    const double two_mu = 2.0 * spec.mu;
    for (std::size_t k = 2; k <= k_max; ++k) {
        double p_next = two_mu * p_cur - p_prev;
        double q_next = two_mu * q_cur - q_prev;
        if (std::max(std::abs(p_next), std::abs(q_next)) > kRescaleThreshold) {
            // Shift the working window; entries already emitted keep their own scale.
            p_next /= kRescaleThreshold;
            q_next /= kRescaleThreshold;
            p_cur /= kRescaleThreshold;
            q_cur /= kRescaleThreshold;
            log_scale += kRescaleLog;
        }
        out.p_hat.push_back(p_next);
        out.q_hat.push_back(q_next);
        out.scale_log.push_back(log_scale);
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return out;
}

}  // namespace skinspec::polycore
