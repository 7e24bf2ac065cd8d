#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "skinspec/polycore.hpp"
#include "skinspec/spectral.hpp"
#include "skinspec/toeplitz2.hpp"

namespace testsupport {

namespace {

using namespace skinspec;

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

void record(PropertyResult& r, double measure, const std::string& where) {
    ++r.cases;
    if (!(measure <= 1.0)) {
        if (r.ok) r.detail = where;
        r.ok = false;
    }
    if (std::isnan(measure) || measure > r.worst) r.worst = measure;
}

double scale_at(const polycore::HatSequences& h, std::size_t k, std::size_t ref) {
    return std::exp(h.scale_log[k] - h.scale_log[ref]);
}

// Lambda with y(lambda) = mu, on the upper branch.
double lambda_for_mu(const PerturbedDimerParams& p, double mu) {
    const double rhs = 2.0 * mu * coupling_scale(p) + p.gamma1 * p.beta1 + p.gamma2 * p.beta2;
    const double half = 0.5 * (p.alpha1 - p.alpha2);
    return 0.5 * (p.alpha1 + p.alpha2) + std::sqrt(half * half + rhs);
}

}  // namespace

PropertyResult recurrence_consistency(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int t = 0; t < trials; ++t) {
        polycore::RecurrenceSpec spec;
        spec.mu = uniform(rng, -3.0, 3.0);
        spec.beta_ratio = uniform(rng, 0.2, 5.0);
        spec.xi_p = uniform(rng, -3.0, 3.0);
        spec.xi_q = uniform(rng, -3.0, 3.0);
        const auto h = polycore::hat_sequences(spec, 200);
        for (std::size_t k = 1; k + 1 < h.size(); ++k) {
            for (const auto* seq : {&h.p_hat, &h.q_hat}) {
                const double next = (*seq)[k + 1];
                const double mid = 2.0 * spec.mu * (*seq)[k] * scale_at(h, k, k + 1);
                const double prev = (*seq)[k - 1] * scale_at(h, k - 1, k + 1);
                const double size = std::max({std::abs(next), std::abs(mid), std::abs(prev), 1e-300});
                std::ostringstream where;
                where << "trial " << t << " k " << k;
                record(r, std::abs(next - mid + prev) / (1e-12 * size), where.str());
            }
        }
    }
    return r;
}

PropertyResult chebyshev_bounds(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int t = 0; t < trials; ++t) {
        const auto p = random_params(rng);
        const double lambda = lambda_for_mu(p, uniform(rng, -1.0, 1.0));
        const auto spec = polycore::RecurrenceSpec::for_eigenvalue(p, lambda);
        const auto h = polycore::hat_sequences(spec, 200);
        const double corner = std::abs(p.a / spec.beta_ratio);
        for (std::size_t k = 0; k < h.size(); ++k) {
            const double kk = static_cast<double>(k);
            const double bound = (kk + 1.0) * std::abs(spec.xi_p) + kk * corner;
            std::ostringstream where;
            where << "trial " << t << " k " << k;
            record(r, std::abs(h.p(k)) / (bound * (1.0 + 1e-9) + 1e-300), where.str());
        }
    }
    for (int n = 0; n <= 100; ++n) {
        for (int i = 0; i <= 40; ++i) {
            const double theta = 0.1 + (std::numbers::pi - 0.2) * i / 40.0;
            const double lhs = polycore::cheb_eval(polycore::ChebyshevKind::second, n, std::cos(theta)) * std::sin(theta);
            record(r, std::abs(lhs - std::sin((n + 1) * theta)) / 1e-10, "chebyshev sine identity n " + std::to_string(n));
        }
    }
    return r;
}

PropertyResult similarity_invariance(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int t = 0; t < trials; ++t) {
        const auto p = random_params(rng);
        for (std::size_t n : {9u, 20u, 41u}) {
            const auto pairs = toeplitz2::eigen_all(p, n, 1);
            const auto dense = dense_symmetric_eigenvalues(toeplitz2::build_perturbed(p, n));
            for (std::size_t i = 0; i < n; ++i) {
                const double scale = std::max(1.0, std::abs(dense[i]));
                record(r, std::abs(pairs[i].lambda - dense[i]) / (1e-10 * scale),
                       "trial " + std::to_string(t) + " n " + std::to_string(n));
            }
        }
    }
    return r;
}

PropertyResult mirror_conjugation(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int t = 0; t < trials; ++t) {
        const auto p = random_params(rng);
        const std::size_t n = 2 + rng() % 40;
        const bool equal =
            toeplitz2::build_perturbed(mirror_params(p, n), n) == toeplitz2::build_perturbed(p, n).reversed();
        record(r, equal ? 0.0 : 2.0, "trial " + std::to_string(t) + " n " + std::to_string(n));
    }
    return r;
}

PropertyResult symbol_identities(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int t = 0; t < trials; ++t) {
        const auto p = random_params(rng);
        const auto loops = spectral::eig_curves(p, 256);
        const auto det = spectral::det_curve(p, 256);
        for (std::size_t k = 0; k < det.points.size(); ++k) {
            const auto e1 = loops.first.points[k];
            const auto e2 = loops.second.points[k];
            const double size = std::max({1.0, std::abs(e1), std::abs(e2)});
            const std::string where = "trial " + std::to_string(t) + " sample " + std::to_string(k);
            record(r, std::abs(e1 + e2 - (p.alpha1 + p.alpha2)) / (1e-10 * size), where);
            record(r, std::abs(e1 * e2 - det.points[k]) / (1e-10 * size * size), where);
        }
    }
    return r;
}

PropertyResult sigma_min_vs_svd(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int t = 0; t < trials; ++t) {
        TridiagonalMatrix m;
        for (int i = 0; i < 8; ++i) m.diag.push_back(uniform(rng, -2.0, 2.0));
        for (int i = 0; i < 7; ++i) {
            m.super.push_back(uniform(rng, -2.0, 2.0));
            m.sub.push_back(uniform(rng, -2.0, 2.0));
        }
        for (int k = 0; k < 5; ++k) {
            const std::complex<double> z(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
            const double ours = spectral::sigma_min(m, z);
            const double dense = dense_sigma_min(m, z);
            record(r, std::abs(ours - dense) / (1e-6 * std::max(dense, 1e-300)), "trial " + std::to_string(t));
        }
    }
    return r;
}

}  // namespace testsupport
