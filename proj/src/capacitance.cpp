#include "skinspec/capacitance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skinspec/error.hpp"
#include "skinspec/oracle.hpp"

namespace skinspec::capacitance {

namespace {

void require_positive_finite(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be positive and finite");
    }
}

// Super-diagonal coupling -g l / (s (1 - e^{-g l})); negative for every g != 0.
double forward_coupling(double gamma, double ell, double spacing) {
    return -(gamma * ell) / (spacing * -std::expm1(-gamma * ell));
}

// Sub-diagonal coupling g l / (s (1 - e^{g l})); negative for every g != 0.
double backward_coupling(double gamma, double ell, double spacing) {
    return (gamma * ell) / (spacing * -std::expm1(gamma * ell));
}

bool nearly_equal(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
}

}  // namespace

void ResonatorChain::validate() const {
    const std::size_t n = lengths.size();
    if (n == 0) {
        throw InvalidArgument("resonator chain needs at least one resonator");
    }
    if (gammas.size() != n) {
        throw InvalidArgument("need one gauge potential per resonator (" + std::to_string(n) + "), got " +
                              std::to_string(gammas.size()));
    }
    if (spacings.size() + 1 != n) {
        throw InvalidArgument("need N-1 = " + std::to_string(n - 1) + " spacings, got " +
                              std::to_string(spacings.size()));
    }
    for (double l : lengths) require_positive_finite(l, "resonator length");
    for (double s : spacings) require_positive_finite(s, "spacing");
    for (double g : gammas) {
        if (g == 0.0 || !std::isfinite(g)) {
            throw InvalidArgument("gauge potential must be finite and nonzero");
        }
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InvalidArgument("contrast delta must lie in (0, 1)");
    }
    require_positive_finite(v, "v");
    require_positive_finite(v_b, "v_b");
}

std::vector<double> ResonatorChain::left_edges() const {
    std::vector<double> xs(lengths.size());
    double x = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        xs[i] = x;
        x += lengths[i];
        if (i < spacings.size()) x += spacings[i];
    }
    return xs;
}

std::vector<double> ResonatorChain::right_edges() const {
    auto xs = left_edges();
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += lengths[i];
    return xs;
}

ResonatorChain ResonatorChain::dimer(std::size_t n, double ell, double s1, double s2, double gamma) {
    if (n == 0) {
        throw InvalidArgument("dimer chain needs at least one resonator");
    }
    ResonatorChain chain;
    chain.lengths.assign(n, ell);
    chain.gammas.assign(n, gamma);
    chain.spacings.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) chain.spacings[i] = i % 2 == 0 ? s1 : s2;
    chain.validate();
    return chain;
}

TridiagonalMatrix gauge_capacitance(const ResonatorChain& chain) {
    chain.validate();
    const std::size_t n = chain.size();
    TridiagonalMatrix c;
    c.diag.assign(n, 0.0);
    c.super.resize(n - 1);
    c.sub.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = chain.gammas[i];
        const double l = chain.lengths[i];
        if (i + 1 < n) {
            c.super[i] = forward_coupling(g, l, chain.spacings[i]);
            c.diag[i] -= c.super[i];
        }
        if (i > 0) {
            c.sub[i - 1] = backward_coupling(g, l, chain.spacings[i - 1]);
            c.diag[i] -= c.sub[i - 1];
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(c.super[i] * c.sub[i] > 0.0)) {
            throw NumericalError("capacitance band product at " + std::to_string(i) + " is not positive");
        }
    }
    return c;
}

TridiagonalMatrix generalized_capacitance(const ResonatorChain& chain) {
    TridiagonalMatrix c = gauge_capacitance(chain);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const double inv = 1.0 / chain.lengths[i];
        c.diag[i] *= inv;
        if (i + 1 < chain.size()) c.super[i] *= inv;
        if (i > 0) c.sub[i - 1] *= inv;
    }
    return c;
}

bool is_dimer(const ResonatorChain& chain) {
    chain.validate();
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (!nearly_equal(chain.lengths[i], chain.lengths[0]) || !nearly_equal(chain.gammas[i], chain.gammas[0])) {
            return false;
        }
    }
    for (std::size_t i = 0; i + 2 < chain.spacings.size(); ++i) {
        if (!nearly_equal(chain.spacings[i], chain.spacings[i + 2])) return false;
    }
    return true;
}

PerturbedDimerParams dimer_coefficients(const ResonatorChain& chain) {
    if (!is_dimer(chain)) {
        throw InvalidArgument("chain is not a dimer system (constant length and gamma, period-2 spacings)");
    }
    const std::size_t n = chain.size();
    if (n < 2) {
        throw InvalidArgument("dimer coefficients need at least two resonators");
    }
    const double g = chain.gammas[0];
    const double l = chain.lengths[0];
    const double s1 = chain.spacings[0];
    const double s2 = chain.spacings.size() > 1 ? chain.spacings[1] : s1;

    PerturbedDimerParams p;
    p.beta1 = forward_coupling(g, l, s1);
    p.beta2 = forward_coupling(g, l, s2);
    p.gamma1 = backward_coupling(g, l, s1);
    p.gamma2 = backward_coupling(g, l, s2);
    p.alpha1 = -p.beta1 - p.gamma2;
    p.alpha2 = -p.beta2 - p.gamma1;

    const TridiagonalMatrix c = gauge_capacitance(chain);
    p.a = c.diag.front() - p.alpha1;
    p.b = c.diag.back() - (n % 2 == 1 ? p.alpha1 : p.alpha2);
    return p;
}

ResonatorChain interface_chain(std::size_t n, double gamma, double ell, double s1, double s2) {
    if (n < 2 || n % 2 != 0) {
        throw InvalidArgument("interface chain needs an even number of resonators, got " + std::to_string(n));
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument("interface gauge potential must be positive");
    }
    const std::size_t m = n / 2;
    ResonatorChain chain;
    chain.lengths.assign(n, ell);
    chain.gammas.resize(n);
    for (std::size_t i = 0; i < n; ++i) chain.gammas[i] = i < m ? -gamma : gamma;
    chain.spacings.resize(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t offset = i > m ? i - m : m - i;
        chain.spacings[i - 1] = offset % 2 == 0 ? s2 : s1;
    }
    chain.validate();
    return chain;
}

FrequencyReport subwavelength_frequencies(const ResonatorChain& chain) {
    const TridiagonalMatrix c = gauge_capacitance(chain);
    const TridiagonalMatrix m = generalized_capacitance(chain);
    FrequencyReport report;
    report.eigenvalues = oracle::sturm_eigenvalues(oracle::symmetrize(m), 1e-15);
    const double zero = kZeroEigenvalueTolerance * c.inf_norm();
    for (double& lambda : report.eigenvalues) {
        if (std::abs(lambda) <= zero) lambda = 0.0;
        if (lambda < 0.0) {
            report.negative_eigenvalues.push_back(lambda);
        } else {
            report.omegas.push_back(chain.v_b * std::sqrt(chain.delta * lambda));
        }
    }
    return report;
}

ModeProfile mode_profile(const ResonatorChain& chain, std::span<const double> eigvec, std::size_t samples_per_gap) {
    chain.validate();
    const std::size_t n = chain.size();
    if (eigvec.size() != n) {
        throw InvalidArgument("mode vector has length " + std::to_string(eigvec.size()) + ", chain has " +
                              std::to_string(n) + " resonators");
    }
    if (samples_per_gap == 0) {
        throw InvalidArgument("samples_per_gap must be positive");
    }
    const auto left = chain.left_edges();
    const auto right = chain.right_edges();
    const double first_gap = chain.spacings.empty() ? chain.lengths.front() : chain.spacings.front();
    const double last_gap = chain.spacings.empty() ? chain.lengths.back() : chain.spacings.back();
    const double steps = static_cast<double>(samples_per_gap);

    ModeProfile profile;
    auto emit = [&](double x, double value, int index) {
        profile.xs.push_back(x);
        profile.values.push_back(value);
        profile.resonator_index_map.push_back(index);
    };

    for (std::size_t k = 0; k < samples_per_gap; ++k) {
        emit(left.front() - first_gap + first_gap * static_cast<double>(k) / steps, eigvec.front(), -1);
    }
    for (std::size_t j = 0; j < n; ++j) {
        emit(left[j], eigvec[j], static_cast<int>(j));
        emit(right[j], eigvec[j], static_cast<int>(j));
        if (j + 1 < n) {
            const double width = chain.spacings[j];
            for (std::size_t k = 1; k <= samples_per_gap; ++k) {
                const double t = static_cast<double>(k) / (steps + 1.0);
                emit(right[j] + width * t, (1.0 - t) * eigvec[j] + t * eigvec[j + 1], -1);
            }
        }
    }
    for (std::size_t k = 1; k <= samples_per_gap; ++k) {
        emit(right.back() + last_gap * static_cast<double>(k) / steps, eigvec.back(), -1);
    }
    return profile;
}

}  // namespace skinspec::capacitance
