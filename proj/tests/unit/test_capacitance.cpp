#include <catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "skinspec/capacitance.hpp"
#include "skinspec/error.hpp"
#include "skinspec/toeplitz2.hpp"

using namespace skinspec;
using namespace skinspec::capacitance;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Dense C with row i using its own length and potential.
std::vector<std::vector<double>> dense_capacitance(const ResonatorChain& c) {
    const std::size_t n = c.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double gl = c.gammas[i] * c.lengths[i];
        if (i + 1 < n) m[i][i + 1] = -gl / (c.spacings[i] * (1.0 - std::exp(-gl)));
        if (i > 0) m[i][i - 1] = gl / (c.spacings[i - 1] * (1.0 - std::exp(gl)));
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m[i][j];
        m[i][i] = -row;
    }
    return m;
}

}  // namespace

TEST_CASE("chain validation") {
    ResonatorChain c;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = ResonatorChain::dimer(3, 1.0, 1.0, 2.0, 1.0);
    CHECK_NOTHROW(c.validate());
    CHECK(c.spacings == std::vector<double>{1.0, 2.0});
    CHECK(c.left_edges() == std::vector<double>{0.0, 2.0, 5.0});
    CHECK(c.right_edges() == std::vector<double>{1.0, 3.0, 6.0});
    c.gammas[1] = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.gammas[1] = 1.0;
    c.delta = 1.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.delta = 1e-3;
    c.spacings.pop_back();
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("two-resonator capacitance") {
    const auto c = gauge_capacitance(ResonatorChain::dimer(2, 1.0, 1.0, 1.0, 1.0));
    const double e = std::exp(-1.0);
    CHECK_THAT(c.diag[0], WithinRel(1.0 / (1.0 - e), 1e-14));
    CHECK_THAT(c.super[0], WithinRel(-1.0 / (1.0 - e), 1e-14));
    CHECK_THAT(c.sub[0], WithinRel(1.0 / (1.0 - std::exp(1.0)), 1e-14));
    CHECK_THAT(c.diag[1], WithinRel(-1.0 / (1.0 - std::exp(1.0)), 1e-14));
}

TEST_CASE("capacitance matches the dense oracle and has the constant kernel") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const auto chain = testsupport::random_chain(rng);
        const auto c = gauge_capacitance(chain);
        const auto dense = dense_capacitance(chain);
        const double scale = c.inf_norm();
        for (std::size_t i = 0; i < chain.size(); ++i) {
            CHECK_THAT(c.diag[i], WithinAbs(dense[i][i], 1e-13 * scale));
            if (i + 1 < chain.size()) {
                CHECK_THAT(c.super[i], WithinAbs(dense[i][i + 1], 1e-13 * scale));
                CHECK_THAT(c.sub[i], WithinAbs(dense[i + 1][i], 1e-13 * scale));
                CHECK(c.super[i] < 0.0);
                CHECK(c.sub[i] < 0.0);
            }
        }
        const auto image = c.multiply(std::vector<double>(chain.size(), 1.0));
        CHECK(sup_norm(image) <= 1e-12 * scale);
    }
}

TEST_CASE("generalized capacitance scales rows by length") {
    ResonatorChain chain;
    chain.lengths = {1.0, 2.0, 0.5, 1.5};
    chain.spacings = {0.7, 1.3, 0.4};
    chain.gammas = {1.0, -0.5, 2.0, 0.3};
    const auto g = generalized_capacitance(chain);
    const auto dense = dense_capacitance(chain);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK_THAT(g.diag[i], WithinRel(dense[i][i] / chain.lengths[i], 1e-14));
        if (i + 1 < 4) {
            CHECK_THAT(g.super[i], WithinRel(dense[i][i + 1] / chain.lengths[i], 1e-14));
            CHECK_THAT(g.sub[i], WithinRel(dense[i + 1][i] / chain.lengths[i + 1], 1e-14));
        }
    }
}

TEST_CASE("dimer coefficients reproduce the capacitance matrix") {
    for (std::size_t n : {2u, 3u, 10u, 11u, 50u}) {
        for (double gamma : {1.0, -0.7}) {
            const auto chain = ResonatorChain::dimer(n, 1.3, 0.8, 1.9, gamma);
            REQUIRE(is_dimer(chain));
            const auto p = dimer_coefficients(chain);
            const auto c = gauge_capacitance(chain);
            const auto t = toeplitz2::build_perturbed(p, n);
            const double scale = c.inf_norm();
            for (std::size_t i = 0; i < n; ++i) CHECK_THAT(t.diag[i], WithinAbs(c.diag[i], 1e-13 * scale));
            for (std::size_t i = 0; i + 1 < n; ++i) {
                CHECK_THAT(t.super[i], WithinAbs(c.super[i], 1e-13 * scale));
                CHECK_THAT(t.sub[i], WithinAbs(c.sub[i], 1e-13 * scale));
            }
            CHECK_THAT(p.gamma1 / p.beta1, WithinRel(std::exp(-gamma * 1.3), 1e-13));
            CHECK_THAT(skin_ratio(p), WithinRel(std::exp(-gamma * 1.3), 1e-13));
        }
    }
    auto broken = ResonatorChain::dimer(6, 1.0, 1.0, 2.0, 1.0);
    broken.lengths[3] = 1.1;
    CHECK_FALSE(is_dimer(broken));
    CHECK_THROWS_AS(dimer_coefficients(broken), InvalidArgument);
}

TEST_CASE("interface chain") {
    const auto c = interface_chain(4, 1.0, 1.0, 1.0, 2.0);
    CHECK(c.gammas == std::vector<double>{-1, -1, 1, 1});
    CHECK(c.spacings == std::vector<double>{1.0, 2.0, 1.0});
    CHECK_THROWS_AS(interface_chain(5, 1.0, 1.0, 1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(interface_chain(6, -1.0, 1.0, 1.0, 2.0), InvalidArgument);

    const std::size_t m = 7;
    const auto chain = interface_chain(4 * m + 2, 0.8, 1.0, 1.0, 2.0);
    auto cap = gauge_capacitance(chain);
    const auto& sp = chain.spacings;
    for (std::size_t i = 0; i < sp.size(); ++i) CHECK(sp[i] == sp[sp.size() - 1 - i]);
    // Each half is a dimer block with its own corner.
    const double ratio = std::exp(-0.8);
    CHECK_THAT(cap.sub.back() / cap.super.back(), WithinRel(ratio, 1e-12));
    CHECK_THAT(cap.super.front() / cap.sub.front(), WithinRel(ratio, 1e-12));
}

TEST_CASE("subwavelength frequencies") {
    const auto chain = ResonatorChain::dimer(20, 1.0, 1.0, 2.0, 1.0);
    const auto r = subwavelength_frequencies(chain);
    REQUIRE(r.eigenvalues.size() == 20);
    CHECK(r.eigenvalues.front() == 0.0);
    CHECK(r.negative_eigenvalues.empty());
    REQUIRE(r.omegas.size() == 20);
    CHECK(r.omegas.front() == 0.0);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK_THAT(r.omegas[i], WithinRel(std::sqrt(chain.delta * r.eigenvalues[i]), 1e-14));
    }
    const auto dense = testsupport::dense_symmetric_eigenvalues(generalized_capacitance(chain));
    for (std::size_t i = 1; i < 20; ++i) CHECK_THAT(r.eigenvalues[i], WithinRel(dense[i], 1e-10));
}

TEST_CASE("mode profiles") {
    const auto chain = ResonatorChain::dimer(3, 1.0, 1.0, 2.0, 1.0);
    const std::vector<double> tent{0.0, 1.0, 0.0};
    const auto p = mode_profile(chain, tent, 4);
    REQUIRE(p.xs.size() == p.values.size());
    REQUIRE(p.xs.size() == p.resonator_index_map.size());
    CHECK(std::is_sorted(p.xs.begin(), p.xs.end()));
    for (std::size_t k = 0; k < p.xs.size(); ++k) {
        const double x = p.xs[k];
        double expected = 0.0;
        if (x >= 2.0 && x <= 3.0) expected = 1.0;
        else if (x > 1.0 && x < 2.0) expected = x - 1.0;
        else if (x > 3.0 && x < 5.0) expected = (5.0 - x) / 2.0;
        CHECK_THAT(p.values[k], WithinAbs(expected, 1e-14));
        if (p.resonator_index_map[k] >= 0) {
            const int idx = p.resonator_index_map[k];
            CHECK(x >= chain.left_edges()[idx]);
            CHECK(x <= chain.right_edges()[idx]);
        }
    }
    CHECK(p.xs.front() == -1.0);
    CHECK(p.xs.back() == 8.0);

    const auto flat = mode_profile(chain, std::vector<double>(3, 2.5), 3);
    for (double v : flat.values) CHECK(v == 2.5);
    CHECK_THROWS_AS(mode_profile(chain, tent, 0), InvalidArgument);
    CHECK_THROWS_AS(mode_profile(chain, std::vector<double>(2, 1.0), 4), InvalidArgument);
}

TEST_CASE("dimer modes are skin localized") {
    const auto chain = ResonatorChain::dimer(40, 1.0, 1.0, 2.0, 1.0);
    const auto p = dimer_coefficients(chain);
    std::size_t localized = 0;
    for (const auto& e : toeplitz2::eigen_all(p, 40)) {
        if (e.klass != toeplitz2::EigenClass::bulk) continue;
        const auto rep = toeplitz2::decay_report(e.vector, p);
        CHECK(rep.satisfied);
        CHECK_THAT(rep.rate_fit, WithinAbs(-1.0, 0.06));
        ++localized;
    }
    CHECK(localized == 39);
}
