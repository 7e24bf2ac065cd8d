#include <catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "skinspec/capacitance.hpp"
#include "skinspec/error.hpp"
#include "skinspec/oracle.hpp"
#include "skinspec/polycore.hpp"
#include "skinspec/toeplitz2.hpp"

using namespace skinspec;
using namespace skinspec::toeplitz2;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("build_perturbed layout") {
    const auto p = testsupport::showcase_params();
    const auto t3 = build_perturbed(p, 3);
    CHECK(t3.diag == std::vector<double>{10, 2, 11});
    CHECK(t3.super == std::vector<double>{3, 4});
    CHECK(t3.sub == std::vector<double>{4, 5});

    PerturbedDimerParams q = p;
    q.a = q.b = 0;
    CHECK(build_perturbed(q, 5).diag == std::vector<double>{1, 2, 1, 2, 1});
    CHECK(build_perturbed(p, 4).diag.back() == 12.0);
    CHECK_THROWS_AS(build_perturbed(p, 1), InvalidArgument);
}

TEST_CASE("characteristic polynomial") {
    PerturbedDimerParams p = testsupport::showcase_params();
    PerturbedDimerParams q = p;
    q.a = q.b = 0;
    CHECK(char_poly(q, 7, q.alpha1) == 0.0);

    for (double x : {-3.0, 0.0, 0.7, 5.0}) {
        CHECK_THAT(char_poly(p, 2, x), WithinAbs((x - p.alpha1 - p.a) * (x - p.alpha2 - p.b) - p.beta1 * p.gamma1, 1e-9));
    }

    const auto t5 = build_perturbed(p, 5);
    for (double x : {-4.0, -1.0, 0.5, 2.0, 6.5, 11.6, 14.0}) {
        const double ref = static_cast<double>(testsupport::minor_recurrence_det(t5, x));
        CHECK_THAT(char_poly(p, 5, x), WithinAbs(ref, 1e-10 * std::abs(ref) + 1e-12 * std::pow(t5.inf_norm(), 5)));
    }

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = testsupport::random_params(rng);
        for (std::size_t n : {6u, 9u, 12u}) {
            const auto t = build_perturbed(r, n);
            for (double x : {-2.5, 0.3, 1.9}) {
                const double ref = static_cast<double>(testsupport::minor_recurrence_det(t, x));
                CHECK_THAT(char_poly(r, n, x), WithinAbs(ref, 1e-10 * std::abs(ref) + 1e-12 * std::pow(t.inf_norm(), n)));
            }
        }
    }
}

TEST_CASE("eigen_all small and showcase cases") {
    PerturbedDimerParams p{0, 0, 1, 1, 1, 1, 0, 0};
    const auto pairs = eigen_all(p, 2);
    REQUIRE(pairs.size() == 2);
    CHECK_THAT(pairs[0].lambda, WithinAbs(-1.0, 1e-14));
    CHECK_THAT(pairs[1].lambda, WithinAbs(1.0, 1e-14));
    CHECK_THAT(pairs[1].vector[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(pairs[1].vector[1], WithinAbs(1.0, 1e-12));

    const auto fig = eigen_all(testsupport::showcase_params(), 101);
    const bool found = std::any_of(fig.begin(), fig.end(), [](const Eigenpair& e) { return std::abs(e.lambda - 11.6217) < 1e-4; });
    CHECK(found);
    for (const auto& e : fig) {
        CHECK(e.residual <= 1e-9 * std::max(1.0, std::abs(e.lambda)));
        CHECK(e.klass == classify(e.mu).first);
        if (e.klass == EigenClass::bulk) {
            CHECK_THAT(std::cos(e.theta), WithinAbs(std::clamp(e.mu, -1.0, 1.0), 1e-12));
        } else {
            CHECK(std::isnan(e.theta));
        }
    }
    CHECK(std::is_sorted(fig.begin(), fig.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; }));
}

TEST_CASE("eigen_all against the oracle, n = 9") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = testsupport::random_params(rng);
        const auto t = build_perturbed(p, 9);
        const auto ref = oracle::sturm_eigenvalues(oracle::symmetrize(t), 1e-14);
        const auto pairs = eigen_all(p, 9);
        std::vector<double> lambdas;
        for (std::size_t i = 0; i < 9; ++i) {
            CHECK_THAT(pairs[i].lambda, WithinAbs(ref[i], 1e-10 * std::max(1.0, std::abs(ref[i]))));
            lambdas.push_back(pairs[i].lambda);
        }
        CHECK(check_brackets(p, 9, lambdas).violations == 0);
    }
}

TEST_CASE("closed-form eigenvectors") {
    PerturbedDimerParams p{0, 0, 1, 1, 1, 1, 0, 0};
    const auto v = eigenvector_exact(p, 2, 1.0);
    CHECK_THAT(v[0], WithinAbs(1.0, 1e-14));
    CHECK_THAT(v[1], WithinAbs(1.0, 1e-14));
    CHECK_THROWS_AS(eigenvector_exact(p, 2, 0.5), InvalidArgument);

    std::mt19937_64 rng(31);
    std::size_t compared = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = testsupport::random_params(rng);
        const auto t = build_perturbed(q, 11);
        for (const auto& e : eigen_all(q, 11)) {
            if (e.source != VectorSource::exact_forward) continue;
            const auto exact = eigenvector_exact(q, 11, e.lambda);
            const auto inv = oracle::inverse_iteration_vector(t, e.lambda);
            CHECK(testsupport::distance_up_to_sign(exact, inv) <= 1e-8);
            ++compared;
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("bulk eigenvectors satisfy the residual bound up to n = 201") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = testsupport::random_params(rng);
        for (std::size_t n : {50u, 201u}) {
            for (const auto& e : eigen_all(p, n)) {
                if (e.klass != EigenClass::bulk) continue;
                CHECK(e.residual <= 1e-9 * std::max(1.0, std::abs(e.lambda)));
            }
        }
    }
}

TEST_CASE("mirrored eigenvectors") {
    const auto p = testsupport::showcase_params();
    for (const auto& e : eigen_all(p, 3)) {
        const auto mirrored = mirrored_eigenvector(p, 3, e.lambda);
        auto direct = eigenvector_exact(p, 3, e.lambda);
        std::reverse(direct.begin(), direct.end());
        normalize_sup(direct);
        CHECK(testsupport::distance_up_to_sign(mirrored, direct) <= 1e-14);
    }

    PerturbedDimerParams pal{0.3, -1.1, 2.0, 0.7, 0.7, 2.0, 0.4, 0.4};
    REQUIRE(mirror_params(pal, 9) == pal);
    for (const auto& e : eigen_all(pal, 9)) {
        if (e.source != VectorSource::exact_forward) continue;
        auto reversed = e.vector;
        std::reverse(reversed.begin(), reversed.end());
        normalize_sup(reversed);
        CHECK(testsupport::distance_up_to_sign(mirrored_eigenvector(pal, 9, e.lambda), reversed) <= 1e-10);
    }

    const auto swapped = build_perturbed(mirror_params(p, 21), 21);
    std::size_t built = 0;
    for (const auto& e : eigen_all(p, 21)) {
        try {
            const auto w = mirrored_eigenvector(p, 21, e.lambda);
            const auto inv = oracle::inverse_iteration_vector(swapped, e.lambda);
            CHECK(testsupport::distance_up_to_sign(w, inv) <= 1e-8);
            ++built;
        } catch (const InvalidArgument&) {
        }
    }
    CHECK(built > 0);
}

TEST_CASE("interface matrix") {
    PerturbedDimerParams p{1, 2, 3, 4, 5, 6, 0, 0};
    const auto t = build_interface(p, 1, 0.5, 0.25);
    REQUIRE(t.order() == 6);
    CHECK(t.super[2] == p.gamma2);
    CHECK(t.sub[2] == p.gamma2);
    CHECK(t.diag == std::vector<double>{1.5, 2, 1, 1, 2, 1.25});
    CHECK_THROWS_AS(build_interface(p, 0, 0, 0), InvalidArgument);

    PerturbedDimerParams sym{1, 2, 3, 4, 3, 4, 0, 0};
    const auto s = build_interface(sym, 3, 0.7, 0.7);
    CHECK(s == s.reversed());
}

TEST_CASE("decay report") {
    PerturbedDimerParams p{0, 0, 2, 2, 1, 0.5, 0, 0};
    const double s = skin_ratio(p);
    std::vector<double> v(40);
    for (std::size_t j = 1; j <= v.size(); ++j) v[j - 1] = std::pow(s, static_cast<double>((j - 1) / 2));
    const auto r = decay_report(v, p);
    CHECK(r.satisfied);
    CHECK(r.bound_constant <= 1.0 + 1e-12);
    CHECK_THAT(r.rate_fit, WithinAbs(std::log(s), 1e-12));
    CHECK_THAT(r.rate_theory, WithinAbs(std::log(s), 1e-15));

    const std::vector<double> ones(40, 1.0);
    const auto flat = decay_report(ones, p);
    CHECK_FALSE(flat.satisfied);
    CHECK_THROWS_AS(decay_report(std::vector<double>(5, 0.0), p), InvalidArgument);

    const auto chain = capacitance::ResonatorChain::dimer(30, 1.0, 1.0, 2.0, 1.0);
    const auto cp = capacitance::dimer_coefficients(chain);
    for (const auto& e : eigen_all(cp, 30)) {
        if (e.klass != EigenClass::bulk) continue;
        const auto rep = decay_report(e.vector, cp);
        CHECK_THAT(rep.rate_theory, WithinAbs(-1.0, 1e-12));
        CHECK(rep.satisfied);
    }
}

TEST_CASE("interface localization check") {
    const std::size_t m = 30;
    std::vector<double> spike(60);
    for (std::size_t j = 1; j <= 60; ++j) spike[j - 1] = std::exp(-std::abs(double(m) - double(j)) / 2.0);
    const auto r = interface_localization_check(spike, m, 1.0);
    CHECK(r.satisfied);
    CHECK(r.peak_index == m);
    CHECK_THAT(r.rate_fit, WithinAbs(-0.5, 1e-12));
    CHECK_THAT(*r.rate_fit_left, WithinAbs(0.5, 1e-12));

    CHECK_FALSE(interface_localization_check(std::vector<double>(60, 1.0), m, 1.0).satisfied);
    CHECK_THROWS_AS(interface_localization_check(spike, 60, 1.0), InvalidArgument);
}

TEST_CASE("brackets and exceptional counts") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = testsupport::random_params(rng);
        for (std::size_t n : {41u, 81u, 101u, 100u}) {
            std::vector<double> lambdas;
            for (const auto& e : eigen_all(p, n)) lambdas.push_back(e.lambda);
            const auto r = check_brackets(p, n, lambdas);
            CHECK(r.violations == 0);
            CHECK(r.exceptional_count <= r.exceptional_limit);
        }
    }
}

TEST_CASE("similarity invariance and mirror conjugation") {
    const auto sim = testsupport::similarity_invariance(61, 10);
    INFO(sim.detail);
    CHECK(sim.ok);
    const auto mir = testsupport::mirror_conjugation(62, 100);
    INFO(mir.detail);
    CHECK(mir.ok);
}
