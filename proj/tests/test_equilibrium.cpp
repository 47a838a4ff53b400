#include <doctest.h>

#include <cmath>
#include <random>

#include "chay/equilibrium.hpp"
#include "chay/kinetics.hpp"

using namespace chay;

TEST_CASE("equilibrium gates") {
    const auto q50 = equilibrium_gates(-50.0);
    CHECK(std::abs(q50.n_hat - 0.089) <= 1e-3);
    CHECK(std::abs(q50.ca_hat - 0.072) <= 1e-3);
    const auto q26 = equilibrium_gates(-26.75527972);
    CHECK(std::abs(q26.n_hat - 0.368) <= 1e-3);
    CHECK(std::abs(q26.ca_hat - 3.948) <= 1e-3);
    CHECK(equilibrium_gates(100.0).ca_hat == 0.0);
    CHECK(equilibrium_gates(110.0).negative_calcium);
    CHECK_FALSE(equilibrium_gates(-40.0).negative_calcium);
}

TEST_CASE("DC current vanishes on the tabulated locus") {
    CHECK(std::abs(dc_current(-50.0, 54.068)) < 1e-2);
    CHECK(std::abs(dc_current(-40.0, 12.766)) < 1e-2);
}

TEST_CASE("DC current is affine in g_KCa") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> V(-80.0, 40.0), g(-100.0, 100.0);
    const ChayParams p;
    for (int t = 0; t < 20; ++t) {
        const double v = V(rng), g1 = g(rng), g2 = g(rng);
        const double ca = equilibrium_gates(v).ca_hat;
        const double lhs = dc_current(v, g1) - dc_current(v, g2);
        const double rhs = (g1 - g2) * ca / (1.0 + ca) * (v - p.E_K);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({1.0, std::abs(dc_current(v, g1)), std::abs(dc_current(v, g2))}));
    }
}

TEST_CASE("closed-form inversion") {
    CHECK(std::abs(gkca_at_equilibrium(-50.0) - 54.068) < 0.01);
    CHECK(std::abs(gkca_at_equilibrium(-26.75527972) + 7.79022731) < 1e-4);
    CHECK(std::abs(gkca_at_equilibrium(-47.5332788572) - 27.25111606) < 1e-4);
    CHECK_THROWS_AS(gkca_at_equilibrium(-75.0), SingularError);
    CHECK_THROWS_AS(gkca_at_equilibrium(100.0), SingularError);
}

TEST_CASE("equilibria assembled from the inversion have tiny residual") {
    for (double V = -55.0; V <= -20.0; V += 0.25) {
        const auto q = equilibrium_at(V);
        CHECK(q.residual < 1e-9 * 1700.0);
        CHECK(q.n == gate_kinetics(V).n_inf);
    }
}

TEST_CASE("solve_v") {
    const auto r = solve_v(0.0, 10.0, -60.0, -20.0);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(gkca_at_equilibrium(r[0]) - 10.0) < 1e-6);
    CHECK(std::abs(dc_current(r[0], 10.0)) < 1e-9);

    const auto r50 = solve_v(0.0, 54.068, -55.0, -45.0);
    REQUIRE(r50.size() == 1);
    CHECK(std::abs(r50[0] + 50.0) < 1e-4);

    CHECK(solve_v(1e6, 10.0, -60.0, -20.0).empty());
    CHECK_THROWS_AS(solve_v(0.0, 10.0, -INFINITY, 0.0), DomainError);
}

TEST_CASE("root count equals a dense scan's sign changes") {
    for (double g : {-40.0, -10.0, 0.0, 10.0, 30.0}) {
        for (double I : {-80.0, -20.0, 0.0, 20.0, 80.0}) {
            const double lo = -80.0, hi = 40.0;
            int changes = 0;
            double prev = dc_current(lo, g) - I;
            for (int k = 1; k < 10000; ++k) {
                const double f = dc_current(lo + (hi - lo) * k / 9999.0, g) - I;
                changes += (f < 0.0) != (prev < 0.0);
                prev = f;
            }
            CHECK(solve_v(I, g, lo, hi).size() == static_cast<std::size_t>(changes));
        }
    }
}

TEST_CASE("round trip through the locus") {
    for (double V = -55.0; V <= -22.0; V += 0.5) {
        const auto roots = solve_v(0.0, gkca_at_equilibrium(V), V - 1.0, V + 1.0);
        bool found = false;
        for (double r : roots) found = found || std::abs(r - V) < 1e-8;
        CHECK(found);
    }
}

TEST_CASE("curves") {
    const auto c = dc_curve(10.0, -80.0, 40.0, 2);
    REQUIRE(c.size() == 2);
    CHECK(c.front().value == dc_current(-80.0, 10.0));
    CHECK(c.back().value == dc_current(40.0, 10.0));
    const auto a = dc_curve(10.0, -80.0, 40.0, 301), b = dc_curve(10.0, -80.0, 40.0, 301);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].value == b[k].value);
    CHECK_THROWS_AS(dc_curve(10.0, -80.0, 40.0, 1), ConfigError);

    const auto locus = gkca_curve(-80.0, -70.0, 3);  // passes through E_K
    CHECK(std::isnan(locus[1].value));
    CHECK(std::isfinite(locus[0].value));
}
