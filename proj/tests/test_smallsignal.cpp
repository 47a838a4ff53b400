#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "chay/channels.hpp"
#include "chay/equilibrium.hpp"
#include "chay/kinetics.hpp"
#include "chay/smallsignal.hpp"

using namespace chay;
using cd = std::complex<double>;

namespace {

double central(auto f, double x, double h = 1e-6) { return (f(x + h) - f(x - h)) / (2.0 * h); }

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

// Polynomials as coefficient vectors, lowest degree first.
using Poly = std::vector<double>;

Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly add(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

} // namespace

TEST_CASE("mixed element slope matches a finite difference of its current") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> V(-60.0, 0.0);
    const ChayParams p;
    for (int t = 0; t < 20; ++t) {
        const double Vm = V(rng);
        const auto lin = mixed_linearization(Vm);
        const auto e = ChannelElement::mixed(p);
        const double fd = central([&](double v) { return element_current(e, v); }, Vm - p.E_I);
        CHECK(rel_close(lin.a12, fd, 1e-5));
        if (!lin.infinite_resistance) CHECK(lin.R2 * lin.a12 == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("mixed element has a negative-slope interval") {
    bool negative = false, positive = false;
    for (double V = -80.0; V <= 40.0; V += 0.5) {
        const double a12 = mixed_linearization(V).a12;
        negative = negative || a12 < 0.0;
        positive = positive || a12 > 0.0;
    }
    CHECK(negative);
    CHECK(positive);
}

TEST_CASE("KV linearization") {
    const ChayParams p;
    for (double Vm : {-60.0, -50.0, -35.0, -20.0, 10.0}) {
        const auto lin = kv_linearization(Vm);
        const auto k = gate_kinetics(Vm);
        CHECK(lin.b11 == doctest::Approx(-p.lambda_n * (k.alpha_n + k.beta_n)));
        CHECK(lin.b11 < 0.0);
        CHECK(lin.a12 == doctest::Approx(p.g_KV * std::pow(k.n_inf, 4)));
        const double fd =
            central([&](double v) { return element_state_rate(ChannelElement::kv(p, k.n_inf), v); }, Vm - p.E_K);
        CHECK(rel_close(lin.b12, fd, 1e-5));
        // a11 is d i / d n at fixed v.
        const double a11 = central([&](double n) { return element_current(ChannelElement::kv(p, n), Vm - p.E_K); },
                                   k.n_inf);
        CHECK(rel_close(lin.a11, a11, 1e-6));
        CHECK(lin.L == doctest::Approx(1.0 / (lin.a11 * lin.b12)));
        CHECK(lin.R1 == doctest::Approx(-lin.b11 / (lin.a11 * lin.b12)));
    }
    CHECK(std::abs(kv_linearization(-50.0).a12 - 1700.0 * std::pow(0.089, 4)) < 2e-3);
    CHECK(kv_linearization(p.E_K).degenerate);
}

TEST_CASE("KCa linearization") {
    const ChayParams p;
    for (double Vm : {-55.0, -40.0, -26.0}) {
        for (double g : {-20.0, 10.0}) {
            const auto lin = kca_linearization(Vm, g);
            CHECK(lin.b11 == doctest::Approx(-0.0495).epsilon(1e-15));
            const double ca = equilibrium_gates(Vm).ca_hat;
            const double fd =
                central([&](double v) { return element_state_rate(ChannelElement::kca(p, ca), v); }, Vm - p.E_K);
            CHECK(rel_close(lin.b12, fd, 1e-5));
            CHECK((lin.a11 > 0.0) == (g * (Vm - p.E_K) > 0.0));
        }
    }
    CHECK(kca_linearization(p.E_K, 10.0).degenerate);
}

TEST_CASE("element circuit equals its partial fractions") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (double Vm : {-50.0, -30.0}) {
        for (const auto& lin : {kv_linearization(Vm), kca_linearization(Vm, 12.0)}) {
            for (int t = 0; t < 10; ++t) {
                const cd s(u(rng), u(rng));
                const cd pf = lin.a12 + lin.a11 * lin.b12 / (s - lin.b11);
                CHECK(std::abs(lin.admittance(s) - pf) <= 1e-12 * std::abs(pf));
            }
        }
    }
}

TEST_CASE("coefficients reproduce the expanded circuit") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> V(-55.0, -22.0), g(-40.0, 40.0);
    const ChayParams p;
    for (int t = 0; t < 5; ++t) {
        const double Vm = V(rng), gk = g(rng);
        const auto Y = composite_admittance(Vm, gk);
        const auto e = linearize_all(Vm, gk);
        // Y = C s + g_L + 1/R_I + sum over memristors of [1/R2 + 1/(L s + R1)], over the
        // common denominator R_I R2_KV R2_KCa (L_KV s + R1_KV)(L_KCa s + R1_KCa).
        const Poly zKV{e.kv.R1, e.kv.L}, zKCa{e.kca.R1, e.kca.L};
        const double RI = e.mixed.R2, R2v = e.kv.R2, R2c = e.kca.R2;
        const Poly den = mul(mul(zKV, zKCa), Poly{RI * R2v * R2c});
        Poly num = mul(den, Poly{p.g_L + 1.0 / RI + 1.0 / R2v + 1.0 / R2c, p.C_m});
        num = add(num, mul(zKCa, Poly{RI * R2v * R2c}));
        num = add(num, mul(zKV, Poly{RI * R2v * R2c}));
        CHECK(rel_close(Y.a[0], den[2], 1e-10));
        CHECK(rel_close(Y.a[1], den[1], 1e-10));
        CHECK(rel_close(Y.a[2], den[0], 1e-10));
        for (std::size_t k = 0; k < 4; ++k) CHECK(rel_close(Y.b[k], num[3 - k], 1e-10));
        CHECK(Y.high_frequency_capacitance() == doctest::Approx(p.C_m).epsilon(1e-14));
    }
}

TEST_CASE("rational form agrees with the parallel sum") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> V(-60.0, -10.0), g(-60.0, 60.0);
    const cd s(1.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const double Vm = V(rng), gk = g(rng);
        const cd direct = direct_admittance(Vm, gk, s);
        CHECK(std::abs(composite_admittance(Vm, gk)(s) - direct) <= 1e-10 * std::abs(direct));
    }
}

TEST_CASE("DC admittance is the slope of the DC curve") {
    for (double Vm = -54.0; Vm <= -23.0; Vm += 3.4) {
        const double g = gkca_at_equilibrium(Vm);
        const auto Y = composite_admittance(Vm, g);
        const double slope = central([&](double v) { return dc_current(v, g); }, Vm, 1e-5);
        CHECK(rel_close(Y.dc_value(), slope, 1e-6));
    }
}

TEST_CASE("high-frequency limit") {
    const auto Y = composite_admittance(-40.0, gkca_at_equilibrium(-40.0));
    const cd s(1e9, 0.0);
    CHECK(std::abs(Y(s) / s - 1.0) < 1e-6);
}

TEST_CASE("closed-form frequency response") {
    const auto Y = composite_admittance(-26.75527972, -7.79022731);
    const auto f0 = frequency_response(Y, 0.0);
    CHECK(f0.re == doctest::Approx(Y.dc_value()));
    CHECK(f0.im == 0.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> lw(-3.0, 6.0);
    double lowest = INFINITY;
    for (int t = 0; t < 200; ++t) {
        const double w = std::pow(10.0, lw(rng));
        const auto f = frequency_response(Y, w);
        const cd z = Y(cd(0.0, w));
        CHECK(std::abs(f.re - z.real()) <= 1e-12 * std::abs(z));
        CHECK(std::abs(f.im - z.imag()) <= 1e-12 * std::abs(z));
        const cd zm = Y(cd(0.0, -w));
        CHECK(zm.real() == doctest::Approx(z.real()).epsilon(1e-13));
        CHECK(zm.imag() == doctest::Approx(-z.imag()).epsilon(1e-13));
        lowest = std::min(lowest, f.re);
    }
    for (const auto& f : frequency_sweep(Y)) lowest = std::min(lowest, f.re);
    CHECK(lowest < 0.0);
}

TEST_CASE("sweep grid and errors") {
    const auto w = log_grid(1e-3, 1e6, kSweepPoints);
    REQUIRE(w.size() == 600);
    CHECK(w.front() == doctest::Approx(1e-3));
    CHECK(w.back() == doctest::Approx(1e6));
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), ConfigError);
    CHECK_THROWS_AS(composite_admittance(-75.0, 10.0), SingularError);
    RationalAdmittance bad;
    bad.a = {1.0, 0.0, 4.0};
    bad.b = {1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(frequency_response(bad, 2.0), SingularError);
}
