#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "chay/channels.hpp"
#include "chay/dynamics.hpp"
#include "chay/kinetics.hpp"

using namespace chay;

TEST_CASE("memductances") {
    const ChayParams p;
    CHECK(memductance_kv(0.0, p) == 0.0);
    CHECK(memductance_kv(1.0, p) == 1700.0);
    CHECK(memductance_kv(0.5, p) == doctest::Approx(106.25));
    CHECK_THROWS_AS(memductance_kv(1.01, p), DomainError);
    CHECK_THROWS_AS(memductance_kv(-0.01, p), DomainError);

    CHECK(memductance_kca(0.0, 10.0) == 0.0);
    CHECK(memductance_kca(1.0, 10.0) == doctest::Approx(5.0));
    CHECK(memductance_kca(1e9, 10.0) == doctest::Approx(10.0).epsilon(1e-6));
    CHECK_THROWS_AS(memductance_kca(-0.1, 10.0), DomainError);
}

TEST_CASE("mixed conductance is the shifted open fraction") {
    const ChayParams p;
    for (double v = -300.0; v <= 100.0; v += 3.3) {
        const double G = mixed_conductance(v, p);
        CHECK(G > 0.0);
        CHECK(G < p.g_I);
        const auto k = gate_kinetics(v + p.E_I);
        CHECK(std::abs(G - p.g_I * k.m_inf * k.m_inf * k.m_inf * k.h_inf) <= 1e-12 * G);
    }
    // At V = -25 alpha_m = 1 by its limit and beta_m = 4 exp(-25/18).
    const double m = 1.0 / (1.0 + 4.0 * std::exp(-25.0 / 18.0));
    CHECK(gate_kinetics(-25.0).m_inf == doctest::Approx(m).epsilon(1e-14));
    const auto k = gate_kinetics(-25.0);
    CHECK(mixed_conductance(-125.0, p) == doctest::Approx(p.g_I * m * m * m * k.h_inf).epsilon(1e-14));
}

TEST_CASE("state-dependent Ohm's law") {
    const ChayParams p = ChayParams::with_gkca(10.0);
    CHECK(element_current(ChannelElement::kv(p, 0.4), 0.0) == 0.0);
    CHECK(element_current(ChannelElement::kca(p, 2.0), 0.0) == 0.0);
    CHECK(element_current(ChannelElement::mixed(p), 0.0) == 0.0);
    CHECK(element_current(ChannelElement::kv(p, 1.0), 10.0) == doctest::Approx(17000.0));
    CHECK(element_current(ChannelElement::kca(p, 1.0), -2.0) == doctest::Approx(-10.0));
    CHECK_THROWS_AS(element_current(ChannelElement::kv(p, 1.5), 1.0), DomainError);
}

TEST_CASE("state equations") {
    const ChayParams p;
    for (double v : {-20.0, 0.0, 25.0, 60.0}) {
        const double V = v + p.E_K;
        CHECK(element_state_rate(ChannelElement::kv(p, gate_kinetics(V).n_inf), v) == doctest::Approx(0.0));
        const double ca = -mixed_open_fraction(V) * (V - p.E_Ca) / p.k_Ca;
        CHECK(std::abs(element_state_rate(ChannelElement::kca(p, ca), v)) < 1e-14);
    }
    // -50 mV rest point seen from the shared potassium node.
    CHECK(std::abs(element_state_rate(ChannelElement::kv(p, 0.089), 25.0)) < 1e-2);
    CHECK_THROWS_AS(element_state_rate(ChannelElement::mixed(p), 1.0), ContractError);
}

TEST_CASE("driver preconditions") {
    const auto e = ChannelElement::kv({}, 0.0);
    CHECK_THROWS_AS(drive_sinusoid(e, 0.0, 1.0, 5), ConfigError);
    CHECK_THROWS_AS(drive_sinusoid(e, 1.0, -1.0, 5), ConfigError);
    CHECK_THROWS_AS(drive_sinusoid(e, 1.0, 1.0, 2), ConfigError);
    CHECK_THROWS_AS(drive_sinusoid(e, 1.0, 1.0, 5, std::nullopt, {.samples_per_cycle = 100}), ConfigError);
}

namespace {

void check_fingerprint(ChannelElement e, const std::vector<double>& freqs) {
    double previous = INFINITY;
    for (double f : freqs) {
        const auto loop = drive_sinusoid(e, 100.0, f, 10);
        CHECK(loop.samples.size() == static_cast<std::size_t>(2 * loop.samples_per_cycle));
        CHECK(loop.metrics.lobe_area < previous);
        previous = loop.metrics.lobe_area;
        CHECK(loop.metrics.origin_residual < 1e-6 * loop.metrics.max_abs_current);
        for (const auto& s : loop.samples)
            if (std::abs(s.v) < 1e-9) CHECK(std::abs(s.i) <= 1e-9 * loop.metrics.max_abs_current);
    }
}

} // namespace

TEST_CASE("pinched loops shrink with frequency") {
    check_fingerprint(ChannelElement::kv({}, 0.0), {1e5, 5e5, 2e6});
    check_fingerprint(ChannelElement::kca(ChayParams::with_gkca(10.0), 0.0), {10.0, 30.0, 150.0});
}

TEST_CASE("mixed channel has no memory") {
    const auto a = drive_sinusoid(ChannelElement::mixed({}), 100.0, 100.0, 4);
    const auto b = drive_sinusoid(ChannelElement::mixed({}), 100.0, 1000.0, 7);
    CHECK(a.metrics.multivalue_spread <= 1e-9 * a.metrics.max_abs_current);
    for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(a.samples[k].i == b.samples[k].i);
}

TEST_CASE("loop metrics of a known ellipse") {
    // i = cos: the loop is an ellipse of area pi * A * 1, split over two lobes.
    const int N = 4000;
    std::vector<LoopSample> cyc(N);
    for (int k = 0; k < N; ++k) {
        const double ph = 2.0 * M_PI * k / N;
        cyc[static_cast<std::size_t>(k)] = {0.0, 2.0 * std::sin(ph), std::cos(ph)};
    }
    const auto m = loop_metrics(cyc, 2.0);
    CHECK(m.lobe_area == doctest::Approx(2.0 * M_PI).epsilon(1e-5));
    CHECK(std::abs(m.signed_area) == doctest::Approx(2.0 * M_PI).epsilon(1e-5));
    CHECK(m.multivalue_spread == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("standalone KV element follows the full model") {
    // Record V(t) from the full model, replay V - E_K into the element alone.
    const ChayParams p = ChayParams::with_gkca(10.0);
    const double dt = 1e-5;
    const auto tr = integrate(make_state(-50.0, 0.1, 0.48), p, dt, 0.5);
    std::vector<double> v(tr.V.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = tr.V[k] - p.E_K;
    const auto n = follow_waveform(ChannelElement::kv(p, tr.n[0]), v, dt);
    double worst = 0.0;
    for (std::size_t j = 0; j < n.size(); ++j) worst = std::max(worst, std::abs(n[j] - tr.n[2 * j]));
    CHECK(worst < 1e-6);
}
