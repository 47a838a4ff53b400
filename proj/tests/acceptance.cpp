// One line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chay/channels.hpp"
#include "chay/dynamics.hpp"
#include "chay/equilibrium.hpp"
#include "chay/model.hpp"
#include "chay/regimes.hpp"
#include "chay/smallsignal.hpp"
#include "chay/spectra.hpp"
#include "reference_data.hpp"

using namespace chay;
namespace ref = chay::reference;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// find_boundaries is shared by the first three criteria; each is timed on its own call.
Outcome hopf(int which, double V, double g, double omega) {
    const auto b = find_boundaries();
    const auto& h = b.at(static_cast<std::size_t>(which));
    const bool ok = std::abs(h.V_m - V) < 1e-4 && std::abs(h.g_KCa - g) < 1e-3 && std::abs(h.omega - omega) < 0.01 &&
                    h.kind != BoundaryKind::LocalActivityEdge;
    return {ok, fmt("V_m = %.10f mV, g_KCa = %.8f", h.V_m, h.g_KCa) + fmt(" 1/s, |Im z| = %.6f rad/s", h.omega) +
                    ", " + std::string(to_string(h.kind))};
}

Outcome edges() {
    const auto b = find_boundaries();
    const auto& e1 = b.at(0);
    const auto& e2 = b.at(3);
    const bool ok = e1.kind == BoundaryKind::LocalActivityEdge && e2.kind == BoundaryKind::LocalActivityEdge &&
                    std::abs(e1.V_m - ref::kEdge1V) < 1e-3 && std::abs(e2.V_m - ref::kEdge2V) < 1e-3 &&
                    std::abs(e1.g_KCa - ref::kEdge1G) < 0.05 && std::abs(e2.g_KCa - ref::kEdge2G) < 0.05;
    return {ok, fmt("edge 1 at %.10f mV (g %.6f)", e1.V_m, e1.g_KCa) + fmt(", edge 2 at %.10f mV (g %.6f)", e2.V_m, e2.g_KCa)};
}

Outcome table7() {
    int ok = 0;
    double worst_col = 0.0, worst_eig = 0.0;
    for (const auto& row : ref::kTable7) {
        const auto q = equilibrium_at(row.V.value());
        const auto m = ref::match_eigenvalues(jacobian_eigenvalues(q), row.eig, 5e-3);
        const bool cols = ref::agrees(q.g_KCa, row.g, 1e-3) && ref::agrees(q.n, row.n, 1e-3) &&
                          ref::agrees(q.Ca, row.Ca, 1e-3);
        ok += cols && m.pass;
        worst_eig = std::max(worst_eig, m.raw_deviation);
        worst_col = std::max({worst_col, std::abs(q.g_KCa - row.g.value()) / std::abs(row.g.value())});
    }
    return {ok == static_cast<int>(ref::kTable7.size()),
            std::to_string(ok) + "/22 rows; " + fmt("max raw g dev %.1e, max raw eigenvalue dev %.1e", worst_col, worst_eig)};
}

std::vector<double> sweep() {
    std::vector<double> V(200);
    for (int k = 0; k < 200; ++k) V[static_cast<std::size_t>(k)] = -55.0 + 33.0 * k / 199.0;
    return V;
}

Outcome zero_eigen() {
    double worst = 0.0;
    for (double V : sweep()) worst = std::max(worst, zero_eigen_deviation(V));
    return {worst < 1e-5, fmt("max relative deviation %.2e over 200 points", worst)};
}

Outcome pole_structure() {
    bool ok = true;
    for (double V : sweep()) {
        const auto p = spectral_set(V).poles;
        double best = INFINITY;
        for (const auto& z : p) {
            ok = ok && z.imag() == 0.0 && z.real() < 0.0;
            best = std::min(best, std::abs(z.real() + 0.0495));
        }
        ok = ok && best < 1e-9;
    }
    return {ok, "200 points: poles real and negative, one within 1e-9 of -0.0495"};
}

Outcome cascade() {
    struct Case {
        double g;
        AttractorKind kind;
        int k;
    };
    const Case cases[] = {{10.0, AttractorKind::PeriodK, 1},  {10.7, AttractorKind::PeriodK, 2},
                          {10.75, AttractorKind::PeriodK, 4}, {10.77, AttractorKind::PeriodK, 8},
                          {11.0, AttractorKind::Chaotic, 0},  {11.5, AttractorKind::Bursting, 0}};
    bool ok = true;
    std::string seq;
    for (const auto& c : cases) {
        const auto l = classify_attractor(integrate(make_state(-50.0, 0.1, 0.48), ChayParams::with_gkca(c.g), 1e-4, 120.0));
        ok = ok && l.kind == c.kind && (c.kind != AttractorKind::PeriodK || l.k == c.k);
        seq += std::string(seq.empty() ? "" : ", ") + std::string(to_string(l.kind));
        if (l.kind == AttractorKind::PeriodK) seq += "(" + std::to_string(l.k) + ")";
    }
    return {ok, seq};
}

Outcome probes() {
    struct Case {
        double g;
        State x0;
        ProbeOutcome expected;
    };
    const State x0 = make_state(-50.0, 0.1, 0.48);
    const Case cases[] = {
        {-8.0, x0, ProbeOutcome::ConvergesToEquilibrium},
        {-7.8, x0, ProbeOutcome::ConvergesToEquilibrium},
        {-7.78, x0, ProbeOutcome::StableLimitCycle},
        {-7.7, x0, ProbeOutcome::StableLimitCycle},
        {27.2, x0, ProbeOutcome::Spikes},
        {27.25345, make_state(-47.0, 0.107, 0.143), ProbeOutcome::Spikes},
        {27.3, x0, ProbeOutcome::ConvergesToEquilibrium},
        {27.25345, make_state(-48.0, 0.107, 0.143), ProbeOutcome::ConvergesToEquilibrium},
    };
    int ok = 0;
    std::string misses;
    for (const auto& c : cases) {
        const auto r = hopf_probe(c.g, c.x0);
        if (r.outcome == c.expected) {
            ++ok;
        } else {
            misses += fmt(" g=%g", c.g) + "->" + std::string(to_string(r.outcome));
        }
    }
    return {ok == 8, std::to_string(ok) + "/8 outcomes match" + misses};
}

Outcome hysteresis() {
    bool ok = true;
    auto memristor = [&](ChannelElement e, std::initializer_list<double> freqs) {
        double prev = INFINITY;
        for (double f : freqs) {
            const auto l = drive_sinusoid(e, 100.0, f, 10);
            ok = ok && l.metrics.lobe_area < prev && l.metrics.origin_residual < 1e-6 * l.metrics.max_abs_current;
            prev = l.metrics.lobe_area;
        }
    };
    memristor(ChannelElement::kv({}, 0.0), {1e5, 5e5, 2e6});
    memristor(ChannelElement::kca(ChayParams::with_gkca(10.0), 0.0), {10.0, 30.0, 150.0});
    std::vector<HysteresisLoop> mixed;
    for (double f : {100.0, 200.0, 1000.0}) mixed.push_back(drive_sinusoid(ChannelElement::mixed({}), 100.0, f, 10));
    double gap = 0.0;
    for (const auto& l : mixed)
        for (std::size_t k = 0; k < l.samples.size(); ++k)
            gap = std::max(gap, std::abs(l.samples[k].i - mixed[0].samples[k].i) / l.metrics.max_abs_current);
    ok = ok && gap < 1e-9;
    return {ok, "memristor areas monotone and pinched; " + fmt("mixed curves differ by %.1e relative", gap)};
}

Outcome properties() {
    std::mt19937 rng(2024);
    std::string detail;
    bool ok = true;

    // Finite-difference Jacobian.
    std::uniform_real_distribution<double> uV(-80.0, 20.0), un(0.0, 1.0), uca(0.0, 5.0), ug(-60.0, 60.0);
    double jac = 0.0;
    for (int t = 0; t < 100; ++t) {
        const ChayParams p = ChayParams::with_gkca(ug(rng));
        const State x = make_state(uV(rng), un(rng), uca(rng));
        const Eigen::Matrix3d J = jacobian(x, p);
        for (int j = 0; j < 3; ++j) {
            State a = x, b = x;
            a[j] += 1e-6;
            b[j] -= 1e-6;
            const State col = (rhs(a, p) - rhs(b, p)) / 2e-6;
            for (int i = 0; i < 3; ++i) {
                const double scale = std::max(std::abs(J(i, j)), 1e-3 * J.row(i).cwiseAbs().maxCoeff());
                jac = std::max(jac, std::abs(J(i, j) - col[i]) / scale);
            }
        }
    }
    ok = ok && jac <= 1e-4;
    detail += fmt("jacobian %.1e", jac);

    // DC admittance against the slope of the DC curve.
    double dc = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double V = -54.0 + 3.4 * k;
        const double g = gkca_at_equilibrium(V);
        const double slope = (dc_current(V + 1e-5, g) - dc_current(V - 1e-5, g)) / 2e-5;
        dc = std::max(dc, std::abs(composite_admittance(V, g).dc_value() - slope) / std::abs(slope));
    }
    ok = ok && dc <= 1e-6;
    detail += fmt(", Y(0) %.1e", dc);

    // Parallel sum against the rational form.
    double cross = 0.0;
    std::uniform_real_distribution<double> uVm(-60.0, -10.0);
    for (int t = 0; t < 20; ++t) {
        const double V = uVm(rng), g = ug(rng);
        const std::complex<double> s(1.0, 2.0);
        const auto d = direct_admittance(V, g, s);
        cross = std::max(cross, std::abs(composite_admittance(V, g)(s) - d) / std::abs(d));
    }
    ok = ok && cross <= 1e-10;
    detail += fmt(", circuit forms %.1e", cross);

    // Equilibrium round trip.
    double trip = 0.0;
    for (double V = -55.0; V <= -22.0; V += 0.5) {
        double best = INFINITY;
        for (double r : solve_v(0.0, gkca_at_equilibrium(V), V - 1.0, V + 1.0)) best = std::min(best, std::abs(r - V));
        trip = std::max(trip, best);
    }
    ok = ok && trip <= 1e-8;
    detail += fmt(", round trip %.1e mV", trip);

    const auto sh = step_halving(make_state(-50.0, 0.1, 0.48), ChayParams::with_gkca(10.0), 1e-4, 10.0);
    ok = ok && sh.relative() <= 1e-5;
    detail += fmt(", step halving %.1e", sh.relative());
    return {ok, detail};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"Hopf point 1", 10.0, [] { return hopf(1, ref::kHopf1V, ref::kHopf1G, ref::kHopf1Omega); }},
        {"Hopf point 2", 10.0, [] { return hopf(2, ref::kHopf2V, ref::kHopf2G, ref::kHopf2Omega); }},
        {"local-activity edges", 30.0, edges},
        {"equilibrium table regression", 5.0, table7},
        {"zero-eigenvalue identity", 5.0, zero_eigen},
        {"pole structure", 5.0, pole_structure},
        {"period-doubling cascade", 300.0, cascade},
        {"Hopf-type probes", 120.0, probes},
        {"hysteresis fingerprints", 60.0, hysteresis},
        {"property suite", 60.0, properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs < c.limit_s;
        failures += !pass;
        std::printf("%s %2zu %-30s %7.2fs (limit %3.0fs)  %s\n", pass ? "PASS" : "FAIL", i + 1, c.name, secs, c.limit_s,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
