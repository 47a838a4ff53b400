#include "reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "chay/channels.hpp"
#include "chay/dynamics.hpp"
#include "chay/equilibrium.hpp"
#include "chay/regimes.hpp"
#include "chay/smallsignal.hpp"
#include "chay/spectra.hpp"
#include "io.hpp"
#include "reference_data.hpp"

namespace chaylab {

using namespace chay;
namespace ref = chay::reference;
namespace fs = std::filesystem;

namespace {

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

json header(const std::string& id, const json& extra = json::object(), const ChayParams& p = {}) {
    json opts{{"id", id}};
    for (const auto& [k, v] : extra.items()) opts[k] = v;
    return make_header("reproduce", opts, p);
}

std::string path(const fs::path& dir, const std::string& name) { return (dir / name).string(); }

std::string tag(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

// ---- hysteresis loops ----------------------------------------------------

std::vector<HysteresisLoop> loops(const std::string& id, const fs::path& dir, ChannelElement e,
                                  const std::vector<double>& freqs) {
    std::vector<HysteresisLoop> out;
    for (double f : freqs) {
        out.push_back(drive_sinusoid(e, 100.0, f, 10));
        CsvWriter csv(path(dir, id + "_" + std::string(to_string(e.kind)) + "_" + tag(f) + "Hz.csv"),
                      header(id, {{"element", to_string(e.kind)}, {"amplitude", 100.0}, {"frequency", f}}, e.params),
                      {"t", "v", "i"});
        for (const auto& s : out.back().samples) csv.row({s.t, s.v, s.i});
    }
    return out;
}

std::vector<Check> memristor_loops(const std::string& id, const fs::path& dir, ChannelElement e,
                                   const std::vector<double>& freqs, bool common_axes) {
    const auto L = loops(id, dir, e, freqs);
    std::vector<Check> checks;
    bool shrinking = true;
    std::string areas;
    for (std::size_t k = 0; k < L.size(); ++k) {
        if (k > 0) shrinking = shrinking && L[k].metrics.lobe_area < L[k - 1].metrics.lobe_area;
        areas += (k ? " > " : "") + fmt("%.4g", L[k].metrics.lobe_area);
    }
    checks.push_back({id + " loop area decreases with frequency", shrinking, areas});
    // KV: spread against the lowest-frequency spread. KCa keeps its shape as it
    // shrinks, so it is judged on common axes (the lowest-frequency peak current).
    const double scale = common_axes ? L.front().metrics.max_abs_current : L.front().metrics.multivalue_spread;
    const double limit = common_axes ? 0.01 : 0.05;
    const double ratio = L.back().metrics.multivalue_spread / scale;
    checks.push_back({id + " loop nearly single-valued at the highest frequency", ratio < limit,
                      fmt("spread ratio %.3g", ratio) + fmt(" (limit %g)", limit)});
    double worst = 0.0;
    for (const auto& l : L) worst = std::max(worst, l.metrics.origin_residual / l.metrics.max_abs_current);
    checks.push_back({id + " loops pinched at the origin", worst < 1e-6, fmt("max |i|/max|i| at v=0: %.2e", worst)});
    return checks;
}

std::vector<Check> fig2(const fs::path& dir) {
    return memristor_loops("fig2", dir, ChannelElement::kv({}, 0.0), {1e5, 5e5, 2e6}, false);
}

std::vector<Check> fig3(const fs::path& dir) {
    return memristor_loops("fig3", dir, ChannelElement::kca(ChayParams::with_gkca(10.0), 0.0), {10.0, 30.0, 150.0}, true);
}

std::vector<Check> fig4(const fs::path& dir) {
    const auto L = loops("fig4", dir, ChannelElement::mixed({}), {100.0, 200.0, 1000.0});
    double spread = 0.0, between = 0.0;
    for (const auto& l : L) {
        spread = std::max(spread, l.metrics.multivalue_spread / l.metrics.max_abs_current);
        for (std::size_t k = 0; k < l.samples.size(); ++k)
            between = std::max(between, std::abs(l.samples[k].i - L[0].samples[k].i) / l.metrics.max_abs_current);
    }
    return {{"fig4 mixed channel single-valued", spread < 1e-9, fmt("spread/max|i| = %.2e", spread)},
            {"fig4 curves coincide across frequencies", between < 1e-9, fmt("max relative gap %.2e", between)}};
}

// ---- DC curves -------------------------------------------------------------

std::vector<Check> fig5b(const fs::path& dir) {
    const ChayParams p = ChayParams::with_gkca(10.0);
    CsvWriter csv(path(dir, "fig5b_dc_vi.csv"), header("fig5b", {{"gkca", 10.0}}, p), {"V_mV", "I", "negative_ca"});
    for (const auto& pt : dc_curve(10.0, -80.0, 40.0, 1201, p)) csv.row({pt.V, pt.value, pt.negative_calcium});
    const auto roots = solve_v(0.0, 10.0, -60.0, -20.0, p);
    const bool one = roots.size() == 1;
    const double back = one ? gkca_at_equilibrium(roots[0], p) : NAN;
    return {{"fig5b single equilibrium at g_KCa = 10 in [-60, -20] mV", one,
             fmt("%.0f root(s)", static_cast<double>(roots.size()))},
            {"fig5b equilibrium round trip", one && std::abs(back - 10.0) < 1e-6,
             fmt("V = %.9f, g back = %.9f", one ? roots[0] : NAN, back)}};
}

std::vector<Check> fig5c(const fs::path& dir) {
    CsvWriter csv(path(dir, "fig5c_locus.csv"), header("fig5c"), {"V_mV", "gKCa_per_s", "negative_ca"});
    for (const auto& pt : gkca_curve(-55.0, -20.0, 701)) csv.row({pt.V, pt.value, pt.negative_calcium});
    int ok = 0, total = 0;
    for (const auto& row : ref::kTable7) {
        const double V = row.V.value();
        if (V < -55.0 || V > -20.0) continue;
        ++total;
        ok += ref::agrees(gkca_at_equilibrium(V), row.g, 1e-3);
    }
    return {{"fig5c locus matches the tabulated g_KCa", ok == total, fmt("%.0f of %.0f rows", ok, total)}};
}

// ---- small-signal spectra ----------------------------------------------------

std::vector<double> sweep_points(double lo, double hi, int n) {
    std::vector<double> V(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) V[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
    return V;
}

std::vector<Check> fig14(const fs::path& dir) {
    std::vector<Check> checks;
    for (const auto& [name, V, g] : {std::tuple{"hopf1", ref::kHopf1V, ref::kHopf1G},
                                     std::tuple{"hopf2", ref::kHopf2V, ref::kHopf2G}}) {
        const auto Y = composite_admittance(V, g);
        const auto sweep = frequency_sweep(Y);
        CsvWriter csv(path(dir, std::string("fig14_") + name + ".csv"), header("fig14", {{"vm", V}, {"gkca", g}}, ChayParams::with_gkca(g)),
                      {"omega", "ReY", "ImY"});
        double lowest = INFINITY;
        for (const auto& f : sweep) {
            csv.row({f.omega, f.re, f.im});
            lowest = std::min(lowest, f.re);
        }
        checks.push_back({std::string("fig14 Re Y < 0 somewhere at ") + name, lowest < 0.0,
                          fmt("min Re Y on the sweep = %.4g", lowest)});
    }
    return checks;
}

std::vector<Check> spectral_sweep(const std::string& id, const fs::path& dir) {
    CsvWriter csv(path(dir, id + "_sweep.csv"), header(id, {{"v-lo", -55.0}, {"v-hi", -22.0}, {"samples", 200}}),
                  {"Vm", "gKCa", "Re_z1", "Im_z1", "Re_z2", "Im_z2", "Re_z3", "Im_z3", "Re_l1", "Im_l1", "Re_l2",
                   "Im_l2", "Re_l3", "Im_l3", "Re_p1", "Im_p1", "Re_p2", "Im_p2"});
    const ChayParams p;
    bool poles_ok = true;
    double pole_gap = 0.0, dev = 0.0;
    for (double V : sweep_points(-55.0, -22.0, 200)) {
        const auto s = spectral_set(V);
        std::vector<Cell> row{s.V_m, s.g_KCa};
        for (const auto& z : s.zeros) row.insert(row.end(), {z.real(), z.imag()});
        for (const auto& z : s.eigenvalues) row.insert(row.end(), {z.real(), z.imag()});
        for (const auto& z : s.poles) row.insert(row.end(), {z.real(), z.imag()});
        csv.row(row);
        for (const auto& z : s.poles) poles_ok = poles_ok && z.imag() == 0.0 && z.real() < 0.0;
        const double branch_kv = kv_linearization(V).b11, branch_kca = -p.rho * p.k_Ca;
        const double lo = std::min(branch_kv, branch_kca), hi = std::max(branch_kv, branch_kca);
        pole_gap = std::max({pole_gap, std::abs(s.poles[0].real() - lo) / std::abs(lo),
                             std::abs(s.poles[1].real() - hi) / std::abs(hi)});
        for (std::size_t i = 0; i < 3; ++i)
            dev = std::max(dev, std::abs(s.zeros[i] - s.eigenvalues[i]) / std::max(1.0, std::abs(s.eigenvalues[i])));
    }
    if (id == "fig15")
        return {{"fig15 poles real and negative", poles_ok, "200 locus points in [-55, -22] mV"},
                {"fig15 poles are the branch rates (one is -rho k_Ca)", pole_gap < 1e-9,
                 fmt("max relative gap %.2e", pole_gap)}};
    if (id == "fig17")
        return {{"fig17 zeros equal Jacobian eigenvalues", dev < 1e-5, fmt("max deviation %.2e", dev)}};

    const auto z1 = spectral_set(ref::kHopf1V).zeros;
    const auto z2 = spectral_set(ref::kHopf2V).zeros;
    return {{"fig16 Hopf 1 zeros ~ {-0.049, +-97.171i}",
             std::abs(z1[1].real()) < 1e-3 && std::abs(std::abs(z1[2].imag()) - 97.171) < 0.01,
             fmt("pair %.3e +- %.6fi", z1[2].real(), z1[2].imag())},
            {"fig16 Hopf 2 zeros ~ {-38.263, +-1.061i}",
             std::abs(std::abs(z2[2].imag()) - 1.061) < 0.01 && std::abs(z2[0].real() + 38.263) < 0.01,
             fmt("real %.4f, pair |Im| %.5f", z2[0].real(), z2[2].imag())}};
}

std::vector<Check> fig18(const fs::path& dir) {
    struct Panel {
        const char* name;
        double V;
        int sign;  // expected sign of min Re Y; 0 = tangency
    };
    const Panel panels[] = {{"a", -21.5, +1}, {"b", ref::kEdge1V, 0}, {"c", -24.5, -1},
                            {"d", -48.1, -1}, {"e", ref::kEdge2V, 0}, {"f", -48.3, +1}};
    const RegimeOptions opt;
    std::vector<Check> checks;
    for (const auto& pn : panels) {
        const double g = gkca_at_equilibrium(pn.V);
        const auto Y = composite_admittance(pn.V, g);
        CsvWriter csv(path(dir, std::string("fig18") + pn.name + ".csv"), header("fig18", {{"vm", pn.V}, {"gkca", g}}, ChayParams::with_gkca(g)),
                      {"omega", "ReY", "ImY"});
        for (const auto& f : frequency_sweep(Y, opt.omega_min, opt.omega_max, opt.grid_points))
            csv.row({f.omega, f.re, f.im});
        const auto m = min_re_y(Y, opt);
        const bool ok = pn.sign > 0 ? m.value > 0.0 : pn.sign < 0 ? m.value < 0.0 : std::abs(m.value) < 1e-3;
        checks.push_back({std::string("fig18(") + pn.name + ") " +
                              (pn.sign > 0 ? "locally passive" : pn.sign < 0 ? "locally active" : "tangent to the axis"),
                          ok, fmt("V = %.10g, min Re Y = %.4g", pn.V, m.value)});
    }
    return checks;
}

// ---- time domain ---------------------------------------------------------

struct ProbeCase {
    const char* name;
    double g;
    State x0;
    ProbeOutcome expected;
};

std::vector<Check> probes(const std::string& id, const fs::path& dir, const std::vector<ProbeCase>& cases) {
    const ProbeOptions opt;
    const double T = 600.0;
    std::vector<Check> checks;
    for (const auto& c : cases) {
        const auto tr = integrate(c.x0, ChayParams::with_gkca(c.g), opt.dt, T, {.record_stride = opt.record_stride});
        const auto r = probe_outcome(tr, opt);
        CsvWriter csv(path(dir, id + c.name + ".csv"),
                      header(id, {{"gkca", c.g}, {"v0", c.x0[kV]}, {"n0", c.x0[kN]}, {"ca0", c.x0[kCa]}, {"t", T}}, tr.params),
                      {"t", "V", "n", "Ca"});
        for (std::size_t k = 0; k < tr.size(); k += 10) csv.row({tr.t[k], tr.V[k], tr.n[k], tr.Ca[k]});
        checks.push_back({id + "(" + c.name + ") g_KCa = " + tag(c.g) + " -> " + std::string(to_string(c.expected)),
                          r.outcome == c.expected,
                          std::string(to_string(r.outcome)) + fmt(", tail range %.3g mV", r.tail_range) +
                              fmt(", envelope rate %.2e 1/s", r.rate_last)});
    }
    return checks;
}

const State kProbeInitial = make_state(-50.0, 0.1, 0.48);

std::vector<Check> fig19(const fs::path& dir) {
    return probes("fig19", dir,
                  {{"a", -7.8, kProbeInitial, ProbeOutcome::ConvergesToEquilibrium},
                   {"b", -7.78, kProbeInitial, ProbeOutcome::StableLimitCycle}});
}

std::vector<Check> fig20(const fs::path& dir) {
    return probes("fig20", dir,
                  {{"a", 27.25345, make_state(-47.0, 0.107, 0.143), ProbeOutcome::Spikes},
                   {"b", 27.25345, make_state(-48.0, 0.107, 0.143), ProbeOutcome::ConvergesToEquilibrium}});
}

std::vector<Check> fig21(const fs::path& dir) {
    return probes("fig21", dir,
                  {{"a", -8.0, kProbeInitial, ProbeOutcome::ConvergesToEquilibrium},
                   {"b", 27.3, kProbeInitial, ProbeOutcome::ConvergesToEquilibrium},
                   {"c", -7.7, kProbeInitial, ProbeOutcome::StableLimitCycle},
                   {"d", 27.2, kProbeInitial, ProbeOutcome::Spikes}});
}

std::vector<Check> fig22(const fs::path& dir) {
    struct Panel {
        const char* name;
        double g;
        AttractorKind kind;
        int k;
    };
    const Panel panels[] = {{"a", 10.0, AttractorKind::PeriodK, 1},   {"b", 10.7, AttractorKind::PeriodK, 2},
                            {"c", 10.75, AttractorKind::PeriodK, 4},  {"d", 10.77, AttractorKind::PeriodK, 8},
                            {"e", 11.0, AttractorKind::Chaotic, 0},   {"f", 11.5, AttractorKind::Bursting, 0}};
    const double T = 120.0, dt = 1e-4;
    std::vector<Check> checks;
    for (const auto& pn : panels) {
        const auto tr = integrate(kProbeInitial, ChayParams::with_gkca(pn.g), dt, T);
        const auto label = classify_attractor(tr);
        CsvWriter csv(path(dir, std::string("fig22") + pn.name + ".csv"),
                      header("fig22", {{"gkca", pn.g}, {"v0", -50.0}, {"n0", 0.1}, {"ca0", 0.48}, {"t", T}, {"dt", dt},
                                       {"written-stride", 10}}, tr.params),
                      {"t", "V", "n", "Ca"});
        for (std::size_t k = 0; k < tr.size(); k += 10) csv.row({tr.t[k], tr.V[k], tr.n[k], tr.Ca[k]});
        const bool ok = label.kind == pn.kind && (pn.kind != AttractorKind::PeriodK || label.k == pn.k);
        std::string want(to_string(pn.kind)), got(to_string(label.kind));
        if (pn.kind == AttractorKind::PeriodK) want += "(" + std::to_string(pn.k) + ")";
        if (label.kind == AttractorKind::PeriodK) got += "(" + std::to_string(label.k) + ")";
        checks.push_back({std::string("fig22(") + pn.name + ") g_KCa = " + tag(pn.g) + " -> " + want, ok,
                          got + ", " + std::to_string(label.evidence.peak_levels.size()) + " peak levels"});
    }
    return checks;
}

std::vector<Check> table7(const fs::path& dir) {
    CsvWriter csv(path(dir, "table7.csv"), header("table7"),
                  {"Vm", "gKCa", "n", "Ca", "Re_l1", "Im_l1", "Re_l2", "Im_l2", "Re_l3", "Im_l3", "ref_gKCa",
                   "ref_n", "ref_Ca", "max_raw_eig_dev", "pass"});
    std::vector<Check> checks;
    for (std::size_t r = 0; r < ref::kTable7.size(); ++r) {
        const auto& row = ref::kTable7[r];
        const auto q = equilibrium_at(row.V.value());
        const auto ev = jacobian_eigenvalues(q);
        const auto m = ref::match_eigenvalues(ev, row.eig, 5e-3);
        const bool cols = ref::agrees(q.g_KCa, row.g, 1e-3) && ref::agrees(q.n, row.n, 1e-3) &&
                          ref::agrees(q.Ca, row.Ca, 1e-3);
        const bool ok = cols && m.pass;
        csv.row({q.V, q.g_KCa, q.n, q.Ca, ev[0].real(), ev[0].imag(), ev[1].real(), ev[1].imag(), ev[2].real(),
                 ev[2].imag(), row.g.value(), row.n.value(), row.Ca.value(), m.raw_deviation, ok});
        checks.push_back({"table7 row " + std::to_string(r + 1) + " (V = " + std::string(row.V.text) + ")", ok,
                          std::string(cols ? "g, n, Ca agree" : "column mismatch") +
                              fmt("; eigenvalues raw dev %.1e", m.raw_deviation)});
    }
    return checks;
}

using Runner = std::function<std::vector<Check>(const fs::path&)>;

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> r{
        {"fig2", fig2},
        {"fig3", fig3},
        {"fig4", fig4},
        {"fig5b", fig5b},
        {"fig5c", fig5c},
        {"fig14", fig14},
        {"fig15", [](const fs::path& d) { return spectral_sweep("fig15", d); }},
        {"fig16", [](const fs::path& d) { return spectral_sweep("fig16", d); }},
        {"fig17", [](const fs::path& d) { return spectral_sweep("fig17", d); }},
        {"fig18", fig18},
        {"fig19", fig19},
        {"fig20", fig20},
        {"fig21", fig21},
        {"fig22", fig22},
        {"table7", table7},
    };
    return r;
}

} // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : runners()) v.push_back(k);
        return v;
    }();
    return ids;
}

std::vector<Check> reproduce(const std::string& id, const fs::path& dir) { return runners().at(id)(dir); }

} // namespace chaylab
