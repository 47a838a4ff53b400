#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chay/channels.hpp"
#include "chay/dynamics.hpp"
#include "chay/equilibrium.hpp"
#include "chay/errors.hpp"
#include "chay/regimes.hpp"
#include "chay/smallsignal.hpp"
#include "chay/spectra.hpp"
#include "io.hpp"
#include "json_config.hpp"
#include "reproduce.hpp"

using namespace chay;
using chaylab::Cell;
using chaylab::CsvWriter;
using chaylab::json;

namespace {

// Model constants as --kebab-case flags. --gkca is added per command since
// its meaning (and whether it is required) differs.
void add_model_flags(CLI::App* cmd, ChayParams& p) {
    auto* g = cmd->add_option_group("model", "Model constants (default: the standard parameter set)");
    g->add_option("--c-m", p.C_m, "Membrane capacitance");
    g->add_option("--e-k", p.E_K, "Potassium reversal potential (mV)");
    g->add_option("--e-i", p.E_I, "Mixed-channel reversal potential (mV)");
    g->add_option("--e-l", p.E_L, "Leak reversal potential (mV)");
    g->add_option("--e-ca", p.E_Ca, "Calcium reversal potential (mV)");
    g->add_option("--g-i", p.g_I, "Mixed-channel conductance (1/s)");
    g->add_option("--g-kv", p.g_KV, "Voltage-gated potassium conductance (1/s)");
    g->add_option("--g-l", p.g_L, "Leak conductance (1/s)");
    g->add_option("--k-ca", p.k_Ca, "Calcium efflux constant");
    g->add_option("--rho", p.rho, "Calcium influx scale");
    g->add_option("--lambda-n", p.lambda_n, "Gate rate scale");
    g->add_option("--i-ext", p.I_ext, "External DC current");
}

json with_params(json options, const ChayParams& p) {
    const json params = chaylab::params_to_json(p);
    for (const auto& [k, v] : params.items()) options[k] = v;
    return options;
}

// ---- simulate ------------------------------------------------------------

struct SimulateOpts {
    ChayParams p;
    double v0 = -50.0, n0 = 0.1, ca0 = 0.48;
    double t = 60.0, dt = 1e-4;
    int stride = 1;
    bool validate = false;
    std::string out = "-";
};

void setup_simulate(CLI::App& app, SimulateOpts& o) {
    auto* c = app.add_subcommand("simulate", "Integrate the model and write t,V,n,Ca");
    add_model_flags(c, o.p);
    c->add_option("--gkca", o.p.g_KCa, "Calcium-activated potassium conductance (1/s)");
    c->add_option("--v0", o.v0, "Initial membrane potential (mV)");
    c->add_option("--n0", o.n0, "Initial gate activation");
    c->add_option("--ca0", o.ca0, "Initial calcium");
    c->add_option("--t", o.t, "Duration (s)");
    c->add_option("--dt", o.dt, "RK4 step (s)");
    c->add_option("--stride", o.stride, "Record every k-th step")->check(CLI::PositiveNumber);
    c->add_flag("--validate", o.validate, "Also run with dt/2 and report the terminal difference");
    c->add_option("--out", o.out, "Output CSV ('-' for stdout)");
    c->callback([&o] {
        if (!(o.t > o.dt)) throw ConfigError("--t must exceed --dt");
        o.p.validate();
        const json opts = with_params(
            {{"v0", o.v0}, {"n0", o.n0}, {"ca0", o.ca0}, {"t", o.t}, {"dt", o.dt}, {"stride", o.stride},
             {"validate", o.validate}, {"out", o.out}},
            o.p);
        const State x0 = make_state(o.v0, o.n0, o.ca0);
        const auto tr = integrate(x0, o.p, o.dt, o.t, {.record_stride = o.stride});
        check_invariants(tr);
        CsvWriter csv(o.out, chaylab::make_header("simulate", opts, o.p), {"t", "V", "n", "Ca"});
        for (std::size_t k = 0; k < tr.size(); ++k) csv.row({tr.t[k], tr.V[k], tr.n[k], tr.Ca[k]});
        if (o.validate) {
            const auto chk = step_halving(x0, o.p, o.dt, o.t);
            std::cerr << json{{"terminal_difference", chk.terminal_difference},
                              {"amplitude", chk.amplitude},
                              {"relative", chk.relative()}}
                             .dump()
                      << '\n';
        }
    });
}

// ---- classify ------------------------------------------------------------

struct ClassifyOpts {
    std::string file;
    ClassifyOptions c;
    std::string out = "-";
};

json evidence_json(const AttractorEvidence& e) {
    json j{{"peak_count", e.peak_count},       {"peak_levels", e.peak_levels},
           {"peak_range", e.peak_range},       {"cluster_tolerance", e.cluster_tolerance},
           {"spike_count", e.spike_count},     {"isi_short_mean", e.isi_short_mean},
           {"isi_long_mean", e.isi_long_mean}, {"isi_ratio", e.isi_ratio},
           {"terminal_drift", e.terminal_drift}, {"v_range", e.v_range}};
    j["period"] = e.period ? json(*e.period) : json(nullptr);
    return j;
}

void setup_classify(CLI::App& app, ClassifyOpts& o) {
    auto* c = app.add_subcommand("classify", "Name the attractor of a simulated trajectory");
    c->add_option("file", o.file, "Trajectory CSV from `simulate`")->required()->check(CLI::ExistingFile);
    c->add_option("--transient", o.c.transient_fraction, "Fraction of the run discarded as transient");
    c->add_option("--min-peaks", o.c.min_peaks, "Calcium peaks required after the transient");
    c->add_option("--out", o.out, "Output JSON ('-' for stdout)");
    c->callback([&o] {
        json src;
        const auto tr = chaylab::read_trajectory(o.file, &src);
        check_invariants(tr);
        const auto label = classify_attractor(tr, o.c);
        json j;
        j["kind"] = to_string(label.kind);
        if (label.kind == AttractorKind::PeriodK || label.kind == AttractorKind::Bursting) j["k"] = label.k;
        j["evidence"] = evidence_json(label.evidence);
        j["header"] = chaylab::make_header(
            "classify",
            {{"file", o.file}, {"transient", o.c.transient_fraction}, {"min-peaks", o.c.min_peaks}, {"out", o.out}},
            tr.params);
        chaylab::write_json(o.out, j);
    });
}

// ---- hysteresis ----------------------------------------------------------

struct HysteresisOpts {
    ChayParams p;
    std::string element;
    double amplitude = 100.0, frequency = 0.0;
    int cycles = 10;
    DriveOptions drive;
    std::optional<double> initial_state;
    std::string out = "-", metrics_out;
};

void setup_hysteresis(CLI::App& app, HysteresisOpts& o) {
    auto* c = app.add_subcommand("hysteresis", "Drive one channel element sinusoidally and write t,v,i");
    add_model_flags(c, o.p);
    o.p.g_KCa = 10.0;
    c->add_option("--element", o.element, "Element: kv, kca or mixed")
        ->required()
        ->check(CLI::IsMember({"kv", "kca", "mixed"}));
    c->add_option("--gkca", o.p.g_KCa, "Calcium-activated potassium conductance (1/s)");
    c->add_option("--amplitude", o.amplitude, "Drive amplitude (mV)");
    c->add_option("--frequency", o.frequency, "Drive frequency (Hz)")->required();
    c->add_option("--cycles", o.cycles, "Total drive cycles; the last two are kept");
    c->add_option("--samples", o.drive.samples_per_cycle, "Samples per cycle");
    c->add_option("--substeps", o.drive.substeps, "RK4 steps per sample");
    c->add_option("--initial-state", o.initial_state, "Initial memristor state (default: rest at v = 0)");
    c->add_option("--out", o.out, "Output CSV ('-' for stdout)");
    c->add_option("--metrics-out", o.metrics_out, "Metrics JSON (default: <out>.json, or stderr)");
    c->callback([&o] {
        o.p.validate();
        const auto kind = o.element == "kv" ? ChannelKind::KV : o.element == "kca" ? ChannelKind::KCa : ChannelKind::Mixed;
        const ChannelElement e{kind, o.p, 0.0};
        const auto loop = drive_sinusoid(e, o.amplitude, o.frequency, o.cycles, o.initial_state, o.drive);
        json opts{{"element", o.element},   {"amplitude", o.amplitude},
                  {"frequency", o.frequency}, {"cycles", o.cycles},
                  {"samples", o.drive.samples_per_cycle}, {"substeps", o.drive.substeps},
                  {"out", o.out}};
        if (o.initial_state) opts["initial-state"] = *o.initial_state;
        const json header = chaylab::make_header("hysteresis", with_params(opts, o.p), o.p);
        CsvWriter csv(o.out, header, {"t", "v", "i"});
        for (const auto& s : loop.samples) csv.row({s.t, s.v, s.i});
        const auto& m = loop.metrics;
        chaylab::write_json(chaylab::sidecar_path(o.out, o.metrics_out),
                            {{"origin_residual", m.origin_residual}, {"lobe_area", m.lobe_area},
                             {"signed_area", m.signed_area}, {"multivalue_spread", m.multivalue_spread},
                             {"max_abs_current", m.max_abs_current}, {"state_drift", m.state_drift},
                             {"header", header}});
    });
}

// ---- dc-curve ------------------------------------------------------------

struct DcCurveOpts {
    ChayParams p;
    std::string mode = "vi";
    double v_lo = -80.0, v_hi = 40.0;
    int samples = 1201;
    std::string out = "-";
};

void setup_dc_curve(CLI::App& app, DcCurveOpts& o) {
    auto* c = app.add_subcommand("dc-curve", "DC V-I curve at fixed g_KCa, or the I = 0 locus g_KCa(V)");
    add_model_flags(c, o.p);
    o.p.g_KCa = 10.0;
    c->add_option("--mode", o.mode, "vi: I(V) at --gkca; locus: g_KCa(V) at I = --i-ext")
        ->check(CLI::IsMember({"vi", "locus"}));
    c->add_option("--gkca", o.p.g_KCa, "Calcium-activated potassium conductance (1/s)");
    c->add_option("--v-lo", o.v_lo, "Lowest V (mV)");
    c->add_option("--v-hi", o.v_hi, "Highest V (mV)");
    c->add_option("--samples", o.samples, "Number of V samples");
    c->add_option("--out", o.out, "Output CSV ('-' for stdout)");
    c->callback([&o] {
        o.p.validate();
        const json opts = with_params(
            {{"mode", o.mode}, {"v-lo", o.v_lo}, {"v-hi", o.v_hi}, {"samples", o.samples}, {"out", o.out}}, o.p);
        const bool vi = o.mode == "vi";
        const auto curve = vi ? dc_curve(o.p.g_KCa, o.v_lo, o.v_hi, o.samples, o.p)
                              : gkca_curve(o.v_lo, o.v_hi, o.samples, o.p);
        CsvWriter csv(o.out, chaylab::make_header("dc-curve", opts, o.p),
                      {"V_mV", vi ? "I" : "gKCa_per_s", "negative_ca"});
        for (const auto& pt : curve) csv.row({pt.V, pt.value, pt.negative_calcium});
    });
}

// ---- small-signal ----------------------------------------------------------

struct SmallSignalOpts {
    ChayParams p;
    double vm = 0.0;
    std::optional<double> gkca;
    double omega_lo = kSweepOmegaMin, omega_hi = kSweepOmegaMax;
    int points = kSweepPoints;
    std::string out = "-", coeffs_out;
};

void setup_small_signal(CLI::App& app, SmallSignalOpts& o) {
    auto* c = app.add_subcommand("small-signal", "Admittance coefficients and the Nyquist sweep omega,ReY,ImY");
    add_model_flags(c, o.p);
    c->add_option("--vm", o.vm, "Equilibrium membrane potential (mV)")->required();
    c->add_option("--gkca", o.gkca, "g_KCa (1/s); default: the value that makes V_m an equilibrium");
    c->add_option("--omega-lo", o.omega_lo, "Lowest frequency (rad/s)");
    c->add_option("--omega-hi", o.omega_hi, "Highest frequency (rad/s)");
    c->add_option("--points", o.points, "Log-spaced frequency points");
    c->add_option("--out", o.out, "Sweep CSV ('-' for stdout)");
    c->add_option("--coeffs-out", o.coeffs_out, "Coefficient JSON (default: <out>.json, or stderr)");
    c->callback([&o] {
        o.p.validate();
        o.p.g_KCa = o.gkca ? *o.gkca : gkca_at_equilibrium(o.vm, o.p);
        const json opts = with_params({{"vm", o.vm},
                                       {"omega-lo", o.omega_lo},
                                       {"omega-hi", o.omega_hi},
                                       {"points", o.points},
                                       {"out", o.out}},
                                      o.p);
        const json header = chaylab::make_header("small-signal", opts, o.p);
        const auto Y = composite_admittance(o.vm, o.p.g_KCa, o.p);
        CsvWriter csv(o.out, header, {"omega", "ReY", "ImY"});
        for (const auto& f : frequency_sweep(Y, o.omega_lo, o.omega_hi, o.points)) csv.row({f.omega, f.re, f.im});
        chaylab::write_json(chaylab::sidecar_path(o.out, o.coeffs_out),
                            {{"b3", Y.b[0]}, {"b2", Y.b[1]}, {"b1", Y.b[2]}, {"b0", Y.b[3]}, {"a2", Y.a[0]},
                             {"a1", Y.a[1]}, {"a0", Y.a[2]}, {"Vm", Y.V_m}, {"gKCa", Y.g_KCa},
                             {"header", header}});
    });
}

// ---- spectra -------------------------------------------------------------

struct SpectraOpts {
    ChayParams p;
    std::optional<double> vm;
    double v_lo = -55.0, v_hi = -22.0;
    int samples = 200;
    std::string out = "-";
};

void setup_spectra(CLI::App& app, SpectraOpts& o) {
    auto* c = app.add_subcommand("spectra", "Poles, zeros and Jacobian eigenvalues along the equilibrium locus");
    add_model_flags(c, o.p);
    c->add_option("--vm", o.vm, "Single equilibrium potential (mV); otherwise a sweep");
    c->add_option("--v-lo", o.v_lo, "Sweep start (mV)");
    c->add_option("--v-hi", o.v_hi, "Sweep end (mV)");
    c->add_option("--samples", o.samples, "Sweep points");
    c->add_option("--out", o.out, "Output CSV ('-' for stdout)");
    c->callback([&o] {
        o.p.validate();
        json opts = with_params({{"v-lo", o.v_lo}, {"v-hi", o.v_hi}, {"samples", o.samples}, {"out", o.out}}, o.p);
        if (o.vm) opts["vm"] = *o.vm;
        std::vector<double> V;
        if (o.vm) {
            V.push_back(*o.vm);
        } else {
            if (o.samples < 2) throw ConfigError("--samples must be at least 2");
            for (int k = 0; k < o.samples; ++k) V.push_back(o.v_lo + (o.v_hi - o.v_lo) * k / (o.samples - 1));
        }
        CsvWriter csv(o.out, chaylab::make_header("spectra", opts, o.p),
                      {"Vm", "gKCa", "Re_z1", "Im_z1", "Re_z2", "Im_z2", "Re_z3", "Im_z3", "Re_l1", "Im_l1", "Re_l2",
                       "Im_l2", "Re_l3", "Im_l3", "Re_p1", "Im_p1", "Re_p2", "Im_p2"});
        for (double v : V) {
            const auto s = spectral_set(v, o.p);
            std::vector<Cell> row{s.V_m, s.g_KCa};
            for (const auto& z : s.zeros) row.insert(row.end(), {z.real(), z.imag()});
            for (const auto& z : s.eigenvalues) row.insert(row.end(), {z.real(), z.imag()});
            for (const auto& z : s.poles) row.insert(row.end(), {z.real(), z.imag()});
            csv.row(row);
        }
    });
}

// ---- scan / find-boundaries --------------------------------------------------

struct ScanOpts {
    ChayParams p;
    double v_lo = -55.0, v_hi = -20.0;
    int samples = 351;
    RegimeOptions r;
    std::string out = "-";
};

void setup_scan(CLI::App& app, ScanOpts& o) {
    auto* c = app.add_subcommand("scan", "Classify equilibria along the locus into activity regimes");
    add_model_flags(c, o.p);
    c->add_option("--v-lo", o.v_lo, "Scan start (mV)");
    c->add_option("--v-hi", o.v_hi, "Scan end (mV)");
    c->add_option("--samples", o.samples, "Scan points");
    c->add_option("--omega-max", o.r.omega_max, "Upper frequency of the Re Y search (rad/s)");
    c->add_option("--out", o.out, "Output CSV ('-' for stdout)");
    c->callback([&o] {
        o.p.validate();
        const json opts = with_params({{"v-lo", o.v_lo},
                                       {"v-hi", o.v_hi},
                                       {"samples", o.samples},
                                       {"omega-max", o.r.omega_max},
                                       {"out", o.out}},
                                      o.p);
        CsvWriter csv(o.out, chaylab::make_header("scan", opts, o.p),
                      {"Vm", "gKCa", "label", "minReY", "omegaStar", "maxReZero"});
        for (const auto& r : regime_scan(o.v_lo, o.v_hi, o.samples, o.p, o.r))
            csv.row({r.V_m, r.g_KCa, to_string(r.kind), r.min_ReY, r.argmin_omega, r.max_Re_zero});
    });
}

struct BoundaryOpts {
    ChayParams p;
    BoundaryOptions b;
    std::string out = "-";
};

void setup_find_boundaries(CLI::App& app, BoundaryOpts& o) {
    auto* c = app.add_subcommand("find-boundaries", "Locate the two local-activity edges and the two Hopf points");
    add_model_flags(c, o.p);
    c->add_option("--v-lo", o.b.V_lo, "Search bracket start (mV)");
    c->add_option("--v-hi", o.b.V_hi, "Search bracket end (mV)");
    c->add_option("--scan-points", o.b.scan_points, "Bracketing scan points");
    c->add_option("--tol", o.b.tolerance, "Bisection tolerance on V_m (mV)");
    c->add_option("--omega-max", o.b.regime.omega_max, "Upper frequency of the Re Y search (rad/s)");
    c->add_option("--out", o.out, "Output JSON ('-' for stdout)");
    c->callback([&o] {
        o.p.validate();
        const json opts = with_params({{"v-lo", o.b.V_lo},
                                       {"v-hi", o.b.V_hi},
                                       {"scan-points", o.b.scan_points},
                                       {"tol", o.b.tolerance},
                                       {"omega-max", o.b.regime.omega_max},
                                       {"out", o.out}},
                                      o.p);
        json list = json::array();
        for (const auto& b : find_boundaries(o.p, o.b)) {
            json j{{"kind", to_string(b.kind)}, {"Vm", b.V_m},          {"gKCa", b.g_KCa},
                   {"crossing_value", b.crossing_value}, {"omega", b.omega}};
            if (b.kind != BoundaryKind::LocalActivityEdge) j["l1"] = b.l1;
            list.push_back(j);
        }
        chaylab::write_json(o.out, {{"boundaries", list}, {"header", chaylab::make_header("find-boundaries", opts, o.p)}});
    });
}

// ---- reproduce -------------------------------------------------------------

struct ReproduceOpts {
    std::string id;
    std::string out_dir = "reproduce_out";
    int failures = 0;
};

void setup_reproduce(CLI::App& app, ReproduceOpts& o) {
    auto* c = app.add_subcommand("reproduce", "Regenerate the data of one figure or table and check it");
    c->add_option("id", o.id, "Figure or table id")->required()->check(CLI::IsMember(chaylab::figure_ids()));
    c->add_option("--out-dir", o.out_dir, "Directory for the generated files");
    c->callback([&o] {
        std::filesystem::create_directories(o.out_dir);
        const auto checks = chaylab::reproduce(o.id, o.out_dir);
        json report = json::array();
        for (const auto& ch : checks) {
            std::printf("%s %s: %s\n", ch.pass ? "PASS" : "FAIL", ch.name.c_str(), ch.detail.c_str());
            report.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
            if (!ch.pass) ++o.failures;
        }
        chaylab::write_json((std::filesystem::path(o.out_dir) / (o.id + "_report.json")).string(),
                            {{"id", o.id}, {"checks", report},
                             {"header", chaylab::make_header("reproduce", {{"id", o.id}, {"out-dir", o.out_dir}}, {})}});
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memristive Chay model laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(chaylab::kVersion));
    app.set_config("--config", "", "JSON run configuration; command-line flags take precedence");
    app.config_formatter(std::make_shared<chaylab::JsonConfig>());
    app.allow_config_extras(CLI::config_extras_mode::ignore);

    SimulateOpts simulate;
    ClassifyOpts classify;
    HysteresisOpts hysteresis;
    DcCurveOpts dc;
    SmallSignalOpts small;
    SpectraOpts spectra;
    ScanOpts scan;
    BoundaryOpts boundaries;
    ReproduceOpts repro;
    setup_simulate(app, simulate);
    setup_classify(app, classify);
    setup_hysteresis(app, hysteresis);
    setup_dc_curve(app, dc);
    setup_small_signal(app, small);
    setup_spectra(app, spectra);
    setup_scan(app, scan);
    setup_find_boundaries(app, boundaries);
    setup_reproduce(app, repro);
    for (auto* sub : app.get_subcommands({})) sub->allow_config_extras(CLI::config_extras_mode::ignore);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const BracketError& e) {
        std::cerr << "error: " << e.what() << "\nscanned profile (x, f):\n";
        for (const auto& [x, f] : e.profile()) std::cerr << "  " << x << ' ' << f << '\n';
        return 1;
    } catch (const BlowUpError& e) {
        std::cerr << "error: " << e.what() << " (last valid t = " << e.last_valid_time() << " s)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return repro.failures > 0 ? 1 : 0;
}
