#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chay/params.hpp"

namespace chay {

// The three membrane elements seen as two-terminal devices. The two
// potassium channels are first-order voltage-controlled memristors
// (i = G(x) v, dx/dt = f(x; v)); the mixed inward channel is a memoryless
// nonlinear resistor.
enum class ChannelKind { KV, KCa, Mixed };

std::string_view to_string(ChannelKind kind);

struct ChannelElement {
    ChannelKind kind = ChannelKind::Mixed;
    ChayParams params;
    double state = 0.0;  // n for KV, Ca for KCa, unused for Mixed

    static ChannelElement kv(const ChayParams& p, double n) { return {ChannelKind::KV, p, n}; }
    static ChannelElement kca(const ChayParams& p, double ca) { return {ChannelKind::KCa, p, ca}; }
    static ChannelElement mixed(const ChayParams& p) { return {ChannelKind::Mixed, p, 0.0}; }

    bool is_memristor() const { return kind != ChannelKind::Mixed; }
};

// G_KV(n) = g_KV n^4. n must lie in [0, 1].
double memductance_kv(double n, const ChayParams& p = {});

// G_KCa(Ca) = g_KCa Ca / (1 + Ca). Ca must be non-negative.
double memductance_kca(double ca, double g_kca);

// G_I(v_I) = g_I m_inf^3 h_inf evaluated at V = v_I + E_I.
double mixed_conductance(double v_I, const ChayParams& p = {});

// Element voltage for each channel relative to the membrane potential.
double reversal_of(ChannelKind kind, const ChayParams& p);

// i = G(state or v) v. Does not advance the state.
double element_current(const ChannelElement& e, double v);

// dx/dt of a memristor at element voltage v; ContractError for Mixed.
double element_state_rate(const ChannelElement& e, double v);

// State at which a memristor is at rest for a constant element voltage v.
double resting_state(ChannelKind kind, const ChayParams& p, double v = 0.0);

struct LoopSample {
    double t;  // s
    double v;  // mV
    double i;  // (1/s) mV
};

struct LoopMetrics {
    double origin_residual = 0.0;    // max |i| over samples with |v| below the pinch window
    double lobe_area = 0.0;          // |area(v > 0 lobe)| + |area(v < 0 lobe)|
    double signed_area = 0.0;        // shoelace area of the whole cycle
    double multivalue_spread = 0.0;  // max |i_up - i_down| at equal v
    double max_abs_current = 0.0;
    double state_drift = 0.0;        // |x(end of cycle) - x(start of cycle)|
};

struct HysteresisLoop {
    ChannelKind kind = ChannelKind::Mixed;
    double amplitude = 0.0;   // mV
    double frequency = 0.0;   // Hz
    int samples_per_cycle = 0;
    std::vector<LoopSample> samples;  // last two cycles
    LoopMetrics metrics;              // computed on the final cycle
};

struct DriveOptions {
    int samples_per_cycle = 1000;  // rounded up to a multiple of 4
    int substeps = 4;              // RK4 steps per sample
};

// Drives the element with v(t) = amplitude sin(2 pi f t) for `cycles`
// periods, keeping the last two. The memristor state starts from
// `initial_state`, or from its rest value at v = 0 when absent.
HysteresisLoop drive_sinusoid(ChannelElement element, double amplitude, double frequency,
                              int cycles, std::optional<double> initial_state = std::nullopt,
                              const DriveOptions& options = {});

// Metrics of one cycle sampled uniformly in phase, starting at phase 0.
LoopMetrics loop_metrics(std::span<const LoopSample> cycle, double amplitude);

// Integrates a memristor state under a recorded element-voltage waveform
// sampled every `dt`. Uses RK4 with step 2 dt so every stage lands on a
// sample. Returns the state at samples 0, 2, 4, ...
std::vector<double> follow_waveform(ChannelElement element, std::span<const double> v, double dt);

} // namespace chay
