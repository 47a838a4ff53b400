#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "chay/params.hpp"

namespace chay {

// Uniformly sampled solution; sample k is at t = k * record_stride * dt.
struct Trajectory {
    std::vector<double> t, V, n, Ca;
    ChayParams params;
    double dt = 0.0;  // integration step (s)
    int record_stride = 1;

    std::size_t size() const { return t.size(); }
    State state(std::size_t k) const { return make_state(V[k], n[k], Ca[k]); }
    State back() const { return state(size() - 1); }
    double sample_interval() const { return dt * record_stride; }
};

struct IntegrateOptions {
    int record_stride = 1;
    double V_limit = 500.0;   // |V| above this is a blow-up, mV
    double Ca_limit = 100.0;
};

// One classic fourth-order Runge-Kutta step.
State rk4_step(const State& x, const ChayParams& p, double dt);

// Fixed-step RK4 over [0, T]. ConfigError unless dt > 0 and T > dt;
// BlowUpError when the state leaves the physical envelope.
Trajectory integrate(const State& initial, const ChayParams& p, double dt, double T,
                     const IntegrateOptions& opt = {});

// Throws ContractError when a trajectory breaks its invariants (uniform
// sampling, finite samples, n in [0, 1]).
void check_invariants(const Trajectory& traj);

struct StepHalvingCheck {
    double terminal_difference = 0.0;  // |V_dt(T) - V_dt/2(T)|
    double amplitude = 0.0;            // max V - min V of the dt run
    double relative() const { return amplitude > 0.0 ? terminal_difference / amplitude : terminal_difference; }
};

// Integrates with dt and dt/2 and compares the terminal membrane potential.
StepHalvingCheck step_halving(const State& initial, const ChayParams& p, double dt, double T);

enum class AttractorKind { Equilibrium, PeriodK, Chaotic, Bursting };

std::string_view to_string(AttractorKind kind);

struct AttractorEvidence {
    std::size_t peak_count = 0;
    std::vector<double> peak_levels;  // cluster centres of the Ca maxima
    double peak_range = 0.0;
    double cluster_tolerance = 0.0;
    std::optional<int> period;        // of the cluster-label sequence
    std::size_t spike_count = 0;
    double isi_short_mean = 0.0;      // s
    double isi_long_mean = 0.0;       // s
    double isi_ratio = 0.0;
    double terminal_drift = 0.0;      // |dV/dt| at the last sample, mV/s
    double v_range = 0.0;             // post-transient max V - min V
};

struct AttractorLabel {
    AttractorKind kind = AttractorKind::Equilibrium;
    int k = 0;  // period for PeriodK
    AttractorEvidence evidence;
};

struct ClassifyOptions {
    double transient_fraction = 0.5;
    std::size_t min_peaks = 30;
    double drift_tolerance = 1e-4;  // mV/s
    double cluster_rel = 1e-3;
    double cluster_floor = 1e-9;
    int max_period = 16;
    double burst_ratio = 5.0;
};

// Names the attractor from the post-transient window. Ca maxima are
// clustered by height; a periodic label sequence of period k is PeriodK(k)
// unless the V spike train is grouped into bursts. InconclusiveError when
// there are too few peaks and the state is not at rest.
AttractorLabel classify_attractor(const Trajectory& traj, const ClassifyOptions& opt = {});

enum class ProbeOutcome { ConvergesToEquilibrium, StableLimitCycle, Spikes };

std::string_view to_string(ProbeOutcome outcome);

struct ProbeOptions {
    double dt = 1e-4;
    int record_stride = 10;
    double window = 20.0;          // s, envelope window over the tail half
    double spike_range = 10.0;     // mV; larger tail swings are spikes
    double decay_rate = 1e-4;      // 1/s; slower envelope decay is a limit cycle
    double settled_amplitude = 1e-9;
};

struct ProbeResult {
    ProbeOutcome outcome = ProbeOutcome::ConvergesToEquilibrium;
    double tail_range = 0.0;      // mV
    double last_amplitude = 0.0;  // mV, last envelope window
    double rate_third = 0.0;      // mean log-envelope slope, third quarter of the tail
    double rate_last = 0.0;       // same, last quarter
};

// Integrates from `initial` and reduces the motion near a Hopf point to
// rest, small oscillation or spiking. Decay is judged on the envelope of V
// so that equilibria with a slowly damped focus are still recognised.
ProbeResult hopf_probe(double g_kca, const State& initial, double T = 600.0, const ProbeOptions& opt = {},
                       const ChayParams& base = {});

// The same reduction applied to an existing trajectory.
ProbeResult probe_outcome(const Trajectory& traj, const ProbeOptions& opt = {});

} // namespace chay
