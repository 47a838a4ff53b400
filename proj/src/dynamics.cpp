#include "chay/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chay/errors.hpp"
#include "chay/model.hpp"

namespace chay {

std::string_view to_string(AttractorKind kind) {
    switch (kind) {
    case AttractorKind::Equilibrium: return "Equilibrium";
    case AttractorKind::PeriodK: return "PeriodK";
    case AttractorKind::Chaotic: return "Chaotic";
    case AttractorKind::Bursting: return "Bursting";
    }
    return "unknown";
}

std::string_view to_string(ProbeOutcome outcome) {
    switch (outcome) {
    case ProbeOutcome::ConvergesToEquilibrium: return "ConvergesToEquilibrium";
    case ProbeOutcome::StableLimitCycle: return "StableLimitCycle";
    case ProbeOutcome::Spikes: return "Spikes";
    }
    return "unknown";
}

State rk4_step(const State& x, const ChayParams& p, double dt) {
    const State k1 = rhs(x, p);
    const State k2 = rhs(x + 0.5 * dt * k1, p);
    const State k3 = rhs(x + 0.5 * dt * k2, p);
    const State k4 = rhs(x + dt * k3, p);
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const State& initial, const ChayParams& p, double dt, double T, const IntegrateOptions& opt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(T > dt) || !std::isfinite(T)) throw ConfigError("T must exceed dt");
    if (opt.record_stride < 1) throw ConfigError("record stride must be at least 1");
    if (!initial.allFinite()) throw DomainError("initial state must be finite");
    p.validate();

    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    const auto stride = static_cast<std::size_t>(opt.record_stride);
    Trajectory tr;
    tr.params = p;
    tr.dt = dt;
    tr.record_stride = opt.record_stride;
    const std::size_t samples = steps / stride + 1;
    tr.t.reserve(samples);
    tr.V.reserve(samples);
    tr.n.reserve(samples);
    tr.Ca.reserve(samples);
    auto record = [&](std::size_t step, const State& x) {
        tr.t.push_back(static_cast<double>(step) * dt);
        tr.V.push_back(x[kV]);
        tr.n.push_back(x[kN]);
        tr.Ca.push_back(x[kCa]);
    };

    State x = initial;
    record(0, x);
    for (std::size_t s = 1; s <= steps; ++s) {
        State next;
        try {
            next = rk4_step(x, p, dt);
        } catch (const DomainError&) {
            throw BlowUpError("non-finite state during integration", static_cast<double>(s - 1) * dt);
        }
        if (!next.allFinite() || std::abs(next[kV]) > opt.V_limit || next[kCa] > opt.Ca_limit)
            throw BlowUpError("state left the physical envelope (|V| > " + std::to_string(opt.V_limit) +
                                  " or Ca > " + std::to_string(opt.Ca_limit) + ")",
                              static_cast<double>(s - 1) * dt);
        x = next;
        if (s % stride == 0) record(s, x);
    }
    return tr;
}

void check_invariants(const Trajectory& traj) {
    const std::size_t N = traj.size();
    if (traj.V.size() != N || traj.n.size() != N || traj.Ca.size() != N)
        throw ContractError("trajectory series have different lengths");
    const double h = traj.sample_interval();
    for (std::size_t k = 0; k < N; ++k) {
        if (std::abs(traj.t[k] - static_cast<double>(k) * h) > 1e-9 * std::max(1.0, traj.t[k]))
            throw ContractError("trajectory is not uniformly sampled");
        if (!std::isfinite(traj.V[k]) || !std::isfinite(traj.n[k]) || !std::isfinite(traj.Ca[k]))
            throw ContractError("trajectory holds a non-finite sample");
        if (traj.n[k] < 0.0 || traj.n[k] > 1.0) throw ContractError("gating variable left [0, 1]");
    }
}

StepHalvingCheck step_halving(const State& initial, const ChayParams& p, double dt, double T) {
    const auto coarse = integrate(initial, p, dt, T);
    const auto fine = integrate(initial, p, 0.5 * dt, T, {.record_stride = 2});
    const auto [lo, hi] = std::minmax_element(coarse.V.begin(), coarse.V.end());
    return {std::abs(coarse.V.back() - fine.V.back()), *hi - *lo};
}

namespace {

struct Peak {
    double time;
    double value;
};

// Strict rise then non-increase; the maximum is refined by the parabola
// through the three samples.
std::vector<Peak> local_maxima(const std::vector<double>& x, std::size_t from, double h) {
    std::vector<Peak> out;
    for (std::size_t k = std::max<std::size_t>(from, 1); k + 1 < x.size(); ++k) {
        const double a = x[k - 1], b = x[k], c = x[k + 1];
        if (!(b > a && b >= c)) continue;
        const double d = a - 2.0 * b + c;
        double value = b, offset = 0.0;
        if (d != 0.0) {
            value = b - 0.125 * (a - c) * (a - c) / d;
            offset = 0.5 * (a - c) / d;
        }
        out.push_back({(static_cast<double>(k) + offset) * h, value});
    }
    return out;
}

// Single-linkage clustering of sorted values; returns the label of each
// input in its original order and the cluster centres.
std::vector<int> cluster_levels(const std::vector<double>& v, double eps, std::vector<double>& centres) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<int> label(v.size());
    centres.clear();
    int c = -1;
    double prev = 0.0, sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j : order) {
        if (c < 0 || v[j] - prev > eps) {
            if (c >= 0) centres.push_back(sum / static_cast<double>(count));
            ++c;
            sum = 0.0;
            count = 0;
        }
        label[j] = c;
        sum += v[j];
        ++count;
        prev = v[j];
    }
    if (count > 0) centres.push_back(sum / static_cast<double>(count));
    return label;
}

std::optional<int> minimal_period(const std::vector<int>& labels, int max_period) {
    const int n = static_cast<int>(labels.size());
    for (int p = 1; p <= max_period && 2 * p < n; ++p) {
        bool ok = true;
        for (int i = 0; i + p < n && ok; ++i) ok = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(i + p)];
        if (ok) return p;
    }
    return std::nullopt;
}

} // namespace

AttractorLabel classify_attractor(const Trajectory& traj, const ClassifyOptions& opt) {
    if (!(opt.transient_fraction >= 0.0 && opt.transient_fraction < 1.0))
        throw ConfigError("transient fraction must lie in [0, 1)");
    if (traj.size() < 3) throw InconclusiveError("trajectory too short to classify");

    AttractorLabel out;
    auto& ev = out.evidence;
    const auto start = static_cast<std::size_t>(opt.transient_fraction * static_cast<double>(traj.size()));
    const double h = traj.sample_interval();

    ev.terminal_drift = std::abs(rhs(traj.back(), traj.params)[kV]);
    const auto [vlo, vhi] = std::minmax_element(traj.V.begin() + static_cast<std::ptrdiff_t>(start), traj.V.end());
    ev.v_range = *vhi - *vlo;
    if (ev.terminal_drift < opt.drift_tolerance) {
        out.kind = AttractorKind::Equilibrium;
        return out;
    }

    const auto peaks = local_maxima(traj.Ca, start, h);
    ev.peak_count = peaks.size();
    if (peaks.size() < opt.min_peaks)
        throw InconclusiveError("only " + std::to_string(peaks.size()) + " calcium peaks after the transient (need " +
                                std::to_string(opt.min_peaks) + "); integrate longer");

    std::vector<double> heights;
    heights.reserve(peaks.size());
    for (const auto& pk : peaks) heights.push_back(pk.value);
    const auto [plo, phi] = std::minmax_element(heights.begin(), heights.end());
    ev.peak_range = *phi - *plo;
    ev.cluster_tolerance = std::max(opt.cluster_rel * ev.peak_range, opt.cluster_floor);
    const auto labels = cluster_levels(heights, ev.cluster_tolerance, ev.peak_levels);
    const int clusters = static_cast<int>(ev.peak_levels.size());
    if (clusters <= opt.max_period) ev.period = minimal_period(labels, opt.max_period);

    // Spike train: V maxima in the upper half of the post-transient swing.
    const double mid = 0.5 * (*vlo + *vhi);
    std::vector<double> spikes;
    for (const auto& pk : local_maxima(traj.V, start, h))
        if (pk.value > mid) spikes.push_back(pk.time);
    ev.spike_count = spikes.size();
    if (spikes.size() >= 3) {
        std::vector<double> isi;
        for (std::size_t k = 1; k < spikes.size(); ++k) isi.push_back(spikes[k] - spikes[k - 1]);
        std::sort(isi.begin(), isi.end());
        std::size_t split = 0;
        double best = 0.0;
        for (std::size_t k = 0; k + 1 < isi.size(); ++k) {
            const double r = isi[k] > 0.0 ? isi[k + 1] / isi[k] : 0.0;
            if (r > best) {
                best = r;
                split = k + 1;
            }
        }
        if (split > 0) {
            const auto mean = [](auto b, auto e) { return std::accumulate(b, e, 0.0) / static_cast<double>(e - b); };
            ev.isi_short_mean = mean(isi.begin(), isi.begin() + static_cast<std::ptrdiff_t>(split));
            ev.isi_long_mean = mean(isi.begin() + static_cast<std::ptrdiff_t>(split), isi.end());
            ev.isi_ratio = ev.isi_long_mean / ev.isi_short_mean;
        }
    }

    if (!ev.period) {
        out.kind = AttractorKind::Chaotic;
    } else if (ev.isi_ratio > opt.burst_ratio) {
        out.kind = AttractorKind::Bursting;
        out.k = *ev.period;
    } else {
        out.kind = AttractorKind::PeriodK;
        out.k = *ev.period;
    }
    return out;
}

ProbeResult hopf_probe(double g_kca, const State& initial, double T, const ProbeOptions& opt, const ChayParams& base) {
    if (!(opt.window > 0.0) || !(T >= 8.0 * opt.window))
        throw ConfigError("probe duration must cover at least 8 envelope windows");
    ChayParams p = base;
    p.g_KCa = g_kca;
    return probe_outcome(integrate(initial, p, opt.dt, T, {.record_stride = opt.record_stride}), opt);
}

ProbeResult probe_outcome(const Trajectory& tr, const ProbeOptions& opt) {
    const auto m = static_cast<std::size_t>(std::llround(opt.window / tr.sample_interval()));
    const std::size_t start = tr.size() / 2;
    if (m < 2 || tr.size() - start < 8 * m) throw ConfigError("trajectory tail must cover at least 8 envelope windows");

    ProbeResult r;
    const auto [lo, hi] = std::minmax_element(tr.V.begin() + static_cast<std::ptrdiff_t>(start), tr.V.end());
    r.tail_range = *hi - *lo;
    if (r.tail_range > opt.spike_range) {
        r.outcome = ProbeOutcome::Spikes;
        return r;
    }

    // Envelope amplitude per window and its log slope between windows.
    std::vector<double> amp;
    for (std::size_t k = start; k + m <= tr.size(); k += m) {
        const auto [a, b] = std::minmax_element(tr.V.begin() + static_cast<std::ptrdiff_t>(k),
                                                tr.V.begin() + static_cast<std::ptrdiff_t>(k + m));
        amp.push_back(*b - *a);
    }
    r.last_amplitude = amp.back();
    if (r.last_amplitude < opt.settled_amplitude) {
        r.outcome = ProbeOutcome::ConvergesToEquilibrium;
        return r;
    }
    std::vector<double> rate;
    for (std::size_t k = 1; k < amp.size(); ++k) rate.push_back(std::log(amp[k] / amp[k - 1]) / opt.window);
    const std::size_t q = rate.size() / 4;
    auto mean = [&](std::size_t a, std::size_t b) {
        return std::accumulate(rate.begin() + static_cast<std::ptrdiff_t>(a), rate.begin() + static_cast<std::ptrdiff_t>(b), 0.0) /
               static_cast<double>(b - a);
    };
    r.rate_third = mean(2 * q, 3 * q);
    r.rate_last = mean(3 * q, rate.size());

    bool at_rest = false;
    try {
        at_rest = classify_attractor(tr).kind == AttractorKind::Equilibrium;
    } catch (const InconclusiveError&) {
    }
    const bool decaying = r.rate_last < -opt.decay_rate && r.rate_last / r.rate_third > 0.5;
    r.outcome = (at_rest || decaying) ? ProbeOutcome::ConvergesToEquilibrium : ProbeOutcome::StableLimitCycle;
    return r;
}

} // namespace chay
