#include "chay/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chay/errors.hpp"
#include "chay/kinetics.hpp"

namespace chay {

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
    case ChannelKind::KV: return "kv";
    case ChannelKind::KCa: return "kca";
    case ChannelKind::Mixed: return "mixed";
    }
    return "unknown";
}

double memductance_kv(double n, const ChayParams& p) {
    if (!(n >= 0.0 && n <= 1.0)) throw DomainError("KV memductance: n must lie in [0, 1]");
    const double n2 = n * n;
    return p.g_KV * n2 * n2;
}

double memductance_kca(double ca, double g_kca) {
    if (!(ca >= 0.0)) throw DomainError("KCa memductance: Ca must be non-negative");
    if (std::isinf(ca)) return g_kca;
    return g_kca * ca / (1.0 + ca);
}

double mixed_conductance(double v_I, const ChayParams& p) {
    detail::require_finite(v_I, "element voltage");
    return p.g_I * mixed_open_fraction(v_I + p.E_I);
}

double reversal_of(ChannelKind kind, const ChayParams& p) {
    return kind == ChannelKind::Mixed ? p.E_I : p.E_K;
}

double element_current(const ChannelElement& e, double v) {
    detail::require_finite(v, "element voltage");
    switch (e.kind) {
    case ChannelKind::KV: return memductance_kv(e.state, e.params) * v;
    case ChannelKind::KCa: return memductance_kca(e.state, e.params.g_KCa) * v;
    case ChannelKind::Mixed: return mixed_conductance(v, e.params) * v;
    }
    throw ContractError("unknown channel kind");
}

double element_state_rate(const ChannelElement& e, double v) {
    detail::require_finite(v, "element voltage");
    const ChayParams& p = e.params;
    const double V = v + p.E_K;
    switch (e.kind) {
    case ChannelKind::KV: {
        const auto k = gate_kinetics(V, p.lambda_n);
        return p.lambda_n * (k.alpha_n * (1.0 - e.state) - k.beta_n * e.state);
    }
    case ChannelKind::KCa:
        return -p.rho * (mixed_open_fraction(V) * (V - p.E_Ca) + p.k_Ca * e.state);
    case ChannelKind::Mixed:
        throw ContractError("the mixed channel is memoryless and has no state equation");
    }
    throw ContractError("unknown channel kind");
}

double resting_state(ChannelKind kind, const ChayParams& p, double v) {
    const double V = v + p.E_K;
    switch (kind) {
    case ChannelKind::KV: return gate_kinetics(V, p.lambda_n).n_inf;
    case ChannelKind::KCa: return -mixed_open_fraction(V) * (V - p.E_Ca) / p.k_Ca;
    case ChannelKind::Mixed: throw ContractError("the mixed channel has no state");
    }
    throw ContractError("unknown channel kind");
}

namespace {

double shoelace(std::span<const LoopSample> pts) {
    double acc = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& a = pts[k];
        const auto& b = pts[(k + 1) % pts.size()];
        acc += a.v * b.i - b.v * a.i;
    }
    return 0.5 * acc;
}

} // namespace

LoopMetrics loop_metrics(std::span<const LoopSample> cycle, double amplitude) {
    const std::size_t N = cycle.size();
    if (N < 8 || N % 4 != 0) throw ConfigError("loop metrics need a cycle of 4k samples");
    LoopMetrics m;
    const double pinch_window = 1e-9 * amplitude;
    for (const auto& s : cycle) {
        m.max_abs_current = std::max(m.max_abs_current, std::abs(s.i));
        if (std::abs(s.v) < pinch_window) m.origin_residual = std::max(m.origin_residual, std::abs(s.i));
    }
    m.signed_area = shoelace(cycle);

    // Sample k sits at phase 2 pi k / N: v >= 0 on [0, N/2], v <= 0 on [N/2, N].
    const std::size_t half = N / 2;
    std::vector<LoopSample> lobe(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(half) + 1);
    const double upper = shoelace(lobe);
    lobe.assign(cycle.begin() + static_cast<std::ptrdiff_t>(half), cycle.end());
    lobe.push_back(cycle.front());
    const double lower = shoelace(lobe);
    m.lobe_area = std::abs(upper) + std::abs(lower);

    // Phases k and N/2 - k (and N/2 + k, N - k) share the same voltage.
    for (std::size_t k = 1; k < N / 4; ++k) {
        m.multivalue_spread = std::max(m.multivalue_spread, std::abs(cycle[k].i - cycle[half - k].i));
        m.multivalue_spread =
            std::max(m.multivalue_spread, std::abs(cycle[half + k].i - cycle[N - k].i));
    }
    return m;
}

HysteresisLoop drive_sinusoid(ChannelElement element, double amplitude, double frequency,
                              int cycles, std::optional<double> initial_state,
                              const DriveOptions& options) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw ConfigError("amplitude must be positive");
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw ConfigError("frequency must be positive");
    if (cycles < 3) throw ConfigError("at least 3 drive cycles are required");
    if (options.samples_per_cycle < 200)
        throw ConfigError("fewer than 200 samples per cycle cannot resolve the loop");
    if (options.substeps < 1) throw ConfigError("substeps must be at least 1");

    const int N = (options.samples_per_cycle + 3) / 4 * 4;
    const int sub = element.is_memristor() ? options.substeps : 1;
    const double period = 1.0 / frequency;
    const double h = period / (static_cast<double>(N) * sub);

    if (element.is_memristor())
        element.state = initial_state.value_or(resting_state(element.kind, element.params, 0.0));

    // Phase is reduced per cycle so the drive is exactly periodic in k.
    auto drive = [&](int k, double frac) {
        const double phase = 2.0 * std::numbers::pi * ((k % N) + frac) / N;
        return amplitude * std::sin(phase);
    };
    auto rate = [&](double x, double v) {
        ChannelElement probe = element;
        probe.state = x;
        return element_state_rate(probe, v);
    };

    HysteresisLoop loop;
    loop.kind = element.kind;
    loop.amplitude = amplitude;
    loop.frequency = frequency;
    loop.samples_per_cycle = N;
    const int total = cycles * N;
    const int keep_from = (cycles - 2) * N;
    loop.samples.reserve(static_cast<std::size_t>(2 * N));
    double state_at_last_cycle = element.state;

    for (int k = 0; k < total; ++k) {
        const double v = drive(k, 0.0);
        if (k >= keep_from) {
            if (k == total - N) state_at_last_cycle = element.state;
            loop.samples.push_back({k * period / N, v, element_current(element, v)});
        }
        if (!element.is_memristor()) continue;
        double x = element.state;
        for (int j = 0; j < sub; ++j) {
            const double f0 = static_cast<double>(j) / sub;
            const double df = 1.0 / sub;
            const double k1 = rate(x, drive(k, f0));
            const double k2 = rate(x + 0.5 * h * k1, drive(k, f0 + 0.5 * df));
            const double k3 = rate(x + 0.5 * h * k2, drive(k, f0 + 0.5 * df));
            const double k4 = rate(x + h * k3, drive(k, f0 + df));
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (!std::isfinite(x)) throw DomainError("memristor state diverged under drive");
        element.state = x;
    }

    std::span<const LoopSample> last(loop.samples.data() + N, static_cast<std::size_t>(N));
    loop.metrics = loop_metrics(last, amplitude);
    loop.metrics.state_drift = std::abs(element.state - state_at_last_cycle);
    return loop;
}

std::vector<double> follow_waveform(ChannelElement element, std::span<const double> v, double dt) {
    if (!element.is_memristor()) throw ContractError("only memristors carry a state to follow");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    std::vector<double> out;
    out.reserve(v.size() / 2 + 1);
    out.push_back(element.state);
    const double h = 2.0 * dt;
    auto rate = [&](double x, double vv) {
        ChannelElement probe = element;
        probe.state = x;
        return element_state_rate(probe, vv);
    };
    for (std::size_t k = 0; k + 2 < v.size(); k += 2) {
        const double x = element.state;
        const double k1 = rate(x, v[k]);
        const double k2 = rate(x + 0.5 * h * k1, v[k + 1]);
        const double k3 = rate(x + 0.5 * h * k2, v[k + 1]);
        const double k4 = rate(x + h * k3, v[k + 2]);
        element.state = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(element.state);
    }
    return out;
}

} // namespace chay
