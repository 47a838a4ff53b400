#include "chay/smallsignal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chay/equilibrium.hpp"
#include "chay/errors.hpp"
#include "chay/kinetics.hpp"

namespace chay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ElementLinearization with_circuit(ElementLinearization e) {
    if (e.a12 == 0.0) {
        e.infinite_resistance = true;
        e.R2 = kInf;
    } else {
        e.R2 = 1.0 / e.a12;
    }
    if (e.kind == ChannelKind::Mixed) return e;
    const double ab = e.a11 * e.b12;
    if (ab == 0.0) {
        e.degenerate = true;
        e.L = kInf;
        e.R1 = kInf;
    } else {
        e.L = 1.0 / ab;
        e.R1 = -e.b11 / ab;
    }
    return e;
}

// d/dV [m^3 h (V - E)] for the mixed-channel open fraction.
double open_current_slope(double V, double E) {
    return mixed_open_fraction_slope(V) * (V - E) + mixed_open_fraction(V);
}

} // namespace

std::complex<double> ElementLinearization::admittance(std::complex<double> s) const {
    std::complex<double> y = infinite_resistance ? 0.0 : 1.0 / R2;
    if (kind != ChannelKind::Mixed && !degenerate) y += 1.0 / (L * s + R1);
    return y;
}

ElementLinearization mixed_linearization(double V_m, const ChayParams& p) {
    detail::require_finite(V_m, "membrane potential");
    ElementLinearization e;
    e.kind = ChannelKind::Mixed;
    e.a12 = p.g_I * open_current_slope(V_m, p.E_I);
    return with_circuit(e);
}

ElementLinearization kv_linearization(double V_m, const ChayParams& p) {
    detail::require_finite(V_m, "membrane potential");
    const auto k = gate_kinetics(V_m, p.lambda_n);
    const auto s = gate_slopes(V_m);
    const double n = k.n_inf;
    ElementLinearization e;
    e.kind = ChannelKind::KV;
    e.a11 = 4.0 * p.g_KV * n * n * n * (V_m - p.E_K);
    e.a12 = p.g_KV * n * n * n * n;
    e.b11 = -p.lambda_n * (k.alpha_n + k.beta_n);
    e.b12 = p.lambda_n * (s.alpha_n * (1.0 - n) - s.beta_n * n);
    return with_circuit(e);
}

ElementLinearization kca_linearization(double V_m, double g_kca, const ChayParams& p) {
    const double ca = equilibrium_gates(V_m, p).ca_hat;
    if (ca == -1.0) throw DomainError("calcium-activated memductance has a pole at Ca = -1");
    const double one_ca = 1.0 + ca;
    ElementLinearization e;
    e.kind = ChannelKind::KCa;
    e.a11 = g_kca * (V_m - p.E_K) / (one_ca * one_ca);
    e.a12 = g_kca * ca / one_ca;
    e.b11 = -p.rho * p.k_Ca;
    e.b12 = -p.rho * open_current_slope(V_m, p.E_Ca);
    return with_circuit(e);
}

CompositeElements linearize_all(double V_m, double g_kca, const ChayParams& p) {
    return {mixed_linearization(V_m, p), kv_linearization(V_m, p), kca_linearization(V_m, g_kca, p)};
}

RationalAdmittance composite_admittance(double V_m, double g_kca, const ChayParams& p) {
    const auto el = linearize_all(V_m, g_kca, p);
    for (const auto* e : {&el.mixed, &el.kv, &el.kca}) {
        const std::string name(to_string(e->kind));
        if (e->degenerate)
            throw SingularError(name + " element has no inductive branch at V_m = " + std::to_string(V_m));
        if (e->infinite_resistance)
            throw SingularError(name + " element has infinite parallel resistance at V_m = " +
                                std::to_string(V_m));
    }
    const double C = p.C_m, GL = p.g_L;
    const double R1I = el.mixed.R2;
    const double LKV = el.kv.L, R1KV = el.kv.R1, R2KV = el.kv.R2;
    const double LKCa = el.kca.L, R1KCa = el.kca.R1, R2KCa = el.kca.R2;
    const double cross = LKV * R1KCa + LKCa * R1KV;

    RationalAdmittance Y;
    Y.V_m = V_m;
    Y.g_KCa = g_kca;
    Y.b[0] = LKV * LKCa * R1I * R2KV * R2KCa * C;
    Y.b[1] = cross * R1I * R2KV * R2KCa * C + LKV * LKCa * R2KV * R2KCa + LKV * LKCa * R1I * R2KCa +
             LKV * LKCa * R1I * R2KV + LKV * LKCa * R1I * R2KV * R2KCa * GL;
    Y.b[2] = R1I * R1KV * R1KCa * R2KV * R2KCa * C + LKCa * R1I * R2KV * R2KCa + LKV * R1I * R2KV * R2KCa +
             cross * R2KV * R2KCa + cross * R1I * R2KCa + cross * R1I * R2KV + cross * R1I * R2KV * R2KCa * GL;
    Y.b[3] = R1I * R1KCa * R2KV * R2KCa + R1I * R1KV * R2KV * R2KCa + R1KV * R1KCa * R2KV * R2KCa +
             R1I * R1KV * R1KCa * R2KCa + R1I * R1KV * R1KCa * R2KV + R1I * R1KV * R1KCa * R2KV * R2KCa * GL;
    Y.a[0] = LKV * LKCa * R1I * R2KV * R2KCa;
    Y.a[1] = cross * R1I * R2KV * R2KCa;
    Y.a[2] = R1I * R1KV * R1KCa * R2KV * R2KCa;
    return Y;
}

std::complex<double> direct_admittance(double V_m, double g_kca, std::complex<double> s, const ChayParams& p) {
    const auto el = linearize_all(V_m, g_kca, p);
    return p.C_m * s + p.g_L + el.mixed.admittance(s) + el.kv.admittance(s) + el.kca.admittance(s);
}

FrequencyPoint frequency_response(const RationalAdmittance& Y, double omega) {
    if (!std::isfinite(omega)) throw DomainError("frequency must be finite");
    const auto [b3, b2, b1, b0] = Y.b;
    const auto [a2, a1, a0] = Y.a;
    const double w2 = omega * omega;
    const double even_a = a0 - a2 * w2;
    const double even_b = b0 - b2 * w2;
    const double odd_b = b1 - b3 * w2;
    const double den = even_a * even_a + (a1 * omega) * (a1 * omega);
    if (den == 0.0) throw SingularError("admittance pole on the imaginary axis at omega = " + std::to_string(omega));
    return {omega, (even_b * even_a + a1 * w2 * odd_b) / den, omega * (odd_b * even_a - a1 * even_b) / den};
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("log grid needs 0 < lo < hi");
    if (points < 2) throw ConfigError("log grid needs at least 2 points");
    std::vector<double> w(static_cast<std::size_t>(points));
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int k = 0; k < points; ++k)
        w[static_cast<std::size_t>(k)] = std::pow(10.0, llo + (lhi - llo) * k / (points - 1));
    w.front() = lo;
    w.back() = hi;
    return w;
}

std::vector<FrequencyPoint> frequency_sweep(const RationalAdmittance& Y, double omega_lo, double omega_hi,
                                            int points) {
    std::vector<FrequencyPoint> out;
    out.reserve(static_cast<std::size_t>(points));
    for (double w : log_grid(omega_lo, omega_hi, points)) out.push_back(frequency_response(Y, w));
    return out;
}

} // namespace chay
