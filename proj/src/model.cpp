#include "chay/model.hpp"

#include <cmath>
#include <string>

namespace chay {

void ChayParams::validate() const {
    const std::pair<const char*, double> positive[] = {
        {"C_m", C_m}, {"g_I", g_I}, {"g_KV", g_KV}, {"g_L", g_L},
        {"k_Ca", k_Ca}, {"rho", rho}, {"lambda_n", lambda_n},
    };
    for (const auto& [name, v] : positive) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError(std::string(name) + " must be strictly positive and finite");
    }
    const std::pair<const char*, double> finite[] = {
        {"E_K", E_K}, {"E_I", E_I}, {"E_L", E_L}, {"E_Ca", E_Ca}, {"g_KCa", g_KCa}, {"I_ext", I_ext},
    };
    for (const auto& [name, v] : finite) {
        if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
    }
}

namespace {
void require_finite_state(const State& x) {
    if (!x.allFinite()) throw DomainError("state must be finite");
}
} // namespace

State rhs(const State& x, const ChayParams& p) {
    require_finite_state(x);
    const auto d = rhs_components(x[kV], x[kN], x[kCa], p);
    return State(d[0], d[1], d[2]);
}

Eigen::Matrix3d jacobian(const State& x, const ChayParams& p) {
    require_finite_state(x);
    const double V = x[kV], n = x[kN], Ca = x[kCa];
    const auto k = gate_kinetics(V, p.lambda_n);
    const auto s = gate_slopes(V);

    const double open_I = k.m_inf * k.m_inf * k.m_inf * k.h_inf;
    const double open_I_slope = mixed_open_fraction_slope(V);
    const double n3 = n * n * n;
    const double ca_frac = Ca / (1.0 + Ca);
    const double ca_frac_slope = 1.0 / ((1.0 + Ca) * (1.0 + Ca));
    const double rate_sum = k.alpha_n + k.beta_n;

    Eigen::Matrix3d J;
    J(0, 0) = -(p.g_I * (open_I_slope * (V - p.E_I) + open_I) + p.g_KV * n3 * n +
                p.g_KCa * ca_frac + p.g_L) / p.C_m;
    J(0, 1) = -4.0 * p.g_KV * n3 * (V - p.E_K) / p.C_m;
    J(0, 2) = -p.g_KCa * ca_frac_slope * (V - p.E_K) / p.C_m;

    // dn/dt = lambda_n [alpha_n (1 - n) - beta_n n]
    J(1, 0) = p.lambda_n * (s.alpha_n * (1.0 - n) - s.beta_n * n);
    J(1, 1) = -p.lambda_n * rate_sum;
    J(1, 2) = 0.0;

    J(2, 0) = -p.rho * (open_I_slope * (V - p.E_Ca) + open_I);
    J(2, 1) = 0.0;
    J(2, 2) = -p.rho * p.k_Ca;
    return J;
}

} // namespace chay
