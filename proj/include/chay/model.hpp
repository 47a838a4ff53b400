#pragma once

#include <array>

#include <Eigen/Core>

#include "chay/kinetics.hpp"
#include "chay/params.hpp"

namespace chay {

// Time derivatives (dV/dt [mV/s], dn/dt [1/s], dCa/dt [1/s]) of the
// three-variable model. Generic in the scalar so that Jet evaluation gives
// higher derivatives for free.
template <typename Scalar>
std::array<Scalar, 3> rhs_components(const Scalar& V, const Scalar& n, const Scalar& Ca,
                                     const ChayParams& p) {
    const auto k = gate_kinetics(V, p.lambda_n);
    const Scalar open_I = k.m_inf * k.m_inf * k.m_inf * k.h_inf;
    const Scalar n2 = n * n;
    const Scalar i_mixed = p.g_I * open_I * (V - p.E_I);
    const Scalar i_kv = p.g_KV * n2 * n2 * (V - p.E_K);
    const Scalar i_kca = p.g_KCa * Ca / (1.0 + Ca) * (V - p.E_K);
    const Scalar i_leak = p.g_L * (V - p.E_L);
    return {
        (p.I_ext - i_mixed - i_kv - i_kca - i_leak) / p.C_m,
        (k.n_inf - n) / k.tau_n,
        -p.rho * (open_I * (V - p.E_Ca) + p.k_Ca * Ca),
    };
}

State rhs(const State& x, const ChayParams& p);

// Analytic d(rhs)/d(V, n, Ca).
Eigen::Matrix3d jacobian(const State& x, const ChayParams& p);

} // namespace chay
