#pragma once

#include <Eigen/Core>

namespace chay {

// Model constants. Conductances are pre-divided by the membrane capacitance
// and carry units of 1/s; potentials are in mV; time is in seconds.
struct ChayParams {
    double C_m = 1.0;
    double E_K = -75.0;
    double E_I = 100.0;
    double E_L = -40.0;
    double E_Ca = 100.0;
    double g_I = 1800.0;
    double g_KV = 1700.0;
    double g_L = 7.0;
    double g_KCa = 0.0;          // free parameter, either sign
    double k_Ca = 3.3 / 18.0;
    double rho = 0.27;
    double lambda_n = 230.0;
    double I_ext = 0.0;

    static ChayParams with_gkca(double g) {
        ChayParams p;
        p.g_KCa = g;
        return p;
    }

    // Throws DomainError when a strictly positive constant is not.
    void validate() const;
};

// (V [mV], n, Ca)
using State = Eigen::Vector3d;

enum StateIndex : Eigen::Index { kV = 0, kN = 1, kCa = 2 };

inline State make_state(double V, double n, double Ca) { return State(V, n, Ca); }

} // namespace chay
