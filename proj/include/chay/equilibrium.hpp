#pragma once

#include <vector>

#include "chay/params.hpp"

namespace chay {

// DC operating point of the full model.
struct EquilibriumPoint {
    double V = 0.0;      // mV
    double n = 0.0;
    double Ca = 0.0;
    double g_KCa = 0.0;  // 1/s
    double residual = 0.0;  // max |rhs| at the point

    State state() const { return make_state(V, n, Ca); }
};

struct EquilibriumGates {
    double n_hat = 0.0;
    double ca_hat = 0.0;
    bool negative_calcium = false;  // V above E_Ca; outside the physical model
};

// Gate activation and calcium level that make dn/dt and dCa/dt vanish at V.
EquilibriumGates equilibrium_gates(double V, const ChayParams& p = {});

// External current holding the membrane at V in DC (n, Ca at equilibrium).
// g_kca overrides p.g_KCa.
double dc_current(double V, double g_kca, const ChayParams& p = {});

// The unique g_KCa for which V is an equilibrium at I = p.I_ext.
// SingularError when the calcium-activated branch carries no current at V.
double gkca_at_equilibrium(double V, const ChayParams& p = {});

// Assembles the equilibrium with residual for an arbitrary (V, g_KCa).
EquilibriumPoint make_equilibrium(double V, double g_kca, const ChayParams& p = {});

// Equilibrium on the I = p.I_ext locus through V.
EquilibriumPoint equilibrium_at(double V, const ChayParams& p = {});

// All V in [lo, hi] with dc_current(V, g_kca) = I, ascending. Roots are
// located by a sign-change scan and refined by bisection.
std::vector<double> solve_v(double I, double g_kca, double lo, double hi,
                            const ChayParams& p = {}, int scan_points = 4096);

struct CurvePoint {
    double V = 0.0;
    double value = 0.0;
    bool negative_calcium = false;
};

// Uniform V samples of the DC V-I curve at fixed g_KCa.
std::vector<CurvePoint> dc_curve(double g_kca, double V_lo, double V_hi, int samples,
                                 const ChayParams& p = {});

// Uniform V samples of the I = 0 locus as g_KCa(V); NaN where undefined.
std::vector<CurvePoint> gkca_curve(double V_lo, double V_hi, int samples, const ChayParams& p = {});

} // namespace chay
