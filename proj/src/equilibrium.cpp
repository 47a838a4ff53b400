#include "chay/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chay/errors.hpp"
#include "chay/kinetics.hpp"
#include "chay/model.hpp"

namespace chay {

namespace {

// Currents of every branch except the calcium-activated one, at DC.
double current_without_kca(double V, double n_hat, const ChayParams& p) {
    const double n2 = n_hat * n_hat;
    return p.g_I * mixed_open_fraction(V) * (V - p.E_I) + p.g_KV * n2 * n2 * (V - p.E_K) +
           p.g_L * (V - p.E_L);
}

double kca_activation(double ca) { return ca / (1.0 + ca); }

} // namespace

EquilibriumGates equilibrium_gates(double V, const ChayParams& p) {
    detail::require_finite(V, "membrane potential");
    EquilibriumGates g;
    g.n_hat = gate_kinetics(V, p.lambda_n).n_inf;
    g.ca_hat = -mixed_open_fraction(V) * (V - p.E_Ca) / p.k_Ca;
    g.negative_calcium = g.ca_hat < 0.0;
    return g;
}

double dc_current(double V, double g_kca, const ChayParams& p) {
    const auto eq = equilibrium_gates(V, p);
    return current_without_kca(V, eq.n_hat, p) + g_kca * kca_activation(eq.ca_hat) * (V - p.E_K);
}

double gkca_at_equilibrium(double V, const ChayParams& p) {
    const auto eq = equilibrium_gates(V, p);
    if (eq.ca_hat == -1.0) throw SingularError("calcium-activated memductance has a pole at Ca = -1");
    const double lever = kca_activation(eq.ca_hat) * (V - p.E_K);
    if (lever == 0.0 || !std::isfinite(lever))
        throw SingularError("no calcium-activated current at this V; g_KCa is not determined");
    return (p.I_ext - current_without_kca(V, eq.n_hat, p)) / lever;
}

EquilibriumPoint make_equilibrium(double V, double g_kca, const ChayParams& p) {
    const auto eq = equilibrium_gates(V, p);
    EquilibriumPoint q;
    q.V = V;
    q.n = eq.n_hat;
    q.Ca = eq.ca_hat;
    q.g_KCa = g_kca;
    ChayParams pp = p;
    pp.g_KCa = g_kca;
    q.residual = rhs(q.state(), pp).cwiseAbs().maxCoeff();
    return q;
}

EquilibriumPoint equilibrium_at(double V, const ChayParams& p) {
    return make_equilibrium(V, gkca_at_equilibrium(V, p), p);
}

std::vector<double> solve_v(double I, double g_kca, double lo, double hi, const ChayParams& p,
                            int scan_points) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("bracket must be finite");
    if (lo > hi) std::swap(lo, hi);
    if (scan_points < 2) throw ConfigError("scan needs at least 2 points");
    auto f = [&](double V) { return dc_current(V, g_kca, p) - I; };

    std::vector<double> roots;
    const double step = (hi - lo) / (scan_points - 1);
    double a = lo;
    double fa = f(a);
    for (int k = 1; k < scan_points; ++k) {
        const double b = (k == scan_points - 1) ? hi : lo + k * step;
        const double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
            double x0 = a, x1 = b, f0 = fa;
            while (x1 - x0 > 1e-12 * std::max(1.0, std::abs(x0))) {
                const double mid = 0.5 * (x0 + x1);
                if (mid <= x0 || mid >= x1) break;
                const double fm = f(mid);
                if (fm == 0.0) {
                    x0 = x1 = mid;
                    break;
                }
                if ((fm < 0.0) == (f0 < 0.0)) {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            roots.push_back(std::abs(f(x0)) <= std::abs(f(x1)) ? x0 : x1);
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(a);
    return roots;
}

namespace {

template <typename Fn>
std::vector<CurvePoint> sample_curve(double V_lo, double V_hi, int samples, const ChayParams& p, Fn fn) {
    if (samples < 2) throw ConfigError("a curve needs at least 2 samples");
    std::vector<CurvePoint> out(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double V = (k == samples - 1) ? V_hi : V_lo + (V_hi - V_lo) * k / (samples - 1);
        auto& pt = out[static_cast<std::size_t>(k)];
        pt.V = V;
        pt.value = fn(V);
        pt.negative_calcium = equilibrium_gates(V, p).negative_calcium;
    }
    return out;
}

} // namespace

std::vector<CurvePoint> dc_curve(double g_kca, double V_lo, double V_hi, int samples, const ChayParams& p) {
    return sample_curve(V_lo, V_hi, samples, p, [&](double V) { return dc_current(V, g_kca, p); });
}

std::vector<CurvePoint> gkca_curve(double V_lo, double V_hi, int samples, const ChayParams& p) {
    // Where the inversion is singular (V = E_K) the sample is NaN rather than
    // aborting the whole curve.
    return sample_curve(V_lo, V_hi, samples, p, [&](double V) {
        try {
            return gkca_at_equilibrium(V, p);
        } catch (const SingularError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    });
}

} // namespace chay
