#pragma once

#include <cmath>

#include "chay/errors.hpp"
#include "chay/jet.hpp"

namespace chay {

namespace detail {

inline constexpr double kSeriesCutoff = 1e-4;

// x / (1 - e^{-x}); the removable singularity at x = 0 is bridged by its
// series 1 + x/2 + x^2/12.
template <typename Scalar>
Scalar exprel_inv(const Scalar& x) {
    using std::expm1;
    if (std::abs(value_of(x)) < kSeriesCutoff) return 1.0 + x / 2.0 + x * x / 12.0;
    return x / -expm1(-x);
}

// d/dx [x / (1 - e^{-x})]
inline double exprel_inv_slope(double x) {
    if (std::abs(x) < kSeriesCutoff) return 0.5 + x / 6.0;
    const double em = -std::expm1(-x);
    const double e = std::exp(-x);
    return (em - x * e) / (em * em);
}

template <typename Scalar>
void require_finite(const Scalar& v, const char* what) {
    if (!std::isfinite(value_of(v))) throw DomainError(std::string(what) + " must be finite");
}

} // namespace detail

template <typename Scalar>
struct GateKinetics {
    Scalar alpha_n, beta_n;
    Scalar alpha_m, beta_m;
    Scalar alpha_h, beta_h;
    Scalar n_inf, m_inf, h_inf;
    Scalar tau_n;  // s
};

// Six voltage-dependent rates, three steady-state activations and the
// potassium gate time constant at membrane potential V (mV).
template <typename Scalar>
GateKinetics<Scalar> gate_kinetics(const Scalar& V, double lambda_n = 230.0) {
    using std::exp;
    detail::require_finite(V, "membrane potential");
    GateKinetics<Scalar> g;
    g.alpha_n = 0.1 * detail::exprel_inv(Scalar(0.1 * (V + 20.0)));
    g.beta_n = 0.125 * exp(-(V + 30.0) / 80.0);
    g.alpha_m = detail::exprel_inv(Scalar(0.1 * (V + 25.0)));
    g.beta_m = 4.0 * exp(-(V + 50.0) / 18.0);
    g.alpha_h = 0.07 * exp(-(V + 50.0) / 20.0);
    g.beta_h = 1.0 / (1.0 + exp(-0.1 * (V + 20.0)));
    g.n_inf = g.alpha_n / (g.alpha_n + g.beta_n);
    g.m_inf = g.alpha_m / (g.alpha_m + g.beta_m);
    g.h_inf = g.alpha_h / (g.alpha_h + g.beta_h);
    g.tau_n = 1.0 / (lambda_n * (g.alpha_n + g.beta_n));
    return g;
}

// dV-derivatives of the rates and steady states.
struct GateSlopes {
    double alpha_n, beta_n;
    double alpha_m, beta_m;
    double alpha_h, beta_h;
    double n_inf, m_inf, h_inf;
};

inline GateSlopes gate_slopes(double V) {
    const auto k = gate_kinetics(V);
    GateSlopes s;
    s.alpha_n = 0.01 * detail::exprel_inv_slope(0.1 * (V + 20.0));
    s.beta_n = -k.beta_n / 80.0;
    s.alpha_m = 0.1 * detail::exprel_inv_slope(0.1 * (V + 25.0));
    s.beta_m = -k.beta_m / 18.0;
    s.alpha_h = -k.alpha_h / 20.0;
    s.beta_h = 0.1 * k.beta_h * (1.0 - k.beta_h);
    auto ratio_slope = [](double a, double b, double da, double db) {
        const double sum = a + b;
        return (da * b - a * db) / (sum * sum);
    };
    s.n_inf = ratio_slope(k.alpha_n, k.beta_n, s.alpha_n, s.beta_n);
    s.m_inf = ratio_slope(k.alpha_m, k.beta_m, s.alpha_m, s.beta_m);
    s.h_inf = ratio_slope(k.alpha_h, k.beta_h, s.alpha_h, s.beta_h);
    return s;
}

// Open fraction of the mixed inward channel, m_inf^3 h_inf, and its slope.
template <typename Scalar>
Scalar mixed_open_fraction(const Scalar& V) {
    const auto k = gate_kinetics(V);
    return k.m_inf * k.m_inf * k.m_inf * k.h_inf;
}

inline double mixed_open_fraction_slope(double V) {
    const auto k = gate_kinetics(V);
    const auto s = gate_slopes(V);
    const double m2 = k.m_inf * k.m_inf;
    return 3.0 * m2 * s.m_inf * k.h_inf + m2 * k.m_inf * s.h_inf;
}

} // namespace chay
