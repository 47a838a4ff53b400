#pragma once

#include <array>
#include <complex>
#include <vector>

#include "chay/channels.hpp"
#include "chay/params.hpp"

namespace chay {

// First-order Taylor coefficients of one element about its DC operating
// point, together with the equivalent series L-R branch (L, R1) and the
// parallel resistor R2. The mixed resistor only carries a12 and R2.
struct ElementLinearization {
    ChannelKind kind = ChannelKind::Mixed;
    double a11 = 0.0, a12 = 0.0;
    double b11 = 0.0, b12 = 0.0;
    double L = 0.0;   // H-equivalent: 1 / (a11 b12)
    double R1 = 0.0;  // -b11 / (a11 b12)
    double R2 = 0.0;  // 1 / a12
    bool degenerate = false;           // a11 b12 = 0, the L-R branch is open
    bool infinite_resistance = false;  // a12 = 0, R2 is an open circuit

    // Small-signal admittance of the element alone, from the L-R circuit.
    std::complex<double> admittance(std::complex<double> s) const;
};

ElementLinearization mixed_linearization(double V_m, const ChayParams& p = {});
ElementLinearization kv_linearization(double V_m, const ChayParams& p = {});
ElementLinearization kca_linearization(double V_m, double g_kca, const ChayParams& p = {});

// Y(s) = (b3 s^3 + b2 s^2 + b1 s + b0) / (a2 s^2 + a1 s + a0)
struct RationalAdmittance {
    std::array<double, 4> b{};  // b3, b2, b1, b0
    std::array<double, 3> a{};  // a2, a1, a0
    double V_m = 0.0;
    double g_KCa = 0.0;

    template <typename Scalar>
    std::complex<Scalar> operator()(const std::complex<Scalar>& s) const {
        std::complex<Scalar> num{Scalar(b[0])}, den{Scalar(a[0])};
        for (std::size_t k = 1; k < 4; ++k) num = num * s + Scalar(b[k]);
        for (std::size_t k = 1; k < 3; ++k) den = den * s + Scalar(a[k]);
        return num / den;
    }

    double dc_value() const { return b[3] / a[2]; }
    double high_frequency_capacitance() const { return b[0] / a[0]; }
};

struct CompositeElements {
    ElementLinearization mixed, kv, kca;
};

CompositeElements linearize_all(double V_m, double g_kca, const ChayParams& p = {});

// Table of products assembling C_m, g_L and the three element circuits into
// the rational admittance. SingularError names the element that has no
// finite L-R representation at this point.
RationalAdmittance composite_admittance(double V_m, double g_kca, const ChayParams& p = {});

// Parallel sum of the capacitor, leak and three element admittances,
// evaluated without forming the rational function.
std::complex<double> direct_admittance(double V_m, double g_kca, std::complex<double> s,
                                       const ChayParams& p = {});

struct FrequencyPoint {
    double omega = 0.0;  // rad/s
    double re = 0.0;
    double im = 0.0;
};

// Real and imaginary part of Y(i omega) in closed form.
FrequencyPoint frequency_response(const RationalAdmittance& Y, double omega);

std::vector<double> log_grid(double lo, double hi, int points);

inline constexpr int kSweepPoints = 600;
inline constexpr double kSweepOmegaMin = 1e-3;
inline constexpr double kSweepOmegaMax = 1e6;

// Nyquist locus over a log-spaced frequency grid.
std::vector<FrequencyPoint> frequency_sweep(const RationalAdmittance& Y, double omega_lo = kSweepOmegaMin,
                                            double omega_hi = kSweepOmegaMax, int points = kSweepPoints);

} // namespace chay
