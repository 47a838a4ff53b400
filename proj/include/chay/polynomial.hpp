#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "chay/errors.hpp"

namespace chay {

template <typename Scalar>
using Complex = std::complex<Scalar>;

// Orders by real part, then imaginary part.
template <typename Scalar>
bool lex_less(const Complex<Scalar>& a, const Complex<Scalar>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

template <typename Scalar, std::size_t N>
std::array<Complex<Scalar>, N> sorted_lex(std::array<Complex<Scalar>, N> z) {
    std::sort(z.begin(), z.end(), lex_less<Scalar>);
    return z;
}

// Roots of a s^2 + b s + c without cancellation; a complex pair is returned
// as exact conjugates.
template <typename Scalar>
std::array<Complex<Scalar>, 2> quadratic_roots(Scalar a, Scalar b, Scalar c) {
    if (a == Scalar(0)) throw DomainError("quadratic with zero leading coefficient");
    const Scalar disc = b * b - Scalar(4) * a * c;
    if (disc < Scalar(0)) {
        const Scalar re = -b / (Scalar(2) * a);
        const Scalar im = std::abs(std::sqrt(-disc) / (Scalar(2) * a));
        return {Complex<Scalar>(re, im), Complex<Scalar>(re, -im)};
    }
    const Scalar q = -(b + std::copysign(std::sqrt(disc), b)) / Scalar(2);
    if (q == Scalar(0)) return {Complex<Scalar>(0), Complex<Scalar>(0)};
    return {Complex<Scalar>(q / a), Complex<Scalar>(c / q)};
}

template <typename Scalar, typename T>
T horner(const std::array<Scalar, 4>& coeffs, const T& s) {
    return ((T(coeffs[0]) * s + T(coeffs[1])) * s + T(coeffs[2])) * s + T(coeffs[3]);
}

namespace detail {

// Newton steps on the cubic, each kept only if it lowers |p|.
template <typename Scalar, typename T>
T polish(const std::array<Scalar, 4>& c, T z, int steps) {
    for (int k = 0; k < steps; ++k) {
        const T pz = horner(c, z);
        const T dp = (T(Scalar(3) * c[0]) * z + T(Scalar(2) * c[1])) * z + T(c[2]);
        if (dp == T(Scalar(0))) break;
        const T next = z - pz / dp;
        if (!(std::abs(horner(c, next)) < std::abs(pz))) break;
        z = next;
    }
    return z;
}

} // namespace detail

// Roots of a s^3 + b s^2 + c s + d in closed form (trigonometric for three
// real roots, Cardano otherwise), each refined by Newton on the cubic.
template <typename Scalar>
std::array<Complex<Scalar>, 3> cubic_roots(Scalar a, Scalar b, Scalar c, Scalar d, int polish_steps = 1) {
    if (a == Scalar(0)) throw DomainError("cubic with zero leading coefficient");
    const std::array<Scalar, 4> coeffs{a, b, c, d};
    const Scalar A = b / a, B = c / a, C = d / a;
    const Scalar shift = A / Scalar(3);
    const Scalar p = B - A * shift;
    const Scalar q = Scalar(2) * A * A * A / Scalar(27) - A * B / Scalar(3) + C;
    const Scalar half_q = q / Scalar(2);
    const Scalar third_p = p / Scalar(3);
    const Scalar disc = half_q * half_q + third_p * third_p * third_p;

    std::array<Complex<Scalar>, 3> z;
    if (disc <= Scalar(0) && p < Scalar(0)) {
        const Scalar r = Scalar(2) * std::sqrt(-third_p);
        Scalar arg = Scalar(3) * q / (Scalar(2) * p) * std::sqrt(Scalar(-3) / p);
        arg = std::clamp(arg, Scalar(-1), Scalar(1));
        const Scalar theta = std::acos(arg) / Scalar(3);
        for (int k = 0; k < 3; ++k) {
            const Scalar t = r * std::cos(theta - Scalar(2) * std::numbers::pi_v<Scalar> * k / Scalar(3));
            z[static_cast<std::size_t>(k)] = Complex<Scalar>(detail::polish(coeffs, t - shift, polish_steps));
        }
        return z;
    }

    // One real root (or a triple root when p = q = 0).
    const Scalar sq = std::sqrt(std::max(disc, Scalar(0)));
    const Scalar u = std::cbrt(-half_q - std::copysign(sq, half_q));
    const Scalar t = (u == Scalar(0)) ? Scalar(0) : u - third_p / u;
    const Scalar real_root = detail::polish(coeffs, t - shift, std::max(polish_steps, 3));

    // Vieta: the remaining pair sums to -A - r and multiplies to -C / r.
    const Scalar sum = -A - real_root;
    const Scalar prod = (real_root != Scalar(0)) ? -C / real_root : B + real_root * (A + real_root);
    auto pair = quadratic_roots(Scalar(1), -sum, prod);
    z[0] = Complex<Scalar>(real_root);
    if (pair[0].imag() != Scalar(0)) {
        const Complex<Scalar> w = detail::polish(coeffs, pair[0], polish_steps);
        z[1] = Complex<Scalar>(w.real(), std::abs(w.imag()));
        z[2] = std::conj(z[1]);
    } else {
        z[1] = Complex<Scalar>(detail::polish(coeffs, pair[0].real(), polish_steps));
        z[2] = Complex<Scalar>(detail::polish(coeffs, pair[1].real(), polish_steps));
    }
    return z;
}

} // namespace chay
