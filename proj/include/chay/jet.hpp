#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace chay {

// Truncated Taylor series x(t) = c0 + c1 t + c2 t^2 + c3 t^3 with
// arithmetic closed under truncation. Evaluating a templated model function
// on Jet(x0 + t u) yields the directional derivatives of order 1..3 along u:
// D^k f[u,...,u] = k! * coefficient k.
struct Jet {
    static constexpr std::size_t kOrder = 3;
    std::array<double, kOrder + 1> c{};

    Jet() = default;
    Jet(double value) : c{value, 0.0, 0.0, 0.0} {}  // NOLINT: implicit by design of scalar promotion
    static Jet variable(double value, double direction) {
        Jet j(value);
        j.c[1] = direction;
        return j;
    }

    double value() const { return c[0]; }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k <= kOrder; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k <= kOrder; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        std::array<double, kOrder + 1> r{};
        for (std::size_t i = 0; i <= kOrder; ++i)
            for (std::size_t j = 0; i + j <= kOrder; ++j) r[i + j] += c[i] * o.c[j];
        c = r;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        std::array<double, kOrder + 1> r{};
        for (std::size_t k = 0; k <= kOrder; ++k) {
            double acc = c[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= o.c[j] * r[k - j];
            r[k] = acc / o.c[0];
        }
        c = r;
        return *this;
    }
    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }

inline Jet exp(const Jet& a) {
    Jet r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t k = 1; k <= Jet::kOrder; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c[j] * r.c[k - j];
        r.c[k] = acc / static_cast<double>(k);
    }
    return r;
}

inline Jet expm1(const Jet& a) {
    Jet r = exp(a);
    r.c[0] = std::expm1(a.c[0]);
    return r;
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

} // namespace chay
