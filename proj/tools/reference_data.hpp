#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string_view>

// Published numbers the reproductions are checked against. Values are kept
// as printed so the number of decimals can be recovered.
namespace chay::reference {

struct Printed {
    std::string_view text;

    double value() const { return std::strtod(text.data(), nullptr); }
    // Half a unit in the last printed place. A bare "0" is an exact zero
    // (the real part of a purely imaginary pair).
    double half_ulp() const {
        if (text == "0") return 0.0;
        const auto dot = text.find('.');
        const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(text.size() - dot - 1);
        return 0.5 * std::pow(10.0, -decimals);
    }
};

struct PrintedComplex {
    Printed re;
    Printed im{"0"};
    std::complex<double> value() const { return {re.value(), im.value()}; }
    double half_ulp() const { return std::hypot(re.half_ulp(), im.half_ulp()); }
};

struct Table7Row {
    Printed V, g, n, Ca;
    std::array<PrintedComplex, 3> eig;
};

// The last row is printed with V = -21.00, but its other columns belong to
// V = +21.00 (n_inf(21) = 0.863, g = -2075.5); the sign is restored here.
inline constexpr std::array<Table7Row, 22> kTable7{{
    {{"-50.00"}, {"54.068"}, {"0.089"}, {"0.072"}, {{{{"-39.593"}}, {{"-0.327"}}, {{"-4.531"}}}}},
    {{"-49.5"}, {"46.247"}, {"0.093"}, {"0.083"}, {{{{"-39.352"}}, {{"-0.389"}}, {{"-3.613"}}}}},
    {{"-49.00"}, {"39.889"}, {"0.096"}, {"0.096"}, {{{{"-39.097"}}, {{"-0.52"}}, {{"-2.564"}}}}},
    {{"-48.5"}, {"34.712"}, {"0.1"}, {"0.11"}, {{{{"-38.829"}}, {{"-1.05"}, {"0.397"}}, {{"-1.05"}, {"-0.397"}}}}},
    {{"-48.2459999459569"}, {"32.4605269226518"}, {"0.102"}, {"0.118"},
     {{{{"-38.687"}}, {{"-0.788"}, {"0.778"}}, {{"-0.788"}, {"-0.778"}}}}},
    {{"-48.00"}, {"30.49"}, {"0.104"}, {"0.126"}, {{{{"-38.545"}}, {{"-0.524"}, {"0.957"}}, {{"-0.524"}, {"-0.957"}}}}},
    {{"-47.5332788572"}, {"27.25111606"}, {"0.107"}, {"0.143"},
     {{{{"-38.263"}}, {{"0"}, {"1.061"}}, {{"0"}, {"-1.061"}}}}},
    {{"-47.00"}, {"24.225"}, {"0.112"}, {"0.165"}, {{{{"-37.921"}}, {{"0.639"}, {"0.803"}}, {{"0.639"}, {"-0.803"}}}}},
    {{"-46.71"}, {"22.832"}, {"0.114"}, {"0.178"}, {{{{"-37.725"}}, {{"1.005"}, {"0.058"}}, {{"1.005"}, {"-0.058"}}}}},
    {{"-46.7087457175"}, {"22.8259856196"}, {"0.114"}, {"0.178"}, {{{{"-37.724"}}, {{"1.007"}}, {{"1.007"}}}}},
    {{"-46.00"}, {"20.035"}, {"0.12"}, {"0.213"}, {{{{"-37.211"}}, {{"3.663"}}, {{"0.251"}}}}},
    {{"-45.00"}, {"17.237"}, {"0.129"}, {"0.272"}, {{{{"-36.396"}}, {{"6.745"}}, {{"0.117"}}}}},
    {{"-40.00"}, {"12.766"}, {"0.181"}, {"0.792"}, {{{{"-29.679"}}, {{"24.533"}}, {{"0.006463"}}}}},
    {{"-34.2426602517"}, {"11.713175239"}, {"0.255"}, {"1.971"}, {{{{"-0.286"}}, {{"10.77"}}, {{"10.77"}}}}},
    {{"-34.2426602516"}, {"11.7131752389"}, {"0.255"}, {"1.971"},
     {{{{"-0.286"}}, {{"10.7701"}, {"0.0002"}}, {{"10.7701"}, {"-0.0002"}}}}},
    {{"-30"}, {"5.285"}, {"0.318"}, {"3.119"}, {{{{"-0.052"}}, {{"9.833"}, {"60.283"}}, {{"9.833"}, {"-60.283"}}}}},
    {{"-26.75527972"}, {"-7.79022731"}, {"0.368"}, {"3.948"}, {{{{"-0.049"}}, {{"0"}, {"97.171"}}, {{"0"}, {"-97.171"}}}}},
    {{"-26.7435186728"}, {"-7.8552277404"}, {"0.369"}, {"3.95"},
     {{{{"-0.04869"}}, {{"-0.049"}, {"97.306"}}, {{"-0.049"}, {"-97.306"}}}}},
    {{"-26.7435186727"}, {"-7.8552277409"}, {"0.369"}, {"3.95"},
     {{{{"-0.04869"}, {"-97.30591"}}, {{"-0.0487"}}, {{"-0.0487"}, {"97.3059"}}}}},
    {{"-26.00"}, {"-12.258"}, {"0.38"}, {"4.115"}, {{{{"-3.283"}, {"-105.814"}}, {{"-0.0485"}}, {{"-3.283"}, {"105.814"}}}}},
    {{"-22.1378795486045"}, {"-45.5241957133932"}, {"0.442"}, {"4.737"},
     {{{{"-23.21"}, {"-149.661"}}, {{"-0.0487"}}, {{"-23.21"}, {"149.661"}}}}},
    {{"21.00"}, {"-2075.547"}, {"0.863"}, {"0.836"}, {{{{"-66.556"}, {"-438.256"}}, {{"-0.133"}}, {{"-66.556"}, {"438.256"}}}}},
}};

// Boundary points quoted in the text.
inline constexpr double kHopf1V = -26.75527972, kHopf1G = -7.79022731, kHopf1Omega = 97.171;
inline constexpr double kHopf2V = -47.5332788572, kHopf2G = 27.25111606, kHopf2Omega = 1.061;
inline constexpr double kEdge1V = -22.1378795486045, kEdge1G = -45.5241957133932;
inline constexpr double kEdge2V = -48.2459999459569, kEdge2G = 32.4605269226518;

// A computed value x agrees with a printed entry t at relative tolerance rel
// if it lies within rel of some number that prints as t.
inline bool agrees(double x, const Printed& t, double rel) {
    return std::abs(x - t.value()) <= t.half_ulp() + rel * (std::abs(t.value()) + t.half_ulp());
}

inline bool agrees(std::complex<double> x, const PrintedComplex& t, double rel) {
    return std::abs(x - t.value()) <= t.half_ulp() + rel * (std::abs(t.value()) + t.half_ulp());
}

// Matches computed eigenvalues to a printed row as multisets: some pairing
// must put every entry within tolerance. Also reports the smallest worst-case
// raw relative deviation over all pairings.
struct MultisetMatch {
    bool pass = false;
    double raw_deviation = 0.0;
};

inline MultisetMatch match_eigenvalues(const std::array<std::complex<double>, 3>& x,
                                       const std::array<PrintedComplex, 3>& t, double rel) {
    std::array<int, 3> perm{0, 1, 2};
    MultisetMatch m{false, 1e300};
    do {
        bool all = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& xi = x[static_cast<std::size_t>(perm[i])];
            all = all && agrees(xi, t[i], rel);
            worst = std::max(worst, std::abs(xi - t[i].value()) / std::abs(t[i].value()));
        }
        m.pass = m.pass || all;
        m.raw_deviation = std::min(m.raw_deviation, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return m;
}

} // namespace chay::reference
