#include "chay/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "chay/errors.hpp"
#include "chay/model.hpp"
#include "chay/polynomial.hpp"

namespace chay {

std::array<cplx, 2> poles(const RationalAdmittance& Y) {
    if (Y.a[0] == 0.0) throw DomainError("admittance denominator is not quadratic (a2 = 0)");
    return sorted_lex(quadratic_roots(Y.a[0], Y.a[1], Y.a[2]));
}

std::array<cplx, 3> zeros(const RationalAdmittance& Y) {
    if (Y.b[0] == 0.0) throw DomainError("admittance numerator is not cubic (b3 = 0)");
    return sorted_lex(cubic_roots(Y.b[0], Y.b[1], Y.b[2], Y.b[3]));
}

std::array<double, 4> characteristic_cubic(const Eigen::Matrix3d& J) {
    const double minors = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0) + J(0, 0) * J(2, 2) - J(0, 2) * J(2, 0) +
                          J(1, 1) * J(2, 2) - J(1, 2) * J(2, 1);
    return {1.0, -J.trace(), minors, -J.determinant()};
}

std::array<cplx, 3> eigenvalues_3x3(const Eigen::Matrix3d& J) {
    const auto c = characteristic_cubic(J);
    return sorted_lex(cubic_roots(c[0], c[1], c[2], c[3]));
}

std::array<cplx, 3> jacobian_eigenvalues(const EquilibriumPoint& q, const ChayParams& p) {
    ChayParams pp = p;
    pp.g_KCa = q.g_KCa;
    return eigenvalues_3x3(jacobian(q.state(), pp));
}

SpectralSet spectral_set(double V_m, double g_kca, const ChayParams& p) {
    const auto Y = composite_admittance(V_m, g_kca, p);
    SpectralSet s;
    s.V_m = V_m;
    s.g_KCa = g_kca;
    s.k = Y.b[0] / Y.a[0];
    s.poles = poles(Y);
    s.zeros = zeros(Y);
    s.eigenvalues = jacobian_eigenvalues(make_equilibrium(V_m, g_kca, p), p);
    return s;
}

SpectralSet spectral_set(double V_m, const ChayParams& p) {
    return spectral_set(V_m, gkca_at_equilibrium(V_m, p), p);
}

namespace {

double deviation(const SpectralSet& s) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(s.zeros[i] - s.eigenvalues[i]) / std::max(1.0, std::abs(s.eigenvalues[i])));
    return worst;
}

} // namespace

double zero_eigen_deviation(double V_m, const ChayParams& p) { return deviation(spectral_set(V_m, p)); }

double zero_eigen_deviation(double V_m, double g_kca, const ChayParams& p) {
    const double g_locus = gkca_at_equilibrium(V_m, p);
    if (std::abs(g_kca - g_locus) > 1e-6 * std::max(1.0, std::abs(g_locus)))
        throw ContractError("(V_m, g_KCa) = (" + std::to_string(V_m) + ", " + std::to_string(g_kca) +
                            ") is not an equilibrium; the zero/eigenvalue identity does not apply");
    return deviation(spectral_set(V_m, g_kca, p));
}

double max_real(const std::array<cplx, 3>& z) {
    return std::max({z[0].real(), z[1].real(), z[2].real()});
}

} // namespace chay
