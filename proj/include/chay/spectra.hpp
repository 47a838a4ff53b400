#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "chay/equilibrium.hpp"
#include "chay/params.hpp"
#include "chay/smallsignal.hpp"

namespace chay {

using cplx = std::complex<double>;

struct SpectralSet {
    std::array<cplx, 2> poles;        // ascending real part
    std::array<cplx, 3> zeros;        // (real, imag) order
    std::array<cplx, 3> eigenvalues;  // (real, imag) order
    double V_m = 0.0;
    double g_KCa = 0.0;
    double k = 0.0;  // b3 / a2
};

// Roots of the admittance denominator. DomainError when a2 = 0.
std::array<cplx, 2> poles(const RationalAdmittance& Y);

// Roots of the admittance numerator. DomainError when b3 = 0.
std::array<cplx, 3> zeros(const RationalAdmittance& Y);

// Coefficients [1, -trace, principal minors, -det] of det(s I - J).
std::array<double, 4> characteristic_cubic(const Eigen::Matrix3d& J);

std::array<cplx, 3> eigenvalues_3x3(const Eigen::Matrix3d& J);

std::array<cplx, 3> jacobian_eigenvalues(const EquilibriumPoint& q, const ChayParams& p = {});

SpectralSet spectral_set(double V_m, double g_kca, const ChayParams& p = {});

// On the I = p.I_ext locus through V_m.
SpectralSet spectral_set(double V_m, const ChayParams& p = {});

// max_i |z_i - lambda_i| / max(1, |lambda_i|) over the sorted zeros and
// eigenvalues at the locus point through V_m.
double zero_eigen_deviation(double V_m, const ChayParams& p = {});

// As above for an explicit pair; ContractError when (V_m, g_kca) is not an
// equilibrium, where the identity is not claimed.
double zero_eigen_deviation(double V_m, double g_kca, const ChayParams& p = {});

double max_real(const std::array<cplx, 3>& z);

} // namespace chay
