#pragma once

#include "chay/params.hpp"

namespace chay {

struct HopfCoefficient {
    double omega = 0.0;  // rad/s, imaginary part of the critical pair
    double mu = 0.0;     // real part of the pair at the evaluated point
    double l1 = 0.0;     // first Lyapunov coefficient; < 0 supercritical
};

// First Lyapunov coefficient of the Hopf normal form at an equilibrium x
// whose Jacobian has a critical pair mu +- i omega with mu ~ 0. Second and
// third derivatives of the vector field come from Jet evaluation along
// polarized directions. DomainError if the Jacobian has no complex pair.
HopfCoefficient first_lyapunov_coefficient(const State& x, const ChayParams& p);

} // namespace chay
