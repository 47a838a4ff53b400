#include "chay/lyapunov.hpp"

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "chay/errors.hpp"
#include "chay/jet.hpp"
#include "chay/model.hpp"

namespace chay {

namespace {

using Vec = Eigen::Vector3d;
using CVec = Eigen::Vector3cd;

struct Derivatives {
    Vec second;  // D^2 f[d, d]
    Vec third;   // D^3 f[d, d, d]
};

Derivatives along(const State& x, const Vec& d, const ChayParams& p) {
    const auto f = rhs_components(Jet::variable(x[kV], d[0]), Jet::variable(x[kN], d[1]),
                                  Jet::variable(x[kCa], d[2]), p);
    Derivatives r;
    for (int i = 0; i < 3; ++i) {
        r.second[i] = 2.0 * f[static_cast<std::size_t>(i)].c[2];
        r.third[i] = 6.0 * f[static_cast<std::size_t>(i)].c[3];
    }
    return r;
}

class Forms {
public:
    Forms(const State& x, const ChayParams& p) : x_(x), p_(p) {}

    Vec B(const Vec& u, const Vec& v) const {
        return 0.25 * (along(x_, u + v, p_).second - along(x_, u - v, p_).second);
    }

    CVec B(const CVec& u, const CVec& v) const {
        const Vec u1 = u.real(), u2 = u.imag(), v1 = v.real(), v2 = v.imag();
        const Vec re = B(u1, v1) - B(u2, v2);
        const Vec im = B(u1, v2) + B(u2, v1);
        return re.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
    }

    // C(q, q, conj q) for q = a + i b.
    CVec C_qqqbar(const CVec& q) const {
        const Vec a = q.real(), b = q.imag();
        const Vec Ta = along(x_, a, p_).third;
        const Vec Tb = along(x_, b, p_).third;
        const Vec Tp = along(x_, a + b, p_).third;
        const Vec Tm = along(x_, a - b, p_).third;
        const Vec aab = (Tp - Tm - 2.0 * Tb) / 6.0;
        const Vec abb = (Tp + Tm - 2.0 * Ta) / 6.0;
        const Vec re = Ta + abb;
        const Vec im = aab + Tb;
        return re.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
    }

private:
    State x_;
    const ChayParams& p_;
};

Eigen::Index index_of_max_imag(const Eigen::Vector3cd& ev) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < 3; ++i)
        if (ev[i].imag() > ev[best].imag()) best = i;
    return best;
}

} // namespace

HopfCoefficient first_lyapunov_coefficient(const State& x, const ChayParams& p) {
    const Eigen::Matrix3d A = jacobian(x, p);
    Eigen::EigenSolver<Eigen::Matrix3d> right(A);
    Eigen::EigenSolver<Eigen::Matrix3d> left(A.transpose());
    const Eigen::Index i = index_of_max_imag(right.eigenvalues());
    const std::complex<double> lambda = right.eigenvalues()[i];
    if (!(lambda.imag() > 0.0)) throw DomainError("Jacobian has no complex eigenvalue pair");

    // Left eigenvector for conj(lambda).
    Eigen::Index j = 0;
    for (Eigen::Index k = 1; k < 3; ++k)
        if (std::abs(left.eigenvalues()[k] - std::conj(lambda)) < std::abs(left.eigenvalues()[j] - std::conj(lambda)))
            j = k;

    CVec q = right.eigenvectors().col(i);
    q.normalize();
    CVec pv = left.eigenvectors().col(j);
    pv /= std::conj(pv.dot(q));  // dot() conjugates its first argument: <p, q> = 1

    const double omega = lambda.imag();
    const Forms forms(x, p);
    const CVec qbar = q.conjugate();

    const Vec Bqqbar = forms.B(q, qbar).real();
    const Vec s1 = A.partialPivLu().solve(Bqqbar);
    const Eigen::Matrix3cd shifted =
        std::complex<double>(0.0, 2.0 * omega) * Eigen::Matrix3cd::Identity() - A.cast<std::complex<double>>();
    const CVec s2 = shifted.partialPivLu().solve(forms.B(q, q));

    const std::complex<double> sum = pv.dot(forms.C_qqqbar(q)) -
                                     2.0 * pv.dot(forms.B(q, s1.cast<std::complex<double>>())) +
                                     pv.dot(forms.B(qbar, s2));
    return {omega, lambda.real(), sum.real() / (2.0 * omega)};
}

} // namespace chay
