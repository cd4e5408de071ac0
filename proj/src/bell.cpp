#include "qnet/bell.hpp"

#include <cmath>
#include <stdexcept>

#include "qnet/constants.hpp"
#include "qnet/linalg.hpp"

namespace qnet {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;

const Matrix2cd& sigma(int i) {  // i in {0, 1, 2}: X, Y, Z
    static const Matrix2cd ops[3] = {
        (Matrix2cd() << 0, 1, 1, 0).finished(),
        (Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
        (Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    return ops[i];
}

}  // namespace

WernerParameter::WernerParameter(double w) : w_(w) {
    if (!(w >= 0.0 && w <= 1.0))
        throw std::domain_error("WernerParameter: visibility must lie in [0, 1]");
}

TwoQubitDensity TwoQubitDensity::from_matrix(const Matrix4cd& entries) {
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::domain_error("TwoQubitDensity: matrix is not Hermitian");
    if (std::abs(entries.trace() - Complex(1.0, 0.0)) > 1e-12)
        throw std::domain_error("TwoQubitDensity: trace must be 1");
    const Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(entries);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw std::domain_error("TwoQubitDensity: matrix is not positive semidefinite");
    return TwoQubitDensity(entries);
}

Vector4cd phi_plus_vector() {
    Vector4cd v;
    v << 1, 0, 0, 1;
    return v / std::sqrt(2.0);
}

Vector4cd bell_state_vector(int which) {
    Vector4cd v = Vector4cd::Zero();
    const double inv = 1.0 / std::sqrt(2.0);
    switch (which) {
        case 0: v(0) = inv; v(3) = inv; break;   // Phi+
        case 1: v(0) = inv; v(3) = -inv; break;  // Phi-
        case 2: v(1) = inv; v(2) = inv; break;   // Psi+
        case 3: v(1) = inv; v(2) = -inv; break;  // Psi-
        default: throw std::domain_error("bell_state_vector: index must be 0..3");
    }
    return v;
}

TwoQubitDensity werner_density(const WernerParameter& w) {
    const Vector4cd phi = phi_plus_vector();
    const Matrix4cd rho =
        w.value() * (phi * phi.adjoint()) + (1.0 - w.value()) * 0.25 * Matrix4cd::Identity();
    return TwoQubitDensity::from_matrix(rho);
}

double bell_fidelity(const TwoQubitDensity& rho) {
    // <Phi+|rho|Phi+> = (rho_00 + rho_03 + rho_30 + rho_33)/2; summing the
    // entries directly keeps the product-state bound exact at 1/2.
    const auto& m = rho.matrix();
    return 0.5 * (m(0, 0) + m(0, 3) + m(3, 0) + m(3, 3)).real();
}

double chsh_value(const TwoQubitDensity& rho) {
    Eigen::Matrix3d corr;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            corr(i, j) = (rho.matrix() * kron(sigma(i), sigma(j))).trace().real();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(corr.transpose() * corr);
    const auto& ev = solver.eigenvalues();  // ascending
    return 2.0 * std::sqrt(ev(2) + ev(1));
}

bool is_chsh_usable(const WernerParameter& w) {
    return w.value() > kChshVisibilityThreshold;
}

WernerParameter swap_werner(const WernerParameter& w1, const WernerParameter& w2,
                            double bsm_efficiency) {
    if (!(bsm_efficiency >= 0.0 && bsm_efficiency <= 1.0))
        throw std::domain_error("swap_werner: bsm_efficiency must lie in [0, 1]");
    return WernerParameter(bsm_efficiency * w1.value() * w2.value());
}

}  // namespace qnet
