#include "qnet/ptm.hpp"

#include <cmath>
#include <stdexcept>

#include "qnet/constants.hpp"

namespace qnet {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Matrix4d;

const Matrix2cd& pauli(int i) {
    static const Matrix2cd ops[4] = {
        (Matrix2cd() << 1, 0, 0, 1).finished(),
        (Matrix2cd() << 0, 1, 1, 0).finished(),
        (Matrix2cd() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0).finished(),
        (Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    return ops[i];
}

}  // namespace

PauliTransferMatrix PauliTransferMatrix::from_matrix(const Matrix4d& entries) {
    const Eigen::RowVector4d expected(1, 0, 0, 0);
    if ((entries.row(0) - expected).cwiseAbs().maxCoeff() > 1e-12)
        throw std::domain_error("PauliTransferMatrix: not trace preserving (first row must be (1,0,0,0))");
    return PauliTransferMatrix(entries);
}

Matrix4cd PauliTransferMatrix::choi() const {
    // E(|k><l|) expanded through the PTM action on Pauli coefficients:
    // r_j = Tr[P_j |k><l|], r' = T r, E(|k><l|) = (1/2) sum_i r'_i P_i.
    Matrix4cd choi = Matrix4cd::Zero();
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            Matrix2cd ekl = Matrix2cd::Zero();
            ekl(k, l) = 1.0;
            Eigen::Vector4cd coeffs;
            for (int j = 0; j < 4; ++j) coeffs(j) = (pauli(j) * ekl).trace();
            const Eigen::Vector4cd mapped = entries_.cast<std::complex<double>>() * coeffs;
            Matrix2cd image = Matrix2cd::Zero();
            for (int i = 0; i < 4; ++i) image += 0.5 * mapped(i) * pauli(i);
            choi.block<2, 2>(2 * k, 2 * l) = image;
        }
    }
    return choi / 2.0;  // unit trace for trace-preserving maps
}

bool PauliTransferMatrix::is_completely_positive(double tol) const {
    const Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(choi());
    return solver.eigenvalues().minCoeff() >= -tol;
}

PauliTransferMatrix make_ptm(const ChannelSpec& spec) {
    if (!(spec.parameter >= 0.0 && spec.parameter <= 1.0))
        throw std::domain_error("make_ptm: channel parameter must lie in [0, 1]");
    Eigen::Vector4d diag;
    switch (spec.kind) {
        case ChannelKind::identity:
            diag << 1, 1, 1, 1;
            break;
        case ChannelKind::depolarizing:
            // rho' = p*rho + (1-p)*I/2 scales every traceless coefficient by p
            diag << 1, spec.parameter, spec.parameter, spec.parameter;
            break;
        case ChannelKind::dephasing:
            // phase flip with probability (1-p)/2 keeps Z, damps X and Y by p
            diag << 1, spec.parameter, spec.parameter, 1;
            break;
        default:
            throw std::domain_error("make_ptm: unknown channel kind");
    }
    auto ptm = PauliTransferMatrix::from_matrix(diag.asDiagonal());
    if (!ptm.is_completely_positive())
        throw std::logic_error("make_ptm: constructed channel fails the Choi positivity check");
    return ptm;
}

PauliTransferMatrix compose_path(const TransportPath& path, bool allow_empty) {
    if (path.empty() && !allow_empty)
        throw std::domain_error("compose_path: empty path (pass allow_empty to get the identity)");
    Eigen::Matrix4d acc = Eigen::Matrix4d::Identity();
    for (const ChannelSpec& hop : path) acc = make_ptm(hop).matrix() * acc;
    return PauliTransferMatrix::from_matrix(acc);
}

PauliTransferMatrix compose_ptms(const std::vector<PauliTransferMatrix>& hops, bool allow_empty) {
    if (hops.empty() && !allow_empty)
        throw std::domain_error("compose_ptms: empty path (pass allow_empty to get the identity)");
    Eigen::Matrix4d acc = Eigen::Matrix4d::Identity();
    for (const PauliTransferMatrix& hop : hops) acc = hop.matrix() * acc;
    return PauliTransferMatrix::from_matrix(acc);
}

double contraction_norm(const PauliTransferMatrix& ptm) {
    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(ptm.traceless_block());
    return svd.singularValues()(0);
}

double bell_visibility(double c0, double lambda_max, long long hops) {
    if (!(c0 > 0.0 && c0 <= 1.0))
        throw std::domain_error("bell_visibility: c0 must lie in (0, 1]");
    if (!(lambda_max > 0.0 && lambda_max < 1.0))
        throw std::domain_error("bell_visibility: lambda_max must lie in (0, 1)");
    if (hops < 0) throw std::domain_error("bell_visibility: hop count must be nonnegative");
    return c0 * std::pow(lambda_max, static_cast<double>(hops));
}

long long max_operational_depth(double c0, double lambda_max) {
    if (!(c0 > 0.0 && c0 <= 1.0))
        throw std::domain_error("max_operational_depth: c0 must lie in (0, 1]");
    if (!(lambda_max > 0.0 && lambda_max < 1.0))
        throw std::domain_error("max_operational_depth: lambda_max must lie in (0, 1)");
    const double threshold = kChshVisibilityThreshold;
    if (c0 <= threshold) return 0;  // no hop survives; 0 encodes "no operational link"
    long long depth = static_cast<long long>(
        std::floor(std::log(1.0 / (std::sqrt(2.0) * c0)) / std::log(lambda_max)));
    if (depth < 0) depth = 0;
    // The floor can land one step off at representation boundaries; ties at
    // exactly 1/sqrt(2) resolve toward the smaller depth (strict violation).
    while (depth > 0 && !(bell_visibility(c0, lambda_max, depth) > threshold)) --depth;
    while (bell_visibility(c0, lambda_max, depth + 1) > threshold) ++depth;
    return depth;
}

}  // namespace qnet
