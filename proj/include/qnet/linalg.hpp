#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace qnet {

using Complex = std::complex<double>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Partial trace over one qubit of an n-qubit density matrix. Qubit 0 is the
// leftmost tensor factor (most significant bit of the basis index).
inline Eigen::MatrixXcd partial_trace_qubit(const Eigen::MatrixXcd& rho, int n, int qubit) {
    if (qubit < 0 || qubit >= n) throw std::domain_error("partial_trace_qubit: qubit out of range");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::domain_error("partial_trace_qubit: dimension mismatch");
    const Eigen::Index out_dim = dim / 2;
    const int shift = n - 1 - qubit;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    for (Eigen::Index r = 0; r < out_dim; ++r) {
        for (Eigen::Index c = 0; c < out_dim; ++c) {
            // re-insert the traced bit at position `shift`
            const Eigen::Index high_r = (r >> shift) << (shift + 1);
            const Eigen::Index low_r = r & ((Eigen::Index{1} << shift) - 1);
            const Eigen::Index high_c = (c >> shift) << (shift + 1);
            const Eigen::Index low_c = c & ((Eigen::Index{1} << shift) - 1);
            for (Eigen::Index b = 0; b < 2; ++b)
                out(r, c) += rho(high_r | (b << shift) | low_r, high_c | (b << shift) | low_c);
        }
    }
    return out;
}

}  // namespace qnet
