#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qnet {

enum class ChannelKind { identity, depolarizing, dephasing };

// One elementary hop of the transport chain.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::identity;
    double parameter = 1.0;  // in [0, 1]; ignored for identity
};

// An entanglement-swapping path: the i-th entry is the channel applied at
// hop i. Hop count L is the list length.
using TransportPath = std::vector<ChannelSpec>;

/// 4x4 real matrix acting on Pauli-basis coefficients (I, X, Y, Z) of a
/// single-qubit state. Trace preservation means the first row is
/// (1, 0, 0, 0); complete positivity is checked through the reconstructed
/// Choi operator.
class PauliTransferMatrix {
   public:
    // Validates trace preservation (first row) within 1e-12.
    static PauliTransferMatrix from_matrix(const Eigen::Matrix4d& entries);

    const Eigen::Matrix4d& matrix() const { return entries_; }

    // The 3x3 block acting on the traceless (X, Y, Z) coefficients.
    Eigen::Matrix3d traceless_block() const { return entries_.bottomRightCorner<3, 3>(); }

    // Choi operator of the channel, normalized to unit trace.
    Eigen::Matrix4cd choi() const;

    // True iff all Choi eigenvalues are >= -tol.
    bool is_completely_positive(double tol = 1e-10) const;

   private:
    explicit PauliTransferMatrix(const Eigen::Matrix4d& entries) : entries_(entries) {}
    Eigen::Matrix4d entries_;
};

// Builds the PTM of a built-in channel. The result is trace preserving and
// completely positive; parameter outside [0, 1] raises std::domain_error.
PauliTransferMatrix make_ptm(const ChannelSpec& spec);

// Sequential composition T(phi_L) ... T(phi_1) in hop order. An empty path
// yields the identity only when allow_empty is set, otherwise
// std::domain_error.
PauliTransferMatrix compose_path(const TransportPath& path, bool allow_empty = false);

// Same composition over externally supplied trace-preserving PTMs (e.g.
// non-unital channels that have no built-in constructor).
PauliTransferMatrix compose_ptms(const std::vector<PauliTransferMatrix>& hops,
                                 bool allow_empty = false);

// Largest singular value of the traceless 3x3 block. The full 4x4 matrix of
// a trace-preserving map always has a singular value >= 1, so contractivity
// of the correlation transport is a property of the block alone.
double contraction_norm(const PauliTransferMatrix& ptm);

// Transported Bell-correlation visibility after `hops` swapping steps:
// c0 * lambda_max^hops. Preconditions: c0 in (0, 1], lambda_max in (0, 1),
// hops >= 0.
double bell_visibility(double c0, double lambda_max, long long hops);

// Largest depth L such that the transported visibility still violates CHSH
// (strictly exceeds 1/sqrt(2)) at every depth up to L. Returns 0 when c0 is
// already at or below the threshold.
long long max_operational_depth(double c0, double lambda_max);

}  // namespace qnet
