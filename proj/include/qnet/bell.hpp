#pragma once

#include <Eigen/Dense>

namespace qnet {

/// Bell-state visibility w of a Werner-like state
/// rho_w = w |Phi+><Phi+| + (1 - w) I/4. Valid range [0, 1].
class WernerParameter {
   public:
    explicit WernerParameter(double w);
    double value() const { return w_; }

   private:
    double w_;
};

/// Validated 4x4 density operator in the ordered basis |00>, |01>, |10>, |11>.
class TwoQubitDensity {
   public:
    // Checks Hermiticity and unit trace within 1e-12 and positive
    // semidefiniteness within -1e-10.
    static TwoQubitDensity from_matrix(const Eigen::Matrix4cd& entries);

    const Eigen::Matrix4cd& matrix() const { return entries_; }

   private:
    explicit TwoQubitDensity(const Eigen::Matrix4cd& entries) : entries_(entries) {}
    Eigen::Matrix4cd entries_;
};

// |Phi+> = (|00> + |11>)/sqrt(2).
Eigen::Vector4cd phi_plus_vector();

// The four Bell states: 0 -> Phi+, 1 -> Phi-, 2 -> Psi+, 3 -> Psi-.
Eigen::Vector4cd bell_state_vector(int which);

TwoQubitDensity werner_density(const WernerParameter& w);

// <Phi+| rho |Phi+>. Equals (1 + 3w)/4 on Werner states.
double bell_fidelity(const TwoQubitDensity& rho);

// Maximal CHSH operator value 2*sqrt(m1 + m2), where m1 >= m2 are the two
// largest eigenvalues of T^T T and T_ij = Tr[rho (sigma_i x sigma_j)].
// Equals 2*sqrt(2)*w on Werner states.
double chsh_value(const TwoQubitDensity& rho);

// True iff w strictly exceeds the CHSH threshold 1/sqrt(2).
bool is_chsh_usable(const WernerParameter& w);

// Werner parameter after one entanglement swap through an intermediate
// station: bsm_efficiency * w1 * w2. bsm_efficiency = 1 models an ideal
// Bell-state measurement; smaller values fold measurement imperfection in
// as a depolarizing factor on the swapped pair.
WernerParameter swap_werner(const WernerParameter& w1, const WernerParameter& w2,
                            double bsm_efficiency);

}  // namespace qnet
