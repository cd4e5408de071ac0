#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qnet/bell.hpp"

namespace qnet {

/// Dense 2^n x 2^n density operator, n <= 6. Qubit 0 is the leftmost tensor
/// factor (most significant bit of the basis index); the verification
/// protocol fixes the order (a_A, a_B, A, B, A', B').
class MultiQubitDensity {
   public:
    // Validates Hermiticity and unit trace within 1e-12 and positive
    // semidefiniteness within -1e-10.
    static MultiQubitDensity from_matrix(int qubit_count, const Eigen::MatrixXcd& entries);

    int qubit_count() const { return qubit_count_; }
    const Eigen::MatrixXcd& matrix() const { return entries_; }

    // Conjugation by H on one qubit.
    void apply_hadamard(int qubit);

    // Conjugation by the Fredkin unitary |0><0| x I + |1><1| x SWAP(t1, t2),
    // built by explicit basis-state mapping.
    void apply_cswap(int control, int target1, int target2);

   private:
    MultiQubitDensity(int qubit_count, Eigen::MatrixXcd entries);
    int qubit_count_;
    Eigen::MatrixXcd entries_;
};

// |0><0|_aA x |0><0|_aB x rho_AB x |Phi+><Phi+|_A'B' in the fixed qubit
// order.
MultiQubitDensity assemble_initial_state(const TwoQubitDensity& rho_ab);

struct SwapExpectations {
    double s_a = 0.0;   // <S_AA'>
    double s_b = 0.0;   // <S_BB'>
    double s_ab = 0.0;  // <S_AA' S_BB'>
};

// Direct trace evaluation Tr[S sigma] with sigma = rho_AB x |Phi+><Phi+| on
// the 4-qubit register (A, B, A', B') and explicit 16x16 permutation
// matrices. This is the oracle of record for the ancilla statistics.
SwapExpectations swap_expectations(const TwoQubitDensity& rho_ab);

struct VerificationOutcome {
    std::array<std::array<double, 2>, 2> joint_probs{};  // [m_A][m_B], circuit-simulated
    double s_a = 0.0, s_b = 0.0, s_ab = 0.0;             // trace-oracle values
    double fidelity = 0.0;                               // <Phi+| rho_AB |Phi+>
    bool witness_paper = false;                          // circuit P00 > 3/4
    bool witness_fidelity = false;                       // F > 1/2
};

// Full protocol: H on both ancillas, controlled-SWAPs a_A:(A, A') and
// a_B:(B, B'), H on both ancillas, then exact Born-rule projection of the
// ancillas.
VerificationOutcome run_protocol(const TwoQubitDensity& rho_ab);

// Empirical ancilla statistics from `shots` samples of the exact outcome
// distribution (finite-statistics demonstration only).
std::array<std::array<double, 2>, 2> sample_joint_probabilities(const VerificationOutcome& outcome,
                                                                std::size_t shots,
                                                                std::uint64_t seed);

struct ConsistencyReport {
    std::array<std::array<double, 2>, 2> circuit{};  // simulated probabilities
    std::array<std::array<double, 2>, 2> formula{};  // 1/4 [1 +- s_a +- s_b +- s_ab]
    double max_residual = 0.0;                       // max |circuit - formula|
    double fidelity = 0.0;
    double p00_closed_form = 0.0;  // claimed closed form (1 + F)/2
    double s_a_closed_form = 0.0;  // claimed closed form F
    double s_b_closed_form = 0.0;  // claimed closed form F
    double s_ab_closed_form = 1.0; // claimed closed form 1
    bool closed_form_matches_circuit = false;
};

// Checks the circuit probabilities against the parity formula fed with the
// trace-oracle expectations (tolerance 1e-10; mismatch is a circuit bug and
// throws std::logic_error), and tabulates the closed-form predictions next
// to the oracle values.
ConsistencyReport consistency_check(const VerificationOutcome& outcome);

struct SeparabilitySweepResult {
    double max_fidelity_product = 0.0;
    double max_fidelity_mixture = 0.0;
    double max_fidelity = 0.0;
};

// Bell fidelity maxima over `samples` Haar-random pure product states and
// `samples` random convex mixtures of up to 8 product states.
SeparabilitySweepResult separability_sweep(std::size_t samples, std::uint64_t seed);

struct VerificationRow {
    double w = 0.0;
    VerificationOutcome outcome;
    ConsistencyReport report;
};

// Runs the protocol over a Werner visibility sweep; every row passes
// consistency_check.
std::vector<VerificationRow> werner_verification_sweep(const std::vector<double>& visibilities,
                                                       int jobs = 1);

// Schema: w,F,P00,P01,P10,P11,sA,sB,sAB,P00_paper,witness_paper,witness_fidelity.
void write_verification_csv(std::ostream& out, const std::vector<VerificationRow>& rows);

// Plain-text table comparing circuit-simulated ancilla statistics with the
// closed-form predictions P00 = (1+F)/2, <S_A> = <S_B> = F, <S_A S_B> = 1.
void write_discrepancy_report(std::ostream& out, const std::vector<VerificationRow>& rows);

}  // namespace qnet
