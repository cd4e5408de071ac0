#include "qnet/swap_verify.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qnet/linalg.hpp"
#include "qnet/parallel.hpp"
#include "qnet/rng.hpp"
#include "qnet/textio.hpp"

namespace qnet {

namespace {

using Eigen::MatrixXcd;
using Eigen::Vector2cd;

// Permutation matrix on n qubits that exchanges qubits a and b, by explicit
// basis-state mapping.
MatrixXcd swap_permutation(int n, int a, int b) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd perm = MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        const int sa = n - 1 - a, sb = n - 1 - b;
        const Eigen::Index bit_a = (x >> sa) & 1;
        const Eigen::Index bit_b = (x >> sb) & 1;
        Eigen::Index y = x & ~((Eigen::Index{1} << sa) | (Eigen::Index{1} << sb));
        y |= (bit_b << sa) | (bit_a << sb);
        perm(y, x) = 1.0;
    }
    return perm;
}

MatrixXcd phi_plus_projector() {
    const Eigen::Vector4cd phi = phi_plus_vector();
    return phi * phi.adjoint();
}

}  // namespace

MultiQubitDensity::MultiQubitDensity(int qubit_count, MatrixXcd entries)
    : qubit_count_(qubit_count), entries_(std::move(entries)) {}

MultiQubitDensity MultiQubitDensity::from_matrix(int qubit_count, const MatrixXcd& entries) {
    if (qubit_count < 1 || qubit_count > 6)
        throw std::domain_error("MultiQubitDensity: qubit count must be 1..6");
    const Eigen::Index dim = Eigen::Index{1} << qubit_count;
    if (entries.rows() != dim || entries.cols() != dim)
        throw std::domain_error("MultiQubitDensity: dimension does not match qubit count");
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::domain_error("MultiQubitDensity: matrix is not Hermitian");
    if (std::abs(entries.trace() - Complex(1.0, 0.0)) > 1e-12)
        throw std::domain_error("MultiQubitDensity: trace must be 1");
    const Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(entries);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw std::domain_error("MultiQubitDensity: matrix is not positive semidefinite");
    return MultiQubitDensity(qubit_count, entries);
}

void MultiQubitDensity::apply_hadamard(int qubit) {
    if (qubit < 0 || qubit >= qubit_count_)
        throw std::domain_error("apply_hadamard: qubit index out of range");
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    MatrixXcd full = MatrixXcd::Identity(1, 1);
    for (int q = 0; q < qubit_count_; ++q)
        full = kron(full, q == qubit ? MatrixXcd(h) : MatrixXcd(Eigen::Matrix2cd::Identity()));
    entries_ = full * entries_ * full.adjoint();
}

void MultiQubitDensity::apply_cswap(int control, int target1, int target2) {
    if (control < 0 || control >= qubit_count_ || target1 < 0 || target1 >= qubit_count_ ||
        target2 < 0 || target2 >= qubit_count_)
        throw std::domain_error("apply_cswap: qubit index out of range");
    if (control == target1 || control == target2 || target1 == target2)
        throw std::domain_error("apply_cswap: qubit indices must be distinct");
    const Eigen::Index dim = Eigen::Index{1} << qubit_count_;
    MatrixXcd fredkin = MatrixXcd::Zero(dim, dim);
    const int sc = qubit_count_ - 1 - control;
    const int s1 = qubit_count_ - 1 - target1;
    const int s2 = qubit_count_ - 1 - target2;
    for (Eigen::Index x = 0; x < dim; ++x) {
        Eigen::Index y = x;
        if ((x >> sc) & 1) {
            const Eigen::Index b1 = (x >> s1) & 1;
            const Eigen::Index b2 = (x >> s2) & 1;
            y = x & ~((Eigen::Index{1} << s1) | (Eigen::Index{1} << s2));
            y |= (b2 << s1) | (b1 << s2);
        }
        fredkin(y, x) = 1.0;
    }
    entries_ = fredkin * entries_ * fredkin.adjoint();
}

MultiQubitDensity assemble_initial_state(const TwoQubitDensity& rho_ab) {
    Eigen::Matrix2cd zero = Eigen::Matrix2cd::Zero();
    zero(0, 0) = 1.0;
    MatrixXcd rho = kron(zero, zero);                 // a_A, a_B
    rho = kron(rho, rho_ab.matrix());                 // A, B
    rho = kron(rho, phi_plus_projector());            // A', B'
    return MultiQubitDensity::from_matrix(6, rho);
}

SwapExpectations swap_expectations(const TwoQubitDensity& rho_ab) {
    // 4-qubit register (A, B, A', B'): S_A exchanges qubits 0 and 2, S_B
    // exchanges 1 and 3.
    const MatrixXcd sigma = kron(rho_ab.matrix(), phi_plus_projector());
    const MatrixXcd swap_a = swap_permutation(4, 0, 2);
    const MatrixXcd swap_b = swap_permutation(4, 1, 3);
    const Complex ea = (swap_a * sigma).trace();
    const Complex eb = (swap_b * sigma).trace();
    const Complex eab = (swap_a * swap_b * sigma).trace();
    for (const Complex& v : {ea, eb, eab})
        if (std::abs(v.imag()) > 1e-12)
            throw std::logic_error("swap_expectations: expectation has an imaginary residue");
    return {ea.real(), eb.real(), eab.real()};
}

VerificationOutcome run_protocol(const TwoQubitDensity& rho_ab) {
    MultiQubitDensity state = assemble_initial_state(rho_ab);
    state.apply_hadamard(0);
    state.apply_hadamard(1);
    state.apply_cswap(0, 2, 4);  // a_A controls SWAP(A, A')
    state.apply_cswap(1, 3, 5);  // a_B controls SWAP(B, B')
    state.apply_hadamard(0);
    state.apply_hadamard(1);

    VerificationOutcome out;
    // Born-rule projection of the ancillas: sum the diagonal over the data
    // registers for each (m_A, m_B).
    const auto& rho = state.matrix();
    for (Eigen::Index b = 0; b < rho.rows(); ++b) {
        const int m_a = static_cast<int>((b >> 5) & 1);
        const int m_b = static_cast<int>((b >> 4) & 1);
        out.joint_probs[m_a][m_b] += rho(b, b).real();
    }
    out.fidelity = bell_fidelity(rho_ab);
    const SwapExpectations exp = swap_expectations(rho_ab);
    out.s_a = exp.s_a;
    out.s_b = exp.s_b;
    out.s_ab = exp.s_ab;
    out.witness_paper = out.joint_probs[0][0] > 0.75;
    out.witness_fidelity = out.fidelity > 0.5;
    return out;
}

std::array<std::array<double, 2>, 2> sample_joint_probabilities(const VerificationOutcome& outcome,
                                                                std::size_t shots,
                                                                std::uint64_t seed) {
    if (shots == 0) throw std::domain_error("sample_joint_probabilities: shots must be >= 1");
    SplitMix64 rng(seed);
    std::array<std::array<double, 2>, 2> counts{};
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform_real();
        double acc = 0.0;
        int picked = 3;  // (1,1) absorbs any rounding remainder
        for (int outcome_index = 0; outcome_index < 4; ++outcome_index) {
            acc += outcome.joint_probs[outcome_index / 2][outcome_index % 2];
            if (u < acc) {
                picked = outcome_index;
                break;
            }
        }
        counts[picked / 2][picked % 2] += 1.0;
    }
    for (auto& row : counts)
        for (double& c : row) c /= static_cast<double>(shots);
    return counts;
}

ConsistencyReport consistency_check(const VerificationOutcome& outcome) {
    ConsistencyReport report;
    report.circuit = outcome.joint_probs;
    report.fidelity = outcome.fidelity;
    for (int ma = 0; ma < 2; ++ma) {
        for (int mb = 0; mb < 2; ++mb) {
            const double sign_a = ma == 0 ? 1.0 : -1.0;
            const double sign_b = mb == 0 ? 1.0 : -1.0;
            report.formula[ma][mb] =
                0.25 * (1.0 + sign_a * outcome.s_a + sign_b * outcome.s_b +
                        sign_a * sign_b * outcome.s_ab);
            report.max_residual = std::max(
                report.max_residual, std::abs(report.circuit[ma][mb] - report.formula[ma][mb]));
        }
    }
    report.p00_closed_form = 0.5 * (1.0 + outcome.fidelity);
    report.s_a_closed_form = outcome.fidelity;
    report.s_b_closed_form = outcome.fidelity;
    report.s_ab_closed_form = 1.0;
    report.closed_form_matches_circuit =
        std::abs(report.p00_closed_form - outcome.joint_probs[0][0]) <= 1e-10;
    if (report.max_residual > 1e-10)
        throw std::logic_error(
            "consistency_check: circuit probabilities deviate from the oracle-fed parity formula");
    return report;
}

SeparabilitySweepResult separability_sweep(std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::domain_error("separability_sweep: samples must be >= 1");
    SplitMix64 rng(seed);
    auto haar_qubit = [&]() {
        Vector2cd v;
        v << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
        v.normalize();
        return v;
    };
    auto product_density = [&]() {
        const Vector2cd a = haar_qubit();
        const Vector2cd b = haar_qubit();
        const Eigen::Vector4cd joint = kron(a, b);
        return Eigen::Matrix4cd(joint * joint.adjoint());
    };

    SeparabilitySweepResult result;
    for (std::size_t i = 0; i < samples; ++i) {
        const auto rho = TwoQubitDensity::from_matrix(product_density());
        result.max_fidelity_product = std::max(result.max_fidelity_product, bell_fidelity(rho));
    }
    for (std::size_t i = 0; i < samples; ++i) {
        const auto terms = 1 + rng.uniform_below(8);
        Eigen::Matrix4cd mix = Eigen::Matrix4cd::Zero();
        std::vector<double> weights(terms);
        double norm = 0.0;
        for (double& w : weights) {
            w = -std::log(static_cast<double>((rng.next() >> 11) + 1) * 0x1.0p-53);
            norm += w;
        }
        for (std::uint64_t t = 0; t < terms; ++t) mix += (weights[t] / norm) * product_density();
        const auto rho = TwoQubitDensity::from_matrix(mix);
        result.max_fidelity_mixture = std::max(result.max_fidelity_mixture, bell_fidelity(rho));
    }
    result.max_fidelity = std::max(result.max_fidelity_product, result.max_fidelity_mixture);
    return result;
}

std::vector<VerificationRow> werner_verification_sweep(const std::vector<double>& visibilities,
                                                       int jobs) {
    std::vector<VerificationRow> rows(visibilities.size());
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        rows[i].w = visibilities[i];
        rows[i].outcome = run_protocol(werner_density(WernerParameter(visibilities[i])));
        rows[i].report = consistency_check(rows[i].outcome);
    });
    return rows;
}

void write_verification_csv(std::ostream& out, const std::vector<VerificationRow>& rows) {
    out << "w,F,P00,P01,P10,P11,sA,sB,sAB,P00_paper,witness_paper,witness_fidelity\n";
    for (const auto& row : rows) {
        const auto& o = row.outcome;
        out << fmt_real(row.w) << "," << fmt_real(o.fidelity) << ","
            << fmt_real(o.joint_probs[0][0]) << "," << fmt_real(o.joint_probs[0][1]) << ","
            << fmt_real(o.joint_probs[1][0]) << "," << fmt_real(o.joint_probs[1][1]) << ","
            << fmt_real(o.s_a) << "," << fmt_real(o.s_b) << "," << fmt_real(o.s_ab) << ","
            << fmt_real(row.report.p00_closed_form) << "," << (o.witness_paper ? 1 : 0) << ","
            << (o.witness_fidelity ? 1 : 0) << "\n";
    }
}

void write_discrepancy_report(std::ostream& out, const std::vector<VerificationRow>& rows) {
    out << "Distributed SWAP verification: circuit simulation vs closed-form predictions\n";
    out << "Closed forms under test: P00 = (1+F)/2, <S_A> = <S_B> = F, <S_A S_B> = 1.\n";
    out << "Oracle: direct 16x16 trace evaluation of the SWAP observables.\n\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%8s %10s %12s %12s %10s %10s %10s %10s %12s %12s\n", "w", "F",
                  "P00_circuit", "P00_closed", "sA_oracle", "sA_closed", "sB_oracle", "sB_closed",
                  "sAB_oracle", "sAB_closed");
    out << line;
    double max_residual = 0.0;
    double max_closed_form_gap = 0.0;
    for (const auto& row : rows) {
        const auto& o = row.outcome;
        const auto& r = row.report;
        std::snprintf(line, sizeof(line),
                      "%8.4f %10.6f %12.8f %12.8f %10.6f %10.6f %10.6f %10.6f %12.8f %12.8f\n",
                      row.w, o.fidelity, o.joint_probs[0][0], r.p00_closed_form, o.s_a,
                      r.s_a_closed_form, o.s_b, r.s_b_closed_form, o.s_ab, r.s_ab_closed_form);
        out << line;
        max_residual = std::max(max_residual, r.max_residual);
        max_closed_form_gap =
            std::max(max_closed_form_gap, std::abs(o.joint_probs[0][0] - r.p00_closed_form));
    }
    out << "\nmax |circuit - parity formula(oracle)| = " << fmt_real(max_residual) << "\n";
    out << "max |P00_circuit - P00_closed|         = " << fmt_real(max_closed_form_gap) << "\n";
    if (max_closed_form_gap > 1e-10) {
        out << "The closed-form predictions disagree with the simulated circuit; the circuit\n"
               "matches the parity formula fed with the trace-oracle expectations "
               "(<S_A> = <S_B> = 1/2,\n<S_A S_B> = F), giving P00 = (2+F)/4. The fidelity "
               "witness F > 1/2 is unaffected.\n";
    }
}

}  // namespace qnet
