#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qnet/linalg.hpp"
#include "qnet/rng.hpp"
#include "qnet/swap_verify.hpp"
#include "test_oracles.hpp"

using namespace qnet;

namespace {

TwoQubitDensity pure(const Eigen::Vector4cd& v) {
    return TwoQubitDensity::from_matrix(v * v.adjoint());
}

TwoQubitDensity zero_zero_state() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    return TwoQubitDensity::from_matrix(m);
}

TwoQubitDensity maximally_mixed() {
    return TwoQubitDensity::from_matrix(0.25 * Eigen::Matrix4cd::Identity());
}

int rank_of(const Eigen::MatrixXcd& m, double tol = 1e-9) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    int rank = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) > tol) ++rank;
    return rank;
}

}  // namespace

TEST_CASE("initial state assembly") {
    const auto state = assemble_initial_state(pure(phi_plus_vector()));
    CHECK(state.qubit_count() == 6);
    CHECK(std::abs(state.matrix().trace().real() - 1.0) < 1e-14);
    CHECK(rank_of(state.matrix()) == 1);  // pure |0>|0>|Phi+>|Phi+>

    // the expected pure global vector, assembled independently
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected(0) = 1.0;  // |00> of the ancillas
    expected = kron(expected, Eigen::MatrixXcd(phi_plus_vector()));
    expected = kron(expected, Eigen::MatrixXcd(phi_plus_vector()));
    CHECK((state.matrix() - expected * expected.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("assembled rank equals the input rank") {
    CHECK(rank_of(assemble_initial_state(maximally_mixed()).matrix()) == 4);
    CHECK(rank_of(assemble_initial_state(
                      werner_density(WernerParameter(0.8))).matrix()) == 4);
    CHECK(rank_of(assemble_initial_state(zero_zero_state()).matrix()) == 1);
}

TEST_CASE("hadamard is involutive and maps |0> to |+>") {
    auto state = assemble_initial_state(werner_density(WernerParameter(0.7)));
    const Eigen::MatrixXcd before = state.matrix();
    state.apply_hadamard(0);
    // reduced ancilla a_A after one H: |+><+|
    Eigen::MatrixXcd reduced = state.matrix();
    for (int q = 5; q >= 1; --q) reduced = partial_trace_qubit(reduced, q + 1, q);
    Eigen::Matrix2cd plus;
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK((reduced - plus).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(state.matrix().trace().real() - 1.0) < 1e-13);
    CHECK((state.matrix() - state.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-13);

    state.apply_hadamard(0);
    CHECK((state.matrix() - before).cwiseAbs().maxCoeff() < 1e-13);
    CHECK_THROWS_AS(state.apply_hadamard(6), std::domain_error);
}

TEST_CASE("cswap leaves control-|0> states alone and swaps under control-|1>") {
    // 3-qubit pure states: |0,0,1> stays, |1,0,1> -> |1,1,0>
    auto basis_state = [](int b) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
        m(b, b) = 1.0;
        return MultiQubitDensity::from_matrix(3, m);
    };
    auto idle = basis_state(0b001);
    idle.apply_cswap(0, 1, 2);
    CHECK(idle.matrix()(0b001, 0b001).real() == doctest::Approx(1.0));

    auto active = basis_state(0b101);
    active.apply_cswap(0, 1, 2);
    CHECK(active.matrix()(0b110, 0b110).real() == doctest::Approx(1.0));
    CHECK(active.matrix()(0b101, 0b101).real() == doctest::Approx(0.0));

    CHECK_THROWS_AS(idle.apply_cswap(0, 0, 1), std::domain_error);
    CHECK_THROWS_AS(idle.apply_cswap(0, 1, 3), std::domain_error);
}

TEST_CASE("fredkin conjugation is an involution on random states") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::MatrixXcd g(8, 8);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
        Eigen::MatrixXcd rho = g * g.adjoint();
        rho /= rho.trace();
        rho = ((rho + rho.adjoint()) / 2.0).eval();
        auto state = MultiQubitDensity::from_matrix(3, rho);
        state.apply_cswap(1, 0, 2);
        CHECK(std::abs(state.matrix().trace().real() - 1.0) < 1e-13);
        CHECK((state.matrix() - state.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-13);
        state.apply_cswap(1, 0, 2);
        CHECK((state.matrix() - rho).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("every gate layer of the protocol preserves the density invariants") {
    auto state = assemble_initial_state(werner_density(WernerParameter(0.6)));
    auto check_invariants = [&]() {
        CHECK(std::abs(state.matrix().trace().real() - 1.0) < 1e-12);
        CHECK((state.matrix() - state.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(state.matrix());
        CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
    };
    state.apply_hadamard(0);
    check_invariants();
    state.apply_hadamard(1);
    check_invariants();
    state.apply_cswap(0, 2, 4);
    check_invariants();
    state.apply_cswap(1, 3, 5);
    check_invariants();
    state.apply_hadamard(0);
    state.apply_hadamard(1);
    check_invariants();
}

TEST_CASE("protocol on |Phi+>: frozen circuit values") {
    const auto outcome = run_protocol(pure(phi_plus_vector()));
    // ground truth recorded from the brute-force 64x64 oracle
    CHECK(outcome.joint_probs[0][0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(outcome.joint_probs[0][1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(outcome.joint_probs[1][0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(outcome.joint_probs[1][1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(outcome.fidelity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(outcome.s_a == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(outcome.s_b == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(outcome.s_ab == doctest::Approx(1.0).epsilon(1e-13));
    // the closed-form prediction (1+F)/2 = 1 disagrees with the circuit
    CHECK_FALSE(outcome.witness_paper);  // 0.75 is not > 3/4
    CHECK(outcome.witness_fidelity);
}

TEST_CASE("protocol on I/4 and |00>: frozen circuit values") {
    const auto mixed = run_protocol(maximally_mixed());
    CHECK(mixed.fidelity == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mixed.joint_probs[0][0] == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK(mixed.joint_probs[0][1] == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(mixed.joint_probs[1][0] == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(mixed.joint_probs[1][1] == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(mixed.s_ab == doctest::Approx(0.25).epsilon(1e-13));
    CHECK_FALSE(mixed.witness_fidelity);

    const auto product = run_protocol(zero_zero_state());
    CHECK(product.fidelity == 0.5);
    CHECK_FALSE(product.witness_fidelity);  // F = 0.5 is not > 1/2
    CHECK(product.joint_probs[0][0] == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(product.s_ab == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("swap expectations are real and match the swap-trick identities") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho = TwoQubitDensity::from_matrix(qnet_test::random_density_oracle(rng));
        const auto exp = swap_expectations(rho);
        // Tr[S_A sigma] = Tr[rho_A * I/2] = 1/2 for any state; the pair swap
        // reproduces the Bell fidelity
        CHECK(exp.s_a == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(exp.s_b == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(exp.s_ab == doctest::Approx(bell_fidelity(rho)).epsilon(1e-12));
    }
}

TEST_CASE("circuit matches the oracle-fed parity formula across state families") {
    auto check_state = [](const TwoQubitDensity& rho) {
        const auto outcome = run_protocol(rho);
        const auto report = consistency_check(outcome);  // throws on failure
        CHECK(report.max_residual <= 1e-10);
        double sum = 0.0;
        for (const auto& row : outcome.joint_probs)
            for (double p : row) {
                CHECK(p >= -1e-12);
                CHECK(p <= 1.0 + 1e-12);
                sum += p;
            }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    };

    for (int b = 0; b < 4; ++b) check_state(pure(bell_state_vector(b)));
    for (int i = 0; i <= 50; ++i)
        check_state(werner_density(WernerParameter(i / 50.0)));
    SplitMix64 rng(2025);
    for (int trial = 0; trial < 50; ++trial)
        check_state(TwoQubitDensity::from_matrix(qnet_test::random_density_oracle(rng)));
}

TEST_CASE("fidelity is linear in the state") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = qnet_test::random_density_oracle(rng);
        const auto b = qnet_test::random_density_oracle(rng);
        const double p = rng.uniform_real();
        const double mixed = bell_fidelity(
            TwoQubitDensity::from_matrix(p * a + (1.0 - p) * b));
        const double split = p * bell_fidelity(TwoQubitDensity::from_matrix(a)) +
                             (1.0 - p) * bell_fidelity(TwoQubitDensity::from_matrix(b));
        CHECK(std::abs(mixed - split) <= 1e-12);
    }
}

TEST_CASE("circuit P00 is monotone in the werner visibility") {
    double previous = -1.0;
    for (int i = 0; i <= 20; ++i) {
        const auto outcome = run_protocol(werner_density(WernerParameter(i / 20.0)));
        CHECK(outcome.joint_probs[0][0] >= previous);
        previous = outcome.joint_probs[0][0];
    }
}

TEST_CASE("witness soundness on separable and werner states") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        // random pure product state
        Eigen::Vector2cd a, b;
        a << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
        b << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
        a.normalize();
        b.normalize();
        const Eigen::Vector4cd v = kron(Eigen::MatrixXcd(a), Eigen::MatrixXcd(b));
        CHECK_FALSE(run_protocol(pure(v)).witness_fidelity);
    }
    for (double w : {0.72, 0.8, 0.95, 1.0})
        CHECK(run_protocol(werner_density(WernerParameter(w))).witness_fidelity);
}

TEST_CASE("separability sweep stays below one half and |00> attains it") {
    const auto result = separability_sweep(2000, 99);
    CHECK(result.max_fidelity_product <= 0.5 + 1e-12);
    CHECK(result.max_fidelity_mixture <= 0.5 + 1e-12);
    CHECK(bell_fidelity(zero_zero_state()) == 0.5);
    CHECK_THROWS_AS(separability_sweep(0, 1), std::domain_error);
}

TEST_CASE("sampled statistics converge to the exact distribution") {
    const auto outcome = run_protocol(werner_density(WernerParameter(0.8)));
    const auto sampled = sample_joint_probabilities(outcome, 200000, 5);
    for (int ma = 0; ma < 2; ++ma)
        for (int mb = 0; mb < 2; ++mb)
            CHECK(std::abs(sampled[ma][mb] - outcome.joint_probs[ma][mb]) < 0.01);
}

TEST_CASE("werner sweep rows carry consistent reports and csv schema") {
    const auto rows = werner_verification_sweep({0.0, 0.5, 1.0});
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) CHECK(row.report.max_residual <= 1e-10);

    std::ostringstream csv;
    write_verification_csv(csv, rows);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "w,F,P00,P01,P10,P11,sA,sB,sAB,P00_paper,witness_paper,witness_fidelity");
    int data_rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++data_rows;
    CHECK(data_rows == 3);

    std::ostringstream report;
    write_discrepancy_report(report, rows);
    CHECK(report.str().find("P00_circuit") != std::string::npos);
    CHECK(report.str().find("sAB_oracle") != std::string::npos);
}

TEST_CASE("density validation rejects malformed inputs") {
    CHECK_THROWS_AS(MultiQubitDensity::from_matrix(2, Eigen::MatrixXcd::Identity(8, 8)),
                    std::domain_error);
    CHECK_THROWS_AS(MultiQubitDensity::from_matrix(7, Eigen::MatrixXcd::Identity(128, 128) / 128.0),
                    std::domain_error);
    Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(4, 4);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(MultiQubitDensity::from_matrix(2, negative), std::domain_error);
}
