#include <doctest.h>

#include <cmath>

#include "advkit/surgery.hpp"

using namespace advkit;

namespace {

QueryAlgorithm degraded_grover(const GroverFixture& fx, double cos2) {
    return degrade(fx.algorithm, std::acos(std::sqrt(cos2)));
}

}  // namespace

TEST_CASE("total_evolution") {
    SUBCASE("zero queries returns U^0") {
        QueryAlgorithm alg;
        alg.n = 2;
        alg.ancilla_dim = 1;
        alg.unitaries.push_back(Matrix::Identity(3, 3));
        const Matrix a = total_evolution(alg, BitString::parse("01"));
        CHECK(max_abs_entry(a - Matrix::Identity(3, 3)) == 0.0);
    }
    SUBCASE("all-zero input makes the oracle trivial") {
        std::mt19937_64 rng(3);
        QueryAlgorithm alg;
        alg.n = 2;
        alg.ancilla_dim = 1;
        alg.unitaries.push_back(random_unitary(3, rng));
        alg.unitaries.push_back(random_unitary(3, rng));
        const Matrix a = total_evolution(alg, BitString::parse("00"));
        CHECK(max_abs_entry(a - alg.unitaries[1] * alg.unitaries[0]) <= 1e-14);
    }
    SUBCASE("is unitary and lands in the correct subspace for perfect Grover") {
        const GroverFixture fx = build_grover(4, 1);
        const BitString x = fx.problem.domain[1];
        const Matrix a = total_evolution(fx.algorithm, x);
        CHECK(unitarity_defect(a) <= 1e-9);
        const Vector final_state = a * fx.initial;
        const Matrix& p1 = fx.problem.projector_of("1");
        CHECK((p1 * final_state).norm() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("perform_surgery on the perfect fixture") {
    const GroverFixture fx = build_grover(4, 1);
    const SurgeryResult sr = perform_surgery(fx.problem, fx.algorithm, fx.initial);

    // p = 1 everywhere, so uncomputing returns the original initial state.
    for (const auto& xi : sr.modified_initial) {
        CHECK(std::abs(fx.initial.dot(xi)) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(max_abs_entry(sr.gram_initial - Matrix::Ones(4, 4)) <= 1e-9);
    CHECK(sr.delta == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("perform_surgery on degraded fixtures") {
    const GroverFixture fx = build_grover(4, 1);
    const double cos2 = 0.8;
    const QueryAlgorithm alg = degraded_grover(fx, cos2);
    const SurgeryResult sr = perform_surgery(fx.problem, alg, fx.initial);

    SUBCASE("overlap equals sqrt(cos^2 theta) for every input") {
        for (size_t i = 0; i < sr.modified_initial.size(); ++i) {
            const Complex overlap = fx.initial.dot(sr.modified_initial[i]);
            CHECK(overlap.real() == doctest::Approx(std::sqrt(cos2)).epsilon(1e-9));
            CHECK(std::abs(overlap.imag()) <= 1e-9);
        }
    }
    SUBCASE("sqrt_p_true matches the projected norms") {
        for (Eigen::Index i = 0; i < sr.sqrt_p_true.size(); ++i) {
            CHECK(sr.sqrt_p_true(i) == doctest::Approx(std::sqrt(cos2)).epsilon(1e-9));
        }
    }
    SUBCASE("final Gram is diagonal across distinct outcomes") {
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                CHECK(std::abs(sr.gram_final(a, b)) <= 1e-9);
            }
        }
    }
    SUBCASE("modified states are normalized, Gram diagonals are 1") {
        for (const auto& v : sr.modified_initial) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& v : sr.modified_final) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-9));
        for (int a = 0; a < 4; ++a) {
            CHECK(sr.gram_initial(a, a).real() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(sr.gram_final(a, a).real() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("overlap lower bound from the success bias") {
        const double delta = sr.delta;
        REQUIRE(delta > 0);
        for (const auto& xi : sr.modified_initial) {
            CHECK(fx.initial.dot(xi).real() >= std::sqrt(0.5 + delta) - 1e-9);
        }
    }
}

TEST_CASE("surgery rejects zero success amplitude") {
    // With U^0 = I the final state is |0> for every input, so e.g. input e_1
    // has zero amplitude on its correct outcome.
    const GroverFixture fx = build_grover(4, 0);
    QueryAlgorithm alg = fx.algorithm;
    alg.unitaries[0] = Matrix::Identity(5, 5);
    CHECK_THROWS_WITH_AS(perform_surgery(fx.problem, alg, fx.initial),
                         doctest::Contains("zero_success_input"), Error);
}

TEST_CASE("verify_lemma1") {
    const GroverFixture fx = build_grover(4, 1);
    const QueryAlgorithm alg = degraded_grover(fx, 0.8);
    const SurgeryResult sr = perform_surgery(fx.problem, alg, fx.initial);

    SUBCASE("passes on genuine surgery output") {
        const SurgeryReport report = verify_lemma1(sr, fx.problem, alg, fx.initial, 1e-8);
        CHECK(report.all_ok());
        CHECK(report.evolution_residual <= 1e-8);
        CHECK(report.orthogonality_residual <= 1e-8);
        CHECK(report.overlap_residual <= 1e-8);
    }
    SUBCASE("replacing tau' by the unprojected tau breaks the evolution property") {
        // The unprojected finals of a unitarily degraded algorithm are still
        // mutually orthogonal, so this tampering shows up in Property 1, not 2.
        SurgeryResult tampered = sr;
        for (size_t i = 0; i < tampered.modified_final.size(); ++i) {
            tampered.modified_final[i] = run(alg, fx.problem.domain[i], fx.initial);
        }
        const SurgeryReport report = verify_lemma1(tampered, fx.problem, alg, fx.initial, 1e-8);
        CHECK(!report.evolution_ok);
        CHECK(report.evolution_residual > 0.1);
    }
    SUBCASE("contaminating tau' with a shared direction breaks orthogonality") {
        SurgeryResult tampered = sr;
        Vector shared = Vector::Zero(5);
        shared(4) = Complex(1, 0);  // the unqueried index, unused by the PVM
        for (auto& tau : tampered.modified_final) {
            tau = (std::sqrt(0.8) * tau + std::sqrt(0.2) * shared).eval();
        }
        const SurgeryReport report = verify_lemma1(tampered, fx.problem, alg, fx.initial, 1e-8);
        CHECK(!report.orthogonality_ok);
        CHECK(report.orthogonality_residual > 0.1);
    }
    SUBCASE("replacing xi' by the original initial state breaks the evolution property") {
        SurgeryResult tampered = sr;
        for (auto& xi : tampered.modified_initial) xi = fx.initial;
        const SurgeryReport report = verify_lemma1(tampered, fx.problem, alg, fx.initial, 1e-8);
        CHECK(!report.evolution_ok);
    }
}
