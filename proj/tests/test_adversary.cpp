#include <doctest.h>

#include <cmath>

#include "advkit/adversary.hpp"

using namespace advkit;

namespace {

EvaluationProblem or_promise(int n) {
    EvaluationProblem p;
    p.n = n;
    p.ancilla_dim = 1;
    BitString zero;
    zero.bits.assign(n, 0);
    p.domain.push_back(zero);
    p.values[zero.str()] = "0";
    for (int j = 0; j < n; ++j) {
        BitString x = zero;
        x.bits[j] = 1;
        p.domain.push_back(x);
        p.values[x.str()] = "1";
    }
    return p;
}

EvaluationProblem parity2() {
    EvaluationProblem p;
    p.n = 2;
    p.ancilla_dim = 1;
    for (const char* s : {"00", "01", "10", "11"}) {
        BitString x = BitString::parse(s);
        p.domain.push_back(x);
        p.values[s] = std::to_string((x.bits[0] + x.bits[1]) % 2);
    }
    return p;
}

}  // namespace

TEST_CASE("delta_family") {
    SUBCASE("hand-checked 3-point domain") {
        const std::vector<BitString> domain = {BitString::parse("00"), BitString::parse("01"),
                                               BitString::parse("10")};
        const auto deltas = delta_family(domain, 2);
        REQUIRE(deltas.size() == 2);

        Matrix expected0(3, 3);
        expected0 << 0, 0, 2, 0, 0, 2, 2, 2, 0;
        CHECK(max_abs_entry(deltas[0] - expected0) == 0.0);

        Matrix expected1(3, 3);
        expected1 << 0, 2, 0, 2, 0, 2, 0, 2, 0;
        CHECK(max_abs_entry(deltas[1] - expected1) == 0.0);
    }
    SUBCASE("single-element domain gives the zero matrix") {
        const auto deltas = delta_family({BitString::parse("01")}, 2);
        CHECK(max_abs_entry(deltas[0]) == 0.0);
        CHECK(max_abs_entry(deltas[1]) == 0.0);
    }
    SUBCASE("entries are 0 or 2 with zero diagonal") {
        const EvaluationProblem p = parity2();
        for (const auto& d : delta_family(p.domain, 2)) {
            for (int a = 0; a < 4; ++a) {
                CHECK(d(a, a) == Complex(0, 0));
                for (int b = 0; b < 4; ++b) {
                    const double v = d(a, b).real();
                    CHECK((v == 0.0 || v == 2.0));
                }
            }
        }
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_WITH_AS(delta_family({BitString::parse("011")}, 2),
                             doctest::Contains("inconsistent_lengths"), Error);
    }
}

TEST_CASE("certificate_ratio") {
    const EvaluationProblem p = or_promise(2);
    const auto deltas = delta_family(p.domain, 2);

    SUBCASE("zero target gives zero") {
        Matrix gamma = Matrix::Zero(3, 3);
        gamma(0, 1) = gamma(1, 0) = Complex(1, 0);
        CHECK(certificate_ratio(gamma, deltas, Matrix::Zero(3, 3)) == 0.0);
    }
    SUBCASE("zero gamma rejected") {
        CHECK_THROWS_WITH_AS(certificate_ratio(Matrix::Zero(3, 3), deltas, Matrix::Ones(3, 3)),
                             doctest::Contains("zero_gamma"), Error);
    }
    SUBCASE("gamma on constant-bit pairs only") {
        // Domain {00, 01, 10}: no pair agrees in every bit, but a diagonal
        // Gamma touches no distinguishable pair at all.
        Matrix gamma = Matrix::Identity(3, 3);
        CHECK_THROWS_WITH_AS(certificate_ratio(gamma, deltas, Matrix::Ones(3, 3)),
                             doctest::Contains("zero_denominator"), Error);
    }
}

TEST_CASE("function_certificate_ratio hand certificates") {
    SUBCASE("OR promise n=2") {
        const EvaluationProblem p = or_promise(2);
        const auto deltas = delta_family(p.domain, 2);
        Matrix gamma = Matrix::Zero(3, 3);
        gamma(0, 1) = gamma(1, 0) = gamma(0, 2) = gamma(2, 0) = Complex(1, 0);
        CHECK(in_function_space(gamma, p));
        CHECK(function_certificate_ratio(gamma, deltas) ==
              doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-10));
    }
    SUBCASE("OR promise n=3, star certificate") {
        const EvaluationProblem p = or_promise(3);
        const auto deltas = delta_family(p.domain, 3);
        Matrix gamma = Matrix::Zero(4, 4);
        for (int j = 1; j < 4; ++j) gamma(0, j) = gamma(j, 0) = Complex(1, 0);
        CHECK(in_function_space(gamma, p));
        CHECK(function_certificate_ratio(gamma, deltas) ==
              doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
    }
    SUBCASE("PARITY_2") {
        const EvaluationProblem p = parity2();
        const auto deltas = delta_family(p.domain, 2);
        Matrix gamma = Matrix::Zero(4, 4);
        const int cls[4] = {0, 1, 1, 0};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (cls[a] != cls[b]) gamma(a, b) = Complex(1, 0);
            }
        }
        CHECK(in_function_space(gamma, p));
        CHECK(function_certificate_ratio(gamma, deltas) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("scale invariance") {
        const EvaluationProblem p = or_promise(2);
        const auto deltas = delta_family(p.domain, 2);
        Matrix gamma = Matrix::Zero(3, 3);
        gamma(0, 1) = gamma(1, 0) = Complex(1, 0);
        gamma(0, 2) = gamma(2, 0) = Complex(0.5, 0);
        const double base = function_certificate_ratio(gamma, deltas);
        for (double c : {0.5, 2.0, 10.0}) {
            CHECK(function_certificate_ratio(Matrix(c * gamma), deltas) ==
                  doctest::Approx(base).epsilon(1e-10));
        }
    }
}

TEST_CASE("in_function_space is exact") {
    const EvaluationProblem p = or_promise(2);
    Matrix gamma = Matrix::Zero(3, 3);
    gamma(1, 2) = gamma(2, 1) = Complex(1e-18, 0);  // pair with f=1 on both sides
    CHECK(!in_function_space(gamma, p));
}

TEST_CASE("adv_search") {
    SearchOptions opts;  // seed 7, 20 restarts

    SUBCASE("reaches the OR n=2 hand value") {
        const AdversaryCertificate cert = adv_search(or_promise(2), opts);
        CHECK(cert.value >= std::sqrt(2.0) / 2.0 - 1e-6);
        CHECK(in_function_space(cert.gamma, or_promise(2)));
    }
    SUBCASE("reaches the OR n=3 hand value") {
        const AdversaryCertificate cert = adv_search(or_promise(3), opts);
        CHECK(cert.value >= std::sqrt(3.0) / 2.0 - 1e-6);
    }
    SUBCASE("reaches the PARITY_2 hand value") {
        const AdversaryCertificate cert = adv_search(parity2(), opts);
        CHECK(cert.value >= 1.0 - 1e-6);
    }
    SUBCASE("deterministic given the seed") {
        const AdversaryCertificate a = adv_search(or_promise(3), opts);
        const AdversaryCertificate b = adv_search(or_promise(3), opts);
        CHECK(a.value == b.value);
        CHECK(max_abs_entry(a.gamma - b.gamma) == 0.0);
    }
    SUBCASE("constant function rejected") {
        EvaluationProblem constant = or_promise(2);
        for (auto& [k, v] : constant.values) v = "0";
        CHECK_THROWS_WITH_AS(adv_search(constant, opts), doctest::Contains("constant_function"),
                             Error);
    }
}

TEST_CASE("prefactors") {
    CHECK(prefactor_old(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prefactor_new(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prefactor_old(0.25) == doctest::Approx(0.5 - std::sqrt(0.75)).epsilon(1e-12));
    CHECK(prefactor_new(0.25) == doctest::Approx(0.5).epsilon(1e-15));

    const double special = 1.0 / (2.0 * std::sqrt(2.0));
    CHECK(std::abs(prefactor_old(special)) <= 1e-12);
    CHECK(prefactor_new(special) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    for (int k = 1; k <= 10; ++k) {
        const double d = 0.05 * k;
        CHECK(prefactor_new(d) - prefactor_old(d) ==
              doctest::Approx(std::sqrt(1.0 - 4.0 * d * d)).epsilon(1e-12));
        CHECK(prefactor_new(d) >= prefactor_old(d));
    }

    CHECK_THROWS_WITH_AS(prefactor_old(0.0), doctest::Contains("delta_out_of_range"), Error);
    CHECK_THROWS_WITH_AS(prefactor_new(0.6), doctest::Contains("delta_out_of_range"), Error);
}

TEST_CASE("theorem_verdict on Grover fixtures") {
    const GroverFixture fx = build_grover(4, 1);
    AdversaryCertificate star;
    star.gamma = Matrix::Ones(4, 4) - Matrix::Identity(4, 4);
    star.mode = "function";
    const auto deltas = delta_family(fx.problem.domain, 4);
    star.value = function_certificate_ratio(star.gamma, deltas);
    CHECK(star.value == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));

    SUBCASE("perfect algorithm") {
        const BoundVerdict v = theorem_verdict(fx.problem, fx.algorithm, fx.initial, star);
        CHECK(v.chain_ok());
        CHECK(v.query_count == 1);
        CHECK(v.required == doctest::Approx(star.value).epsilon(1e-8));
    }
    SUBCASE("degraded algorithm, delta = 0.3") {
        const QueryAlgorithm alg = degrade(fx.algorithm, std::acos(std::sqrt(0.8)));
        const BoundVerdict v = theorem_verdict(fx.problem, alg, fx.initial, star);
        CHECK(v.chain_ok());
        CHECK(v.required == doctest::Approx(0.6 * star.value).epsilon(1e-8));
    }
    SUBCASE("nonpositive bias rejected") {
        const GroverFixture zero = build_grover(4, 0);
        CHECK_THROWS_WITH_AS(theorem_verdict(zero.problem, zero.algorithm, zero.initial, star),
                             doctest::Contains("nonpositive_delta"), Error);
    }
    SUBCASE("searched certificates stay sound across degraded fixtures") {
        SearchOptions opts;
        const AdversaryCertificate searched = adv_search(fx.problem, opts);
        for (double cos2 : {1.0, 0.95, 0.8, 0.6}) {
            const QueryAlgorithm alg =
                cos2 == 1.0 ? fx.algorithm : degrade(fx.algorithm, std::acos(std::sqrt(cos2)));
            const BoundVerdict v = theorem_verdict(fx.problem, alg, fx.initial, searched);
            CHECK(v.satisfied);
            CHECK(v.chain_ok());
        }
    }
}

TEST_CASE("state conversion invariant") {
    const GroverFixture fx = build_grover(4, 1);
    const auto deltas = delta_family(fx.problem.domain, 4);
    Matrix gamma = Matrix::Ones(4, 4) - Matrix::Identity(4, 4);
    double denom = 0.0;
    for (const auto& d : deltas) denom = std::max(denom, spectral_norm(hadamard(d, gamma)));
    gamma /= denom;

    for (double cos2 : {1.0, 0.8, 0.6}) {
        const QueryAlgorithm alg =
            cos2 == 1.0 ? fx.algorithm : degrade(fx.algorithm, std::acos(std::sqrt(cos2)));
        const SurgeryResult sr = perform_surgery(fx.problem, alg, fx.initial);
        const double norm = spectral_norm(hadamard(gamma, sr.gram_initial - sr.gram_final));
        CHECK(norm <= alg.query_count() + 1e-8);
        CHECK(certificate_ratio(Matrix(denom * gamma), deltas, sr.gram_initial - sr.gram_final) <=
              alg.query_count() + 1e-8);
    }
}
