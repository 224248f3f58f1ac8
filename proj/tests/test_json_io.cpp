#include <doctest.h>

#include "advkit/json_io.hpp"

using namespace advkit;

TEST_CASE("matrix round-trip preserves every entry exactly") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
        const Matrix m = random_hermitian(4, rng);
        const Matrix back = matrix_from_json(matrix_to_json(m));
        CHECK(max_abs_entry(m - back) == 0.0);
    }
}

TEST_CASE("matrix parse errors") {
    Json bad = Json{{"rows", 2}, {"cols", 2}, {"entries", Json::array({Json::array({1.0, 0.0})})}};
    CHECK_THROWS_WITH_AS(matrix_from_json(bad), doctest::Contains("parse_error"), Error);
}

TEST_CASE("problem and algorithm round-trip") {
    const GroverFixture fx = build_grover(4, 1);

    const EvaluationProblem p2 = problem_from_json(problem_to_json(fx.problem));
    CHECK(p2.n == 4);
    CHECK(p2.domain.size() == 4);
    CHECK(p2.value_of(BitString::parse("0100")) == "1");
    CHECK(max_abs_entry(p2.projector_of("2") - fx.problem.projector_of("2")) == 0.0);

    const QueryAlgorithm a2 = algorithm_from_json(algorithm_to_json(fx.algorithm));
    CHECK(a2.query_count() == 1);
    CHECK(max_abs_entry(a2.unitaries[0] - fx.algorithm.unitaries[0]) == 0.0);
}

TEST_CASE("algorithm deserialization rejects a tampered unitary") {
    const GroverFixture fx = build_grover(4, 1);
    Json j = algorithm_to_json(fx.algorithm);
    j["unitaries"][1]["entries"][0][0] = 3.0;
    CHECK_THROWS_WITH_AS(algorithm_from_json(j), doctest::Contains("not_unitary"), Error);
}

TEST_CASE("surgery result round-trip") {
    const GroverFixture fx = build_grover(4, 1);
    const QueryAlgorithm alg = degrade(fx.algorithm, 0.3);
    const SurgeryResult sr = perform_surgery(fx.problem, alg, fx.initial);
    const SurgeryReport report = verify_lemma1(sr, fx.problem, alg, fx.initial);

    const SurgeryResult back = surgery_from_json(surgery_to_json(sr, report));
    CHECK(back.delta == sr.delta);
    CHECK(max_abs_entry(back.gram_initial - sr.gram_initial) == 0.0);
    CHECK(max_abs_entry(back.gram_final - sr.gram_final) == 0.0);
    CHECK((back.sqrt_p_true - sr.sqrt_p_true).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("load_json_file errors") {
    CHECK_THROWS_WITH_AS(load_json_file("/nonexistent/path.json"), doctest::Contains("io_error"),
                         Error);
}
