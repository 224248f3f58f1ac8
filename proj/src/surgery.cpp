#include "advkit/surgery.hpp"

#include <cmath>

namespace advkit {

Matrix total_evolution(const QueryAlgorithm& alg, const BitString& x) {
    if (x.size() != alg.n) {
        throw Error("shape_mismatch", "input length does not match algorithm's n");
    }
    const Matrix oracle = phase_oracle(x, alg.ancilla_dim);
    Matrix a = alg.unitaries[0];
    for (size_t t = 1; t < alg.unitaries.size(); ++t) {
        a = alg.unitaries[t] * oracle * a;
    }
    return a;
}

SurgeryResult perform_surgery(const EvaluationProblem& problem, const QueryAlgorithm& alg,
                              const Vector& initial) {
    const size_t m = problem.domain.size();
    if (m == 0) throw Error("empty_input", "surgery over an empty domain");

    SurgeryResult result;
    result.modified_final.reserve(m);
    result.modified_initial.reserve(m);
    result.sqrt_p_true.resize(static_cast<Eigen::Index>(m));

    double min_p = 1.0;
    for (size_t i = 0; i < m; ++i) {
        const BitString& x = problem.domain[i];
        const Vector final_state = run(alg, x, initial);
        const Matrix& proj = problem.projector_of(problem.value_of(x));
        const Vector projected = proj * final_state;
        const double norm = projected.norm();
        if (norm <= 1e-12) {
            throw Error("zero_success_input", "input " + x.str() + " has zero success amplitude");
        }
        result.sqrt_p_true(static_cast<Eigen::Index>(i)) = norm;
        min_p = std::min(min_p, norm * norm);

        const Vector modified_final = projected / norm;
        const Matrix evolution = total_evolution(alg, x);
        const Vector modified_initial = evolution.adjoint() * modified_final;

        // The explicit-matrix route must agree with step-by-step evolution.
        const double cross_check = (run(alg, x, modified_initial) - modified_final).norm();
        if (cross_check > 1e-9) {
            throw Error("inconsistent_evolution",
                        "matrix and step-by-step evolution disagree on input " + x.str());
        }

        result.modified_final.push_back(modified_final);
        result.modified_initial.push_back(modified_initial);
    }

    result.gram_initial = gram(result.modified_initial);
    result.gram_final = gram(result.modified_final);
    result.delta = min_p - 0.5;
    return result;
}

SurgeryReport verify_lemma1(const SurgeryResult& result, const EvaluationProblem& problem,
                            const QueryAlgorithm& alg, const Vector& initial, double tol) {
    SurgeryReport report;
    const size_t m = problem.domain.size();

    for (size_t i = 0; i < m; ++i) {
        const BitString& x = problem.domain[i];

        const double evo = (run(alg, x, result.modified_initial[i]) - result.modified_final[i]).norm();
        report.evolution_residual = std::max(report.evolution_residual, evo);

        const Complex overlap = initial.dot(result.modified_initial[i]);
        report.overlap_residual = std::max(
            report.overlap_residual,
            std::abs(overlap - Complex(result.sqrt_p_true(static_cast<Eigen::Index>(i)), 0.0)));

        for (size_t j = i + 1; j < m; ++j) {
            if (problem.value_of(x) == problem.value_of(problem.domain[j])) continue;
            const double cross = std::abs(result.modified_final[i].dot(result.modified_final[j]));
            report.orthogonality_residual = std::max(report.orthogonality_residual, cross);
        }
    }

    report.evolution_ok = report.evolution_residual <= tol;
    report.orthogonality_ok = report.orthogonality_residual <= tol;
    report.overlap_ok = report.overlap_residual <= tol;
    return report;
}

}  // namespace advkit
