#ifndef ADVKIT_SURGERY_HPP
#define ADVKIT_SURGERY_HPP

#include "advkit/querymodel.hpp"

namespace advkit {

/// Output of the project-and-uncompute construction. All collections are
/// in domain order.
struct SurgeryResult {
    std::vector<Vector> modified_final;    // tau'_x, normalized
    std::vector<Vector> modified_initial;  // xi'_x, normalized
    RealVector sqrt_p_true;                // ||P_{f(x)} tau_x|| per input
    Matrix gram_initial;                   // G_xi'
    Matrix gram_final;                     // G_tau'
    double delta = 0.0;                    // success bias of the original run
};

/// The full evolution A_x = U^T O_x ... U^1 O_x U^0 as an explicit unitary.
Matrix total_evolution(const QueryAlgorithm& alg, const BitString& x);

/// Projects each final state onto its correct measurement subspace,
/// renormalizes, and uncomputes through A_x^dag to obtain the modified
/// initial states. Requires ||P_{f(x)} tau_x|| > 0 for every input.
SurgeryResult perform_surgery(const EvaluationProblem& problem, const QueryAlgorithm& alg,
                              const Vector& initial);

/// Independent re-check of the three construction properties.
struct SurgeryReport {
    bool evolution_ok = false;      // running the algorithm on xi'_x gives tau'_x
    bool orthogonality_ok = false;  // tau'_x orthogonal across distinct f values
    bool overlap_ok = false;        // <xi|xi'_x> = sqrt_p_true[x], real
    double evolution_residual = 0.0;
    double orthogonality_residual = 0.0;
    double overlap_residual = 0.0;

    bool all_ok() const { return evolution_ok && orthogonality_ok && overlap_ok; }
};

SurgeryReport verify_lemma1(const SurgeryResult& result, const EvaluationProblem& problem,
                            const QueryAlgorithm& alg, const Vector& initial, double tol = 1e-8);

}  // namespace advkit

#endif
