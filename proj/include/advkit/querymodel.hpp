#ifndef ADVKIT_QUERYMODEL_HPP
#define ADVKIT_QUERYMODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "advkit/linalg.hpp"

namespace advkit {

/// An n-bit input. Serialized left-to-right as x_0 x_1 ... x_{n-1}.
struct BitString {
    std::vector<int> bits;

    static BitString parse(const std::string& s);
    std::string str() const;
    int size() const { return static_cast<int>(bits.size()); }

    bool operator==(const BitString& other) const { return bits == other.bits; }
    bool operator<(const BitString& other) const { return bits < other.bits; }
};

/// A function-evaluation problem: f on a domain of n-bit strings, plus the
/// final projective measurement. Domain order fixes the row/column order of
/// every domain-indexed matrix. The PVM may be incomplete (sum P_c < I);
/// success only ever uses the projector of the correct label.
struct EvaluationProblem {
    int n = 0;
    int ancilla_dim = 1;
    std::vector<BitString> domain;
    std::map<std::string, std::string> values;  // bit-string -> output label
    std::map<std::string, Matrix> pvm;          // output label -> projector

    int dim() const { return (n + 1) * ancilla_dim; }
    const std::string& value_of(const BitString& x) const;  // throws unknown_input
    const Matrix& projector_of(const std::string& label) const;
    int index_of(const BitString& x) const;  // position in domain order

    /// Checks domain consistency, projector orthogonality/idempotence.
    void validate(double tol = 1e-10) const;
};

/// Ordered unitaries U^0..U^T over the (n+1)*W dimensional space.
struct QueryAlgorithm {
    int n = 0;
    int ancilla_dim = 1;
    std::vector<Matrix> unitaries;

    int dim() const { return (n + 1) * ancilla_dim; }
    int query_count() const { return static_cast<int>(unitaries.size()) - 1; }

    void validate(double tol = 1e-10) const;  // throws not_unitary / shape_mismatch
};

struct RunRecord {
    BitString input;
    Vector final_state;
    double success_probability = 0.0;
};

/// The diagonal phase oracle O_x: basis index (j,w) picks up (-1)^{x_j} for
/// j < n and is untouched for j = n, identically over the ancilla index w.
Matrix phase_oracle(const BitString& x, int ancilla_dim);

/// U^T O_x U^{T-1} O_x ... U^1 O_x U^0 |initial>.
Vector run(const QueryAlgorithm& alg, const BitString& x, const Vector& initial);

/// ||P_{f(x)} |final>||^2.
double success_probability(const EvaluationProblem& problem, const BitString& x, const Vector& final_state);

/// min over x in D of success_probability(x) - 1/2. May be negative.
double success_bias(const EvaluationProblem& problem, const QueryAlgorithm& alg, const Vector& initial);

struct GroverFixture {
    EvaluationProblem problem;
    QueryAlgorithm algorithm;
    Vector initial;  // |j=0, w=0>
};

/// Single-marked-position search over domain {e_0..e_{n-1}}: U^0 prepares
/// the uniform superposition over {0..n-1}, U^1..U^T are the Grover
/// diffusion (identity on |n>), PVM P_j = |j><j|.
GroverFixture build_grover(int n, int t);

/// Composes a mixing rotation into U^T that sends each correct-outcome
/// direction partly into an orthogonal one, so a previously perfect
/// algorithm attains success probability cos^2(theta) on every input.
QueryAlgorithm degrade(const QueryAlgorithm& alg, double theta);

/// Seeded random algorithm (Haar-like unitaries from QR of Gaussians).
QueryAlgorithm random_algorithm(int n, int ancilla_dim, int t, std::mt19937_64& rng);

}  // namespace advkit

#endif
