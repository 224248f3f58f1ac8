#include "advkit/querymodel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace advkit {

BitString BitString::parse(const std::string& s) {
    BitString x;
    x.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw Error("invalid_bitstring", "expected only 0/1 characters, got \"" + s + "\"");
        }
        x.bits.push_back(c - '0');
    }
    return x;
}

std::string BitString::str() const {
    std::string s;
    s.reserve(bits.size());
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
}

const std::string& EvaluationProblem::value_of(const BitString& x) const {
    auto it = values.find(x.str());
    if (it == values.end()) {
        throw Error("unknown_input", "input " + x.str() + " not in domain");
    }
    return it->second;
}

const Matrix& EvaluationProblem::projector_of(const std::string& label) const {
    auto it = pvm.find(label);
    if (it == pvm.end()) {
        throw Error("unknown_label", "no projector for output label " + label);
    }
    return it->second;
}

int EvaluationProblem::index_of(const BitString& x) const {
    for (size_t i = 0; i < domain.size(); ++i) {
        if (domain[i] == x) return static_cast<int>(i);
    }
    throw Error("unknown_input", "input " + x.str() + " not in domain");
}

void EvaluationProblem::validate(double tol) const {
    if (ancilla_dim < 1) throw Error("invalid_ancilla", "ancilla_dim must be >= 1");
    std::set<std::string> seen;
    for (const auto& x : domain) {
        if (x.size() != n) {
            throw Error("inconsistent_lengths", "domain entry " + x.str() + " has wrong length");
        }
        if (!seen.insert(x.str()).second) {
            throw Error("duplicate_input", "domain entry " + x.str() + " repeated");
        }
        if (values.find(x.str()) == values.end()) {
            throw Error("missing_value", "no f value for domain entry " + x.str());
        }
    }
    const int d = dim();
    for (const auto& [label, p] : pvm) {
        if (p.rows() != d || p.cols() != d) {
            throw Error("shape_mismatch", "projector for label " + label + " has wrong dimension");
        }
        if (!is_hermitian(p, tol)) {
            throw Error("not_projector", "projector for label " + label + " is not Hermitian");
        }
        if (max_abs_entry(p * p - p) > tol) {
            throw Error("not_projector", "projector for label " + label + " is not idempotent");
        }
    }
    for (auto it = pvm.begin(); it != pvm.end(); ++it) {
        for (auto jt = std::next(it); jt != pvm.end(); ++jt) {
            if (max_abs_entry(it->second * jt->second) > tol) {
                throw Error("not_orthogonal", "projectors " + it->first + " and " + jt->first + " overlap");
            }
        }
    }
}

void QueryAlgorithm::validate(double tol) const {
    if (unitaries.empty()) {
        throw Error("empty_algorithm", "an algorithm needs at least U^0");
    }
    const int d = dim();
    for (size_t t = 0; t < unitaries.size(); ++t) {
        const Matrix& u = unitaries[t];
        if (u.rows() != d || u.cols() != d) {
            throw Error("shape_mismatch", "U^" + std::to_string(t) + " has wrong dimension");
        }
        if (unitarity_defect(u) > tol) {
            throw Error("not_unitary", "U^" + std::to_string(t) + " is not unitary");
        }
    }
}

Matrix phase_oracle(const BitString& x, int ancilla_dim) {
    const int n = x.size();
    const int d = (n + 1) * ancilla_dim;
    Vector diag(d);
    for (int j = 0; j <= n; ++j) {
        const double phase = (j < n && x.bits[j]) ? -1.0 : 1.0;
        for (int w = 0; w < ancilla_dim; ++w) {
            diag(j * ancilla_dim + w) = Complex(phase, 0.0);
        }
    }
    return diag.asDiagonal();
}

Vector run(const QueryAlgorithm& alg, const BitString& x, const Vector& initial) {
    if (x.size() != alg.n) {
        throw Error("shape_mismatch", "input length does not match algorithm's n");
    }
    if (initial.size() != alg.dim()) {
        throw Error("shape_mismatch", "initial state has wrong dimension");
    }
    const Matrix oracle = phase_oracle(x, alg.ancilla_dim);
    Vector state = alg.unitaries[0] * initial;
    for (size_t t = 1; t < alg.unitaries.size(); ++t) {
        state = alg.unitaries[t] * (oracle * state);
    }
    return state;
}

double success_probability(const EvaluationProblem& problem, const BitString& x, const Vector& final_state) {
    const Matrix& p = problem.projector_of(problem.value_of(x));
    if (final_state.size() != p.rows()) {
        throw Error("shape_mismatch", "final state has wrong dimension");
    }
    return (p * final_state).squaredNorm();
}

double success_bias(const EvaluationProblem& problem, const QueryAlgorithm& alg, const Vector& initial) {
    if (problem.domain.empty()) {
        throw Error("empty_input", "success_bias over an empty domain");
    }
    double min_p = 1.0;
    for (const auto& x : problem.domain) {
        min_p = std::min(min_p, success_probability(problem, x, run(alg, x, initial)));
    }
    return min_p - 0.5;
}

GroverFixture build_grover(int n, int t) {
    if (n < 2) throw Error("invalid_n", "build_grover needs n >= 2");
    const int d = n + 1;  // W = 1

    GroverFixture fx;
    fx.problem.n = n;
    fx.problem.ancilla_dim = 1;
    fx.algorithm.n = n;
    fx.algorithm.ancilla_dim = 1;

    for (int j = 0; j < n; ++j) {
        BitString x;
        x.bits.assign(n, 0);
        x.bits[j] = 1;
        fx.problem.domain.push_back(x);
        fx.problem.values[x.str()] = std::to_string(j);
        Matrix p = Matrix::Zero(d, d);
        p(j, j) = Complex(1.0, 0.0);
        fx.problem.pvm[std::to_string(j)] = p;
    }

    // Uniform superposition over the marked-candidate indices {0..n-1}.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < n; ++j) u(j) = 1.0 / std::sqrt(static_cast<double>(n));

    // Householder reflection sending |0> to u; fixes |n> since u has no
    // component there.
    Eigen::MatrixXd prep = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd v = u - Eigen::VectorXd::Unit(d, 0);
    const double vnorm2 = v.squaredNorm();
    if (vnorm2 > 0) prep -= (2.0 / vnorm2) * (v * v.transpose());
    fx.algorithm.unitaries.push_back(prep.cast<Complex>());

    // Diffusion: 2|u><u| - I on span{0..n-1}, identity on |n>.
    Eigen::MatrixXd diffusion = 2.0 * (u * u.transpose()) - Eigen::MatrixXd::Identity(d, d);
    diffusion(n, n) = 1.0;
    const Matrix diffusion_c = diffusion.cast<Complex>();
    for (int k = 0; k < t; ++k) fx.algorithm.unitaries.push_back(diffusion_c);

    fx.initial = Vector::Zero(d);
    fx.initial(0) = Complex(1.0, 0.0);
    return fx;
}

QueryAlgorithm degrade(const QueryAlgorithm& alg, double theta) {
    if (theta == 0.0) return alg;
    const int n = alg.n;
    const int w = alg.ancilla_dim;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    // Rotation on the query register: pair up indices (0,1), (2,3), ...;
    // an odd leftover index n-1 pairs with the unqueried index n. Each
    // rotated image stays within the paired partner's outcome subspace,
    // which is orthogonal to the correct one.
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n + 1, n + 1);
    for (int j = 0; j + 1 < n; j += 2) {
        rot(j, j) = c;
        rot(j + 1, j + 1) = c;
        rot(j + 1, j) = s;
        rot(j, j + 1) = -s;
    }
    if (n % 2 == 1) {
        rot(n - 1, n - 1) = c;
        rot(n, n) = c;
        rot(n, n - 1) = s;
        rot(n - 1, n) = -s;
    }

    Matrix rot_full = Matrix::Zero(alg.dim(), alg.dim());
    for (int j = 0; j <= n; ++j) {
        for (int k = 0; k <= n; ++k) {
            if (rot(j, k) == 0.0) continue;
            for (int a = 0; a < w; ++a) {
                rot_full(j * w + a, k * w + a) = Complex(rot(j, k), 0.0);
            }
        }
    }

    QueryAlgorithm out = alg;
    out.unitaries.back() = rot_full * out.unitaries.back();
    return out;
}

QueryAlgorithm random_algorithm(int n, int ancilla_dim, int t, std::mt19937_64& rng) {
    QueryAlgorithm alg;
    alg.n = n;
    alg.ancilla_dim = ancilla_dim;
    for (int k = 0; k <= t; ++k) {
        alg.unitaries.push_back(random_unitary((n + 1) * ancilla_dim, rng));
    }
    return alg;
}

}  // namespace advkit
