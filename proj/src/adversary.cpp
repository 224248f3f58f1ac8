#include "advkit/adversary.hpp"

#include <cmath>

namespace advkit {

std::vector<Matrix> delta_family(const std::vector<BitString>& domain, int n) {
    if (domain.empty()) throw Error("empty_input", "delta_family over an empty domain");
    for (const auto& x : domain) {
        if (x.size() != n) {
            throw Error("inconsistent_lengths", "domain entry " + x.str() + " has wrong length");
        }
    }
    const Eigen::Index m = static_cast<Eigen::Index>(domain.size());
    std::vector<Matrix> deltas;
    deltas.reserve(n);
    for (int i = 0; i < n; ++i) {
        Matrix d = Matrix::Zero(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = 0; b < m; ++b) {
                if (domain[a].bits[i] != domain[b].bits[i]) d(a, b) = Complex(2.0, 0.0);
            }
        }
        deltas.push_back(std::move(d));
    }
    return deltas;
}

namespace {

double max_masked_norm(const Matrix& gamma, const std::vector<Matrix>& deltas) {
    double best = 0.0;
    for (const auto& d : deltas) {
        best = std::max(best, spectral_norm(hadamard(d, gamma)));
    }
    return best;
}

}  // namespace

double certificate_ratio(const Matrix& gamma, const std::vector<Matrix>& deltas, const Matrix& target) {
    if (max_abs_entry(gamma) <= 0.0) throw Error("zero_gamma", "certificate with Gamma = 0");
    const double denom = max_masked_norm(gamma, deltas);
    if (denom <= 1e-12) {
        throw Error("zero_denominator", "Gamma is supported only on indistinguishable pairs");
    }
    return spectral_norm(hadamard(gamma, target)) / denom;
}

double function_certificate_ratio(const Matrix& gamma, const std::vector<Matrix>& deltas) {
    if (max_abs_entry(gamma) <= 0.0) throw Error("zero_gamma", "certificate with Gamma = 0");
    const double denom = max_masked_norm(gamma, deltas);
    if (denom <= 1e-12) {
        throw Error("zero_denominator", "Gamma is supported only on indistinguishable pairs");
    }
    return spectral_norm(gamma) / denom;
}

bool in_function_space(const Matrix& gamma, const EvaluationProblem& problem) {
    const Eigen::Index m = static_cast<Eigen::Index>(problem.domain.size());
    if (gamma.rows() != m || gamma.cols() != m) {
        throw Error("shape_mismatch", "Gamma dimension does not match domain size");
    }
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            if (problem.value_of(problem.domain[a]) == problem.value_of(problem.domain[b]) &&
                gamma(a, b) != Complex(0.0, 0.0)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

struct FreeCoordinates {
    // Upper-triangle (a, b) index pairs with f(x_a) != f(x_b).
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;

    Matrix assemble(const std::vector<double>& coords, Eigen::Index m) const {
        Matrix gamma = Matrix::Zero(m, m);
        for (size_t k = 0; k < pairs.size(); ++k) {
            gamma(pairs[k].first, pairs[k].second) = Complex(coords[k], 0.0);
            gamma(pairs[k].second, pairs[k].first) = Complex(coords[k], 0.0);
        }
        return gamma;
    }
};

FreeCoordinates free_coordinates(const EvaluationProblem& problem) {
    FreeCoordinates fc;
    const Eigen::Index m = static_cast<Eigen::Index>(problem.domain.size());
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = a + 1; b < m; ++b) {
            if (problem.value_of(problem.domain[a]) != problem.value_of(problem.domain[b])) {
                fc.pairs.emplace_back(a, b);
            }
        }
    }
    return fc;
}

double ratio_or_zero(const Matrix& gamma, const std::vector<Matrix>& deltas) {
    if (max_abs_entry(gamma) <= 0.0) return 0.0;
    return function_certificate_ratio(gamma, deltas);
}

}  // namespace

AdversaryCertificate adv_search(const EvaluationProblem& problem, const SearchOptions& options) {
    const Eigen::Index m = static_cast<Eigen::Index>(problem.domain.size());
    if (m > 16) throw Error("domain_too_large", "adv_search is limited to |D| <= 16");
    const FreeCoordinates fc = free_coordinates(problem);
    if (fc.pairs.empty()) throw Error("constant_function", "F_f contains only the zero matrix");

    const std::vector<Matrix> deltas = delta_family(problem.domain, problem.n);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    std::vector<double> best_coords;
    double best_value = 0.0;

    for (int restart = 0; restart < options.restarts; ++restart) {
        std::vector<double> coords(fc.pairs.size());
        double value = 0.0;
        do {
            for (auto& c : coords) c = uniform(rng);
            value = ratio_or_zero(fc.assemble(coords, m), deltas);
        } while (value == 0.0);

        // Keep max_i ||Delta_i o Gamma|| = 1 along the way; the ratio itself
        // is scale-invariant so this only conditions the step sizes.
        {
            const double denom = max_masked_norm(fc.assemble(coords, m), deltas);
            for (auto& c : coords) c /= denom;
        }

        double step = 0.25;
        for (int sweep = 0; sweep < options.iterations && step > options.tol; ++sweep) {
            bool improved = false;
            for (size_t k = 0; k < coords.size(); ++k) {
                for (const double sign : {1.0, -1.0}) {
                    std::vector<double> trial = coords;
                    trial[k] += sign * step;
                    const double trial_value = ratio_or_zero(fc.assemble(trial, m), deltas);
                    if (trial_value > value + 1e-15) {
                        const double denom = max_masked_norm(fc.assemble(trial, m), deltas);
                        for (auto& c : trial) c /= denom;
                        coords = std::move(trial);
                        value = trial_value;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }

        if (value > best_value) {
            best_value = value;
            best_coords = coords;
        }
    }

    AdversaryCertificate cert;
    cert.gamma = fc.assemble(best_coords, m);
    cert.value = function_certificate_ratio(cert.gamma, deltas);
    cert.mode = "function";
    cert.real_symmetric_restriction = true;
    return cert;
}

double prefactor_old(double delta) {
    if (delta <= 0.0 || delta > 0.5) {
        throw Error("delta_out_of_range", "prefactors need 0 < delta <= 1/2");
    }
    return 2.0 * delta - std::sqrt(1.0 - 4.0 * delta * delta);
}

double prefactor_new(double delta) {
    if (delta <= 0.0 || delta > 0.5) {
        throw Error("delta_out_of_range", "prefactors need 0 < delta <= 1/2");
    }
    return 2.0 * delta;
}

BoundVerdict theorem_verdict(const EvaluationProblem& problem, const QueryAlgorithm& alg,
                             const Vector& initial, const AdversaryCertificate& certificate,
                             double tol) {
    if (certificate.mode != "function") {
        throw Error("invalid_mode", "theorem_verdict needs a function-mode certificate");
    }
    if (!in_function_space(certificate.gamma, problem)) {
        throw Error("not_in_function_space", "Gamma has support on a pair with equal f values");
    }

    const double delta = success_bias(problem, alg, initial);
    if (delta <= 0.0) {
        throw Error("nonpositive_delta", "theorem_verdict needs success bias > 0");
    }

    const std::vector<Matrix> deltas = delta_family(problem.domain, problem.n);
    const double denom = max_masked_norm(certificate.gamma, deltas);
    if (denom <= 1e-12) {
        throw Error("zero_denominator", "Gamma is supported only on indistinguishable pairs");
    }
    const Matrix gamma = certificate.gamma / denom;

    const SurgeryResult surgery = perform_surgery(problem, alg, initial);

    BoundVerdict verdict;
    verdict.query_count = alg.query_count();
    verdict.delta = delta;
    verdict.adv_lower_bound = function_certificate_ratio(certificate.gamma, deltas);

    verdict.support_residual = max_abs_entry(hadamard(gamma, surgery.gram_final));
    verdict.support_ok = verdict.support_residual <= 1e-9;

    verdict.masked_gram_norm = spectral_norm(hadamard(gamma, surgery.gram_initial));
    verdict.norm_within_queries = verdict.masked_gram_norm <= verdict.query_count + tol;
    verdict.lemma2_ok = 2.0 * delta * spectral_norm(gamma) <= verdict.masked_gram_norm + tol;

    verdict.required = 2.0 * delta * verdict.adv_lower_bound;
    verdict.satisfied = verdict.query_count >= verdict.required - tol;
    return verdict;
}

}  // namespace advkit
