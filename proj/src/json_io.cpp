#include "advkit/json_io.hpp"

#include <fstream>

namespace advkit {

Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const Json& entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw Error("parse_error", "matrix entries length does not equal rows*cols");
    }
    Matrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index jj = 0; jj < cols; ++jj, ++k) {
            m(i, jj) = Complex(entries[k][0].get<double>(), entries[k][1].get<double>());
        }
    }
    if (!m.allFinite()) throw Error("parse_error", "matrix has non-finite entries");
    return m;
}

Json state_to_json(const Vector& v) {
    return matrix_to_json(v);
}

Vector state_from_json(const Json& j) {
    const Matrix m = matrix_from_json(j);
    if (m.cols() != 1) throw Error("parse_error", "state must be a single-column matrix");
    return m.col(0);
}

Json problem_to_json(const EvaluationProblem& problem) {
    Json domain = Json::array();
    for (const auto& x : problem.domain) domain.push_back(x.str());
    Json values = Json::object();
    for (const auto& x : problem.domain) values[x.str()] = problem.values.at(x.str());
    Json pvm = Json::object();
    for (const auto& [label, p] : problem.pvm) pvm[label] = matrix_to_json(p);
    return Json{{"n", problem.n},
                {"ancilla_dim", problem.ancilla_dim},
                {"domain", std::move(domain)},
                {"values", std::move(values)},
                {"pvm", std::move(pvm)}};
}

EvaluationProblem problem_from_json(const Json& j) {
    EvaluationProblem problem;
    problem.n = j.at("n").get<int>();
    problem.ancilla_dim = j.value("ancilla_dim", 1);
    for (const auto& s : j.at("domain")) {
        problem.domain.push_back(BitString::parse(s.get<std::string>()));
    }
    for (const auto& [key, value] : j.at("values").items()) {
        problem.values[key] = value.get<std::string>();
    }
    if (j.contains("pvm")) {
        for (const auto& [label, p] : j.at("pvm").items()) {
            problem.pvm[label] = matrix_from_json(p);
        }
    }
    problem.validate();
    return problem;
}

Json algorithm_to_json(const QueryAlgorithm& alg) {
    Json unitaries = Json::array();
    for (const auto& u : alg.unitaries) unitaries.push_back(matrix_to_json(u));
    return Json{{"n", alg.n}, {"ancilla_dim", alg.ancilla_dim}, {"unitaries", std::move(unitaries)}};
}

QueryAlgorithm algorithm_from_json(const Json& j) {
    QueryAlgorithm alg;
    alg.n = j.at("n").get<int>();
    alg.ancilla_dim = j.value("ancilla_dim", 1);
    for (const auto& u : j.at("unitaries")) alg.unitaries.push_back(matrix_from_json(u));
    alg.validate();
    return alg;
}

Json surgery_to_json(const SurgeryResult& result, const SurgeryReport& report) {
    Json modified_initial = Json::array();
    Json modified_final = Json::array();
    for (const auto& v : result.modified_initial) modified_initial.push_back(state_to_json(v));
    for (const auto& v : result.modified_final) modified_final.push_back(state_to_json(v));
    Json sqrt_p = Json::array();
    for (Eigen::Index i = 0; i < result.sqrt_p_true.size(); ++i) sqrt_p.push_back(result.sqrt_p_true(i));
    return Json{{"delta", result.delta},
                {"sqrt_p_true", std::move(sqrt_p)},
                {"gram_initial", matrix_to_json(result.gram_initial)},
                {"gram_final", matrix_to_json(result.gram_final)},
                {"modified_initial", std::move(modified_initial)},
                {"modified_final", std::move(modified_final)},
                {"report",
                 Json{{"evolution_ok", report.evolution_ok},
                      {"orthogonality_ok", report.orthogonality_ok},
                      {"overlap_ok", report.overlap_ok},
                      {"evolution_residual", report.evolution_residual},
                      {"orthogonality_residual", report.orthogonality_residual},
                      {"overlap_residual", report.overlap_residual}}}};
}

SurgeryResult surgery_from_json(const Json& j) {
    SurgeryResult result;
    result.delta = j.at("delta").get<double>();
    const Json& sqrt_p = j.at("sqrt_p_true");
    result.sqrt_p_true.resize(static_cast<Eigen::Index>(sqrt_p.size()));
    for (Eigen::Index i = 0; i < result.sqrt_p_true.size(); ++i) {
        result.sqrt_p_true(i) = sqrt_p[i].get<double>();
    }
    result.gram_initial = matrix_from_json(j.at("gram_initial"));
    result.gram_final = matrix_from_json(j.at("gram_final"));
    for (const auto& v : j.at("modified_initial")) result.modified_initial.push_back(state_from_json(v));
    for (const auto& v : j.at("modified_final")) result.modified_final.push_back(state_from_json(v));
    return result;
}

Json certificate_to_json(const AdversaryCertificate& cert) {
    return Json{{"mode", cert.mode},
                {"value", cert.value},
                {"real_symmetric_restriction", cert.real_symmetric_restriction},
                {"gamma", matrix_to_json(cert.gamma)}};
}

AdversaryCertificate certificate_from_json(const Json& j) {
    AdversaryCertificate cert;
    cert.mode = j.value("mode", "function");
    cert.value = j.value("value", 0.0);
    cert.real_symmetric_restriction = j.value("real_symmetric_restriction", false);
    cert.gamma = matrix_from_json(j.at("gamma"));
    if (!is_hermitian(cert.gamma, 1e-12)) {
        throw Error("not_hermitian", "certificate Gamma must be Hermitian");
    }
    return cert;
}

Json inequality_to_json(const InequalityReport& report) {
    return Json{{"context", report.context}, {"lhs", report.lhs},   {"rhs", report.rhs},
                {"slack", report.slack},     {"tol", report.tol},   {"holds", report.holds}};
}

Json verdict_to_json(const BoundVerdict& verdict) {
    return Json{{"query_count", verdict.query_count},
                {"delta", verdict.delta},
                {"adv_lower_bound", verdict.adv_lower_bound},
                {"required", verdict.required},
                {"satisfied", verdict.satisfied},
                {"support_residual", verdict.support_residual},
                {"support_ok", verdict.support_ok},
                {"masked_gram_norm", verdict.masked_gram_norm},
                {"norm_within_queries", verdict.norm_within_queries},
                {"lemma2_ok", verdict.lemma2_ok}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io_error", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("parse_error", path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("io_error", "cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace advkit
