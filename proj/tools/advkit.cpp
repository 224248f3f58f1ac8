#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "advkit/json_io.hpp"
#include "advkit/suite.hpp"

using namespace advkit;

namespace {

// Exit codes: 0 pass, 1 invariant/check failure, 2 usage or I/O errors.
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool is_usage_error(const Error& e) {
    return e.code() == "io_error" || e.code() == "parse_error";
}

void emit(const std::optional<std::string>& out_path, const Json& j) {
    if (out_path) {
        save_json_file(*out_path, j);
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

std::vector<double> parse_delta_range(const std::string& spec) {
    // "start:stop:step" or a comma-separated list.
    std::vector<double> deltas;
    if (spec.find(':') != std::string::npos) {
        std::istringstream in(spec);
        std::string part;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(in, part, ':')) {
                throw Error("parse_error", "expected start:stop:step, got " + spec);
            }
            vals[i] = std::stod(part);
        }
        if (vals[2] <= 0) throw Error("parse_error", "step must be positive");
        for (double d = vals[0]; d <= vals[1] + 1e-12; d += vals[2]) deltas.push_back(d);
    } else {
        std::istringstream in(spec);
        std::string part;
        while (std::getline(in, part, ',')) deltas.push_back(std::stod(part));
    }
    for (double d : deltas) {
        if (d <= 0.0 || d > 0.5) {
            throw Error("delta_out_of_range", "delta values must lie in (0, 1/2]");
        }
    }
    return deltas;
}

int cmd_simulate(const std::string& problem_path, const std::string& algorithm_path,
                 const std::optional<std::string>& input, const std::optional<std::string>& out) {
    const EvaluationProblem problem = problem_from_json(load_json_file(problem_path));
    const QueryAlgorithm alg = algorithm_from_json(load_json_file(algorithm_path));

    Vector initial = Vector::Zero(alg.dim());
    initial(0) = Complex(1, 0);

    std::vector<BitString> inputs;
    if (input) {
        inputs.push_back(BitString::parse(*input));
    } else {
        inputs = problem.domain;
    }

    Json runs = Json::array();
    double min_p = 1.0;
    for (const auto& x : inputs) {
        const Vector final_state = run(alg, x, initial);
        const double p = success_probability(problem, x, final_state);
        min_p = std::min(min_p, p);
        runs.push_back(Json{{"input", x.str()},
                            {"success_probability", p},
                            {"final_state", state_to_json(final_state)}});
    }
    emit(out, Json{{"runs", std::move(runs)}, {"success_bias", min_p - 0.5}});
    return 0;
}

int cmd_surgery(const std::string& problem_path, const std::string& algorithm_path,
                const std::optional<std::string>& initial_path,
                const std::optional<std::string>& out, double tol) {
    const EvaluationProblem problem = problem_from_json(load_json_file(problem_path));
    const QueryAlgorithm alg = algorithm_from_json(load_json_file(algorithm_path));
    Vector initial;
    if (initial_path) {
        initial = state_from_json(load_json_file(*initial_path));
    } else {
        initial = Vector::Zero(alg.dim());
        initial(0) = Complex(1, 0);
    }

    const SurgeryResult result = perform_surgery(problem, alg, initial);
    const SurgeryReport report = verify_lemma1(result, problem, alg, initial, tol);
    emit(out, surgery_to_json(result, report));
    return report.all_ok() ? 0 : kExitFail;
}

int cmd_verify_inequalities(const std::string& surgery_path,
                            const std::optional<std::string>& gamma_path, int random_count,
                            std::uint64_t seed, const std::optional<std::string>& out, double tol) {
    const SurgeryResult sr = surgery_from_json(load_json_file(surgery_path));
    std::vector<Matrix> gammas;
    if (gamma_path) {
        gammas.push_back(matrix_from_json(load_json_file(*gamma_path)));
    } else {
        std::mt19937_64 rng(seed);
        const int dim = static_cast<int>(sr.gram_initial.rows());
        for (int k = 0; k < random_count; ++k) gammas.push_back(random_hermitian(dim, rng));
    }

    Json reports = Json::array();
    bool all_hold = true;
    for (const Matrix& gamma : gammas) {
        const InequalityReport schur = schur_check(gamma, sr.gram_initial, tol);
        const InequalityReport multp = multp_check(gamma, sr.sqrt_p_true, tol);
        const MultGDeltaReport mgd = multgdelta_check(gamma, sr.gram_initial, sr.sqrt_p_true, tol);
        const Lemma2Report l2 = lemma2_check(gamma, sr.gram_initial, sr.sqrt_p_true, sr.delta, tol);

        reports.push_back(inequality_to_json(schur));
        reports.push_back(inequality_to_json(multp));
        Json mgd_json = inequality_to_json(mgd.norm);
        mgd_json["dg_min_eigenvalue"] = mgd.dg_psd.min_eigenvalue;
        mgd_json["dg_psd_ok"] = mgd.dg_psd_ok;
        mgd_json["dg_diag_ok"] = mgd.dg_diag_ok;
        reports.push_back(std::move(mgd_json));
        Json l2_json = inequality_to_json(l2.bound);
        l2_json["triangle_lhs"] = l2.triangle_lhs;
        l2_json["triangle_ok"] = l2.triangle_ok;
        reports.push_back(std::move(l2_json));

        all_hold = all_hold && schur.holds && multp.holds && mgd.norm.holds && mgd.dg_psd_ok &&
                   mgd.dg_diag_ok && l2.bound.holds && l2.triangle_ok;
    }
    emit(out, reports);
    return all_hold ? 0 : kExitFail;
}

int cmd_certify(const std::string& problem_path, const std::string& gamma_path,
                const std::optional<std::string>& out) {
    const EvaluationProblem problem = problem_from_json(load_json_file(problem_path));
    Matrix gamma = matrix_from_json(load_json_file(gamma_path));
    if (!is_hermitian(gamma, 1e-12)) {
        throw Error("not_hermitian", "Gamma must be Hermitian");
    }
    if (!in_function_space(gamma, problem)) {
        throw Error("not_in_function_space", "Gamma has support on a pair with equal f values");
    }
    const auto deltas = delta_family(problem.domain, problem.n);
    AdversaryCertificate cert;
    cert.gamma = std::move(gamma);
    cert.value = function_certificate_ratio(cert.gamma, deltas);
    cert.mode = "function";
    Json j = certificate_to_json(cert);
    // This artifact's normalization is half the textbook one.
    j["textbook_value"] = 2.0 * cert.value;
    emit(out, j);
    return 0;
}

int cmd_adv_search(const std::string& problem_path, std::uint64_t seed, int restarts,
                   const std::optional<std::string>& out) {
    const EvaluationProblem problem = problem_from_json(load_json_file(problem_path));
    SearchOptions options;
    options.seed = seed;
    options.restarts = restarts;
    const AdversaryCertificate cert = adv_search(problem, options);
    Json j = certificate_to_json(cert);
    j["textbook_value"] = 2.0 * cert.value;
    j["search"] = Json{{"seed", seed}, {"restarts", restarts}};
    emit(out, j);
    return 0;
}

int cmd_verdict(const std::string& problem_path, const std::string& algorithm_path,
                const std::optional<std::string>& initial_path, const std::string& cert_path,
                const std::optional<std::string>& out, double tol) {
    const EvaluationProblem problem = problem_from_json(load_json_file(problem_path));
    const QueryAlgorithm alg = algorithm_from_json(load_json_file(algorithm_path));
    Vector initial;
    if (initial_path) {
        initial = state_from_json(load_json_file(*initial_path));
    } else {
        initial = Vector::Zero(alg.dim());
        initial(0) = Complex(1, 0);
    }
    const AdversaryCertificate cert = certificate_from_json(load_json_file(cert_path));
    const BoundVerdict verdict = theorem_verdict(problem, alg, initial, cert, tol);
    emit(out, verdict_to_json(verdict));
    return verdict.chain_ok() ? 0 : kExitFail;
}

int cmd_prefactor_table(const std::string& range, const std::string& format,
                        const std::optional<std::string>& out) {
    const std::vector<double> deltas = parse_delta_range(range);
    if (format == "csv") {
        const std::string csv = prefactor_table_csv(deltas);
        if (out) {
            std::ofstream f(*out);
            if (!f) throw Error("io_error", "cannot open " + *out + " for writing");
            f << csv;
        } else {
            std::cout << csv;
        }
    } else {
        emit(out, prefactor_table_json(deltas));
    }
    return 0;
}

int cmd_fixture(int n, int t, double cos2, const std::string& problem_out,
                const std::string& algorithm_out, const std::optional<std::string>& initial_out) {
    if (cos2 <= 0.0 || cos2 > 1.0) {
        throw Error("invalid_cos2", "--cos2 must lie in (0, 1]");
    }
    const GroverFixture fx = build_grover(n, t);
    QueryAlgorithm alg = fx.algorithm;
    if (cos2 < 1.0) alg = degrade(alg, std::acos(std::sqrt(cos2)));
    save_json_file(problem_out, problem_to_json(fx.problem));
    save_json_file(algorithm_out, algorithm_to_json(alg));
    if (initial_out) save_json_file(*initial_out, state_to_json(fx.initial));
    return 0;
}

int cmd_suite(std::uint64_t seed, double tol, const std::optional<std::string>& out) {
    SuiteConfig config;
    config.seed = seed;
    config.tol = tol;
    const SuiteOutcome outcome = run_full_suite(config);
    emit(out, outcome.bundle);
    if (!outcome.passed) {
        std::cerr << "suite failed at: " << outcome.first_failure << "\n";
        return kExitFail;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"advkit: quantum query adversary bound toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 7;
    double tol = 1e-8;
    app.add_option("--seed", seed, "RNG seed for randomized commands")->capture_default_str();
    app.add_option("--tol", tol, "slack tolerance for inequality checks")->capture_default_str();

    std::string problem_path, algorithm_path, gamma_path, cert_path, surgery_path;
    std::optional<std::string> out, input, initial_path, gamma_opt;
    int restarts = 20;
    int random_count = 100;
    std::string range = "0.05:0.5:0.05";
    std::string format = "json";

    auto* simulate = app.add_subcommand("simulate", "run an algorithm on problem inputs");
    simulate->add_option("--problem", problem_path)->required();
    simulate->add_option("--algorithm", algorithm_path)->required();
    simulate->add_option("--input", input, "single input bit-string; default is the whole domain");
    simulate->add_option("--out", out);

    auto* surgery = app.add_subcommand("surgery", "project-and-uncompute state surgery");
    surgery->add_option("--problem", problem_path)->required();
    surgery->add_option("--algorithm", algorithm_path)->required();
    surgery->add_option("--initial", initial_path, "initial state; default |0>");
    surgery->add_option("--out", out);

    auto* verify = app.add_subcommand("verify-inequalities", "norm-inequality battery on a surgery result");
    verify->add_option("--surgery", surgery_path)->required();
    verify->add_option("--gamma", gamma_opt, "a specific Hermitian Gamma (JSON matrix)");
    verify->add_option("--random", random_count, "number of random Gammas when none is given")
        ->capture_default_str();
    verify->add_option("--out", out);

    auto* certify = app.add_subcommand("certify", "evaluate a function-mode certificate");
    certify->add_option("--problem", problem_path)->required();
    certify->add_option("--gamma", gamma_path)->required();
    certify->add_option("--out", out);

    auto* search = app.add_subcommand("adv-search", "random-restart certificate search");
    search->add_option("--problem", problem_path)->required();
    search->add_option("--restarts", restarts)->capture_default_str();
    search->add_option("--out", out);

    auto* verdict = app.add_subcommand("verdict", "end-to-end query lower bound check");
    verdict->add_option("--problem", problem_path)->required();
    verdict->add_option("--algorithm", algorithm_path)->required();
    verdict->add_option("--initial", initial_path, "initial state; default |0>");
    verdict->add_option("--cert", cert_path)->required();
    verdict->add_option("--out", out);

    auto* prefactor = app.add_subcommand("prefactor-table", "old vs new delta prefactor");
    prefactor->add_option("--deltas", range, "start:stop:step or comma list")->capture_default_str();
    prefactor->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    prefactor->add_option("--out", out);

    int grover_n = 4, grover_t = 1;
    double cos2 = 1.0;
    std::string problem_out, algorithm_out;
    auto* fixture = app.add_subcommand("fixture", "write Grover fixture files");
    fixture->add_option("--n", grover_n)->capture_default_str();
    fixture->add_option("--t", grover_t)->capture_default_str();
    fixture->add_option("--cos2", cos2, "degrade to this per-input success probability")
        ->capture_default_str();
    fixture->add_option("--problem-out", problem_out)->required();
    fixture->add_option("--algorithm-out", algorithm_out)->required();
    fixture->add_option("--initial-out", initial_path);

    auto* suite = app.add_subcommand("suite", "full seeded verification suite");
    suite->add_option("--out", out);

    // Let --seed/--tol be given after the subcommand as well.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(problem_path, algorithm_path, input, out);
        if (surgery->parsed()) return cmd_surgery(problem_path, algorithm_path, initial_path, out, tol);
        if (verify->parsed())
            return cmd_verify_inequalities(surgery_path, gamma_opt, random_count, seed, out, tol);
        if (certify->parsed()) return cmd_certify(problem_path, gamma_path, out);
        if (search->parsed()) return cmd_adv_search(problem_path, seed, restarts, out);
        if (verdict->parsed())
            return cmd_verdict(problem_path, algorithm_path, initial_path, cert_path, out, tol);
        if (prefactor->parsed()) return cmd_prefactor_table(range, format, out);
        if (fixture->parsed())
            return cmd_fixture(grover_n, grover_t, cos2, problem_out, algorithm_out, initial_path);
        if (suite->parsed()) return cmd_suite(seed, tol, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_error(e) ? kExitUsage : kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
