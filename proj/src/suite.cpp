#include "advkit/suite.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace advkit {

namespace {

struct Checker {
    Json checks = Json::array();
    bool passed = true;
    std::string first_failure;

    void record(const std::string& name, bool ok, Json detail = Json::object()) {
        detail["name"] = name;
        detail["ok"] = ok;
        checks.push_back(std::move(detail));
        if (!ok && passed) {
            passed = false;
            first_failure = name;
        }
    }
};

Matrix ones_minus_identity(Eigen::Index m) {
    return Matrix::Ones(m, m) - Matrix::Identity(m, m);
}

void linalg_section(Checker& ck, std::mt19937_64& rng, double tol) {
    std::uniform_int_distribution<int> dim_dist(2, 8);

    double worst_eig_gap = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Matrix h = random_hermitian(dim_dist(rng), rng);
        // Independent route: largest singular value straight from an SVD.
        Eigen::JacobiSVD<Matrix> svd(h);
        worst_eig_gap =
            std::max(worst_eig_gap, std::abs(spectral_norm(h) - svd.singularValues()(0)));
    }
    ck.record("linalg.spectral_norm_matches_eigensolver", worst_eig_gap <= 1e-10,
              {{"worst_gap", worst_eig_gap}});

    double worst_triangle = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int d = dim_dist(rng);
        const Matrix a = random_hermitian(d, rng);
        const Matrix b = random_hermitian(d, rng);
        worst_triangle = std::max(worst_triangle,
                                  spectral_norm(a + b) - spectral_norm(a) - spectral_norm(b));
    }
    ck.record("linalg.triangle_inequality", worst_triangle <= 1e-10, {{"worst_excess", worst_triangle}});

    double worst_gram = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int d = dim_dist(rng);
        std::vector<Vector> states;
        for (int s = 0; s < d; ++s) states.push_back(random_state(d, rng));
        const Matrix g = gram(states);
        worst_gram = std::max(worst_gram, max_abs_entry(g - g.adjoint()));
        const PsdReport psd = is_psd(g, 1e-9);
        if (!psd.psd) worst_gram = 1.0;
    }
    ck.record("linalg.gram_hermitian_psd", worst_gram == 0.0, {{"worst_asymmetry", worst_gram}});
    (void)tol;
}

void querymodel_section(Checker& ck, std::mt19937_64& rng, double tol) {
    const GroverFixture perfect = build_grover(4, 1);
    const double bias_perfect = success_bias(perfect.problem, perfect.algorithm, perfect.initial);
    ck.record("querymodel.grover_n4_t1_perfect", std::abs(bias_perfect - 0.5) <= tol,
              {{"bias", bias_perfect}});

    const GroverFixture zero_query = build_grover(4, 0);
    const double bias_zero = success_bias(zero_query.problem, zero_query.algorithm, zero_query.initial);
    ck.record("querymodel.grover_n4_t0_uniform", std::abs(bias_zero + 0.25) <= tol,
              {{"bias", bias_zero}});

    const QueryAlgorithm degraded = degrade(perfect.algorithm, std::acos(std::sqrt(0.8)));
    const double bias_degraded = success_bias(perfect.problem, degraded, perfect.initial);
    ck.record("querymodel.degrade_cos2_0p8", std::abs(bias_degraded - 0.3) <= tol,
              {{"bias", bias_degraded}});

    double worst_norm = 0.0;
    for (int k = 0; k < 25; ++k) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int w = 1 + static_cast<int>(rng() % 2);
        const int t = static_cast<int>(rng() % 4);
        const QueryAlgorithm alg = random_algorithm(n, w, t, rng);
        const Vector initial = random_state(alg.dim(), rng);
        BitString x;
        for (int i = 0; i < n; ++i) x.bits.push_back(static_cast<int>(rng() % 2));
        worst_norm = std::max(worst_norm, std::abs(run(alg, x, initial).norm() - 1.0));
    }
    ck.record("querymodel.run_preserves_norm", worst_norm <= 1e-9, {{"worst_defect", worst_norm}});
}

struct Fixtures {
    GroverFixture grover;
    std::vector<double> cos2;                  // success probabilities of degraded variants
    std::vector<QueryAlgorithm> algorithms;    // perfect first, then degraded
    std::vector<SurgeryResult> surgeries;      // aligned with algorithms
};

Fixtures build_fixtures(const SuiteConfig& config) {
    Fixtures fx;
    fx.grover = build_grover(config.grover_n, config.grover_t);
    fx.cos2 = config.cos2;
    for (double c : fx.cos2) {
        QueryAlgorithm alg =
            c == 1.0 ? fx.grover.algorithm : degrade(fx.grover.algorithm, std::acos(std::sqrt(c)));
        alg.validate();
        fx.algorithms.push_back(alg);
        fx.surgeries.push_back(perform_surgery(fx.grover.problem, alg, fx.grover.initial));
    }
    return fx;
}

void surgery_section(Checker& ck, const Fixtures& fx, double tol) {
    for (size_t i = 0; i < fx.algorithms.size(); ++i) {
        const SurgeryReport report = verify_lemma1(fx.surgeries[i], fx.grover.problem,
                                                  fx.algorithms[i], fx.grover.initial, tol);
        std::ostringstream name;
        name << "surgery.lemma1_cos2_" << fx.cos2[i];
        ck.record(name.str(), report.all_ok(),
                  {{"evolution_residual", report.evolution_residual},
                   {"orthogonality_residual", report.orthogonality_residual},
                   {"overlap_residual", report.overlap_residual}});

        const double expected = std::sqrt(fx.cos2[i]);
        double worst = 0.0;
        for (Eigen::Index j = 0; j < fx.surgeries[i].sqrt_p_true.size(); ++j) {
            worst = std::max(worst, std::abs(fx.surgeries[i].sqrt_p_true(j) - expected));
        }
        name.str("");
        name << "surgery.overlap_value_cos2_" << fx.cos2[i];
        ck.record(name.str(), worst <= tol, {{"worst_gap", worst}});
    }

    // Perfect run: the modified initial Gram collapses to the all-ones matrix.
    if (!fx.cos2.empty() && fx.cos2.front() == 1.0) {
        const Eigen::Index m = fx.surgeries[0].gram_initial.rows();
        const double ones_gap = max_abs_entry(fx.surgeries[0].gram_initial - Matrix::Ones(m, m));
        ck.record("surgery.perfect_gram_all_ones", ones_gap <= 1e-9, {{"gap", ones_gap}});
    }
}

void normcheck_section(Checker& ck, const Fixtures& fx, std::mt19937_64& rng, double tol) {
    std::uniform_int_distribution<int> dim_dist(2, 8);

    double worst_schur = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int d = dim_dist(rng);
        const InequalityReport r = schur_check(random_hermitian(d, rng), random_psd(d, rng), tol);
        worst_schur = std::min(worst_schur, r.slack);
        if (!r.holds) worst_schur = -1.0;
    }
    ck.record("normcheck.schur_random_battery", worst_schur >= -tol, {{"worst_slack", worst_schur}});

    const Eigen::Index m = static_cast<Eigen::Index>(fx.grover.problem.domain.size());
    std::vector<Matrix> gammas;
    gammas.push_back(ones_minus_identity(m));
    for (int k = 0; k < 100; ++k) gammas.push_back(random_hermitian(static_cast<int>(m), rng));

    double worst_lemma2 = 0.0;
    double worst_multp = 0.0;
    double worst_dg_eig = 0.0;
    double perfect_tight_slack = 0.0;
    for (size_t i = 0; i < fx.surgeries.size(); ++i) {
        const SurgeryResult& sr = fx.surgeries[i];
        for (const Matrix& gamma : gammas) {
            const Lemma2Report l2 = lemma2_check(gamma, sr.gram_initial, sr.sqrt_p_true, sr.delta, tol);
            worst_lemma2 = std::min(worst_lemma2, l2.bound.slack);
            if (!l2.triangle_ok) worst_lemma2 = -1.0;

            const InequalityReport mp = multp_check(gamma, sr.sqrt_p_true, tol);
            worst_multp = std::min(worst_multp, mp.slack);

            const MultGDeltaReport mgd = multgdelta_check(gamma, sr.gram_initial, sr.sqrt_p_true, tol);
            worst_dg_eig = std::min(worst_dg_eig, mgd.dg_psd.min_eigenvalue);
            if (!mgd.norm.holds || !mgd.dg_diag_ok) worst_dg_eig = -1.0;

            if (i == 0) {
                perfect_tight_slack = std::max(perfect_tight_slack, std::abs(l2.bound.slack));
            }
        }
    }
    ck.record("normcheck.lemma2_battery", worst_lemma2 >= -tol, {{"worst_slack", worst_lemma2}});
    ck.record("normcheck.multp_battery", worst_multp >= -tol, {{"worst_slack", worst_multp}});
    ck.record("normcheck.multgdelta_battery", worst_dg_eig >= -tol, {{"worst_dg_eigenvalue", worst_dg_eig}});
    ck.record("normcheck.perfect_tightness", perfect_tight_slack <= 1e-9,
              {{"worst_abs_slack", perfect_tight_slack}});
}

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

void adversary_section(Checker& ck, const Fixtures& fx, std::uint64_t seed, double tol) {
    // Hand certificates.
    {
        const EvaluationProblem p = or_promise(2);
        const auto deltas = delta_family(p.domain, p.n);
        Matrix gamma = Matrix::Zero(3, 3);
        gamma(0, 1) = gamma(1, 0) = gamma(0, 2) = gamma(2, 0) = Complex(1, 0);
        const double value = function_certificate_ratio(gamma, deltas);
        ck.record("adversary.or2_hand_certificate", std::abs(value - std::sqrt(2.0) / 2.0) <= 1e-9,
                  {{"value", value}});

        SearchOptions opts;
        opts.seed = seed;
        const AdversaryCertificate cert = adv_search(p, opts);
        ck.record("adversary.or2_search", cert.value >= std::sqrt(2.0) / 2.0 - 1e-6,
                  {{"value", cert.value}});
    }
    {
        const EvaluationProblem p = or_promise(3);
        const auto deltas = delta_family(p.domain, p.n);
        Matrix gamma = Matrix::Zero(4, 4);
        for (int j = 1; j < 4; ++j) gamma(0, j) = gamma(j, 0) = Complex(1, 0);
        const double value = function_certificate_ratio(gamma, deltas);
        ck.record("adversary.or3_hand_certificate", std::abs(value - std::sqrt(3.0) / 2.0) <= 1e-9,
                  {{"value", value}});

        SearchOptions opts;
        opts.seed = seed;
        const AdversaryCertificate cert = adv_search(p, opts);
        ck.record("adversary.or3_search", cert.value >= std::sqrt(3.0) / 2.0 - 1e-6,
                  {{"value", cert.value}});
    }
    {
        const EvaluationProblem p = parity2();
        const auto deltas = delta_family(p.domain, p.n);
        Matrix gamma = Matrix::Zero(4, 4);
        // Ones between the parity classes; all cross pairs are at Hamming
        // distance 1 here.
        const int class_of[4] = {0, 1, 1, 0};  // order 00,01,10,11
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (class_of[a] != class_of[b]) gamma(a, b) = Complex(1, 0);
            }
        }
        const double value = function_certificate_ratio(gamma, deltas);
        ck.record("adversary.parity2_hand_certificate", std::abs(value - 1.0) <= 1e-9,
                  {{"value", value}});

        SearchOptions opts;
        opts.seed = seed;
        const AdversaryCertificate cert = adv_search(p, opts);
        ck.record("adversary.parity2_search", cert.value >= 1.0 - 1e-6, {{"value", cert.value}});
    }

    // Theorem verdicts on the Grover fixtures (index finding, all values distinct).
    const Eigen::Index m = static_cast<Eigen::Index>(fx.grover.problem.domain.size());
    AdversaryCertificate star;
    star.gamma = ones_minus_identity(m);
    const auto deltas = delta_family(fx.grover.problem.domain, fx.grover.problem.n);
    star.value = function_certificate_ratio(star.gamma, deltas);
    star.mode = "function";

    for (size_t i = 0; i < fx.algorithms.size(); ++i) {
        const BoundVerdict verdict = theorem_verdict(fx.grover.problem, fx.algorithms[i],
                                                     fx.grover.initial, star, tol);
        std::ostringstream name;
        name << "adversary.verdict_cos2_" << fx.cos2[i];
        ck.record(name.str(), verdict.chain_ok(),
                  {{"delta", verdict.delta},
                   {"required", verdict.required},
                   {"support_residual", verdict.support_residual},
                   {"masked_gram_norm", verdict.masked_gram_norm}});

        // State-conversion invariant with the normalized certificate.
        const SurgeryResult& sr = fx.surgeries[i];
        const double denom = [&] {
            double best = 0.0;
            for (const auto& d : deltas) best = std::max(best, spectral_norm(hadamard(d, star.gamma)));
            return best;
        }();
        const double converted =
            spectral_norm(hadamard(Matrix(star.gamma / denom), sr.gram_initial - sr.gram_final));
        name.str("");
        name << "adversary.state_conversion_cos2_" << fx.cos2[i];
        ck.record(name.str(), converted <= fx.algorithms[i].query_count() + tol,
                  {{"norm", converted}, {"queries", fx.algorithms[i].query_count()}});
    }

    // Prefactor identities.
    double worst_identity = 0.0;
    bool monotone = true;
    for (int k = 1; k <= 10; ++k) {
        const double delta = 0.05 * k;
        const double improvement = prefactor_new(delta) - prefactor_old(delta);
        worst_identity = std::max(worst_identity,
                                  std::abs(improvement - std::sqrt(1.0 - 4.0 * delta * delta)));
        if (prefactor_new(delta) < prefactor_old(delta)) monotone = false;
    }
    ck.record("adversary.prefactor_identity", worst_identity <= 1e-12 && monotone,
              {{"worst_gap", worst_identity}});
}

}  // namespace

SuiteOutcome run_full_suite(const SuiteConfig& config) {
    Checker ck;
    std::mt19937_64 rng(config.seed);

    linalg_section(ck, rng, config.tol);
    querymodel_section(ck, rng, config.tol);
    const Fixtures fx = build_fixtures(config);
    surgery_section(ck, fx, config.tol);
    normcheck_section(ck, fx, rng, config.tol);
    adversary_section(ck, fx, config.seed, config.tol);

    SuiteOutcome outcome;
    outcome.passed = ck.passed;
    outcome.first_failure = ck.first_failure;
    outcome.bundle = Json{{"seed", config.seed},
                          {"tol", config.tol},
                          {"passed", ck.passed},
                          {"first_failure", ck.first_failure},
                          {"checks", std::move(ck.checks)},
                          {"prefactor_table", prefactor_table_json(
                               {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50})}};
    return outcome;
}

Json prefactor_table_json(const std::vector<double>& deltas) {
    Json rows = Json::array();
    for (double d : deltas) {
        const double old_value = prefactor_old(d);
        const double new_value = prefactor_new(d);
        rows.push_back(Json{{"delta", d},
                            {"old", old_value},
                            {"new", new_value},
                            {"improvement", new_value - old_value}});
    }
    return rows;
}

std::string prefactor_table_csv(const std::vector<double>& deltas) {
    std::ostringstream out;
    out << "delta,old,new,improvement\n";
    out.precision(17);
    for (double d : deltas) {
        const double old_value = prefactor_old(d);
        const double new_value = prefactor_new(d);
        out << d << "," << old_value << "," << new_value << "," << (new_value - old_value) << "\n";
    }
    return out.str();
}

}  // namespace advkit
