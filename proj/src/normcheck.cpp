#include "advkit/normcheck.hpp"

namespace advkit {

InequalityReport make_report(double lhs, double rhs, double tol, std::string context) {
    InequalityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.tol = tol;
    r.holds = r.slack >= -tol;
    r.context = std::move(context);
    return r;
}

namespace {

Matrix outer(const RealVector& v) {
    return (v * v.transpose()).cast<Complex>();
}

}  // namespace

InequalityReport schur_check(const Matrix& gamma, const Matrix& s, double tol) {
    const PsdReport psd = is_psd(s, 1e-9);
    if (!psd.psd) {
        throw Error("not_psd", "schur_check needs a PSD second argument (lambda_min = " +
                                   std::to_string(psd.min_eigenvalue) + ")");
    }
    const double lhs = spectral_norm(hadamard(gamma, s));
    const double rhs = s.diagonal().real().maxCoeff() * spectral_norm(gamma);
    return make_report(lhs, rhs, tol, "schur");
}

InequalityReport multp_check(const Matrix& gamma, const RealVector& sqrt_p, double tol) {
    if (sqrt_p.size() != gamma.rows()) {
        throw Error("shape_mismatch", "sqrt_p length does not match Gamma");
    }
    for (Eigen::Index i = 0; i < sqrt_p.size(); ++i) {
        if (std::abs(sqrt_p(i)) <= 1e-12) {
            throw Error("zero_entry", "multp_check needs all sqrt_p entries nonzero");
        }
    }
    const double min_p = sqrt_p.cwiseAbs2().minCoeff();
    const double lhs = min_p * spectral_norm(gamma);
    const double rhs = spectral_norm(hadamard(gamma, outer(sqrt_p)));
    return make_report(lhs, rhs, tol, "multp");
}

MultGDeltaReport multgdelta_check(const Matrix& gamma, const Matrix& gram_initial,
                                  const RealVector& sqrt_p, double tol) {
    MultGDeltaReport report;
    const Matrix dg = gram_initial - outer(sqrt_p);
    const double min_p = sqrt_p.cwiseAbs2().minCoeff();

    report.dg_psd = is_psd(dg, tol);
    report.dg_psd_ok = report.dg_psd.psd;
    report.dg_diag_max = dg.diagonal().real().maxCoeff();
    report.dg_diag_ok = report.dg_diag_max <= 1.0 - min_p + tol;
    report.norm = make_report(spectral_norm(hadamard(gamma, dg)), (1.0 - min_p) * spectral_norm(gamma),
                              tol, "multgdelta");
    if (!report.dg_psd_ok || !report.dg_diag_ok) {
        report.norm.context = "multgdelta precondition_violated";
    }
    return report;
}

Lemma2Report lemma2_check(const Matrix& gamma, const Matrix& gram_initial, const RealVector& sqrt_p,
                          double delta, double tol) {
    if (delta <= 0.0) {
        throw Error("nonpositive_delta", "lemma2_check needs delta > 0");
    }
    Lemma2Report report;
    const double rhs = spectral_norm(hadamard(gamma, gram_initial));
    report.bound = make_report(2.0 * delta * spectral_norm(gamma), rhs, tol, "lemma2");

    const Matrix p_outer = outer(sqrt_p);
    report.triangle_lhs = spectral_norm(hadamard(gamma, p_outer)) -
                          spectral_norm(hadamard(gamma, gram_initial - p_outer));
    report.triangle_ok = report.triangle_lhs <= rhs + tol;
    return report;
}

}  // namespace advkit
