#ifndef ADVKIT_NORMCHECK_HPP
#define ADVKIT_NORMCHECK_HPP

#include <string>

#include "advkit/linalg.hpp"

namespace advkit {

/// One checked inequality lhs <= rhs, with the slack kept for diagnostics.
struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    double tol = 0.0;
    bool holds = false;  // slack >= -tol
    std::string context;
};

InequalityReport make_report(double lhs, double rhs, double tol, std::string context);

/// ||Gamma o S|| <= max_x S[x,x] * ||Gamma|| for PSD S.
InequalityReport schur_check(const Matrix& gamma, const Matrix& s, double tol = 1e-8);

/// min_x |sqrt_p[x]|^2 * ||Gamma|| <= ||Gamma o (sqrt_p sqrt_p^T)||.
/// Needs every entry of sqrt_p nonzero.
InequalityReport multp_check(const Matrix& gamma, const RealVector& sqrt_p, double tol = 1e-8);

struct MultGDeltaReport {
    InequalityReport norm;       // ||Gamma o dG|| <= (1 - min_x p_x) ||Gamma||
    PsdReport dg_psd;            // dG = G_xi' - sqrt_p sqrt_p^T must be PSD
    bool dg_psd_ok = false;
    double dg_diag_max = 0.0;    // max diagonal entry of dG
    bool dg_diag_ok = false;     // <= 1 - min_x p_x (up to tol)
};

MultGDeltaReport multgdelta_check(const Matrix& gamma, const Matrix& gram_initial,
                                  const RealVector& sqrt_p, double tol = 1e-8);

struct Lemma2Report {
    InequalityReport bound;     // 2 delta ||Gamma|| <= ||Gamma o G_xi'||
    double triangle_lhs = 0.0;  // ||Gamma o (sqrt_p sqrt_p^T)|| - ||Gamma o dG||
    bool triangle_ok = false;   // triangle_lhs <= ||Gamma o G_xi'|| + tol
};

/// The headline bound for a Gram matrix from surgery with success bias
/// >= delta > 0. Also reports the intermediate triangle-inequality step,
/// which needs the surgery's sqrt_p vector.
Lemma2Report lemma2_check(const Matrix& gamma, const Matrix& gram_initial, const RealVector& sqrt_p,
                          double delta, double tol = 1e-8);

}  // namespace advkit

#endif
