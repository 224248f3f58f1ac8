#include "advkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace advkit {

double spectral_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw Error("empty_matrix", "spectral_norm of a zero-dimensional matrix");
    }
    if (!m.allFinite()) {
        throw Error("non_finite", "spectral_norm input has NaN/Inf entries");
    }
    if (m.rows() == m.cols() && is_hermitian(m, 1e-12)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error("shape_mismatch", "hadamard product of " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                          "x" + std::to_string(b.cols()));
    }
    return a.cwiseProduct(b);
}

Matrix gram(const std::vector<Vector>& states) {
    if (states.empty()) {
        throw Error("empty_input", "gram of an empty state collection");
    }
    const Eigen::Index dim = states.front().size();
    for (const auto& s : states) {
        if (s.size() != dim) {
            throw Error("shape_mismatch", "gram over states of mixed dimensions");
        }
    }
    const Eigen::Index n = static_cast<Eigen::Index>(states.size());
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = Complex(states[i].squaredNorm(), 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Complex v = states[i].dot(states[j]);  // <s_i | s_j>
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }
    return g;
}

PsdReport is_psd(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) {
        throw Error("shape_mismatch", "is_psd needs a square matrix");
    }
    if (h.rows() == 0) {
        throw Error("empty_matrix", "is_psd of a zero-dimensional matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    return {lambda_min >= -tol, lambda_min};
}

bool is_hermitian(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) return false;
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double unitarity_defect(const Matrix& u) {
    if (u.size() == 0) return 0.0;
    Matrix d = u.adjoint() * u;
    d -= Matrix::Identity(u.cols(), u.cols());
    return spectral_norm(d);
}

double max_abs_entry(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Matrix h = 0.5 * (a + a.adjoint());
    for (int i = 0; i < dim; ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
    return h;
}

Matrix random_psd(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Matrix s = a.adjoint() * a;
    s = Matrix(0.5 * (s + s.adjoint()));
    for (int i = 0; i < dim; ++i) s(i, i) = Complex(s(i, i).real(), 0.0);
    return s;
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the result is a deterministic
    // function of the input matrix.
    for (int i = 0; i < dim; ++i) {
        const Complex d = r(i, i);
        const double mag = std::abs(d);
        const Complex phase = mag > 0 ? d / mag : Complex(1, 0);
        q.col(i) *= phase;
    }
    return q;
}

Vector random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

}  // namespace advkit
