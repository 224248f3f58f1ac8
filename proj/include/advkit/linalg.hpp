#ifndef ADVKIT_LINALG_HPP
#define ADVKIT_LINALG_HPP

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace advkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Error with a stable machine-readable code ("shape_mismatch", "not_psd", ...)
/// alongside the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Largest singular value of a dense complex matrix. For a Hermitian input
/// this equals max |eigenvalue|.
double spectral_norm(const Matrix& m);

/// Entrywise (Hadamard) product. Inputs must have identical dimensions.
Matrix hadamard(const Matrix& a, const Matrix& b);

/// Gram matrix G[x,x'] = <state_x | state_x'> of a state collection.
/// The result is Hermitian by construction (exact conjugate symmetry,
/// real diagonal).
Matrix gram(const std::vector<Vector>& states);

struct PsdReport {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// Positive semidefiniteness test: true iff lambda_min(h) >= -tol.
/// Input must be Hermitian.
PsdReport is_psd(const Matrix& h, double tol = 1e-9);

bool is_hermitian(const Matrix& h, double tol = 1e-12);

/// Deviation from unitarity, ||U^dag U - I||.
double unitarity_defect(const Matrix& u);

/// Largest absolute entry; 0 for an empty matrix.
double max_abs_entry(const Matrix& m);

// Seeded generators for property tests and randomized suites.
Matrix random_hermitian(int dim, std::mt19937_64& rng);
Matrix random_psd(int dim, std::mt19937_64& rng);
Matrix random_unitary(int dim, std::mt19937_64& rng);
Vector random_state(int dim, std::mt19937_64& rng);

}  // namespace advkit

#endif
