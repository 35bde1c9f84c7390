// Dense complex linear algebra for finite-dimensional quantum problems:
// state vectors, Hermitian observables, density matrices, Gram matrices,
// principal minors, and positive-semidefiniteness verdicts.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gurlab/errors.hpp"

namespace gurlab {

using Complex = std::complex<double>;
using Vec     = Eigen::VectorXcd;
using Mat     = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

// A family of same-dimension vectors. No normalization is assumed; only the
// inner-product structure matters.
using VectorSet = std::vector<Vec>;

// Default relative tolerance. Checks compare against tol * scale where
// scale = max(1, natural magnitude of the quantities involved), so the
// tolerance is absolute near zero and relative for large values.
inline constexpr double kDefaultTol = 1e-9;

// ---- elementary predicates and helpers ----

bool is_finite(const Vec& v);
bool is_finite(const Mat& m);

// Largest entry magnitude; 0 for an empty matrix.
double max_abs(const Mat& m);

// Max |m - m^dagger| entry at most tol * max(1, max |entry|).
bool is_hermitian(const Mat& m, double tol = kDefaultTol);

// Unit-normalized copy. Rejects the zero vector.
Vec normalized(const Vec& v);

// Throws PreconditionError unless the norm is within tol of 1.
void require_normalized(const Vec& v, double tol = kDefaultTol,
                        const char* who = "state");

// Kronecker (tensor) product.
Mat kron(const Mat& a, const Mat& b);

// ---- validated operator types ----

// Hermitian operator; Hermiticity is checked once at construction.
class Observable {
public:
    explicit Observable(Mat entries, double tol = kDefaultTol);

    const Mat& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

private:
    Mat entries_;
};

// Unit-trace positive-semidefinite Hermitian matrix (a mixed state).
class DensityMatrix {
public:
    explicit DensityMatrix(Mat entries, double tol = kDefaultTol);

    const Mat& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

private:
    Mat entries_;
};

// ---- inner products and Gram structure ----

// (a, b) = sum_k conj(a_k) b_k; conjugate-linear in the first argument.
Complex inner_product(const Vec& a, const Vec& b);

// Matrix of pairwise inner products g_ij = (v_i, v_j). Hermitian by
// construction with a real nonnegative diagonal.
Mat gram_matrix(const VectorSet& vs);

// Re(mu^* M mu) for complex coefficients mu. For Hermitian M the form is
// real; an imaginary residual above tolerance raises NumericalError.
double quadratic_form(const Mat& m, const Vec& mu, double tol = kDefaultTol);

// Determinant of the submatrix on rows x rows (indices distinct, in range;
// any subset, not only leading ones). Real for Hermitian input; the imaginary
// residual is checked against tolerance and discarded.
double principal_minor(const Mat& m, const std::vector<int>& rows,
                       double tol = kDefaultTol);

struct PsdVerdict {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    // Most negative principal minor over every nonempty index subset;
    // enumerated only for n <= 8 (2^n - 1 subsets).
    std::optional<double> worst_minor;
};

// Positive-semidefiniteness by eigenvalue test with slack
// tol * max(1, max diagonal entry). For n <= 8 all principal minors are
// enumerated as a second, independent route: nonnegativity of the leading
// minors alone is not sufficient for semidefiniteness.
PsdVerdict psd_check(const Mat& m, double tol = kDefaultTol);

// True iff the family has numerical rank below its count: smallest singular
// value of the stacked vectors at most tol * largest. More vectors than
// dimensions are dependent outright.
bool linear_dependence_check(const VectorSet& vs, double tol = kDefaultTol);

} // namespace gurlab
