#include "gurlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gurlab {

bool is_finite(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            return false;
    return true;
}

bool is_finite(const Mat& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols() || m.size() == 0) return false;
    const double scale = std::max(1.0, max_abs(m));
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    return dev <= tol * scale;
}

Vec normalized(const Vec& v) {
    const double n = v.norm();
    if (!(n > 0.0))
        throw PreconditionError("normalized: zero vector has no direction");
    return v / n;
}

void require_normalized(const Vec& v, double tol, const char* who) {
    if (v.size() == 0)
        throw DimensionError(std::string(who) + ": empty vector");
    const double n = v.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol)
        throw PreconditionError(std::string(who) +
                                ": vector must be unit-normalized (norm = " +
                                std::to_string(n) + ")");
}

Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// ---- validated operator types ----

Observable::Observable(Mat entries, double tol) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.size() == 0)
        throw PreconditionError("observable: matrix must be square and nonempty");
    if (!is_finite(entries_))
        throw PreconditionError("observable: entries must be finite");
    if (!is_hermitian(entries_, tol))
        throw PreconditionError("observable: matrix is not Hermitian within tolerance");
}

DensityMatrix::DensityMatrix(Mat entries, double tol) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.size() == 0)
        throw PreconditionError("density matrix: matrix must be square and nonempty");
    if (!is_finite(entries_))
        throw PreconditionError("density matrix: entries must be finite");
    if (!is_hermitian(entries_, tol))
        throw PreconditionError("density matrix: matrix is not Hermitian within tolerance");
    const Complex tr = entries_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol * std::max(1.0, std::abs(tr)))
        throw PreconditionError("density matrix: trace must equal 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(entries_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("density matrix: eigenvalue computation failed");
    if (es.eigenvalues().minCoeff() < -tol)
        throw PreconditionError("density matrix: not positive semidefinite");
}

// ---- inner products and Gram structure ----

Complex inner_product(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionError("inner_product: vectors have different dimensions");
    if (a.size() == 0)
        throw DimensionError("inner_product: empty vectors");
    return a.dot(b); // Eigen conjugates the first factor
}

Mat gram_matrix(const VectorSet& vs) {
    if (vs.empty())
        throw PreconditionError("gram_matrix: vector set must be nonempty");
    const Eigen::Index dim = vs.front().size();
    if (dim == 0)
        throw DimensionError("gram_matrix: empty vectors");
    for (const Vec& v : vs)
        if (v.size() != dim)
            throw DimensionError("gram_matrix: vectors have mixed dimensions");

    const int n = static_cast<int>(vs.size());
    Mat g(n, n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = Complex(vs[static_cast<std::size_t>(i)].squaredNorm(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex gij = vs[static_cast<std::size_t>(i)].dot(vs[static_cast<std::size_t>(j)]);
            g(i, j) = gij;
            g(j, i) = std::conj(gij); // Hermitian by construction
        }
    }
    return g;
}

double quadratic_form(const Mat& m, const Vec& mu, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("quadratic_form: matrix must be square");
    if (m.rows() != mu.size())
        throw DimensionError("quadratic_form: coefficient vector does not match matrix");
    const Complex q = mu.dot(m * mu);
    const double scale = std::max(1.0, mu.squaredNorm() * max_abs(m));
    if (std::abs(q.imag()) > tol * scale)
        throw NumericalError("quadratic_form: imaginary residual exceeds tolerance");
    return q.real();
}

double principal_minor(const Mat& m, const std::vector<int>& rows, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("principal_minor: matrix must be square");
    if (rows.empty())
        throw PreconditionError("principal_minor: index set must be nonempty");
    for (int r : rows)
        if (r < 0 || r >= m.rows())
            throw PreconditionError("principal_minor: index out of range");
    std::vector<int> sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("principal_minor: indices must be distinct");

    const int k = static_cast<int>(rows.size());
    Mat sub(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            sub(a, b) = m(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(b)]);

    const Complex det = sub.determinant();

    // Hadamard bound of the submatrix sets the natural magnitude of the
    // determinant; rounding noise in the imaginary part is measured against it.
    double hadamard = 1.0;
    for (int a = 0; a < k; ++a) hadamard *= sub.row(a).norm();
    const double scale = std::max(1.0, hadamard);
    if (std::abs(det.imag()) > tol * scale)
        throw NumericalError("principal_minor: determinant has a large imaginary residual; "
                             "input is not Hermitian enough");
    return det.real();
}

PsdVerdict psd_check(const Mat& m, double tol) {
    if (m.rows() != m.cols() || m.size() == 0)
        throw DimensionError("psd_check: matrix must be square and nonempty");
    if (!is_hermitian(m, tol))
        throw NumericalError("psd_check: matrix is not Hermitian within tolerance");

    const int n = static_cast<int>(m.rows());

    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("psd_check: eigenvalue computation failed");

    PsdVerdict verdict;
    verdict.min_eigenvalue = es.eigenvalues().minCoeff();
    const double scale = std::max(1.0, m.diagonal().real().maxCoeff());
    verdict.is_psd = verdict.min_eigenvalue >= -tol * scale;

    if (n <= 8) {
        // Exhaustive subset enumeration: every principal minor, not only the
        // leading ones (those certify definiteness, not semidefiniteness).
        double worst = std::numeric_limits<double>::infinity();
        std::vector<int> idx;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            idx.clear();
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) idx.push_back(b);
            worst = std::min(worst, principal_minor(m, idx, tol));
        }
        verdict.worst_minor = worst;
    }
    return verdict;
}

bool linear_dependence_check(const VectorSet& vs, double tol) {
    if (vs.empty()) return false; // an empty family is independent
    const Eigen::Index dim = vs.front().size();
    if (dim == 0)
        throw DimensionError("linear_dependence_check: empty vectors");
    for (const Vec& v : vs)
        if (v.size() != dim)
            throw DimensionError("linear_dependence_check: vectors have mixed dimensions");

    const Eigen::Index n = static_cast<Eigen::Index>(vs.size());
    if (n > dim) return true; // rank cannot reach the count

    Mat stacked(dim, n);
    for (Eigen::Index j = 0; j < n; ++j)
        stacked.col(j) = vs[static_cast<std::size_t>(j)];

    Eigen::JacobiSVD<Mat> svd(stacked); // singular values only
    const RealVec& sv = svd.singularValues();
    const double largest = sv(0);
    const double smallest = sv(sv.size() - 1);
    return smallest <= tol * largest; // largest == 0 means all-zero vectors
}

} // namespace gurlab
