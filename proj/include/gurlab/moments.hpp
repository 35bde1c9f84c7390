// Second-moment data for a family of observables in a fixed state: means,
// dispersions sigma_i^2, the mixed correlators <i,j> = <dA_i dA_j> (dA is the
// mean-shifted operator), and the derived normalized quantities rho/phi.
//
// For a pure state psi the correlator is the plain inner product of the
// centered vectors alpha_i = dA_i psi, so the whole moment matrix is a Gram
// matrix and inherits positive semidefiniteness; for a density matrix the
// trace form Tr(W dA_i dA_j) plays the same role.

#pragma once

#include <optional>
#include <vector>

#include "gurlab/hilbert.hpp"

namespace gurlab {

// Pairs (i, j) with sigma_i * sigma_j below this threshold (scaled by
// 1 + |mean|) carry no normalized correlation; rho and phi are reported as 0
// and the pair is flagged.
inline constexpr double kDegeneracyThreshold = 1e-8;

// ---- centered operators ----

struct CenteredOperator {
    double mean = 0.0; // <A> in the defining state
    Mat centered;      // A - <A> I
};

// Requires a unit-normalized state of matching dimension.
CenteredOperator center_observable(const Observable& a, const Vec& psi,
                                   double tol = kDefaultTol);

// sigma^2 = |dA psi|^2 >= 0 (exact nonnegativity by construction).
double dispersion(const Observable& a, const Vec& psi, double tol = kDefaultTol);

// <i,j> = (dA_i psi, dA_j psi). Conjugate-symmetric in (i, j); the diagonal
// i == j is the dispersion.
Complex correlator(const Observable& ai, const Observable& aj, const Vec& psi,
                   double tol = kDefaultTol);

// Hermitian/anti-Hermitian split of the correlator: <i,j> = r + i*j with
// r = <{dA_i, dA_j}>/2 and j = <-i[dA_i, dA_j]>/2, both real. Computed from
// the anticommutator and commutator directly, then cross-checked against
// Re/Im of the correlator; disagreement raises NumericalError.
struct RJDecomposition {
    double r = 0.0; // symmetrized covariance
    double j = 0.0; // half the mean commutator, the Robertson bound
};

RJDecomposition rj_split(const Observable& ai, const Observable& aj,
                         const Vec& psi, double tol = kDefaultTol);

// ---- moment sets ----

enum class MomentSource { PureState, DensityMatrix };

struct MomentSet {
    RealVec sigma2; // dispersions, nonnegative
    Mat corr;       // <i,j>; Hermitian, diagonal equals sigma2 exactly
    RealVec means;  // <A_i>, kept for degeneracy thresholds and reporting
    MomentSource source = MomentSource::PureState;

    int n() const { return static_cast<int>(sigma2.size()); }
};

// Moments of a pure state. When dimensional scale factors d_i > 0 are given,
// every correlator is recomputed through the dimensionless vectors
// alpha_i / d_i and the products d_i d_j must restore the original values;
// failure of that cancellation raises NumericalError. The returned moments
// are always the unscaled ones.
MomentSet moments_from_state(const std::vector<Observable>& as, const Vec& psi,
                             const std::optional<std::vector<double>>& scales = std::nullopt,
                             double tol = kDefaultTol);

// Moments of a mixed state via trace forms.
MomentSet moments_from_density(const std::vector<Observable>& as,
                               const DensityMatrix& w, double tol = kDefaultTol);

// ---- normalized correlations ----

struct NormalizedCorrelations {
    RealMat rho; // |<i,j>| / (sigma_i sigma_j), symmetric, zero diagonal
    RealMat phi; // arg <i,j> in (-pi, pi], antisymmetric by construction
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> degenerate; // per pair

    // Phase sum Sigma = phi_12 + phi_23 + phi_31, populated for n == 3 only.
    bool has_sigma_sum = false;
    double sigma_sum = 0.0;         // raw sum, in (-3 pi, 3 pi]
    double sigma_sum_wrapped = 0.0; // wrapped back to (-pi, pi]

    int n() const { return static_cast<int>(rho.rows()); }
    bool any_degenerate() const;
    double cos_sigma() const; // cos of the phase sum (wrap-independent)
};

NormalizedCorrelations normalized_correlations(const MomentSet& m);

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

} // namespace gurlab
