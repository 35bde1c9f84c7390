// Uncertainty-relation evaluators. Every relation is reported one-sidedly:
// margin = lhs - rhs, satisfied iff margin >= -tol_eff, where tol_eff is the
// requested tolerance times a scale natural to the relation (max(1, product
// of the dispersions involved)). Saturation means |margin| <= sat_tol_eff.
//
// Relations on moment data:
//   heisenberg_pair    sigma_i^2 sigma_j^2 >= (Im <i,j>)^2
//   schroedinger_pair  sigma_i^2 sigma_j^2 >= |<i,j>|^2
//   gur_raw            third-order determinant expansion of the moment matrix
//   gur_n              moment matrix of n observables is positive semidefinite
//
// Relations on plain vector families (the Gram-matrix view of the same facts):
//   cauchy_pair        |v_i|^2 |v_j|^2 >= |(v_i, v_j)|^2
//   gci_triple         det of the 3x3 Gram matrix >= 0, written out termwise
//
// Relations on normalized correlation coordinates:
//   gur_normalized     1 + 2 r12 r23 r31 cosS - r12^2 - r23^2 - r31^2 >= 0
//   gur_weakened       the same with cosS replaced by its maximum 1
//   orthogonal_special r12^2 + r31^2 <= 1 (valid when <2,3> = <1,2 x 3..> = 0
//                      and the phase structure makes the cross term vanish)
//   forbidden_region_check  membership in the rho-space box that no state
//                      can reach (two large correlations force the third up)

#pragma once

#include <optional>

#include "gurlab/hilbert.hpp"
#include "gurlab/moments.hpp"

namespace gurlab {

enum class Relation {
    Heisenberg,
    Schroedinger,
    CauchyPair,
    GciTriple,
    GurRaw,
    GurNormalized,
    GurWeakened,
    GurN,
    OrthogonalSpecial,
};

const char* relation_name(Relation r);

struct RelationReport {
    Relation relation = Relation::Heisenberg;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;   // lhs - rhs
    bool satisfied = false; // margin >= -tol
    bool saturated = false; // |margin| <= sat_tol (or exact rank condition)
    double tol = 0.0;       // effective (already scaled) check tolerance
    double sat_tol = 0.0;   // effective saturation tolerance
    bool degenerate = false; // some dispersion involved is numerically zero
};

// ---- pairwise relations on moments ----

RelationReport heisenberg_pair(const MomentSet& m, int i, int j,
                               double tol = kDefaultTol,
                               std::optional<double> saturation_tol = std::nullopt);

RelationReport schroedinger_pair(const MomentSet& m, int i, int j,
                                 double tol = kDefaultTol,
                                 std::optional<double> saturation_tol = std::nullopt);

// ---- Gram-matrix relations on vector families ----

RelationReport cauchy_pair(const VectorSet& vs, int i, int j,
                           double tol = kDefaultTol,
                           std::optional<double> saturation_tol = std::nullopt);

// Three vectors; saturated additionally when the family is linearly
// dependent (the exact equality condition).
RelationReport gci_triple(const VectorSet& vs, double tol = kDefaultTol,
                          std::optional<double> saturation_tol = std::nullopt);

// ---- three-observable relations ----

RelationReport gur_raw(const MomentSet& m, double tol = kDefaultTol,
                       std::optional<double> saturation_tol = std::nullopt);

// A point in normalized correlation space.
struct RhoSigmaPoint {
    double rho12 = 0.0;
    double rho23 = 0.0;
    double rho31 = 0.0;
    double cos_sigma = 1.0;
};

// Extract the point from three-observable normalized correlations; throws
// PreconditionError when n != 3 or any pair is degenerate.
RhoSigmaPoint rho_sigma_point(const NormalizedCorrelations& nc);

RelationReport gur_normalized(const RhoSigmaPoint& p, double tol = kDefaultTol,
                              std::optional<double> saturation_tol = std::nullopt);

// Convenience overload: moments -> normalized correlations -> point. Throws
// PreconditionError on degenerate pairs (evaluate gur_raw there instead).
RelationReport gur_normalized(const MomentSet& m, double tol = kDefaultTol,
                              std::optional<double> saturation_tol = std::nullopt);

// cos Sigma replaced by 1: a necessary condition independent of phases.
RelationReport gur_weakened(double rho12, double rho23, double rho31,
                            double tol = kDefaultTol,
                            std::optional<double> saturation_tol = std::nullopt);

// True iff (rho12, rho23, rho31) lies in the unreachable box
//   sqrt(3)/2 < a <= 1, sqrt(3)/2 < b <= 1, 0 <= c < 1/2
// for one of the three assignments of {a, b} to two of the coordinates.
bool forbidden_region_check(double rho12, double rho23, double rho31);

// Two-correlation bound when observable 2 is uncorrelated with 1 and 3:
// rho12^2 + rho31^2 <= 1.
RelationReport orthogonal_special(double rho12, double rho31,
                                  double tol = kDefaultTol,
                                  std::optional<double> saturation_tol = std::nullopt);

// ---- n-observable relation ----

struct GurNResult {
    RelationReport report; // margin = most negative eigenvalue of the moment matrix
    PsdVerdict verdict;    // eigenvalue + exhaustive-minor evidence
    double det = 0.0;      // determinant of the moment matrix (= gur_raw margin for n = 3)
};

GurNResult gur_n(const MomentSet& m, double tol = kDefaultTol);

} // namespace gurlab
