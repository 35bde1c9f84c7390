#include "gurlab/relations.hpp"

#include <cmath>
#include <string>

namespace gurlab {

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::Heisenberg: return "heisenberg";
        case Relation::Schroedinger: return "schroedinger";
        case Relation::CauchyPair: return "cauchy_pair";
        case Relation::GciTriple: return "gci_triple";
        case Relation::GurRaw: return "gur_raw";
        case Relation::GurNormalized: return "gur_normalized";
        case Relation::GurWeakened: return "gur_weakened";
        case Relation::GurN: return "gur_n";
        case Relation::OrthogonalSpecial: return "orthogonal_special";
    }
    return "unknown";
}

namespace {

RelationReport make_report(Relation rel, double lhs, double rhs, double scale,
                           double tol, std::optional<double> saturation_tol,
                           bool degenerate = false) {
    RelationReport rep;
    rep.relation = rel;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.margin = lhs - rhs;
    rep.tol = tol * scale;
    rep.sat_tol = saturation_tol.value_or(tol) * scale;
    rep.satisfied = rep.margin >= -rep.tol;
    rep.saturated = std::abs(rep.margin) <= rep.sat_tol;
    rep.degenerate = degenerate;
    return rep;
}

void check_pair_indices(const MomentSet& m, int i, int j, const char* who) {
    if (i < 0 || j < 0 || i >= m.n() || j >= m.n())
        throw PreconditionError(std::string(who) + ": observable index out of range");
    if (i == j)
        throw PreconditionError(std::string(who) + ": indices must be distinct");
}

bool pair_degenerate(const MomentSet& m, int i, int j) {
    const double si = std::sqrt(m.sigma2[i]);
    const double sj = std::sqrt(m.sigma2[j]);
    return si < kDegeneracyThreshold * (1.0 + std::abs(m.means[i])) ||
           sj < kDegeneracyThreshold * (1.0 + std::abs(m.means[j]));
}

void check_unit_interval(double v, const char* who) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 + 1e-12)
        throw PreconditionError(std::string(who) +
                                ": normalized correlations must lie in [0, 1]");
}

} // namespace

// ---- pairwise relations on moments ----

RelationReport heisenberg_pair(const MomentSet& m, int i, int j, double tol,
                               std::optional<double> saturation_tol) {
    check_pair_indices(m, i, j, "heisenberg_pair");
    const double lhs = m.sigma2[i] * m.sigma2[j];
    const double jj = m.corr(i, j).imag();
    const double rhs = jj * jj;
    const double scale = std::max(1.0, lhs);
    return make_report(Relation::Heisenberg, lhs, rhs, scale, tol, saturation_tol,
                       pair_degenerate(m, i, j));
}

RelationReport schroedinger_pair(const MomentSet& m, int i, int j, double tol,
                                 std::optional<double> saturation_tol) {
    check_pair_indices(m, i, j, "schroedinger_pair");
    const double lhs = m.sigma2[i] * m.sigma2[j];
    const double rhs = std::norm(m.corr(i, j)); // |<i,j>|^2
    const double scale = std::max(1.0, lhs);
    return make_report(Relation::Schroedinger, lhs, rhs, scale, tol, saturation_tol,
                       pair_degenerate(m, i, j));
}

// ---- Gram-matrix relations ----

RelationReport cauchy_pair(const VectorSet& vs, int i, int j, double tol,
                           std::optional<double> saturation_tol) {
    const int n = static_cast<int>(vs.size());
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw PreconditionError("cauchy_pair: vector index out of range");
    if (i == j)
        throw PreconditionError("cauchy_pair: indices must be distinct");
    const Vec& a = vs[static_cast<std::size_t>(i)];
    const Vec& b = vs[static_cast<std::size_t>(j)];
    const double lhs = a.squaredNorm() * b.squaredNorm();
    const double rhs = std::norm(inner_product(a, b));
    const double scale = std::max(1.0, lhs);
    return make_report(Relation::CauchyPair, lhs, rhs, scale, tol, saturation_tol);
}

RelationReport gci_triple(const VectorSet& vs, double tol,
                          std::optional<double> saturation_tol) {
    if (vs.size() != 3)
        throw PreconditionError("gci_triple: exactly three vectors required");
    const Mat g = gram_matrix(vs);

    const double n1 = g(0, 0).real();
    const double n2 = g(1, 1).real();
    const double n3 = g(2, 2).real();
    const Complex cyc = g(0, 1) * g(1, 2) * g(2, 0);

    const double lhs = n1 * n2 * n3 + 2.0 * cyc.real();
    const double rhs = std::norm(g(0, 1)) * n3 + std::norm(g(1, 2)) * n1 +
                       std::norm(g(2, 0)) * n2;
    const double scale = std::max(1.0, n1 * n2 * n3);

    RelationReport rep = make_report(Relation::GciTriple, lhs, rhs, scale, tol,
                                     saturation_tol);

    // The termwise expansion above is exactly det(g); verify against the
    // factorized determinant as an independent route.
    const Complex det = g.determinant();
    if (std::abs(det.imag()) > tol * scale ||
        std::abs(rep.margin - det.real()) > tol * scale)
        throw NumericalError("gci_triple: termwise expansion disagrees with determinant");

    // Equality holds exactly when the vectors are linearly dependent.
    if (linear_dependence_check(vs, tol)) rep.saturated = true;
    return rep;
}

// ---- three-observable relations ----

RelationReport gur_raw(const MomentSet& m, double tol,
                       std::optional<double> saturation_tol) {
    if (m.n() != 3)
        throw PreconditionError("gur_raw: exactly three observables required");
    const double s1 = m.sigma2[0], s2 = m.sigma2[1], s3 = m.sigma2[2];
    const Complex c12 = m.corr(0, 1);
    const Complex c23 = m.corr(1, 2);
    const Complex c31 = m.corr(2, 0);

    const double lhs = s1 * s2 * s3 + 2.0 * (c12 * c23 * c31).real();
    const double rhs = std::norm(c12) * s3 + std::norm(c23) * s1 + std::norm(c31) * s2;
    const double scale = std::max(1.0, s1 * s2 * s3);

    const bool degenerate = pair_degenerate(m, 0, 1) || pair_degenerate(m, 1, 2) ||
                            pair_degenerate(m, 2, 0);
    return make_report(Relation::GurRaw, lhs, rhs, scale, tol, saturation_tol,
                       degenerate);
}

RhoSigmaPoint rho_sigma_point(const NormalizedCorrelations& nc) {
    if (nc.n() != 3 || !nc.has_sigma_sum)
        throw PreconditionError("rho_sigma_point: exactly three observables required");
    if (nc.any_degenerate())
        throw PreconditionError("rho_sigma_point: degenerate pair, normalized "
                                "coordinates undefined");
    RhoSigmaPoint p;
    p.rho12 = nc.rho(0, 1);
    p.rho23 = nc.rho(1, 2);
    p.rho31 = nc.rho(2, 0);
    p.cos_sigma = std::cos(nc.sigma_sum);
    return p;
}

RelationReport gur_normalized(const RhoSigmaPoint& p, double tol,
                              std::optional<double> saturation_tol) {
    check_unit_interval(p.rho12, "gur_normalized");
    check_unit_interval(p.rho23, "gur_normalized");
    check_unit_interval(p.rho31, "gur_normalized");
    if (!std::isfinite(p.cos_sigma) || std::abs(p.cos_sigma) > 1.0 + 1e-12)
        throw PreconditionError("gur_normalized: cos Sigma must lie in [-1, 1]");

    const double lhs = 1.0 + 2.0 * p.rho12 * p.rho23 * p.rho31 * p.cos_sigma;
    const double rhs = p.rho12 * p.rho12 + p.rho23 * p.rho23 + p.rho31 * p.rho31;
    // Already dimensionless; scale is unity.
    return make_report(Relation::GurNormalized, lhs, rhs, 1.0, tol, saturation_tol);
}

RelationReport gur_normalized(const MomentSet& m, double tol,
                              std::optional<double> saturation_tol) {
    if (m.n() != 3)
        throw PreconditionError("gur_normalized: exactly three observables required");
    const NormalizedCorrelations nc = normalized_correlations(m);
    if (nc.any_degenerate())
        throw PreconditionError("gur_normalized: degenerate pair (vanishing "
                                "dispersion); evaluate gur_raw instead");
    return gur_normalized(rho_sigma_point(nc), tol, saturation_tol);
}

RelationReport gur_weakened(double rho12, double rho23, double rho31, double tol,
                            std::optional<double> saturation_tol) {
    check_unit_interval(rho12, "gur_weakened");
    check_unit_interval(rho23, "gur_weakened");
    check_unit_interval(rho31, "gur_weakened");
    const double lhs = 1.0 + 2.0 * rho12 * rho23 * rho31;
    const double rhs = rho12 * rho12 + rho23 * rho23 + rho31 * rho31;
    return make_report(Relation::GurWeakened, lhs, rhs, 1.0, tol, saturation_tol);
}

bool forbidden_region_check(double rho12, double rho23, double rho31) {
    const double lo = std::sqrt(3.0) / 2.0;
    const auto box = [lo](double big_a, double big_b, double small) {
        return big_a > lo && big_a <= 1.0 && big_b > lo && big_b <= 1.0 &&
               small >= 0.0 && small < 0.5;
    };
    return box(rho12, rho31, rho23) || // 12 and 31 large, 23 small
           box(rho23, rho31, rho12) || // 23 and 31 large, 12 small
           box(rho12, rho23, rho31);   // 12 and 23 large, 31 small
}

RelationReport orthogonal_special(double rho12, double rho31, double tol,
                                  std::optional<double> saturation_tol) {
    const double lhs = 1.0;
    const double rhs = rho12 * rho12 + rho31 * rho31;
    return make_report(Relation::OrthogonalSpecial, lhs, rhs, 1.0, tol,
                       saturation_tol);
}

// ---- n-observable relation ----

GurNResult gur_n(const MomentSet& m, double tol) {
    if (m.n() < 2)
        throw PreconditionError("gur_n: at least two observables required");

    GurNResult res;
    res.verdict = psd_check(m.corr, tol);

    const Complex det = m.corr.determinant();
    double det_scale = 1.0;
    for (int i = 0; i < m.n(); ++i) det_scale *= std::max(1.0, m.sigma2[i]);
    if (std::abs(det.imag()) > tol * det_scale)
        throw NumericalError("gur_n: moment-matrix determinant has a large "
                             "imaginary residual");
    res.det = det.real();

    // One-sided report on the spectral margin, so satisfied <=> PSD.
    const double scale = std::max(1.0, m.corr.diagonal().real().maxCoeff());
    RelationReport rep;
    rep.relation = Relation::GurN;
    rep.lhs = res.verdict.min_eigenvalue;
    rep.rhs = 0.0;
    rep.margin = rep.lhs;
    rep.tol = tol * scale;
    rep.sat_tol = tol * scale;
    rep.satisfied = res.verdict.is_psd;
    rep.saturated = std::abs(res.verdict.min_eigenvalue) <= rep.sat_tol;
    bool any_degenerate = false;
    for (int i = 0; i < m.n() && !any_degenerate; ++i)
        for (int j = i + 1; j < m.n(); ++j)
            if (pair_degenerate(m, i, j)) { any_degenerate = true; break; }
    rep.degenerate = any_degenerate;
    res.report = rep;
    return res;
}

} // namespace gurlab
