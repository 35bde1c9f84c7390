#include "gurlab/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gurlab {

namespace {

void check_state_dims(const Observable& a, const Vec& psi) {
    if (a.dim() != psi.size())
        throw DimensionError("moments: observable and state dimensions differ");
}

// Real part of an expectation that is real in exact arithmetic; the
// imaginary residual is measured against the operator scale.
double real_expectation(const Complex& value, double scale, double tol,
                        const char* what) {
    if (std::abs(value.imag()) > tol * std::max(1.0, scale))
        throw NumericalError(std::string(what) + ": imaginary residual exceeds tolerance");
    return value.real();
}

} // namespace

CenteredOperator center_observable(const Observable& a, const Vec& psi, double tol) {
    check_state_dims(a, psi);
    require_normalized(psi, tol);
    const Complex mean = psi.dot(a.matrix() * psi);
    CenteredOperator c;
    c.mean = real_expectation(mean, max_abs(a.matrix()), tol, "center_observable");
    c.centered = a.matrix() - c.mean * Mat::Identity(a.dim(), a.dim());
    return c;
}

double dispersion(const Observable& a, const Vec& psi, double tol) {
    check_state_dims(a, psi);
    require_normalized(psi, tol);
    const Complex mean = psi.dot(a.matrix() * psi);
    const double mu = real_expectation(mean, max_abs(a.matrix()), tol, "dispersion");
    return (a.matrix() * psi - mu * psi).squaredNorm();
}

Complex correlator(const Observable& ai, const Observable& aj, const Vec& psi,
                   double tol) {
    check_state_dims(ai, psi);
    check_state_dims(aj, psi);
    require_normalized(psi, tol);
    const double mi = real_expectation(psi.dot(ai.matrix() * psi),
                                       max_abs(ai.matrix()), tol, "correlator");
    const double mj = real_expectation(psi.dot(aj.matrix() * psi),
                                       max_abs(aj.matrix()), tol, "correlator");
    const Vec vi = ai.matrix() * psi - mi * psi;
    const Vec vj = aj.matrix() * psi - mj * psi;
    return vi.dot(vj); // (dA_i psi, dA_j psi)
}

RJDecomposition rj_split(const Observable& ai, const Observable& aj,
                         const Vec& psi, double tol) {
    check_state_dims(ai, psi);
    check_state_dims(aj, psi);
    require_normalized(psi, tol);

    const Mat& a = ai.matrix();
    const Mat& b = aj.matrix();
    const Eigen::Index d = a.rows();
    const double mi = real_expectation(psi.dot(a * psi), max_abs(a), tol, "rj_split");
    const double mj = real_expectation(psi.dot(b * psi), max_abs(b), tol, "rj_split");
    const Mat da = a - mi * Mat::Identity(d, d);
    const Mat db = b - mj * Mat::Identity(d, d);

    // Route one: anticommutator and commutator expectations.
    const Mat prod_ab = da * db;
    const Mat prod_ba = db * da;
    const double op_scale = max_abs(prod_ab) + max_abs(prod_ba);
    const Complex anti = psi.dot((0.5 * (prod_ab + prod_ba)) * psi);
    const Complex comm = psi.dot((Complex(0.0, -0.5) * (prod_ab - prod_ba)) * psi);

    RJDecomposition rj;
    rj.r = real_expectation(anti, op_scale, tol, "rj_split (symmetric part)");
    rj.j = real_expectation(comm, op_scale, tol, "rj_split (commutator part)");

    // Route two: the correlator itself; its real and imaginary parts must be
    // the same two numbers.
    const Complex c = (da * psi).dot(db * psi);
    const double scale = std::max({1.0, std::abs(c), std::abs(rj.r), std::abs(rj.j)});
    if (std::abs(rj.r - c.real()) > tol * scale ||
        std::abs(rj.j - c.imag()) > tol * scale)
        throw NumericalError("rj_split: operator-product route disagrees with correlator");
    return rj;
}

// ---- moment sets ----

MomentSet moments_from_state(const std::vector<Observable>& as, const Vec& psi,
                             const std::optional<std::vector<double>>& scales,
                             double tol) {
    if (as.empty())
        throw PreconditionError("moments_from_state: at least one observable required");
    for (const Observable& a : as) check_state_dims(a, psi);
    require_normalized(psi, tol);
    if (scales) {
        if (scales->size() != as.size())
            throw DimensionError("moments_from_state: one scale factor per observable required");
        for (double d : *scales)
            if (!(d > 0.0) || !std::isfinite(d))
                throw PreconditionError("moments_from_state: scale factors must be positive and finite");
    }

    const int n = static_cast<int>(as.size());
    MomentSet m;
    m.sigma2 = RealVec(n);
    m.corr = Mat(n, n);
    m.means = RealVec(n);
    m.source = MomentSource::PureState;

    std::vector<Vec> centered(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Mat& a = as[static_cast<std::size_t>(i)].matrix();
        m.means[i] = real_expectation(psi.dot(a * psi), max_abs(a), tol,
                                      "moments_from_state");
        centered[static_cast<std::size_t>(i)] = a * psi - m.means[i] * psi;
    }

    for (int i = 0; i < n; ++i) {
        m.sigma2[i] = centered[static_cast<std::size_t>(i)].squaredNorm();
        m.corr(i, i) = Complex(m.sigma2[i], 0.0); // diagonal equals sigma2 exactly
        for (int j = i + 1; j < n; ++j) {
            const Complex c = centered[static_cast<std::size_t>(i)]
                                  .dot(centered[static_cast<std::size_t>(j)]);
            m.corr(i, j) = c;
            m.corr(j, i) = std::conj(c);
        }
    }

    if (scales) {
        // Dimensionless route: alpha_i / d_i, then multiply the scales back.
        // The scale factors must cancel to working precision.
        for (int i = 0; i < n; ++i) {
            const double di = (*scales)[static_cast<std::size_t>(i)];
            const Vec ai = centered[static_cast<std::size_t>(i)] / di;
            for (int j = i; j < n; ++j) {
                const double dj = (*scales)[static_cast<std::size_t>(j)];
                const Vec aj = centered[static_cast<std::size_t>(j)] / dj;
                const Complex rebuilt = di * dj * ai.dot(aj);
                const Complex direct = m.corr(i, j);
                if (std::abs(rebuilt - direct) > tol * std::max(1.0, std::abs(direct)))
                    throw NumericalError("moments_from_state: dimensional scale factors "
                                         "failed to cancel");
            }
        }
    }
    return m;
}

MomentSet moments_from_density(const std::vector<Observable>& as,
                               const DensityMatrix& w, double tol) {
    if (as.empty())
        throw PreconditionError("moments_from_density: at least one observable required");
    for (const Observable& a : as)
        if (a.dim() != w.dim())
            throw DimensionError("moments_from_density: observable and density dimensions differ");

    const int n = static_cast<int>(as.size());
    const Mat& W = w.matrix();
    const Eigen::Index d = w.dim();

    MomentSet m;
    m.sigma2 = RealVec(n);
    m.corr = Mat(n, n);
    m.means = RealVec(n);
    m.source = MomentSource::DensityMatrix;

    std::vector<Mat> centered(static_cast<std::size_t>(n));
    std::vector<Mat> w_centered(static_cast<std::size_t>(n)); // W * dA_i
    for (int i = 0; i < n; ++i) {
        const Mat& a = as[static_cast<std::size_t>(i)].matrix();
        const Complex mean = (W * a).trace();
        m.means[i] = real_expectation(mean, max_abs(a), tol, "moments_from_density");
        centered[static_cast<std::size_t>(i)] = a - m.means[i] * Mat::Identity(d, d);
        w_centered[static_cast<std::size_t>(i)] = W * centered[static_cast<std::size_t>(i)];
    }

    for (int i = 0; i < n; ++i) {
        const Mat& da = centered[static_cast<std::size_t>(i)];
        const double op_scale = max_abs(da) * max_abs(da);
        const Complex s2 = (w_centered[static_cast<std::size_t>(i)] * da).trace();
        double v = real_expectation(s2, op_scale, tol, "moments_from_density (dispersion)");
        if (v < 0.0) {
            if (v < -tol * std::max(1.0, op_scale))
                throw NumericalError("moments_from_density: negative dispersion");
            v = 0.0; // clamp rounding noise
        }
        m.sigma2[i] = v;
        m.corr(i, i) = Complex(v, 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex c =
                (w_centered[static_cast<std::size_t>(i)] * centered[static_cast<std::size_t>(j)])
                    .trace();
            m.corr(i, j) = c;
            m.corr(j, i) = std::conj(c);
        }
    }
    return m;
}

// ---- normalized correlations ----

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi); // [-pi, pi]
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

bool NormalizedCorrelations::any_degenerate() const {
    const int k = n();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (degenerate(i, j)) return true;
    return false;
}

double NormalizedCorrelations::cos_sigma() const {
    if (!has_sigma_sum)
        throw PreconditionError("cos_sigma: phase sum defined for three observables only");
    return std::cos(sigma_sum);
}

NormalizedCorrelations normalized_correlations(const MomentSet& m) {
    const int n = m.n();
    if (n < 1)
        throw PreconditionError("normalized_correlations: empty moment set");

    NormalizedCorrelations nc;
    nc.rho = RealMat::Zero(n, n);
    nc.phi = RealMat::Zero(n, n);
    nc.degenerate.setConstant(n, n, false);

    std::vector<double> sigma(static_cast<std::size_t>(n));
    std::vector<bool> flat(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        sigma[static_cast<std::size_t>(i)] = std::sqrt(m.sigma2[i]);
        // Dispersion negligible against the observable's own magnitude: the
        // state is (numerically) an eigenstate and the direction alpha_i is lost.
        flat[static_cast<std::size_t>(i)] =
            sigma[static_cast<std::size_t>(i)] <
            kDegeneracyThreshold * (1.0 + std::abs(m.means[i]));
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (flat[static_cast<std::size_t>(i)] || flat[static_cast<std::size_t>(j)]) {
                nc.degenerate(i, j) = nc.degenerate(j, i) = true;
                continue; // rho and phi stay 0
            }
            const Complex c = m.corr(i, j);
            const double denom = sigma[static_cast<std::size_t>(i)] *
                                 sigma[static_cast<std::size_t>(j)];
            nc.rho(i, j) = nc.rho(j, i) = std::abs(c) / denom;
            double ph = std::arg(c); // [-pi, pi]
            if (ph <= -std::numbers::pi) ph = std::numbers::pi;
            nc.phi(i, j) = ph;
            nc.phi(j, i) = -ph; // antisymmetric by construction
        }
    }

    if (n == 3) {
        nc.has_sigma_sum = true;
        nc.sigma_sum = nc.phi(0, 1) + nc.phi(1, 2) + nc.phi(2, 0);
        nc.sigma_sum_wrapped = wrap_angle(nc.sigma_sum);
    }
    return nc;
}

} // namespace gurlab
