#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>

#include "gurlab/moments.hpp"
#include "gurlab/pauli.hpp"
#include "gurlab/relations.hpp"

#include "support.hpp"

using namespace gurlab;

namespace {

Vec ket0() {
    Vec v = Vec::Zero(2);
    v[0] = Complex(1, 0);
    return v;
}

MomentSet spin_xy_moments() {
    return moments_from_state({Observable(pauli::x()), Observable(pauli::y())}, ket0());
}

MomentSet spin_xyz_moments() {
    return moments_from_state(
        {Observable(pauli::x()), Observable(pauli::y()), Observable(pauli::z())},
        ket0());
}

} // namespace

TEST_CASE("relation names are stable identifiers") {
    CHECK(std::strcmp(relation_name(Relation::Heisenberg), "heisenberg") == 0);
    CHECK(std::strcmp(relation_name(Relation::Schroedinger), "schroedinger") == 0);
    CHECK(std::strcmp(relation_name(Relation::CauchyPair), "cauchy_pair") == 0);
    CHECK(std::strcmp(relation_name(Relation::GciTriple), "gci_triple") == 0);
    CHECK(std::strcmp(relation_name(Relation::GurRaw), "gur_raw") == 0);
    CHECK(std::strcmp(relation_name(Relation::GurNormalized), "gur_normalized") == 0);
    CHECK(std::strcmp(relation_name(Relation::GurWeakened), "gur_weakened") == 0);
    CHECK(std::strcmp(relation_name(Relation::GurN), "gur_n") == 0);
    CHECK(std::strcmp(relation_name(Relation::OrthogonalSpecial),
                      "orthogonal_special") == 0);
}

TEST_CASE("pairwise relations on the spin example") {
    const MomentSet m = spin_xy_moments();

    const RelationReport h = heisenberg_pair(m, 0, 1);
    CHECK(h.lhs == doctest::Approx(1.0));
    CHECK(h.rhs == doctest::Approx(1.0)); // (Im <x,y>)^2 = 1
    CHECK(h.margin == doctest::Approx(0.0));
    CHECK(h.satisfied);
    CHECK(h.saturated);
    CHECK_FALSE(h.degenerate);

    const RelationReport s = schroedinger_pair(m, 0, 1);
    CHECK(s.rhs == doctest::Approx(1.0)); // |<x,y>|^2 = 1
    CHECK(s.satisfied);
    CHECK(s.saturated);

    SUBCASE("index validation") {
        CHECK_THROWS_AS(heisenberg_pair(m, 0, 0), PreconditionError);
        CHECK_THROWS_AS(heisenberg_pair(m, 0, 2), PreconditionError);
        CHECK_THROWS_AS(schroedinger_pair(m, -1, 1), PreconditionError);
    }
}

TEST_CASE("Schroedinger sharpens Heisenberg on every pair") {
    for (std::uint64_t k = 0; k < 400; ++k) {
        const support::RandomInstance ri = support::random_instance(7001, k, 3);
        const MomentSet m = moments_from_state(ri.obs, ri.psi);
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const RelationReport h = heisenberg_pair(m, i, j);
                const RelationReport s = schroedinger_pair(m, i, j);
                CHECK(s.rhs >= h.rhs); // |<i,j>|^2 = r^2 + j^2 >= j^2, exactly
                CHECK(s.margin <= h.margin);
                CHECK(h.satisfied);
                CHECK(s.satisfied);
            }
        }
    }
}

TEST_CASE("Cauchy inequality on vector families") {
    Vec e1 = Vec::Zero(2), e2 = Vec::Zero(2);
    e1[0] = Complex(1, 0);
    e2[1] = Complex(1, 0);

    SUBCASE("orthonormal pair has unit margin") {
        const RelationReport rep = cauchy_pair({e1, e2}, 0, 1);
        CHECK(rep.lhs == doctest::Approx(1.0));
        CHECK(rep.rhs == doctest::Approx(0.0));
        CHECK(rep.margin == doctest::Approx(1.0));
        CHECK(rep.satisfied);
        CHECK_FALSE(rep.saturated);
    }
    SUBCASE("collinear pair saturates") {
        const RelationReport rep = cauchy_pair({e1, Vec(Complex(2, 1) * e1)}, 0, 1);
        CHECK(rep.margin == doctest::Approx(0.0));
        CHECK(rep.saturated);
    }
    SUBCASE("random families never violate") {
        for (std::uint64_t k = 0; k < 300; ++k) {
            const VectorSet vs = support::random_vector_set(7002, k, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    const RelationReport rep = cauchy_pair(vs, i, j, 1e-12);
                    CHECK(rep.satisfied);
                }
        }
    }
    SUBCASE("index validation") {
        CHECK_THROWS_AS(cauchy_pair({e1, e2}, 1, 1), PreconditionError);
        CHECK_THROWS_AS(cauchy_pair({e1, e2}, 0, 2), PreconditionError);
    }
}

TEST_CASE("third-order Gram inequality") {
    SUBCASE("margin equals the cofactor determinant") {
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const VectorSet vs = support::random_vector_set(7003, k, 3);
            const RelationReport rep = gci_triple(vs);
            CHECK(rep.satisfied);
            const Mat g = gram_matrix(vs);
            const double det = support::det3_cofactor(g).real();
            CHECK(support::close(rep.margin, det, 1e-10));
        }
    }
    SUBCASE("linearly dependent triples saturate") {
        for (std::uint64_t k = 0; k < 200; ++k) {
            Rng rng = Rng::substream(7004, k);
            const int dim = 3 + static_cast<int>(rng.uniform() * 5.0);
            const Vec a = rng.gaussian_vector(dim);
            const Vec b = rng.gaussian_vector(dim);
            const Vec c = rng.complex_normal() * a + rng.complex_normal() * b;
            const RelationReport rep = gci_triple({a, b, c});
            CHECK(rep.saturated);
            CHECK(std::abs(rep.margin) <= 1e-9 * std::max(1.0, rep.lhs));
        }
    }
    SUBCASE("exactly three vectors required") {
        const VectorSet vs = support::random_vector_set(7005, 0, 2);
        CHECK_THROWS_AS(gci_triple(vs), PreconditionError);
    }
}

TEST_CASE("three-observable relation in raw form") {
    SUBCASE("spin example saturates and is flagged degenerate") {
        const RelationReport rep = gur_raw(spin_xyz_moments());
        CHECK(rep.margin == doctest::Approx(0.0));
        CHECK(rep.satisfied);
        CHECK(rep.saturated);
        CHECK(rep.degenerate); // sigma_z vanishes on |0>
    }
    SUBCASE("random instances satisfy it") {
        for (std::uint64_t k = 0; k < 500; ++k) {
            const support::RandomInstance ri = support::random_instance(7006, k, 3);
            const MomentSet m = moments_from_state(ri.obs, ri.psi);
            CHECK(gur_raw(m).satisfied);
        }
    }
    SUBCASE("three observables required") {
        CHECK_THROWS_AS(gur_raw(spin_xy_moments()), PreconditionError);
    }
}

TEST_CASE("normalized form at pinned points") {
    SUBCASE("equal correlations 1/2 at cos Sigma = -1 sit exactly on the boundary") {
        const RelationReport rep = gur_normalized({0.5, 0.5, 0.5, -1.0});
        CHECK(rep.margin == 0.0); // 1 - 2/8 - 3/4, exact in binary
        CHECK(rep.satisfied);
        CHECK(rep.saturated);
    }
    SUBCASE("the (0.9, 0.3, 0.9) box point is violated even at cos Sigma = 1") {
        const RelationReport rep = gur_normalized({0.9, 0.3, 0.9, 1.0});
        CHECK(rep.margin == doctest::Approx(-0.224).epsilon(1e-12));
        CHECK_FALSE(rep.satisfied);
    }
    SUBCASE("uncorrelated point has margin 1") {
        const RelationReport rep = gur_normalized({0.0, 0.0, 0.0, 1.0});
        CHECK(rep.margin == 1.0);
        CHECK(rep.satisfied);
    }
    SUBCASE("inputs are range-checked") {
        CHECK_THROWS_AS(gur_normalized({1.5, 0.0, 0.0, 1.0}), PreconditionError);
        CHECK_THROWS_AS(gur_normalized({-0.1, 0.0, 0.0, 1.0}), PreconditionError);
        CHECK_THROWS_AS(gur_normalized({0.5, 0.5, 0.5, 2.0}), PreconditionError);
    }
}

TEST_CASE("normalized form from moments matches the raw margin after rescaling") {
    int used = 0;
    for (std::uint64_t k = 0; used < 300; ++k) {
        REQUIRE(k < 5000); // degenerate draws are rare; this must terminate
        const support::RandomInstance ri = support::random_instance(7007, k, 3);
        const MomentSet m = moments_from_state(ri.obs, ri.psi);
        const NormalizedCorrelations nc = normalized_correlations(m);
        if (nc.any_degenerate()) continue;
        ++used;
        const RelationReport raw = gur_raw(m);
        const RelationReport norm = gur_normalized(m);
        const double denom = m.sigma2[0] * m.sigma2[1] * m.sigma2[2];
        CHECK(std::abs(norm.margin - raw.margin / denom) <= 1e-10);
        CHECK(norm.satisfied);
    }
}

TEST_CASE("normalized form refuses degenerate moment sets") {
    CHECK_THROWS_WITH_AS(gur_normalized(spin_xyz_moments()),
                         doctest::Contains("gur_raw"), PreconditionError);
    CHECK_THROWS_AS(rho_sigma_point(normalized_correlations(spin_xyz_moments())),
                    PreconditionError);
    CHECK_THROWS_AS(rho_sigma_point(normalized_correlations(spin_xy_moments())),
                    PreconditionError);
}

TEST_CASE("weakened form") {
    SUBCASE("fully correlated point sits exactly on the boundary") {
        const RelationReport rep = gur_weakened(1.0, 1.0, 1.0);
        CHECK(rep.margin == 0.0);
        CHECK(rep.saturated);
    }
    SUBCASE("two large correlations with a vanishing third violate it") {
        const RelationReport rep = gur_weakened(0.9, 0.9, 0.0);
        CHECK(rep.margin == doctest::Approx(-0.62));
        CHECK_FALSE(rep.satisfied);
    }
    SUBCASE("never below the normalized margin") {
        Rng rng(20260819);
        for (int k = 0; k < 2000; ++k) {
            const RhoSigmaPoint p{rng.uniform(), rng.uniform(), rng.uniform(),
                                  2.0 * rng.uniform() - 1.0};
            const RelationReport w = gur_weakened(p.rho12, p.rho23, p.rho31);
            const RelationReport n = gur_normalized(p);
            CHECK(w.margin >= n.margin);
            CHECK(w.rhs == n.rhs);
        }
    }
}

TEST_CASE("forbidden box membership") {
    const double lo = std::sqrt(3.0) / 2.0;
    CHECK(forbidden_region_check(0.9, 0.3, 0.9));  // 12 and 31 large
    CHECK(forbidden_region_check(0.9, 0.9, 0.3));  // 12 and 23 large
    CHECK(forbidden_region_check(0.3, 0.9, 0.9));  // 23 and 31 large
    CHECK(forbidden_region_check(1.0, 0.0, 1.0));  // corner included
    CHECK(forbidden_region_check(0.95, 0.499, 0.9));
    CHECK_FALSE(forbidden_region_check(0.4, 0.4, 0.4));
    CHECK_FALSE(forbidden_region_check(lo, 0.3, 0.9));   // lower edge is excluded
    CHECK_FALSE(forbidden_region_check(0.9, 0.5, 0.9));  // small side must stay < 1/2
    CHECK_FALSE(forbidden_region_check(0.9, 0.51, 0.9));
    CHECK_FALSE(forbidden_region_check(0.9, 0.3, 0.3));  // only one large coordinate
    CHECK_FALSE(forbidden_region_check(1.0, 1.0, 1.0));  // third is not small

    SUBCASE("membership implies a weakened-form violation") {
        Rng rng(20260820);
        for (int k = 0; k < 3000; ++k) {
            const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
            if (forbidden_region_check(a, b, c))
                CHECK_FALSE(gur_weakened(a, b, c).satisfied);
        }
    }
}

TEST_CASE("orthogonal special case") {
    SUBCASE("a right triangle of correlations saturates") {
        const RelationReport rep = orthogonal_special(0.8, 0.6);
        CHECK(rep.margin == doctest::Approx(0.0));
        CHECK(rep.saturated);
    }
    SUBCASE("violated outside the disc") {
        CHECK_FALSE(orthogonal_special(0.9, 0.9).satisfied);
    }
    SUBCASE("agrees with the normalized form at rho23 = 0") {
        Rng rng(20260821);
        for (int k = 0; k < 500; ++k) {
            const double r12 = rng.uniform(), r31 = rng.uniform();
            const RelationReport o = orthogonal_special(r12, r31);
            const RelationReport n = gur_normalized({r12, 0.0, r31, 1.0});
            CHECK(support::close(o.margin, n.margin, 1e-15));
        }
    }
}

TEST_CASE("n-observable moment-matrix form") {
    SUBCASE("determinant equals the raw three-observable margin") {
        for (std::uint64_t k = 0; k < 300; ++k) {
            const support::RandomInstance ri = support::random_instance(7008, k, 3);
            const MomentSet m = moments_from_state(ri.obs, ri.psi);
            const GurNResult res = gur_n(m);
            CHECK(res.report.satisfied);
            CHECK(res.verdict.is_psd);
            CHECK(res.report.margin == res.verdict.min_eigenvalue);
            CHECK(support::close(res.det, gur_raw(m).margin, 1e-9));
        }
    }
    SUBCASE("four and five observables still give a positive matrix") {
        for (std::uint64_t k = 0; k < 100; ++k) {
            const int n = 4 + static_cast<int>(k % 2);
            const support::RandomInstance ri =
                support::random_instance(7009, k, n, 3, 8);
            const GurNResult res = gur_n(moments_from_state(ri.obs, ri.psi));
            CHECK(res.report.satisfied);
            REQUIRE(res.verdict.worst_minor.has_value()); // exhaustive for n <= 8
            CHECK(*res.verdict.worst_minor >= -res.report.tol);
        }
    }
    SUBCASE("a fabricated indefinite moment matrix is rejected") {
        MomentSet m;
        m.sigma2 = RealVec::Ones(2);
        m.means = RealVec::Zero(2);
        m.corr = Mat(2, 2);
        m.corr << Complex(1, 0), Complex(2, 0),
                  Complex(2, 0), Complex(1, 0);
        const GurNResult res = gur_n(m);
        CHECK_FALSE(res.report.satisfied);
        CHECK(res.report.margin == doctest::Approx(-1.0));
        CHECK(res.det == doctest::Approx(-3.0));
        REQUIRE(res.verdict.worst_minor.has_value());
        CHECK(*res.verdict.worst_minor == doctest::Approx(-3.0));
    }
    SUBCASE("at least two observables required") {
        MomentSet m;
        m.sigma2 = RealVec::Ones(1);
        m.means = RealVec::Zero(1);
        m.corr = Mat::Identity(1, 1);
        CHECK_THROWS_AS(gur_n(m), PreconditionError);
    }
}

TEST_CASE("report conventions") {
    // satisfied is exactly the one-sided test against the effective tolerance
    for (std::uint64_t k = 0; k < 200; ++k) {
        const support::RandomInstance ri = support::random_instance(7010, k, 3);
        const MomentSet m = moments_from_state(ri.obs, ri.psi);
        const RelationReport rep = gur_raw(m);
        CHECK(rep.satisfied == (rep.margin >= -rep.tol));
        CHECK(rep.margin == rep.lhs - rep.rhs);
        CHECK(rep.tol > 0.0);
        CHECK(rep.saturated == (std::abs(rep.margin) <= rep.sat_tol));
    }
    // a loose saturation tolerance marks near-boundary points
    const RelationReport tight = gur_normalized({0.5, 0.5, 0.500001, -1.0});
    CHECK_FALSE(tight.saturated);
    const RelationReport loose =
        gur_normalized({0.5, 0.5, 0.500001, -1.0}, kDefaultTol, 1e-3);
    CHECK(loose.saturated);
}
