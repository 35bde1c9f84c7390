#include "doctest.h"

#include "gurlab/hilbert.hpp"
#include "gurlab/pauli.hpp"

#include "support.hpp"

using namespace gurlab;

namespace {

Vec cvec(std::initializer_list<Complex> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const Complex& x : xs) v[i++] = x;
    return v;
}

} // namespace

TEST_CASE("inner product conjugates the first argument") {
    const Vec a = cvec({Complex(1, 0), Complex(0, 1)});
    const Vec b = cvec({Complex(0, 1), Complex(0, 0)});
    const Complex ip = inner_product(a, b);
    CHECK(ip.real() == doctest::Approx(0.0));
    CHECK(ip.imag() == doctest::Approx(1.0)); // conj(1)*i + conj(i)*0 = i

    // (a, b) = conj((b, a))
    const Complex rev = inner_product(b, a);
    CHECK(rev.real() == doctest::Approx(ip.real()));
    CHECK(rev.imag() == doctest::Approx(-ip.imag()));

    CHECK(inner_product(a, a).real() == doctest::Approx(2.0));
    CHECK(inner_product(a, a).imag() == doctest::Approx(0.0));

    CHECK_THROWS_AS(inner_product(a, cvec({Complex(1, 0)})), DimensionError);
    CHECK_THROWS_AS(inner_product(Vec(), Vec()), DimensionError);
}

TEST_CASE("gram matrix is Hermitian with real nonnegative diagonal") {
    Rng rng(101);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 4);
        const int dim = 2 + static_cast<int>(rng.uniform() * 6);
        VectorSet vs;
        for (int k = 0; k < n; ++k) vs.push_back(rng.gaussian_vector(dim));
        const Mat g = gram_matrix(vs);
        REQUIRE(g.rows() == n);
        CHECK(is_hermitian(g, 1e-12));
        for (int i = 0; i < n; ++i) {
            CHECK(g(i, i).imag() == 0.0);
            CHECK(g(i, i).real() >= 0.0);
            for (int j = 0; j < n; ++j)
                CHECK(support::close(g(i, j),
                                     vs[static_cast<std::size_t>(i)].dot(
                                         vs[static_cast<std::size_t>(j)]),
                                     1e-12));
        }
        // Gram matrices are positive semidefinite by construction.
        const PsdVerdict v = psd_check(g);
        CHECK(v.is_psd);
    }

    SUBCASE("orthonormal basis gives the identity") {
        VectorSet basis = {cvec({Complex(1, 0), Complex(0, 0)}),
                           cvec({Complex(0, 0), Complex(1, 0)})};
        const Mat g = gram_matrix(basis);
        CHECK(max_abs(g - Mat::Identity(2, 2)) == 0.0);
    }

    CHECK_THROWS_AS(gram_matrix({}), PreconditionError);
    CHECK_THROWS_AS(gram_matrix({cvec({Complex(1, 0)}),
                                 cvec({Complex(1, 0), Complex(0, 0)})}),
                    DimensionError);
}

TEST_CASE("quadratic form of a Gram matrix is nonnegative") {
    SUBCASE("hand value") {
        Mat m(2, 2);
        m << Complex(1, 0), Complex(0.9, 0), Complex(0.9, 0), Complex(1, 0);
        const Vec mu = cvec({Complex(1, 0), Complex(-1, 0)});
        CHECK(quadratic_form(m, mu) == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("positivity over random families") {
        Rng rng(202);
        for (int rep = 0; rep < 200; ++rep) {
            const int n = 2 + static_cast<int>(rng.uniform() * 4);
            const int dim = 2 + static_cast<int>(rng.uniform() * 6);
            VectorSet vs;
            for (int k = 0; k < n; ++k) vs.push_back(rng.gaussian_vector(dim));
            const Mat g = gram_matrix(vs);
            const Vec mu = rng.gaussian_vector(n);
            CHECK(quadratic_form(g, mu) >= -1e-9 * std::max(1.0, mu.squaredNorm() * max_abs(g)));
        }
    }
    SUBCASE("errors") {
        Mat m = Mat::Identity(2, 2);
        CHECK_THROWS_AS(quadratic_form(m, cvec({Complex(1, 0)})), DimensionError);
        Mat bad(2, 2);
        bad << Complex(0, 0), Complex(1, 0), Complex(5, 0), Complex(0, 0);
        // Strongly non-Hermitian input makes the form complex.
        CHECK_THROWS_AS(quadratic_form(bad, cvec({Complex(1, 0), Complex(0, 1)})),
                        NumericalError);
    }
}

TEST_CASE("principal minors on arbitrary index subsets") {
    Mat m(2, 2);
    m << Complex(1, 0), Complex(0.9, 0), Complex(0.9, 0), Complex(1, 0);
    CHECK(principal_minor(m, {0, 1}) == doctest::Approx(0.19).epsilon(1e-12));
    CHECK(principal_minor(m, {0}) == doctest::Approx(1.0));
    CHECK(principal_minor(m, {1, 0}) == doctest::Approx(0.19).epsilon(1e-12));

    SUBCASE("non-leading subsets and the cofactor oracle") {
        Rng rng(303);
        for (int rep = 0; rep < 100; ++rep) {
            VectorSet vs;
            for (int k = 0; k < 3; ++k) vs.push_back(rng.gaussian_vector(4));
            const Mat g = gram_matrix(vs);
            const double full = principal_minor(g, {0, 1, 2});
            const Complex oracle = support::det3_cofactor(g);
            CHECK(support::close(full, oracle.real(), 1e-10));
            // trailing 2x2 block, skipping index 0
            Mat sub(2, 2);
            sub << g(1, 1), g(1, 2), g(2, 1), g(2, 2);
            CHECK(support::close(principal_minor(g, {1, 2}),
                                 support::det2_cofactor(sub).real(), 1e-10));
        }
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(principal_minor(m, {}), PreconditionError);
        CHECK_THROWS_AS(principal_minor(m, {0, 0}), PreconditionError);
        CHECK_THROWS_AS(principal_minor(m, {2}), PreconditionError);
        CHECK_THROWS_AS(principal_minor(m, {-1}), PreconditionError);
        CHECK_THROWS_AS(principal_minor(Mat::Zero(2, 3), {0}), DimensionError);
    }
}

TEST_CASE("psd verdicts: eigenvalues and exhaustive minors agree") {
    SUBCASE("indefinite symmetric example") {
        Mat m(2, 2);
        m << Complex(1, 0), Complex(2, 0), Complex(2, 0), Complex(1, 0);
        const PsdVerdict v = psd_check(m);
        CHECK_FALSE(v.is_psd);
        CHECK(v.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
        REQUIRE(v.worst_minor.has_value());
        CHECK(*v.worst_minor == doctest::Approx(-3.0).epsilon(1e-12));
    }
    SUBCASE("identity") {
        const PsdVerdict v = psd_check(Mat::Identity(3, 3));
        CHECK(v.is_psd);
        CHECK(v.min_eigenvalue == doctest::Approx(1.0));
        REQUIRE(v.worst_minor.has_value());
        CHECK(*v.worst_minor == doctest::Approx(1.0));
    }
    SUBCASE("leading minors alone would miss this one") {
        // diag(0, -1): both leading minors vanish, yet the matrix is not PSD.
        Mat m = Mat::Zero(2, 2);
        m(1, 1) = Complex(-1, 0);
        const PsdVerdict v = psd_check(m);
        CHECK_FALSE(v.is_psd);
        CHECK(v.min_eigenvalue == doctest::Approx(-1.0));
        REQUIRE(v.worst_minor.has_value());
        CHECK(*v.worst_minor == doctest::Approx(-1.0)); // the {1} subset catches it
    }
    SUBCASE("verdict consistency on random Hermitian matrices") {
        Rng rng(404);
        for (int rep = 0; rep < 200; ++rep) {
            const int n = 2 + static_cast<int>(rng.uniform() * 5);
            const Mat g = rng.gaussian_matrix(n, n);
            const Mat h = 0.5 * (g + g.adjoint());
            const PsdVerdict v = psd_check(h);
            REQUIRE(v.worst_minor.has_value());
            if (v.min_eigenvalue > 1e-6) CHECK(*v.worst_minor > -1e-9);
            if (v.min_eigenvalue < -1e-6) CHECK(*v.worst_minor < 0.0);
        }
    }
    SUBCASE("errors") {
        Mat bad(2, 2);
        bad << Complex(0, 0), Complex(1, 0), Complex(5, 0), Complex(0, 0);
        CHECK_THROWS_AS(psd_check(bad), NumericalError);
        CHECK_THROWS_AS(psd_check(Mat::Zero(2, 3)), DimensionError);
    }
}

TEST_CASE("linear dependence detection") {
    Rng rng(505);
    const Vec v1 = rng.gaussian_vector(4);
    const Vec v2 = rng.gaussian_vector(4);

    CHECK_FALSE(linear_dependence_check({v1, v2}));
    CHECK(linear_dependence_check({v1, Vec(2.0 * v1)}));
    CHECK(linear_dependence_check({v1, v2, Vec(v1 - Complex(0, 3) * v2)}));
    CHECK(linear_dependence_check({Vec(Vec::Zero(4))}));
    CHECK_FALSE(linear_dependence_check({v1}));
    CHECK_FALSE(linear_dependence_check({}));

    SUBCASE("more vectors than dimensions is always dependent") {
        VectorSet vs;
        for (int k = 0; k < 3; ++k) vs.push_back(rng.gaussian_vector(2));
        CHECK(linear_dependence_check(vs));
    }
    SUBCASE("random independent families stay independent") {
        for (int rep = 0; rep < 100; ++rep) {
            const int dim = 3 + static_cast<int>(rng.uniform() * 5);
            VectorSet vs;
            for (int k = 0; k < 3; ++k) vs.push_back(rng.gaussian_vector(dim));
            CHECK_FALSE(linear_dependence_check(vs));
        }
    }
    CHECK_THROWS_AS(linear_dependence_check({v1, rng.gaussian_vector(3)}),
                    DimensionError);
}

TEST_CASE("observable and density validation") {
    CHECK_NOTHROW(Observable(pauli::x()));
    CHECK_NOTHROW(Observable(pauli::y()));

    Mat skew(2, 2);
    skew << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
    CHECK_THROWS_AS(Observable{skew}, PreconditionError);
    CHECK_THROWS_AS(Observable(Mat::Zero(2, 3)), PreconditionError);

    SUBCASE("density matrices") {
        CHECK_NOTHROW(DensityMatrix(0.5 * Mat::Identity(2, 2)));
        CHECK_THROWS_AS(DensityMatrix(Mat::Identity(2, 2)), PreconditionError); // trace 2
        Mat neg(2, 2);
        neg << Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0);
        CHECK_THROWS_AS(DensityMatrix{neg}, PreconditionError); // negative eigenvalue
        CHECK_THROWS_AS(DensityMatrix{skew}, PreconditionError);

        // rank-one projector onto a random state
        Rng rng(606);
        const Vec psi = haar_state(rng, 5);
        CHECK_NOTHROW(DensityMatrix(psi * psi.adjoint()));
    }
}

TEST_CASE("normalization helpers") {
    Rng rng(707);
    const Vec v = rng.gaussian_vector(6);
    const Vec u = normalized(v);
    CHECK(std::abs(u.norm() - 1.0) <= 1e-12);
    CHECK_NOTHROW(require_normalized(u));
    CHECK_THROWS_AS(require_normalized(v.norm() > 2.0 ? v : Vec(3.0 * v)),
                    PreconditionError);
    CHECK_THROWS_AS(normalized(Vec(Vec::Zero(3))), PreconditionError);
    CHECK_THROWS_AS(require_normalized(Vec()), DimensionError);
}

TEST_CASE("kron dimensions and values") {
    const Mat k = kron(pauli::z(), pauli::x());
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 1) == Complex(1, 0));
    CHECK(k(2, 3) == Complex(-1, 0));
    CHECK(k(0, 0) == Complex(0, 0));
    CHECK(is_hermitian(k));
}
