#include <doctest.h>

#include "support/oracles.hpp"
#include "torustrace/lattice.hpp"

#include <cmath>
#include <numbers>

using namespace torustrace::lattice;
using torustrace::resource_error;
using std::numbers::pi;

TEST_CASE("square torus is unit area and self-reduced") {
    const auto s = make_torus(0.0, 1.0);
    CHECK(std::abs(s.coarea() - 1.0) < 1e-12);
    CHECK(s.reduced_re() == 0.0);
    CHECK(s.reduced_im() == 1.0);
}

TEST_CASE("rectangular torus from the paper parametrization") {
    // a = pi gives the square torus (sides 1 x 1)
    const auto sq = make_rect_torus(pi);
    CHECK(sq.tau_im() == doctest::Approx(1.0).epsilon(1e-15));
    const Vec2 u = sq.basis_u();
    const Vec2 v = sq.basis_v();
    CHECK(std::hypot(u.x, u.y) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::hypot(v.x, v.y) == doctest::Approx(1.0).epsilon(1e-14));

    // a = 10: side lengths sqrt(a/pi) x sqrt(pi/a), checked by direct area computation
    const auto r10 = make_rect_torus(10.0);
    const Vec2 u10 = r10.basis_u();
    const Vec2 v10 = r10.basis_v();
    const double len_u = std::hypot(u10.x, u10.y);
    const double len_v = std::hypot(v10.x, v10.y);
    CHECK(len_u == doctest::Approx(std::sqrt(pi / 10.0)).epsilon(1e-13));
    CHECK(len_v == doctest::Approx(std::sqrt(10.0 / pi)).epsilon(1e-13));
    CHECK(len_u * len_v == doctest::Approx(1.0).epsilon(1e-13)); // rectangle area
    CHECK(std::abs(r10.coarea() - 1.0) < 1e-12);

    // a = 40: tau = i pi / 40 by definition
    const auto r40 = make_rect_torus(40.0);
    CHECK(r40.tau_re() == 0.0);
    CHECK(r40.tau_im() == doctest::Approx(pi / 40.0).epsilon(1e-15));

    // tau = (0, pi/10) describes the same torus as make_rect_torus(10)
    const auto t10 = make_torus(0.0, pi / 10.0);
    CHECK(t10.reduced_re() == doctest::Approx(r10.reduced_re()).epsilon(1e-14));
    CHECK(t10.reduced_im() == doctest::Approx(r10.reduced_im()).epsilon(1e-14));
    const Vec2 ub = t10.basis_u();
    CHECK(ub.x == doctest::Approx(u10.x).epsilon(1e-14));

    CHECK_THROWS_AS(make_rect_torus(0.0), std::domain_error);
    CHECK_THROWS_AS(make_rect_torus(-2.0), std::domain_error);
    CHECK_THROWS_AS(make_torus(0.0, -1.0), std::domain_error);
}

TEST_CASE("square torus lowest eigenvalue is 4 pi^2 with multiplicity 4") {
    const auto s = make_torus(0.0, 1.0);
    const auto ev = eigenvalues(s, 200.0);
    REQUIRE(ev.count() >= 5);
    for (int i = 0; i < 4; ++i)
        CHECK(ev.values[static_cast<std::size_t>(i)] == doctest::Approx(4.0 * pi * pi).epsilon(1e-12));
    CHECK(ev.values[4] > 4.0 * pi * pi * 1.5);

    // brute-force enumeration over |m|,|n| <= 3 gives the same multiset
    const auto brute = oracles::brute_force_eigenvalues(s, 200.0, 3);
    REQUIRE(brute.size() == ev.count());
    for (std::size_t i = 0; i < brute.size(); ++i)
        CHECK(brute[i] == ev.values[i]);
}

TEST_CASE("rectangle a=10 lowest eigenvalue is 4 pi^3 / 10") {
    const auto s = make_rect_torus(10.0);
    CHECK(lambda1(s) == doctest::Approx(4.0 * pi * pi * pi / 10.0).epsilon(1e-12));
    CHECK(lambda1(s) == doctest::Approx(12.4025).epsilon(1e-4));
    const auto ev = eigenvalues(s, 500.0);
    const auto brute = oracles::brute_force_eigenvalues(s, 500.0, 16);
    REQUIRE(brute.size() == ev.count());
    for (std::size_t i = 0; i < brute.size(); ++i)
        CHECK(brute[i] == ev.values[i]);
}

TEST_CASE("zero is never listed as an eigenvalue") {
    for (const auto& s : {make_torus(0.0, 1.0), make_torus(0.5, std::sqrt(3.0) / 2.0),
                          make_rect_torus(7.5)}) {
        const auto ev = eigenvalues(s, 300.0);
        for (double v : ev.values) CHECK(v > 1e-9);
    }
}

TEST_CASE("classification of square, hexagonal, and skinny rectangles") {
    CHECK(classify(make_torus(0.0, 1.0)) == ShapeClass::Fat);               // lambda1 = 4 pi^2 > 8 pi
    CHECK(classify(make_torus(0.5, std::sqrt(3.0) / 2.0)) == ShapeClass::Fat); // hexagonal
    CHECK(classify(make_rect_torus(10.0)) == ShapeClass::Skinny);           // lambda1 ~ 12.40 < 8 pi
}

TEST_CASE("classification threshold at a = pi^2/2") {
    const double a_star = pi * pi / 2.0;
    CHECK(classify(make_rect_torus(a_star * (1.0 + 1e-5))) == ShapeClass::Skinny);
    CHECK(classify(make_rect_torus(a_star * (1.0 - 1e-5))) == ShapeClass::Fat);
    CHECK(classify(make_rect_torus(a_star)) == ShapeClass::Borderline);
    // a slightly above pi but far below the threshold stays fat
    CHECK(classify(make_rect_torus(3.5)) == ShapeClass::Fat);
}

TEST_CASE("Weyl growth on the square torus") {
    const auto s = make_torus(0.0, 1.0);
    const double cutoff = 4000.0;
    const auto ev = eigenvalues(s, cutoff);
    const double expected = cutoff / (4.0 * pi);
    CHECK(std::abs(static_cast<double>(ev.count()) / expected - 1.0) <= 0.1);
}

TEST_CASE("unimodular invariance of the spectrum") {
    const double x = 0.2, y = 1.3;
    const auto base = eigenvalues(make_torus(x, y), 400.0);
    const auto shifted = eigenvalues(make_torus(x + 1.0, y), 400.0);
    const double n = x * x + y * y;
    const auto inverted = eigenvalues(make_torus(-x / n, y / n), 400.0);
    REQUIRE(base.count() == shifted.count());
    REQUIRE(base.count() == inverted.count());
    for (std::size_t i = 0; i < base.count(); ++i) {
        CHECK(std::abs(base.values[i] - shifted.values[i]) < 1e-10);
        CHECK(std::abs(base.values[i] - inverted.values[i]) < 1e-10);
    }
}

TEST_CASE("eigenvalue enumeration respects the count limit") {
    const auto s = make_torus(0.0, 1.0);
    CHECK_THROWS_AS(eigenvalues(s, 1e6, 1000), resource_error);
    CHECK_THROWS_AS(eigenvalues(s, -5.0), std::domain_error);
}

TEST_CASE("reduction matrix maps tau to the reduced modulus") {
    const auto s = make_torus(3.7, 0.21);
    const auto m = s.reduction_matrix();
    const std::complex<double> tau(s.tau_re(), s.tau_im());
    const std::complex<double> mapped =
        (static_cast<double>(m[0]) * tau + static_cast<double>(m[1])) /
        (static_cast<double>(m[2]) * tau + static_cast<double>(m[3]));
    CHECK(mapped.real() == doctest::Approx(s.reduced_re()).epsilon(1e-10));
    CHECK(mapped.imag() == doctest::Approx(s.reduced_im()).epsilon(1e-10));
    CHECK(m[0] * m[3] - m[1] * m[2] == 1);
    CHECK(std::abs(s.reduced_re()) <= 0.5 + 1e-12);
    CHECK(s.reduced_re() * s.reduced_re() + s.reduced_im() * s.reduced_im() >= 1.0 - 1e-12);
}
