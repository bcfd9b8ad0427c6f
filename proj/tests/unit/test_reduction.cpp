#include <doctest.h>

#include <numbers>
#include <random>

#include "lagtorus/errors.hpp"
#include "lagtorus/reduction.hpp"
#include "oracles.hpp"

using namespace lagtorus;
using namespace lagtorus::reduction;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);
}

TEST_CASE("reduction maps") {
    const Vec4 p = from_complex({1.0, 2.0}, {-0.5, 0.3});
    CHECK(h(p) == doctest::Approx(0.5 * (5.0 - 0.34)));
    CHECK(std::abs(l(p) - Complex(1.0, 2.0) * Complex(-0.5, 0.3)) < 1e-15);

    // l is quadratic, so the central difference is exact.
    const Vec4 X(0.3, -0.1, 0.8, 0.2);
    const double t = 1e-3;
    const Complex fd = (l(p + t * X) - l(p - t * X)) / (2.0 * t);
    CHECK(std::abs(dl(p, X) - fd) < 1e-12);

    const Complex w(0.6, -1.3);
    CHECK(std::abs(psi(w) - std::abs(w) * w) < 1e-15);
    CHECK(std::abs(psi_inverse(psi(w)) - w) < 1e-15);
    CHECK(std::abs(dpsi(w, X[0] + I * X[1]) - (psi(w + 1e-6 * Complex(0.3, -0.1)) - psi(w - 1e-6 * Complex(0.3, -0.1))) / 2e-6) < 1e-8);
    CHECK_THROWS_AS(psi_inverse(0.0), DomainError);

    const Complex u(0.4, 0.9);
    CHECK(std::abs(phi_half(u) - 0.5 * u * u) < 1e-15);
    CHECK(std::abs(phi_half_inverse(phi_half(u)) - u) < 1e-15);
    CHECK(std::abs(phi_half_inverse(phi_half(Complex(-2.0, 0.01))) - Complex(-2.0, 0.01)) < 1e-14);
    CHECK_THROWS_AS(phi_half(Complex(1.0, -0.1)), DomainError);
    CHECK_THROWS_AS(phi_half_inverse(Complex(2.0, 0.0)), DomainError);

    CHECK(omega_c(1.0, I) == doctest::Approx(1.0));
    CHECK(omega_weighted(Complex(0.0, 2.0), 1.0, I) == doctest::Approx(0.25));
}

TEST_CASE("orbit direction is the kernel of the reduction") {
    const Vec4 p = from_complex(1.0, 1.0);
    const Vec4 orbit = from_complex(I, -I);
    CHECK(std::abs(dl(p, orbit)) == 0.0);
    const LevelTangents T = level_tangents(1.0, 0.0, 0.0);
    for (const Vec4& Y : {T.d_r, T.d_theta, T.d_eta, Vec4(T.d_r + 0.3 * T.d_eta)})
        CHECK(std::abs(omega_c2(orbit, Y)) < 1e-15);
}

TEST_CASE("level tangents are tangent to Z0") {
    const double r = 1.3, th = 0.4, et = 2.2;
    const LevelTangents T = level_tangents(r, th, et);
    auto along = [&](int which) {
        return [=](double s) {
            return which == 0 ? level_point(s, th, et) : which == 1 ? level_point(r, s, et) : level_point(r, th, s);
        };
    };
    CHECK((T.d_r - oracle::d1(along(0), r)).norm() < 1e-10);
    CHECK((T.d_theta - oracle::d1(along(1), th)).norm() < 1e-10);
    CHECK((T.d_eta - oracle::d1(along(2), et)).norm() < 1e-10);
    CHECK(h(level_point(r, th, et)) == doctest::Approx(0.0));
}

TEST_CASE("pullback identities") {
    const PullbackReport rep = verify_pullbacks(100, 7);
    CHECK(rep.n_trials == 100);
    CHECK(rep.l_residual < 1e-10);
    CHECK(rep.psi_residual < 1e-10);
    CHECK(rep.phi_residual < 1e-10);
    CHECK(rep.psi_round_trip < 1e-12);
    CHECK(rep.phi_round_trip < 1e-12);
    CHECK(rep.orbit_dl < 1e-12);
    CHECK(rep.orbit_omega < 1e-12);
    CHECK(rep.level_h < 1e-12);

    const PullbackReport again = verify_pullbacks(100, 7);
    CHECK(again.l_residual == rep.l_residual);

    // Independent check of the l pullback: omega_C2 on Z0 from polar coordinates.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double r = 1.0 + 0.5 * U(rng), th = 3.0 * U(rng), et = 3.0 * U(rng);
        const double a1 = U(rng), b1 = U(rng), c1 = U(rng), a2 = U(rng), b2 = U(rng), c2 = U(rng);
        const LevelTangents T = level_tangents(r, th, et);
        const Vec4 X = a1 * T.d_r + b1 * T.d_theta + c1 * T.d_eta;
        const Vec4 Y = a2 * T.d_r + b2 * T.d_theta + c2 * T.d_eta;
        // omega(d_r, d_theta) = omega(d_r, d_eta) = r, omega(d_theta, d_eta) = 0
        const double expected = r * (a1 * b2 - b1 * a2) + r * (a1 * c2 - c1 * a2);
        CHECK(omega_c2(X, Y) == doctest::Approx(expected).epsilon(1e-13));
        const Vec4 p = level_point(r, th, et);
        CHECK(omega_weighted(l(p), dl(p, X), dl(p, Y)) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("reduced curves") {
    const CurveSpec c = origin_circle(1.7);
    const CurveSpec red = reduced_curve(c);
    CHECK(red.k == 2);
    CHECK(winding_number(red) == 2);
    CHECK(red.rho(0.4) == doctest::Approx(1.7 / std::numbers::sqrt2));

    const CurveSpec chek = reduced_curve(offset_circle({2.0, 0.0}, 1.0));
    CHECK(winding_number(chek) == 0);
    CHECK(std::abs(winding_integral(chek)) < 1e-12);

    for (std::uint64_t seed = 1; seed < 6; ++seed) {
        const CurveSpec r = random_star_curve(seed);
        const CurveSpec rr = reduced_curve(r);
        CHECK(winding_number(rr) == 2 * winding_number(r));
        CHECK(lift_identity_residual(r) < 1e-12);
        for (double b : {0.3, 4.0}) {
            const Complex g = r.point(b);
            CHECK(std::abs(rr.point(b) - g * g / (std::numbers::sqrt2 * std::abs(g))) < 1e-13);
        }
    }
}

TEST_CASE("level set") {
    CHECK(level_set_check(origin_circle(1.0)) < 1e-15);
    CHECK(level_set_check(offset_circle({2.0, 0.0}, 1.0)) < 1e-12);
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(level_set_check(random_star_curve(seed)) < 1e-12);
}

TEST_CASE("double points") {
    SUBCASE("Chekanov circle: none") {
        const DoublePointResult r = find_double_points(offset_circle({2.0, 0.0}, 1.0));
        CHECK_FALSE(r.centrally_symmetric);
        CHECK(r.points.empty());
    }
    SUBCASE("origin circle: centrally symmetric 2:1 cover") {
        const DoublePointResult r = find_double_points(origin_circle(1.0));
        CHECK(r.centrally_symmetric);
        CHECK(r.points.empty());
        CHECK(r.symmetry_shift == doctest::Approx(kPi));
        CHECK(r.cover_residual < 1e-12);
        CHECK(cover_residual(origin_circle(2.0), kPi) < 1e-12);
        CHECK(cover_residual(origin_circle(2.0), 0.5) > 0.1);
    }
    SUBCASE("circle centred at 1/2: two crossings at +-i sqrt3/2") {
        const CurveSpec c = offset_circle({0.5, 0.0}, 1.0);
        const DoublePointResult r = find_double_points(c);
        CHECK_FALSE(r.centrally_symmetric);
        REQUIRE(r.points.size() == 2);
        const double h = std::sqrt(3.0) / 2.0;
        CHECK(std::abs(r.points[0].planar_point - Complex(0.0, h)) < 1e-9);
        CHECK(std::abs(r.points[1].planar_point - Complex(0.0, -h)) < 1e-9);
        for (const DoublePoint& p : r.points) {
            CHECK(p.kind == DoublePointKind::Cross);
            CHECK(p.residual < 1e-12);
            CHECK(std::abs(c.point(p.beta1) + c.point(p.beta2)) < 1e-12);
            CHECK(p.tangent_rank == 3);
            // tangent angle difference of the two circles is 2 pi / 3
            CHECK(p.tangent_cross == doctest::Approx(std::sin(2.0 * kPi / 3.0)).epsilon(1e-9));
            const TangentIdentityResidual t = tangent_identities(c, p);
            CHECK(t.alpha_identity < 1e-12);
            CHECK(t.beta_identity < 1e-12);
            CHECK(t.point_identity < 1e-12);
            CHECK((p.ambient_point - immersion_point(c, kPi, p.beta2)).norm() < 1e-12);
        }
        CHECK(r.points[0].beta1 == doctest::Approx(r.points[1].beta2));
    }
    SUBCASE("star-shaped curve: crossings at +-i") {
        const CurveSpec c = radial_cosine(0.2);
        const DoublePointResult r = find_double_points(c);
        CHECK_FALSE(r.centrally_symmetric);
        REQUIRE(r.points.size() == 2);
        CHECK(std::abs(r.points[0].planar_point - I) < 1e-9);
        CHECK(std::abs(r.points[1].planar_point + I) < 1e-9);
        CHECK(r.points[0].beta1 == doctest::Approx(kPi / 2.0));
        CHECK(r.points[0].beta2 == doctest::Approx(1.5 * kPi));
        for (const DoublePoint& p : r.points) {
            CHECK(p.kind == DoublePointKind::Cross);
            CHECK(p.tangent_rank == 3);
        }
    }
    SUBCASE("near contact is not a double point") {
        const CurveSpec c = offset_circle({1.05, 0.0}, 1.0);
        CHECK(find_double_points(c).points.empty());
    }
}
