#include <doctest.h>

#include <numbers>

#include "lagtorus/dormand_prince.hpp"
#include "lagtorus/errors.hpp"
#include "lagtorus/ode.hpp"
#include "oracles.hpp"

using namespace lagtorus;

namespace {

constexpr double kPi = std::numbers::pi;

/// u(R) on the descending branch, int_R^{R_max} dR / |R'|, with R = 1 + (2/c) cos(theta).
double u_by_quadrature(double R, double c) {
    const double a = 2.0 / c;
    const double theta = std::acos(std::clamp((R - 1.0) / a, -1.0, 1.0));
    return oracle::adaptive_simpson([&](double t) { return 1.0 / (c * (1.0 + a * std::cos(t))); }, 0.0, theta, 1e-14);
}

} // namespace

TEST_CASE("bounds and domain") {
    const OdeBounds b = bounds(2.5);
    CHECK(b.R_min == doctest::Approx(0.2));
    CHECK(b.R_max == doctest::Approx(1.8));
    CHECK_THROWS_AS(bounds(2.0), DomainError);
    CHECK_THROWS_AS(bounds(1.0), DomainError);
    CHECK_THROWS_AS(bounds(std::nan("")), DomainError);
    CHECK_THROWS_AS(closed_form_u(1.9, 2.5), DomainError);
    CHECK_THROWS_AS(closed_form_u(0.1, 2.5), DomainError);
    CHECK_THROWS_AS(period_analysis(2.5, 2), DomainError);
    CHECK_THROWS_AS(period_analysis(2.5, -1), DomainError);
}

TEST_CASE("closed-form u against quadrature") {
    for (double c : {2.1, 2.5, 3.0, 5.0, 20.0}) {
        const OdeBounds b = bounds(c);
        for (int i = 0; i <= 20; ++i) {
            const double R = b.R_min + (b.R_max - b.R_min) * i / 20.0;
            CHECK(std::abs(closed_form_u(R, c) - u_by_quadrature(R, c)) < 1e-10);
            CHECK(closed_form_u_ascending(R, c) ==
                  doctest::Approx(2.0 * period_analysis(c, 0).u1 - closed_form_u(R, c)).epsilon(1e-13));
        }
        CHECK(closed_form_u(b.R_max, c) == doctest::Approx(0.0).scale(1.0));
        CHECK(closed_form_u(b.R_min, c) == doctest::Approx(kPi / std::sqrt(c * c - 4.0)));
    }
    CHECK(closed_form_u(1.0, 2.5) == doctest::Approx(0.429001).epsilon(1e-6));
}

TEST_CASE("period analysis") {
    const PeriodAnalysis p = period_analysis(2.5, 0);
    CHECK(p.u1 == doctest::Approx(2.0943951).epsilon(1e-8));
    CHECK(p.u_star == doctest::Approx(4.18879).epsilon(1e-6));
    CHECK(p.required_u_star == doctest::Approx(2.0 * kPi / 2.5).epsilon(1e-14));
    CHECK(p.closure_gap == doctest::Approx(1.675516).epsilon(1e-6));
    CHECK(period_analysis(2.5, 1).required_u_star == doctest::Approx(2.0 * p.required_u_star));

    double previous = std::numeric_limits<double>::infinity();
    for (double c : {2.01, 2.5, 3.0, 5.0, 10.0, 100.0, 1e4}) {
        const PeriodAnalysis q = period_analysis(c, 0);
        CHECK(q.closure_gap > 0.0);
        CHECK(q.closure_gap < previous);
        CHECK(q.closure_gap == doctest::Approx(2.0 * kPi / std::sqrt(c * c - 4.0) - 2.0 * kPi / c));
        previous = q.closure_gap;
    }
}

TEST_CASE("numeric profile") {
    for (double c : {2.1, 2.5, 3.0, 5.0, 20.0}) {
        const std::size_t n = 400;
        const OdeProfile prof = integrate_profile(c, n);
        const PeriodAnalysis& h = prof.header;
        CHECK(std::abs(prof.numeric_period - h.u_star) < 1e-6);
        CHECK(std::abs(prof.numeric_u1 - h.u1) < 1e-6);
        REQUIRE(prof.samples.size() == n + 1);
        CHECK(prof.samples.front().u == 0.0);
        CHECK(prof.samples.front().R == doctest::Approx(h.R_max));
        CHECK(prof.samples.back().R == doctest::Approx(h.R_max));
        CHECK(prof.samples.back().u == doctest::Approx(prof.numeric_period));
        CHECK(prof.samples.front().f == 0.0);
        for (const auto& s : prof.samples) {
            CHECK(s.R >= h.R_min - 1e-9);
            CHECK(s.R <= h.R_max + 1e-9);
            CHECK(s.rho_candidate == doctest::Approx(1.0 / std::sqrt(s.R)));
            if (s.R - h.R_min > 1e-4 && h.R_max - s.R > 1e-4) {
                const double u = s.u < prof.numeric_u1 ? closed_form_u(s.R, c) : closed_form_u_ascending(s.R, c);
                CHECK(std::abs(u - s.u) < 1e-8);
            }
        }
        // R decreases to the minimum, then increases.
        for (std::size_t i = 1; i < prof.samples.size(); ++i) {
            const bool descending = prof.samples[i].u <= prof.numeric_u1;
            if (descending) CHECK(prof.samples[i].R <= prof.samples[i - 1].R + 1e-15);
            else if (prof.samples[i - 1].u >= prof.numeric_u1) CHECK(prof.samples[i].R >= prof.samples[i - 1].R - 1e-15);
        }
        // int R du over the period is 2 pi / c
        CHECK(prof.I_star == doctest::Approx(2.0 * kPi / c).epsilon(1e-9));
        CHECK(prof.K == doctest::Approx(-0.5 * c));
        CHECK(prof.angular_increment == doctest::Approx(0.5 * c * prof.numeric_period - kPi).epsilon(1e-9));
        CHECK(prof.max_constraint_residual < 1e-10);
    }
    const OdeProfile p = integrate_profile(2.5, 100);
    CHECK(p.angular_closure_defect > 0.1);
    CHECK(p.angular_closure_defect == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-8));

    ProfileOptions k1;
    k1.k = 1;
    const OdeProfile q = integrate_profile(3.0, 100, k1);
    CHECK(q.K == doctest::Approx(0.0));
    CHECK(q.angular_increment == doctest::Approx(1.5 * q.numeric_period));
    CHECK(q.min_df_du == doctest::Approx(1.5));

    CHECK_THROWS_AS(integrate_profile(2.5, 1), DomainError);
    ProfileOptions starved;
    starved.max_steps = 10;
    CHECK_THROWS_AS(integrate_profile(2.5, 100, starved), IntegrationFailure);
}

TEST_CASE("profile satisfies the radial ODE") {
    const double c = 3.0;
    const OdeProfile prof = integrate_profile(c, 2000);
    const OdeBounds b = bounds(c);
    const double du = prof.samples[1].u - prof.samples[0].u;
    for (std::size_t i = 2; i + 2 < prof.samples.size(); i += 37) {
        const double dR = (prof.samples[i - 2].R - 8.0 * prof.samples[i - 1].R + 8.0 * prof.samples[i + 1].R -
                           prof.samples[i + 2].R) /
                          (12.0 * du);
        const double R = prof.samples[i].R;
        CHECK(dR * dR == doctest::Approx(c * c * R * R * (R - b.R_min) * (b.R_max - R)).epsilon(1e-6).scale(1e-6));
    }
}

TEST_CASE("Dormand-Prince step") {
    auto field = [](double, const std::array<double, 1>& y) { return std::array<double, 1>{y[0]}; };
    std::array<double, 1> y{1.0}, next{};
    double t = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double err = dormand_prince_step<1>(field, t, y, 0.1, next, 1e-8, 1e-8);
        CHECK(err <= 1.0);
        y = next;
        t += 0.1;
    }
    CHECK(y[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-7));
    CHECK(next_step_size(1.0, 0.0) == doctest::Approx(5.0));
    CHECK(next_step_size(1.0, 1e6) == doctest::Approx(0.2));
}
