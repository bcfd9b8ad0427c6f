#include "lagtorus/ode.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "lagtorus/dormand_prince.hpp"
#include "lagtorus/errors.hpp"

namespace lagtorus {

namespace {

constexpr double kPi = std::numbers::pi;

void require_c(double c) {
    if (!(c > 2.0) || !std::isfinite(c)) {
        std::ostringstream msg;
        msg << "c must exceed 2 (got " << c << ")";
        throw DomainError(msg.str());
    }
}

double arctan_term(double R, double c) {
    const double delta = 0.5 * c * (R - 1.0);
    const double num = c * delta + 2.0;
    const double den = std::sqrt(c * c - 4.0) * std::sqrt(std::max(0.0, 1.0 - delta * delta));
    return std::atan2(num, den);
}

double checked_R(double R, double c) {
    const OdeBounds b = bounds(c);
    constexpr double slack = 1e-14;
    if (!(R >= b.R_min - slack && R <= b.R_max + slack)) {
        std::ostringstream msg;
        msg << "R=" << R << " outside [" << b.R_min << ", " << b.R_max << "]";
        throw DomainError(msg.str());
    }
    return std::clamp(R, b.R_min, b.R_max);
}

/// The radial oscillator and the turning-point bridge. Near an extremum at
/// distance x = y^2 the travel time int dx / |R'| is smooth in y, so a fixed
/// Gauss rule in the scaled variable t (x' = y^2 t^2) is exact to rounding.
struct Oscillator {
    double c, R_min, R_max, W;

    double slope(double R, int branch) const {
        const double rad = std::max(0.0, (R - R_min) * (R_max - R));
        return branch * c * R * std::sqrt(rad);
    }

    double at(double x, int extremum) const { return extremum > 0 ? R_max - x : R_min + x; }

    double bridge_time(double y, int extremum) const {
        using boost::math::quadrature::gauss;
        return gauss<double, 20>::integrate(
            [&](double t) {
                const double x = y * y * t * t;
                return 2.0 * y / (c * at(x, extremum) * std::sqrt(W - x));
            },
            0.0, 1.0);
    }

    /// int R du across the same half-bridge; R cancels against |R'|.
    double bridge_area(double y) const {
        using boost::math::quadrature::gauss;
        return gauss<double, 20>::integrate([&](double t) { return 2.0 * y / (c * std::sqrt(W - y * y * t * t)); },
                                            0.0, 1.0);
    }

    /// Distance from the extremum after time s on the bridge.
    double bridge_distance(double s, int extremum) const {
        if (s <= 0.0) return 0.0;
        double y = 0.5 * s * c * at(0.0, extremum) * std::sqrt(W);
        for (int it = 0; it < 50; ++it) {
            const double g = bridge_time(y, extremum) - s;
            const double dg = 2.0 / (c * at(y * y, extremum) * std::sqrt(W - y * y));
            const double dy = g / dg;
            y -= dy;
            if (std::abs(dy) <= 1e-17 + 1e-16 * std::abs(y)) break;
        }
        return y * y;
    }
};

struct RawSample {
    double u, R, I;
};

struct PassResult {
    double u1 = 0.0;
    double period = 0.0;
    double I_total = 0.0;
    std::size_t steps = 0;
    std::vector<RawSample> out;
};

PassResult run_pass(const Oscillator& osc, const std::vector<double>& out_times, const ProfileOptions& opt) {
    PassResult res;
    std::size_t next = 0;
    auto emit_until = [&](double limit, auto&& state_at) {
        while (next < out_times.size() && out_times[next] <= limit) {
            const double t = out_times[next++];
            const auto [R, I] = state_at(t);
            res.out.push_back({t, R, I});
        }
    };

    const double x_switch = opt.turning_fraction * osc.W;
    const double y_switch = std::sqrt(x_switch);

    // Leave R_max along the half-bridge.
    double u = osc.bridge_time(y_switch, +1);
    double R = osc.R_max - x_switch;
    double I = osc.bridge_area(y_switch);
    emit_until(u, [&](double t) {
        const double x = osc.bridge_distance(t, +1);
        return std::pair{osc.R_max - x, osc.bridge_area(std::sqrt(x))};
    });

    for (const int branch : {-1, +1}) {
        const int target = branch; // -1: heading to R_min, +1: heading to R_max
        auto distance = [&](double r) { return target < 0 ? r - osc.R_min : osc.R_max - r; };
        auto field = [&](double, const std::array<double, 2>& y) {
            return std::array<double, 2>{osc.slope(y[0], branch), y[0]};
        };

        double h = 1e-3;
        while (distance(R) >= x_switch) {
            if (++res.steps > opt.max_steps) throw IntegrationFailure("step budget exhausted");
            if (h < 1e-15) throw IntegrationFailure("step size underflow near a turning point");

            double h_try = h;
            bool hits_output = false;
            if (next < out_times.size() && u + h_try >= out_times[next]) {
                h_try = out_times[next] - u;
                hits_output = true;
            }
            std::array<double, 2> y_new{};
            const double err = dormand_prince_step<2>(field, u, {R, I}, h_try, y_new, opt.atol, opt.rtol);
            if (err > 1.0) {
                h = next_step_size(h_try, err);
                continue;
            }
            const double d_new = distance(y_new[0]);
            if (y_new[0] < osc.R_min - opt.bound_slack || y_new[0] > osc.R_max + opt.bound_slack) {
                std::ostringstream msg;
                msg << "R=" << y_new[0] << " left [" << osc.R_min << ", " << osc.R_max << "]";
                throw IntegrationFailure(msg.str());
            }
            if (d_new < 0.5 * x_switch) {
                // Overshot the event window; land closer to the turning point first.
                h = 0.5 * h_try;
                continue;
            }
            u += h_try;
            R = y_new[0];
            I = y_new[1];
            if (hits_output) {
                res.out.push_back({out_times[next], R, I});
                ++next;
                h = std::max(h, next_step_size(h_try, err));
            } else {
                h = next_step_size(h_try, err);
            }
        }

        // Event R' = 0: cross the extremum on the symmetric bridge and flip the branch.
        const double y = std::sqrt(distance(R));
        const double T = osc.bridge_time(y, target);
        const double A = osc.bridge_area(y);
        if (target < 0) {
            const double u_turn = u + T;
            const double I_entry = I;
            emit_until(u + 2.0 * T, [&](double t) {
                const double x = osc.bridge_distance(std::abs(t - u_turn), target);
                const double partial = osc.bridge_area(std::sqrt(x));
                return std::pair{osc.R_min + x, t < u_turn ? I_entry + A - partial : I_entry + A + partial};
            });
            res.u1 = u_turn;
            u += 2.0 * T;
            I += 2.0 * A;
        } else {
            res.period = u + T;
            res.I_total = I + A;
            const double I_entry = I;
            emit_until(res.period, [&](double t) {
                const double x = osc.bridge_distance(res.period - t, target);
                return std::pair{osc.R_max - x, I_entry + A - osc.bridge_area(std::sqrt(x))};
            });
        }
    }
    // Output times a rounding error past this pass's period land on R_max.
    while (next < out_times.size()) res.out.push_back({out_times[next++], osc.R_max, res.I_total});
    return res;
}

} // namespace

OdeBounds bounds(double c) {
    require_c(c);
    return {(c - 2.0) / c, (c + 2.0) / c};
}

double closed_form_u(double R, double c) {
    R = checked_R(R, c);
    return (0.5 * kPi - arctan_term(R, c)) / std::sqrt(c * c - 4.0);
}

double closed_form_u_ascending(double R, double c) {
    R = checked_R(R, c);
    return (1.5 * kPi + arctan_term(R, c)) / std::sqrt(c * c - 4.0);
}

PeriodAnalysis period_analysis(double c, int k) {
    require_c(c);
    if (k != 0 && k != 1) throw DomainError("winding k must be 0 or 1 for a simple counterclockwise curve");
    PeriodAnalysis p;
    p.c = c;
    p.k = k;
    const OdeBounds b = bounds(c);
    p.R_min = b.R_min;
    p.R_max = b.R_max;
    const double root = std::sqrt(c * c - 4.0);
    p.u1 = kPi / root;
    p.u_star = 2.0 * kPi / root;
    p.required_u_star = 2.0 * (k + 1) * kPi / c;
    p.closure_gap = p.u_star - p.required_u_star;
    return p;
}

OdeProfile integrate_profile(double c, std::size_t n_steps, const ProfileOptions& opt) {
    OdeProfile prof;
    prof.header = period_analysis(c, opt.k);
    if (n_steps < 2) throw DomainError("integrate_profile needs at least 2 steps");
    const Oscillator osc{c, prof.header.R_min, prof.header.R_max, prof.header.R_max - prof.header.R_min};

    const PassResult probe = run_pass(osc, {}, opt);
    std::vector<double> times(n_steps + 1);
    for (std::size_t j = 0; j <= n_steps; ++j)
        times[j] = probe.period * static_cast<double>(j) / static_cast<double>(n_steps);
    const PassResult pass = run_pass(osc, times, opt);

    prof.numeric_u1 = pass.u1;
    prof.numeric_period = probe.period;
    prof.accepted_steps = pass.steps;
    prof.I_star = pass.I_total;
    // r_underline = I*/u* fixes the scale; with r_underline = 1 the paired
    // normalisation gives I* = u* for the assigned period.
    const double u_assigned = prof.header.required_u_star;
    prof.K = (2.0 * opt.k * kPi - 0.5 * c * u_assigned) / (prof.r_underline * u_assigned);

    prof.samples.reserve(pass.out.size());
    prof.min_df_du = std::numeric_limits<double>::infinity();
    for (const RawSample& s : pass.out) {
        const double R = s.R;
        ProfileSample p;
        p.u = s.u;
        p.R = R;
        p.rho_candidate = 1.0 / std::sqrt(prof.r_underline * R);
        p.f = 0.5 * c * s.u + prof.K * prof.r_underline * s.I;
        prof.samples.push_back(p);

        const double log_rho_d1 = -osc.slope(R, 1) / (2.0 * R);
        const double f_d1 = 0.5 * c + prof.K * prof.r_underline * R;
        prof.max_constraint_residual =
            std::max(prof.max_constraint_residual, std::abs(log_rho_d1 * log_rho_d1 + f_d1 * f_d1 - 1.0));
        prof.min_df_du = std::min(prof.min_df_du, f_d1);
    }

    prof.angular_increment = 0.5 * c * probe.period + prof.K * prof.r_underline * pass.I_total;
    const double two_pi = 2.0 * kPi;
    double m = std::fmod(prof.angular_increment, two_pi);
    if (m < 0.0) m += two_pi;
    prof.angular_closure_defect = std::min(m, two_pi - m);
    return prof;
}

} // namespace lagtorus
