#include "lagtorus/verify.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lagtorus/geometry.hpp"
#include "lagtorus/io.hpp"
#include "lagtorus/ode.hpp"
#include "lagtorus/quadrature.hpp"
#include "lagtorus/reduction.hpp"
#include "lagtorus/stationarity.hpp"

namespace lagtorus {

namespace {

constexpr double kPi = std::numbers::pi;

class Ledger {
public:
    void at_most(std::string name, double value, double threshold) {
        checks_.push_back({std::move(name), value, threshold, true, value <= threshold});
    }
    void at_least(std::string name, double value, double threshold) {
        checks_.push_back({std::move(name), value, threshold, false, value >= threshold});
    }
    std::vector<Check> take() { return std::move(checks_); }

private:
    std::vector<Check> checks_;
};

double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Complex acceleration(const CurveJet& j) {
    return (Complex(j.v_d1, j.w_d1) + j.tau * j.tau) * std::polar(j.rho, j.f_val);
}

void curve_checks(Ledger& L, const std::vector<std::pair<std::string, CurveSpec>>& curves, std::size_t n) {
    double winding = 0.0, total_k = 0.0, u_gap = 0.0, curvature = 0.0, orientation = 0.0;
    for (const auto& [name, c] : curves) {
        check_regularity(c);
        winding = std::max(winding, std::abs(winding_integral(c) - winding_number(c)));
        total_k = std::max(total_k, std::abs(total_curvature(c) - 2.0 * kPi));
        u_gap = std::max(u_gap, relative(u_parameter(c, 2.0 * kPi), u_star(c)));
        if (orientation_check(c) != Orientation::CounterClockwise) orientation += 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const CurveJet jet = eval_jet(c, grid_angle(j, n));
            const Complex d1 = jet.tau * std::polar(jet.rho, jet.f_val);
            const Complex d2 = acceleration(jet);
            const double cartesian = (d1.real() * d2.imag() - d1.imag() * d2.real()) / std::pow(std::abs(d1), 3);
            curvature = std::max(curvature, relative(signed_curvature(jet), cartesian));
        }
    }
    L.at_most("curve.winding_cross_check", winding, 1e-10);
    L.at_most("curve.total_curvature_2pi", total_k, 1e-8);
    L.at_most("curve.u_star_consistency", u_gap, 1e-10);
    L.at_most("curve.clockwise_count", orientation, 0.0);
    L.at_most("curve.cartesian_curvature", curvature, 1e-8);

    const CurveSpec offset = offset_circle({2.0, 0.0}, 1.0);
    double unit_k = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        unit_k = std::max(unit_k, std::abs(signed_curvature(offset, grid_angle(j, n)) - 1.0));
    L.at_most("curve.offset_circle_unit_curvature", unit_k, 1e-10);
}

void geometry_checks(Ledger& L, const std::vector<std::pair<std::string, CurveSpec>>& curves, std::size_t n) {
    double lagrangian = 0.0, normal = 0.0, trace = 0.0, umbilic = 0.0, christ = 0.0, div_id = 0.0;
    for (const auto& [name, c] : curves) {
        for (std::size_t j = 0; j < n; ++j) {
            const double beta = grid_angle(j, n);
            const double alpha = grid_angle((7 * j) % n, n);
            const GeometryFrame fr = geometry_frame(c, alpha, beta);
            const double scale = fr.e1.norm() * fr.e2.norm();
            lagrangian = std::max({lagrangian, std::abs(omega_c2(fr.e1, fr.e2)) / scale,
                                   std::abs(fr.e1.dot(fr.e2)) / scale});
            const double hn = std::max(fr.mean.H.norm(), 1e-300);
            normal = std::max({normal, std::abs(fr.mean.H.dot(fr.e1)) / (hn * fr.e1.norm()),
                               std::abs(fr.mean.H.dot(fr.e2)) / (hn * fr.e2.norm())});
            const Vec4 H_trace = fr.g.ginv_aa * fr.B.aa + fr.g.ginv_bb * fr.B.bb;
            trace = std::max(trace, (H_trace - fr.mean.H).norm() / std::max(1.0, hn));

            const double rho2 = fr.g.g_aa;
            const double s = std::sqrt(fr.g.g_bb / rho2);
            const double mu = fr.mean.mu, lambda = fr.mean.lambda;
            const double bscale = std::max({1.0, std::abs(mu), std::abs(lambda)});
            umbilic = std::max({umbilic, (fr.B.aa / rho2 - mu * apply_J(fr.eps1)).norm() / bscale,
                                (fr.B.ab / (rho2 * s) - mu * apply_J(fr.eps2)).norm() / bscale,
                                (fr.B.bb / (rho2 * s * s) - lambda * apply_J(fr.eps1)).norm() / bscale});

            const double h = 1e-3;
            auto g_aa = [&](double b) { return metric(eval_jet(c, b)).g_aa; };
            auto g_bb = [&](double b) { return metric(eval_jet(c, b)).g_bb; };
            const double d_aa = five_point_derivative(g_aa, beta, h);
            const double d_bb = five_point_derivative(g_bb, beta, h);
            const Christoffel& G = fr.gamma;
            christ = std::max({christ, relative(G.alpha_ab, 0.5 * fr.g.ginv_aa * d_aa),
                               relative(G.beta_bb, 0.5 * fr.g.ginv_bb * d_bb),
                               relative(G.beta_aa, -0.5 * fr.g.ginv_bb * d_aa), std::abs(G.alpha_aa),
                               std::abs(G.alpha_bb), std::abs(G.beta_ab)});

            auto phi = [&](double b) {
                const GeometryFrame f = geometry_frame(c, alpha, b);
                return f.g.g_aa * std::pow(f.mean.norm_H, 2);
            };
            const Vec4 lhs = fr.g.ginv_bb * five_point_derivative(phi, beta, 0.25 * h) * fr.e2;
            const Vec4 rhs = 2.0 * rho2 * fr.div_JH * apply_J(fr.mean.H);
            div_id = std::max(div_id, (lhs - rhs).lpNorm<Eigen::Infinity>() / std::max(1.0, rhs.norm()));
        }
    }
    L.at_most("geometry.lagrangian_and_orthogonal", lagrangian, 1e-12);
    L.at_most("geometry.H_normal", normal, 1e-10);
    L.at_most("geometry.H_is_metric_trace", trace, 1e-10);
    L.at_most("geometry.H_umbilical_structure", umbilic, 1e-10);
    L.at_most("geometry.christoffel_fd", christ, 1e-6);
    L.at_most("geometry.divergence_identity", div_id, 1e-8);
}

void stationarity_checks(Ledger& L, const std::vector<CurveSpec>& random, std::size_t n) {
    double rho_H = 0.0, circle_defect = 0.0, conserved = 0.0, verdicts = 0.0;
    for (const double r : {0.5, 1.0, std::numbers::sqrt2, 3.0}) {
        const CurveSpec c = origin_circle(r);
        for (const auto& row : defect_trace(c, 2048)) rho_H = std::max(rho_H, std::abs(row.rho_norm_H - 2.0));
        const DefectResult d = defect(c);
        circle_defect = std::max(circle_defect, d.defect);
        for (std::size_t j = 0; j < n; ++j)
            conserved = std::max(conserved, std::abs(conserved_quantity(c, d.c_estimate, grid_angle(j, n)) -
                                                     conserved_quantity(c, d.c_estimate, 0.0)));
        if (classify(c) != Verdict::StationaryProduct) verdicts += 1.0;
    }
    L.at_most("stationarity.circle_rho_norm_H_is_2", rho_H, 1e-10);
    L.at_most("stationarity.circle_defect", circle_defect, 1e-10);
    L.at_most("stationarity.circle_conserved_quantity", conserved, 1e-12);
    L.at_most("stationarity.circle_verdict_failures", verdicts, 0.0);

    double min_defect = std::numeric_limits<double>::infinity(), scale_gap = 0.0, wrong = 0.0;
    for (const CurveSpec& c : random) {
        const DefectResult d = defect(c);
        const DefectResult ds = defect(c.scaled(2.5));
        scale_gap = std::max({scale_gap, relative(ds.c_estimate, d.c_estimate), relative(ds.defect, d.defect)});
        if (normalized_rho_variance(c) < 1e-3) continue;
        min_defect = std::min(min_defect, d.defect);
        if (classify(c) != Verdict::NonStationary) wrong += 1.0;
    }
    L.at_most("stationarity.scale_invariance", scale_gap, 1e-10);
    L.at_least("stationarity.random_min_defect", min_defect, 1e-4);
    L.at_most("stationarity.random_verdict_failures", wrong, 0.0);

    CurveFamily fam;
    fam.base = radial_cosine(0.0);
    fam.parameters.push_back({"t", "log_rho.cos[1]", 0.0, 0.5});
    const ScanResult scan = scan_family(fam);
    L.at_most("stationarity.scan_argmin_at_zero",
              scan.argmin ? std::abs(scan.argmin->parameters[0]) : std::numeric_limits<double>::infinity(), 1e-6);
}

void ode_checks(Ledger& L) {
    using boost::math::quadrature::gauss_kronrod;
    double closed = 0.0, period = 0.0, half = 0.0, min_gap = std::numeric_limits<double>::infinity();
    double interior = 0.0, monotone = 0.0, prev_gap = std::numeric_limits<double>::infinity();
    for (const double c : {2.1, 2.5, 3.0, 5.0, 20.0}) {
        const PeriodAnalysis pa = period_analysis(c, 0);
        const double a = 2.0 / c;
        for (int i = 0; i <= 16; ++i) {
            const double R = pa.R_min + (pa.R_max - pa.R_min) * i / 16.0;
            const double theta = std::acos(std::clamp((R - 1.0) / a, -1.0, 1.0));
            const double q = gauss_kronrod<double, 31>::integrate(
                [&](double t) { return 1.0 / (c * (1.0 + a * std::cos(t))); }, 0.0, theta, 15, 1e-14);
            closed = std::max(closed, std::abs(closed_form_u(R, c) - q));
        }
        const OdeProfile prof = integrate_profile(c, 512);
        period = std::max(period, std::abs(prof.numeric_period - pa.u_star));
        half = std::max(half, std::abs(prof.numeric_u1 - pa.u1));
        for (const auto& s : prof.samples) {
            if (s.R - pa.R_min < 1e-3 || pa.R_max - s.R < 1e-3) continue;
            const double u = s.u <= prof.numeric_u1 ? closed_form_u(s.R, c) : closed_form_u_ascending(s.R, c);
            interior = std::max(interior, std::abs(u - s.u));
        }
        min_gap = std::min(min_gap, pa.closure_gap);
        if (pa.closure_gap >= prev_gap) monotone += 1.0;
        prev_gap = pa.closure_gap;
    }
    L.at_most("ode.closed_form_vs_quadrature", closed, 1e-8);
    L.at_most("ode.numeric_period", period, 1e-6);
    L.at_most("ode.numeric_turning_time", half, 1e-6);
    L.at_most("ode.profile_vs_closed_form", interior, 1e-8);
    L.at_least("ode.closure_gap_positive", min_gap, 1e-12);
    L.at_most("ode.closure_gap_not_decreasing_count", monotone, 0.0);
}

void reduction_checks(Ledger& L, const std::vector<std::pair<std::string, CurveSpec>>& corpus,
                      const std::vector<CurveSpec>& random, std::uint64_t seed) {
    double level = 0.0, lift = 0.0, winding = 0.0;
    for (const auto& [name, c] : corpus) {
        level = std::max(level, level_set_check(c));
        lift = std::max(lift, lift_identity_residual(c));
        if (winding_number(reduced_curve(c)) != 2 * winding_number(c)) winding += 1.0;
    }
    for (const CurveSpec& c : random) {
        level = std::max(level, level_set_check(c, 32));
        lift = std::max(lift, lift_identity_residual(c, 32));
        if (winding_number(reduced_curve(c)) != 2 * winding_number(c)) winding += 1.0;
    }
    L.at_most("reduction.level_set_h", level, 1e-12);
    L.at_most("reduction.lift_identity", lift, 1e-12);
    L.at_most("reduction.winding_doubles_failures", winding, 0.0);

    const PullbackReport pb = verify_pullbacks(100, seed);
    L.at_most("reduction.pullback_l", pb.l_residual, 1e-10);
    L.at_most("reduction.pullback_psi", pb.psi_residual, 1e-10);
    L.at_most("reduction.pullback_phi_half", pb.phi_residual, 1e-10);
    L.at_most("reduction.psi_round_trip", pb.psi_round_trip, 1e-12);
    L.at_most("reduction.phi_half_round_trip", pb.phi_round_trip, 1e-12);
    L.at_most("reduction.orbit_in_kernel", std::max(pb.orbit_dl, pb.orbit_omega), 1e-12);

    double root = 0.0, identities = 0.0, rank = 0.0;
    auto point_checks = [&](const CurveSpec& c, const DoublePointResult& r) {
        for (const DoublePoint& p : r.points) {
            root = std::max(root, p.residual);
            const TangentIdentityResidual t = tangent_identities(c, p);
            identities = std::max({identities, t.alpha_identity, t.beta_identity, t.point_identity});
            if (p.kind == DoublePointKind::Cross && p.tangent_rank > 3) rank += 1.0;
        }
    };
    for (const auto& [name, c] : corpus) {
        const DoublePointResult r = find_double_points(c);
        point_checks(c, r);
        if (name == "chekanov_circle") L.at_most("reduction.chekanov_double_points", r.points.size(), 0.0);
        if (name == "origin_circle") {
            L.at_least("reduction.origin_circle_symmetric", r.centrally_symmetric ? 1.0 : 0.0, 1.0);
            L.at_most("reduction.cover_identity", r.cover_residual, 1e-12);
        }
        if (name == "offset_half_circle") {
            double where = r.points.size() == 2 ? 0.0 : std::numeric_limits<double>::infinity();
            for (const DoublePoint& p : r.points) {
                const Complex expected(0.0, p.planar_point.imag() > 0 ? std::sqrt(3.0) / 2 : -std::sqrt(3.0) / 2);
                where = std::max(where, std::abs(p.planar_point - expected));
                if (p.kind != DoublePointKind::Cross) where = std::numeric_limits<double>::infinity();
            }
            L.at_most("reduction.offset_half_circle_cross_points", where, 1e-6);
        }
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(random.size(), 4); ++i)
        point_checks(random[i], find_double_points(random[i]));
    L.at_most("reduction.double_point_residual", root, 1e-9);
    L.at_most("reduction.tangent_identities", identities, 1e-9);
    L.at_most("reduction.cross_rank_above_3", rank, 0.0);
}

void io_checks(Ledger& L, const std::vector<std::pair<std::string, CurveSpec>>& corpus,
               const std::vector<CurveSpec>& random) {
    double failures = 0.0;
    auto trip = [&](const CurveSpec& c) {
        const auto text = io::to_json(c).dump();
        if (!(io::curve_from_json(io::Json::parse(text)) == c)) failures += 1.0;
    };
    for (const auto& [name, c] : corpus) trip(c);
    for (const CurveSpec& c : random) trip(c);
    L.at_most("io.curve_round_trip_failures", failures, 0.0);
}

} // namespace

std::vector<std::pair<std::string, CurveSpec>> default_corpus() {
    return {{"origin_circle", origin_circle(1.0)},
            {"chekanov_circle", offset_circle({2.0, 0.0}, 1.0)},
            {"star_shaped", radial_cosine(0.2)},
            {"offset_half_circle", offset_circle({0.5, 0.0}, 1.0)}};
}

std::vector<Check> run_invariant_battery(const BatteryOptions& opt) {
    Ledger L;
    const auto corpus = default_corpus();
    std::vector<CurveSpec> random;
    for (std::size_t i = 0; i < opt.random_curves; ++i) random.push_back(random_star_curve(opt.seed + i));
    auto everything = corpus;
    for (std::size_t i = 0; i < random.size(); ++i) everything.emplace_back("random", random[i]);

    curve_checks(L, everything, opt.samples);
    geometry_checks(L, everything, opt.samples);
    stationarity_checks(L, random, opt.samples);
    ode_checks(L);
    reduction_checks(L, corpus, random, opt.seed);
    io_checks(L, corpus, random);
    return L.take();
}

} // namespace lagtorus
