// Acceptance criteria 1-9: one PASS/FAIL line each, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "lagtorus/cli.hpp"
#include "lagtorus/geometry.hpp"
#include "lagtorus/ode.hpp"
#include "lagtorus/quadrature.hpp"
#include "lagtorus/reduction.hpp"
#include "lagtorus/stationarity.hpp"
#include "lagtorus/verify.hpp"

using namespace lagtorus;

namespace {

constexpr double kPi = std::numbers::pi;

namespace tol {
constexpr double product_identity = 1e-10;
constexpr double product_runtime_s = 1.0;
constexpr double stationary_defect = 1e-10;
constexpr double nonstationary_defect = 1e-4;
constexpr double nonstationary_variance = 1e-3;
constexpr double scan_argmin = 1e-6;
constexpr double divergence = 1e-8;
constexpr double curvature_rel = 1e-8;
constexpr double total_curvature = 1e-8;
constexpr double unit_curvature = 1e-10;
constexpr double christoffel = 1e-6;
constexpr double closed_form = 1e-8;
constexpr double period = 1e-6;
constexpr double ode_runtime_s = 5.0;
constexpr double pullback = 1e-10;
constexpr double level_set = 1e-12;
constexpr double planar_point = 1e-6;
constexpr double cover = 1e-12;
constexpr double verify_runtime_s = 60.0;
} // namespace tol

const std::vector<double> kRadii{0.5, 1.0, std::numbers::sqrt2, 3.0};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// (gamma e^{ia}, gamma e^{-ia}) / sqrt 2 straight from the plane curve.
Vec4 torus_point(const CurveSpec& c, double a, double b) {
    const Complex g = c.point(b) / std::numbers::sqrt2;
    return from_complex(g * std::polar(1.0, a), g * std::polar(1.0, -a));
}

std::vector<CurveSpec> random_curves(std::size_t n, std::uint64_t first_seed) {
    std::vector<CurveSpec> out;
    for (std::uint64_t s = first_seed; out.size() < n; ++s) out.push_back(random_star_curve(s));
    return out;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double r : kRadii) {
        const CurveSpec c = origin_circle(r);
        for (std::size_t i = 0; i < 2048; ++i) {
            const GeometryFrame fr = geometry_frame(c, 0.7, grid_angle(i, 2048));
            worst = std::max(worst, std::abs(fr.mean.rho_norm_H - 2.0));
        }
        // H from second differences of F; the metric is flat with g = r^2 I.
        auto F = [&](double a, double b) { return torus_point(c, a, b); };
        const double a = 0.3, b = 1.1;
        const Vec4 Faa = oracle::d2([&](double t) { return F(t, b); }, a);
        const Vec4 Fbb = oracle::d2([&](double t) { return F(a, t); }, b);
        const Vec4 H = (Faa + Fbb) / (r * r);
        o.require(std::abs(r * H.norm() - 2.0) < 1e-6, "finite-difference |H| disagrees for r=" + fmt(r));
    }
    const double t = seconds_since(t0);
    o.require(worst < tol::product_identity, "max |rho|H| - 2| = " + fmt(worst));
    o.require(t < tol::product_runtime_s, "runtime " + fmt(t) + " s");
    if (o.ok) o.detail = "max |rho|H| - 2| = " + fmt(worst) + ", " + fmt(t) + " s";
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (double r : kRadii) {
        const CurveSpec c = origin_circle(r);
        const DefectResult d = defect(c, 2048);
        o.require(d.defect < tol::stationary_defect, "circle defect " + fmt(d.defect));
        o.require(classify(c) == Verdict::StationaryProduct, "circle r=" + fmt(r) + " not StationaryProduct");
    }
    std::size_t tested = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1000; tested < 50; ++seed) {
        const CurveSpec c = random_star_curve(seed);
        if (normalized_rho_variance(c) < tol::nonstationary_variance) continue;
        ++tested;
        smallest = std::min(smallest, defect(c, 2048).defect);
    }
    o.require(smallest > tol::nonstationary_defect, "smallest random defect " + fmt(smallest));

    CurveFamily fam;
    fam.base = radial_cosine(0.0);
    fam.parameters.push_back({"t", "log_rho.cos[1]", 0.0, 0.5});
    const ScanResult res = scan_family(fam);
    o.require(res.argmin.has_value() && std::abs(res.argmin->parameters[0]) < tol::scan_argmin,
              "scan minimum not at t = 0");
    if (o.ok) o.detail = "smallest random defect " + fmt(smallest) + " over 50 curves; argmin t = 0";
    return o;
}

Outcome criterion3() {
    Outcome o;
    double worst = 0.0;
    for (const CurveSpec& c : random_curves(20, 3000)) {
        auto phi = [&](double b) {
            const GeometryFrame f = geometry_frame(c, 0.0, b);
            return f.g.g_aa * apply_J(f.mean.H).squaredNorm();
        };
        for (std::size_t i = 0; i < 256; ++i) {
            const double b = grid_angle(i, 256);
            for (double a : {0.0, 2.0}) {
                const GeometryFrame fr = geometry_frame(c, a, b);
                const Vec4 grad = oracle::d1(phi, b, 2.5e-4) / fr.g.g_bb * fr.e2;
                const Vec4 rhs = 2.0 * fr.g.g_aa * fr.div_JH * apply_J(fr.mean.H);
                worst = std::max(worst, (grad - rhs).lpNorm<Eigen::Infinity>() / std::max(1.0, rhs.norm()));
            }
        }
    }
    o.require(worst < tol::divergence, "max componentwise residual " + fmt(worst));
    if (o.ok) o.detail = "max componentwise residual " + fmt(worst);
    return o;
}

Outcome criterion4() {
    Outcome o;
    double worst_k = 0.0, worst_total = 0.0, worst_unit = 0.0;
    for (const CurveSpec& c : random_curves(20, 4000)) {
        auto pt = [&](double t) { return c.point(t); };
        for (std::size_t i = 0; i < 64; ++i) {
            const double b = grid_angle(i, 64) + 0.01;
            const double kappa = oracle::cartesian_curvature(oracle::d1(pt, b), oracle::d2(pt, b));
            worst_k = std::max(worst_k, oracle::rel(signed_curvature(c, b), kappa));
        }
        worst_total = std::max(worst_total, std::abs(total_curvature(c) - 2.0 * kPi));
        // independent: integrate the Cartesian curvature against arc length
        auto density = [&](double b) {
            const Complex d = oracle::d1(pt, b);
            return oracle::cartesian_curvature(d, oracle::d2(pt, b)) * std::abs(d);
        };
        const std::size_t m = 2048;
        double oracle_total = density(0.0) + density(2.0 * kPi);
        for (std::size_t i = 1; i < m; ++i) oracle_total += (i % 2 ? 4.0 : 2.0) * density(2.0 * kPi * i / m);
        oracle_total *= 2.0 * kPi / (3.0 * m);
        worst_total = std::max(worst_total, std::abs(oracle_total - total_curvature(c)));
    }
    for (const CurveSpec& c : {offset_circle({2.0, 0.0}, 1.0), offset_circle({0.5, 0.0}, 1.0), radial_cosine(0.2)})
        worst_total = std::max(worst_total, std::abs(total_curvature(c) - 2.0 * kPi));
    const CurveSpec unit = offset_circle({2.0, 0.0}, 1.0);
    for (std::size_t i = 0; i < 2048; ++i)
        worst_unit = std::max(worst_unit, std::abs(signed_curvature(unit, grid_angle(i, 2048)) - 1.0));
    o.require(worst_k < tol::curvature_rel, "curvature relative error " + fmt(worst_k));
    o.require(worst_total < tol::total_curvature, "total curvature error " + fmt(worst_total));
    o.require(worst_unit < tol::unit_curvature, "unit circle curvature error " + fmt(worst_unit));
    if (o.ok)
        o.detail = "kappa rel " + fmt(worst_k) + ", total " + fmt(worst_total) + ", unit circle " + fmt(worst_unit);
    return o;
}

Outcome criterion5() {
    Outcome o;
    double worst = 0.0;
    for (const CurveSpec& c : random_curves(20, 5000)) {
        auto g_aa = [&](double t) { return metric(eval_jet(c, t)).g_aa; };
        auto g_bb = [&](double t) { return metric(eval_jet(c, t)).g_bb; };
        for (std::size_t i = 0; i < 32; ++i) {
            const double b = grid_angle(i, 32);
            const CurveJet j = eval_jet(c, b);
            const Metric g = metric(j);
            const Christoffel G = christoffel(j);
            const double daa = oracle::d1(g_aa, b), dbb = oracle::d1(g_bb, b);
            // metric depends on beta only: Gamma from d g_aa and d g_bb.
            for (auto [got, want] : {std::pair{G.alpha_aa, 0.0}, {G.alpha_ab, 0.5 * daa / g.g_aa},
                                     {G.alpha_bb, 0.0}, {G.beta_aa, -0.5 * daa / g.g_bb},
                                     {G.beta_ab, 0.0}, {G.beta_bb, 0.5 * dbb / g.g_bb}})
                worst = std::max(worst, oracle::rel(got, want));
        }
    }
    o.require(worst < tol::christoffel, "max relative error " + fmt(worst));
    if (o.ok) o.detail = "max relative error " + fmt(worst);
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst_u = 0.0, worst_period = 0.0;
    for (double c : {2.1, 2.5, 3.0, 5.0, 20.0}) {
        const OdeBounds bd = bounds(c);
        const double a = 2.0 / c;
        for (int i = 0; i <= 40; ++i) {
            const double R = bd.R_min + (bd.R_max - bd.R_min) * i / 40.0;
            const double theta = std::acos(std::clamp((R - 1.0) / a, -1.0, 1.0));
            const double q = oracle::adaptive_simpson([&](double t) { return 1.0 / (c * (1.0 + a * std::cos(t))); },
                                                      0.0, theta, 1e-14);
            worst_u = std::max(worst_u, std::abs(closed_form_u(R, c) - q));
        }
        const OdeProfile prof = integrate_profile(c, 256);
        worst_period = std::max(worst_period, std::abs(prof.numeric_period - 2.0 * kPi / std::sqrt(c * c - 4.0)));
    }
    for (double c : {2.001, 2.1, 2.5, 3.0, 5.0, 20.0, 1e3, 1e6}) {
        const PeriodAnalysis p = period_analysis(c, 0);
        o.require(p.closure_gap > 0.0, "closure gap not positive at c=" + fmt(c));
    }
    const double t = seconds_since(t0);
    o.require(worst_u < tol::closed_form, "closed form error " + fmt(worst_u));
    o.require(worst_period < tol::period, "period error " + fmt(worst_period));
    o.require(t < tol::ode_runtime_s, "runtime " + fmt(t) + " s");
    if (o.ok)
        o.detail = "u error " + fmt(worst_u) + ", period error " + fmt(worst_period) + ", " + fmt(t) + " s";
    return o;
}

Outcome criterion7() {
    Outcome o;
    const PullbackReport rep = verify_pullbacks(100, 20240611);
    const double worst = std::max({rep.l_residual, rep.psi_residual, rep.phi_residual});
    o.require(rep.n_trials == 100, "trial count");
    o.require(worst < tol::pullback, "pullback residual " + fmt(worst));
    double worst_h = 0.0;
    for (const auto& [name, c] : default_corpus()) {
        for (std::size_t i = 0; i < 64; ++i)
            for (std::size_t j = 0; j < 64; ++j) {
                const Vec4 p = torus_point(c, grid_angle(i, 64), grid_angle(j, 64));
                worst_h = std::max(worst_h, std::abs(0.5 * (p[0] * p[0] + p[1] * p[1] - p[2] * p[2] - p[3] * p[3])));
            }
        worst_h = std::max(worst_h, level_set_check(c));
    }
    o.require(worst_h < tol::level_set, "max |h o F| " + fmt(worst_h));
    if (o.ok) o.detail = "pullback residual " + fmt(worst) + ", max |h o F| " + fmt(worst_h);
    return o;
}

Outcome criterion8() {
    Outcome o;
    o.require(find_double_points(offset_circle({2.0, 0.0}, 1.0)).points.empty(), "offset circle d=2 has double points");

    const DoublePointResult half = find_double_points(offset_circle({0.5, 0.0}, 1.0));
    const double h = std::sqrt(3.0) / 2.0;
    bool up = false, down = false, all_cross = true;
    for (const DoublePoint& p : half.points) {
        up = up || std::abs(p.planar_point - Complex(0.0, h)) < tol::planar_point;
        down = down || std::abs(p.planar_point - Complex(0.0, -h)) < tol::planar_point;
        all_cross = all_cross && p.kind == DoublePointKind::Cross;
    }
    o.require(half.points.size() == 2 && up && down && all_cross,
              "0.5-offset circle gave " + std::to_string(half.points.size()) + " points");

    const CurveSpec circle = origin_circle(1.0);
    const DoublePointResult sym = find_double_points(circle);
    o.require(sym.centrally_symmetric, "origin circle not flagged centrally symmetric");
    double cover = 0.0;
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) {
            const double a = grid_angle(i, 64), b = grid_angle(j, 64);
            cover = std::max(cover, (torus_point(circle, a + kPi, b + kPi) -
                                     torus_point(circle, a, b))
                                        .lpNorm<Eigen::Infinity>());
        }
    o.require(cover < tol::cover, "cover residual " + fmt(cover));
    if (o.ok) o.detail = "crossings at +-i sqrt3/2, cover residual " + fmt(cover);
    return o;
}

Outcome criterion9() {
    Outcome o;
    cli::RunConfig cfg;
    cfg.command = cli::Command::Verify;
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    const int code = cli::run(cfg, out, err);
    const double t = seconds_since(t0);
    o.require(code == cli::kOk, "verify exited " + std::to_string(code) + ": " + err.str());
    o.require(t < tol::verify_runtime_s, "runtime " + fmt(t) + " s");
    if (o.ok) o.detail = "exit 0 in " + fmt(t) + " s";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"product torus rho|H| = 2", criterion1},    {"stationarity verdicts and scan", criterion2},
        {"divergence identity", criterion3},         {"curvature oracle", criterion4},
        {"Christoffel symbols from the metric", criterion5}, {"ODE closed forms", criterion6},
        {"reduction pullbacks", criterion7},         {"embeddedness", criterion8},
        {"verify battery", criterion9}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        if (!o.ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
