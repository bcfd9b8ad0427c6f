#include "lagtorus/reduction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lagtorus/errors.hpp"
#include "lagtorus/quadrature.hpp"

namespace lagtorus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex z1_of(const Vec4& z) { return {z[0], z[1]}; }
Complex z2_of(const Vec4& z) { return {z[2], z[3]}; }

double wrap(double beta) {
    double b = std::fmod(beta, kTwoPi);
    if (b < 0.0) b += kTwoPi;
    return b;
}

double periodic_distance(double a, double b) {
    const double d = std::abs(wrap(a) - wrap(b));
    return std::min(d, kTwoPi - d);
}

Complex acceleration(const CurveJet& jet) {
    const Complex tau_dot(jet.v_d1, jet.w_d1);
    return (tau_dot + jet.tau * jet.tau) * std::polar(jet.rho, jet.f_val);
}

double normalized_cross(Complex a, Complex b) {
    return std::abs(a.real() * b.imag() - a.imag() * b.real()) / (std::abs(a) * std::abs(b));
}

/// Closest parameter on gamma to p, starting from the nearest grid sample.
double closest_parameter(const CurveSpec& curve, const std::vector<Complex>& samples, Complex p) {
    const std::size_t n = samples.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::norm(samples[i] - p) < std::norm(samples[best] - p)) best = i;
    double t = grid_angle(best, n);
    double best_t = t;
    double best_d = std::abs(samples[best] - p);
    for (int it = 0; it < 20; ++it) {
        const CurveJet jet = eval_jet(curve, t);
        const Complex g = std::polar(jet.rho, jet.f_val);
        const Complex g1 = jet.tau * g;
        const Complex g2 = acceleration(jet);
        const Complex diff = g - p;
        const double grad = (std::conj(diff) * g1).real();
        const double hess = std::norm(g1) + (std::conj(diff) * g2).real();
        if (hess <= 0.0) break;
        const double step = grad / hess;
        t -= std::clamp(step, -kPi / static_cast<double>(n), kPi / static_cast<double>(n));
        const double d = std::abs(curve.point(t) - p);
        if (d < best_d) {
            best_d = d;
            best_t = t;
        }
        if (std::abs(step) < 1e-15) break;
    }
    return wrap(best_t);
}

struct Root {
    double b1, b2, residual;
};

Root newton_refine(const CurveSpec& curve, double b1, double b2, double tolerance) {
    Root r{b1, b2, std::abs(curve.point(b1) + curve.point(b2))};
    for (int it = 0; it < 200; ++it) {
        const Complex g = curve.point(b1) + curve.point(b2);
        const Complex d1 = curve.velocity(b1);
        const Complex d2 = curve.velocity(b2);
        Eigen::Matrix2d J;
        J << d1.real(), d2.real(), d1.imag(), d2.imag();
        const Eigen::Vector2d rhs(-g.real(), -g.imag());
        const Eigen::Vector2d step = J.completeOrthogonalDecomposition().solve(rhs);
        b1 += step[0];
        b2 += step[1];
        const double res = std::abs(curve.point(b1) + curve.point(b2));
        if (res < r.residual) r = {b1, b2, res};
        if (step.lpNorm<Eigen::Infinity>() < tolerance) break;
    }
    r.b1 = wrap(r.b1);
    r.b2 = wrap(r.b2);
    return r;
}

int tangent_rank(const CurveSpec& curve, double b1, double b2, double tolerance) {
    const Immersion s1 = immersion(eval_jet(curve, b1), 0.0);
    const Immersion s2 = immersion(eval_jet(curve, b2), kPi);
    Eigen::Matrix4d M;
    M.col(0) = s1.e1.normalized();
    M.col(1) = s1.e2.normalized();
    M.col(2) = s2.e1.normalized();
    M.col(3) = s2.e2.normalized();
    const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4d>(M).singularValues();
    int rank = 0;
    for (int i = 0; i < 4; ++i)
        if (sv[i] > tolerance * sv[0]) ++rank;
    return rank;
}

} // namespace

namespace reduction {

double h(const Vec4& z) { return 0.5 * (std::norm(z1_of(z)) - std::norm(z2_of(z))); }

Complex l(const Vec4& z) { return z1_of(z) * z2_of(z); }

Complex dl(const Vec4& p, const Vec4& X) { return z1_of(p) * z2_of(X) + z2_of(p) * z1_of(X); }

Complex psi(Complex w) { return std::abs(w) * w; }

Complex psi_inverse(Complex w) {
    if (w == Complex{}) throw DomainError("psi inverse is undefined at 0");
    return w / std::sqrt(std::abs(w));
}

Complex dpsi(Complex w, Complex X) {
    const double r = std::abs(w);
    return r * X + w * (std::conj(w) * X).real() / r;
}

Complex phi_half(Complex w) {
    if (!(w.imag() > 0.0)) throw DomainError("phi_half requires Im w > 0");
    return 0.5 * w * w;
}

Complex phi_half_inverse(Complex w) {
    double angle = std::arg(w);
    if (angle < 0.0) angle += kTwoPi;
    if (w == Complex{} || angle == 0.0) throw DomainError("phi_half inverse is undefined on [0, inf)");
    return std::polar(std::sqrt(2.0 * std::abs(w)), 0.5 * angle);
}

Complex dphi_half(Complex w, Complex X) { return w * X; }

double omega_c(Complex X, Complex Y) { return (std::conj(X) * Y).imag(); }

double omega_weighted(Complex w, Complex X, Complex Y) { return omega_c(X, Y) / (2.0 * std::abs(w)); }

Vec4 level_point(double r, double theta, double eta) {
    return from_complex(std::polar(r, theta), std::polar(r, eta));
}

LevelTangents level_tangents(double r, double theta, double eta) {
    const Complex a = std::polar(1.0, theta);
    const Complex b = std::polar(1.0, eta);
    const Complex i(0.0, 1.0);
    return {from_complex(a, b), from_complex(i * r * a, 0.0), from_complex(0.0, i * r * b)};
}

} // namespace reduction

Vec4 immersion_point(const CurveSpec& curve, double alpha, double beta) {
    const double r = curve.rho(beta) / std::numbers::sqrt2;
    const double f = curve.angle(beta);
    return from_complex(std::polar(r, f + alpha), std::polar(r, f - alpha));
}

CurveSpec reduced_curve(const CurveSpec& curve) {
    CurveSpec out = curve;
    out.log_rho.a0 -= 0.5 * std::log(2.0);
    out.f_periodic = curve.f_periodic.scaled(2.0);
    out.k = 2 * curve.k;
    return out;
}

double lift_identity_residual(const CurveSpec& curve, std::size_t n) {
    const CurveSpec reduced = reduced_curve(curve);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double beta = grid_angle(j, n);
        const Complex g = curve.point(beta);
        const double scale = std::norm(g);
        const Complex half_sq = 0.5 * g * g;
        worst = std::max(worst, std::abs(reduced.point(beta) - reduction::psi_inverse(half_sq)) / std::sqrt(scale));
        for (std::size_t i = 0; i < n; ++i) {
            const Vec4 F = immersion_point(curve, grid_angle(i, n), beta);
            worst = std::max(worst, std::abs(reduction::l(F) - half_sq) / scale);
        }
    }
    return worst;
}

double level_set_check(const CurveSpec& curve, std::size_t n_samples) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j)
        for (std::size_t i = 0; i < n_samples; ++i)
            worst = std::max(worst, std::abs(reduction::h(
                                        immersion_point(curve, grid_angle(i, n_samples), grid_angle(j, n_samples)))));
    return worst;
}

PullbackReport verify_pullbacks(std::size_t n_trials, std::uint64_t seed) {
    using namespace reduction;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> radius(0.2, 2.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> upper(0.05, kPi - 0.05);
    const Complex i(0.0, 1.0);

    PullbackReport rep;
    rep.n_trials = n_trials;
    for (std::size_t t = 0; t < n_trials; ++t) {
        const double r = radius(rng), theta = angle(rng), eta = angle(rng);
        const Vec4 p = level_point(r, theta, eta);
        const LevelTangents T = level_tangents(r, theta, eta);
        const Vec4 X = unit(rng) * T.d_r + unit(rng) * T.d_theta + unit(rng) * T.d_eta;
        const Vec4 Y = unit(rng) * T.d_r + unit(rng) * T.d_theta + unit(rng) * T.d_eta;
        const Complex w = l(p);
        rep.level_h = std::max(rep.level_h, std::abs(h(p)));
        rep.l_residual =
            std::max(rep.l_residual, std::abs(omega_c2(X, Y) - omega_weighted(w, dl(p, X), dl(p, Y))));

        const Vec4 orbit = from_complex(i * z1_of(p), -i * z2_of(p));
        rep.orbit_dl = std::max(rep.orbit_dl, std::abs(dl(p, orbit)));
        rep.orbit_omega = std::max(rep.orbit_omega, std::abs(omega_c2(orbit, Y)));

        const Complex q = std::polar(radius(rng), angle(rng));
        const Complex A(unit(rng), unit(rng)), B(unit(rng), unit(rng));
        rep.psi_residual = std::max(
            rep.psi_residual, std::abs(omega_weighted(psi(q), dpsi(q, A), dpsi(q, B)) - omega_c(A, B)));
        rep.psi_round_trip = std::max(rep.psi_round_trip, std::abs(psi_inverse(psi(q)) - q));

        const Complex u = std::polar(radius(rng), upper(rng));
        rep.phi_residual = std::max(rep.phi_residual, std::abs(omega_weighted(phi_half(u), dphi_half(u, A),
                                                                              dphi_half(u, B)) -
                                                               omega_c(A, B)));
        rep.phi_round_trip = std::max(rep.phi_round_trip, std::abs(phi_half_inverse(phi_half(u)) - u));
    }
    return rep;
}

const char* to_string(DoublePointKind k) { return k == DoublePointKind::Touch ? "Touch" : "Cross"; }

double cover_residual(const CurveSpec& curve, double shift, std::size_t n) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double a = grid_angle(i, n), b = grid_angle(j, n);
            worst = std::max(worst, (immersion_point(curve, a + kPi, b + shift) - immersion_point(curve, a, b)).norm());
        }
    }
    return worst;
}

DoublePointResult find_double_points(const CurveSpec& curve, const DoublePointOptions& opt) {
    check_regularity(curve);
    DoublePointResult res;
    const std::size_t n = opt.grid;
    std::vector<Complex> pts(n);
    double max_speed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = curve.point(grid_angle(i, n));
        max_speed = std::max(max_speed, std::abs(curve.velocity(grid_angle(i, n))));
    }

    const std::size_t m = opt.symmetry_samples;
    for (std::size_t s = 0; s < m; ++s) {
        const Complex target = -curve.point(grid_angle(s, m));
        const double t = closest_parameter(curve, pts, target);
        res.symmetry_distance = std::max(res.symmetry_distance, std::abs(curve.point(t) - target));
        if (s == 0) res.symmetry_shift = t;
    }
    if (res.symmetry_distance < opt.symmetry_tolerance) {
        res.centrally_symmetric = true;
        res.cover_residual = cover_residual(curve, res.symmetry_shift);
        return res;
    }
    res.symmetry_shift = 0.0;

    const double h = kTwoPi / static_cast<double>(n);
    std::vector<std::pair<double, double>> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex p0 = pts[i], dp = pts[(i + 1) % n] - pts[i];
        for (std::size_t j = 0; j < n; ++j) {
            const Complex q0 = -pts[j], dq = -pts[(j + 1) % n] + pts[j];
            const double den = dp.real() * dq.imag() - dp.imag() * dq.real();
            if (den == 0.0) continue;
            const Complex r = q0 - p0;
            const double s = (r.real() * dq.imag() - r.imag() * dq.real()) / den;
            const double t = (r.real() * dp.imag() - r.imag() * dp.real()) / den;
            if (s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)
                candidates.emplace_back((static_cast<double>(i) + s) * h, (static_cast<double>(j) + t) * h);
        }
    }
    // Tangential contacts need not cross the polyline; take small local minima too.
    const double touch_gate = 2.0 * h * max_speed;
    auto gap = [&](std::size_t i, std::size_t j) { return std::abs(pts[i % n] + pts[j % n]); };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double g = gap(i, j);
            if (g > touch_gate) continue;
            bool is_min = true;
            for (std::size_t di = 0; di < 3 && is_min; ++di)
                for (std::size_t dj = 0; dj < 3 && is_min; ++dj)
                    if ((di != 1 || dj != 1) && gap(i + n + di - 1, j + n + dj - 1) < g) is_min = false;
            if (is_min) candidates.emplace_back(static_cast<double>(i) * h, static_cast<double>(j) * h);
        }
    }

    for (const auto& [b1, b2] : candidates) {
        const Root r = newton_refine(curve, b1, b2, opt.newton_tolerance);
        if (r.residual >= opt.root_tolerance) continue;
        const bool duplicate = std::any_of(res.points.begin(), res.points.end(), [&](const DoublePoint& p) {
            return periodic_distance(p.beta1, r.b1) < opt.merge_tolerance &&
                   periodic_distance(p.beta2, r.b2) < opt.merge_tolerance;
        });
        if (duplicate) continue;
        DoublePoint p;
        p.beta1 = r.b1;
        p.beta2 = r.b2;
        p.planar_point = curve.point(r.b1);
        p.ambient_point = immersion_point(curve, 0.0, r.b1);
        p.residual = r.residual;
        p.tangent_cross = normalized_cross(curve.velocity(r.b1), curve.velocity(r.b2));
        p.kind = p.tangent_cross < opt.touch_tolerance ? DoublePointKind::Touch : DoublePointKind::Cross;
        p.tangent_rank = tangent_rank(curve, r.b1, r.b2, opt.rank_tolerance);
        res.points.push_back(p);
    }
    std::sort(res.points.begin(), res.points.end(),
              [](const DoublePoint& a, const DoublePoint& b) { return a.beta1 < b.beta1; });
    return res;
}

TangentIdentityResidual tangent_identities(const CurveSpec& curve, const DoublePoint& p, std::size_t n_alpha) {
    TangentIdentityResidual out;
    const CurveJet j1 = eval_jet(curve, p.beta1);
    const CurveJet j2 = eval_jet(curve, p.beta2);
    const Complex g2_dot = curve.velocity(p.beta2);
    for (std::size_t i = 0; i < n_alpha; ++i) {
        const double a = grid_angle(i, n_alpha);
        const Immersion s1 = immersion(j1, a);
        const Immersion s2 = immersion(j2, a + kPi);
        const Vec4 expected =
            from_complex(-g2_dot * std::polar(1.0, a), -g2_dot * std::polar(1.0, -a)) / std::numbers::sqrt2;
        out.alpha_identity = std::max(out.alpha_identity, (s1.e1 - s2.e1).norm());
        out.beta_identity = std::max(out.beta_identity, (s2.e2 - expected).norm());
        out.point_identity = std::max(out.point_identity, (s1.point - s2.point).norm());
    }
    return out;
}

} // namespace lagtorus
