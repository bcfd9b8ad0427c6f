#include "lagtorus/geometry.hpp"

#include <cmath>
#include <numbers>

#include "lagtorus/errors.hpp"

namespace lagtorus {

namespace {

struct ComplexPair {
    Complex z1, z2;
};

ComplexPair base_point(const CurveJet& j, double alpha) {
    const double r = j.rho / std::numbers::sqrt2;
    return {std::polar(r, j.f_val + alpha), std::polar(r, j.f_val - alpha)};
}

} // namespace

Vec4 apply_J(const Vec4& x) { return Vec4(-x[1], x[0], -x[3], x[2]); }

double omega_c2(const Vec4& x, const Vec4& y) { return x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]; }

Vec4 from_complex(Complex z1, Complex z2) { return Vec4(z1.real(), z1.imag(), z2.real(), z2.imag()); }

Immersion immersion(const CurveJet& jet, double alpha) {
    const auto [z1, z2] = base_point(jet, alpha);
    const Complex i(0.0, 1.0);
    return {from_complex(z1, z2), from_complex(i * z1, -i * z2), from_complex(jet.tau * z1, jet.tau * z2)};
}

Metric metric(const CurveJet& jet) {
    Metric g;
    g.g_aa = jet.rho * jet.rho;
    g.g_bb = jet.rho_d1 * jet.rho_d1 + jet.rho * jet.rho * jet.f_d1 * jet.f_d1;
    if (!(g.g_bb > 0.0) || !(g.g_aa > 0.0)) throw RegularityViolation("induced metric is degenerate");
    g.ginv_aa = 1.0 / g.g_aa;
    g.ginv_bb = 1.0 / g.g_bb;
    g.sqrt_det = g.g_aa * std::sqrt(jet.speed_sq());
    return g;
}

Christoffel christoffel(const CurveJet& jet) {
    const double s2 = jet.speed_sq();
    if (!(s2 > 0.0)) throw RegularityViolation("christoffel symbols undefined where tau = 0");
    Christoffel c;
    c.alpha_ab = jet.v;
    c.beta_bb = jet.v + (jet.v * jet.v_d1 + jet.w * jet.w_d1) / s2;
    c.beta_aa = -jet.v / s2;
    return c;
}

SecondForm second_form(const CurveJet& jet, double alpha) {
    const double s2 = jet.speed_sq();
    if (!(s2 > 0.0)) throw RegularityViolation("second fundamental form undefined where tau = 0");
    const Immersion F = immersion(jet, alpha);
    const Vec4 Je1 = apply_J(F.e1);
    const Vec4 Je2 = apply_J(F.e2);
    const double twist = (jet.w_d1 * jet.v - jet.w * jet.v_d1) / s2;
    return {(jet.w / s2) * Je2, jet.w * Je1, (jet.w + twist) * Je2};
}

double mean_curvature_coefficient(const CurveJet& j) {
    const double s2 = j.speed_sq();
    const double num = j.w_d1 * j.v - j.w * j.v_d1 + 2.0 * j.w * s2;
    return num / (j.rho * j.rho * s2 * s2);
}

double mean_curvature_coefficient_derivative(const CurveJet& j) {
    const double s2 = j.speed_sq();
    const double s2_d1 = 2.0 * (j.v * j.v_d1 + j.w * j.w_d1);
    const double num = j.w_d1 * j.v - j.w * j.v_d1 + 2.0 * j.w * s2;
    // The w'v' terms cancel in the derivative of w'v - wv'.
    const double num_d1 = j.w_d2 * j.v - j.w * j.v_d2 + 2.0 * j.w_d1 * s2 + 2.0 * j.w * s2_d1;
    const double den = j.rho * j.rho * s2 * s2;
    const double log_den_d1 = 2.0 * j.v + 2.0 * s2_d1 / s2;
    return num_d1 / den - (num / den) * log_den_d1;
}

MeanCurvature mean_curvature(const CurveJet& jet, double alpha) {
    const double s2 = jet.speed_sq();
    const double s = std::sqrt(s2);
    const Immersion F = immersion(jet, alpha);
    MeanCurvature m;
    m.C = mean_curvature_coefficient(jet);
    m.H = m.C * apply_J(F.e2);
    m.norm_H = std::abs(m.C) * jet.rho * s;
    m.rho_norm_H = jet.rho * m.norm_H;
    m.mu = jet.w / (jet.rho * s);
    m.lambda = m.mu + (jet.w_d1 * jet.v - jet.w * jet.v_d1) / (jet.rho * s2 * s);
    return m;
}

double stationarity_density(const CurveJet& j) {
    const double s2 = j.speed_sq();
    return (j.w_d1 * j.v - j.w * j.v_d1 + 2.0 * j.w * s2) / (s2 * std::sqrt(s2));
}

double div_JH(const CurveJet& j) {
    const double s2 = j.speed_sq();
    const double log_sqrt_det_d1 = 2.0 * j.v + (j.v * j.v_d1 + j.w * j.w_d1) / s2;
    return -(mean_curvature_coefficient_derivative(j) + log_sqrt_det_d1 * mean_curvature_coefficient(j));
}

GeometryFrame geometry_frame(const CurveJet& jet, double alpha) {
    GeometryFrame fr;
    fr.alpha = alpha;
    fr.beta = jet.beta;
    const Immersion F = immersion(jet, alpha);
    fr.point = F.point;
    fr.e1 = F.e1;
    fr.e2 = F.e2;
    fr.eps1 = F.e2.normalized();
    fr.eps2 = F.e1.normalized();
    fr.g = metric(jet);
    fr.gamma = christoffel(jet);
    fr.B = second_form(jet, alpha);
    fr.mean = mean_curvature(jet, alpha);
    fr.div_JH = div_JH(jet);
    return fr;
}

GeometryFrame geometry_frame(const CurveSpec& curve, double alpha, double beta) {
    return geometry_frame(eval_jet(curve, beta), alpha);
}

} // namespace lagtorus
