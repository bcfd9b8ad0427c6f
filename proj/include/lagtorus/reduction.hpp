#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lagtorus/curve.hpp"
#include "lagtorus/geometry.hpp"

namespace lagtorus {

/// Maps of the S^1 reduction of C^2 at level zero, with C^2 stored as
/// (x1, y1, x2, y2) and the circle acting by (z1 e^{it}, z2 e^{-it}).
namespace reduction {

/// h(z1, z2) = (|z1|^2 - |z2|^2) / 2.
double h(const Vec4& z);

/// l(z1, z2) = z1 z2.
Complex l(const Vec4& z);

/// dl(p) X = z1 X2 + z2 X1.
Complex dl(const Vec4& p, const Vec4& X);

/// psi(w) = |w| w on C*.
Complex psi(Complex w);
Complex psi_inverse(Complex w);
/// dpsi(w) X = |w| X + w Re(conj(w) X) / |w|.
Complex dpsi(Complex w, Complex X);

/// phi(w) = w^2 / 2 from the open upper half-plane onto C minus [0, inf).
Complex phi_half(Complex w);
Complex phi_half_inverse(Complex w);
Complex dphi_half(Complex w, Complex X);

/// omega_C(X, Y) = Im(conj(X) Y).
double omega_c(Complex X, Complex Y);

/// omega_C / (2|w|) at the base point w.
double omega_weighted(Complex w, Complex X, Complex Y);

/// G(r, theta, eta) = r (e^{i theta}, e^{i eta}) parametrises Z0 minus 0.
Vec4 level_point(double r, double theta, double eta);

/// Partials of G: d/dr, d/dtheta, d/deta.
struct LevelTangents {
    Vec4 d_r, d_theta, d_eta;
};
LevelTangents level_tangents(double r, double theta, double eta);

} // namespace reduction

/// Curve whose lift through psi^{-1} o l is L_gamma:
///   rho~ = rho / sqrt(2),  f~ = 2 f  (winding 2k).
CurveSpec reduced_curve(const CurveSpec& curve);

/// Max over an n x n grid of |l(F) - gamma^2/2| and |reduced point - psi^{-1}(gamma^2/2)|,
/// relative to rho^2.
double lift_identity_residual(const CurveSpec& curve, std::size_t n = 64);

/// Max |h o F| over an n x n (alpha, beta) grid.
double level_set_check(const CurveSpec& curve, std::size_t n_samples = 64);

struct PullbackReport {
    std::size_t n_trials = 0;
    double l_residual = 0.0;   ///< |omega_C2(X,Y) - omega_l(dl X, dl Y)|
    double psi_residual = 0.0; ///< |omega_psi(dpsi X, dpsi Y) - omega_C(X,Y)|
    double phi_residual = 0.0; ///< |omega_phi(dphi X, dphi Y) - omega_C(X,Y)|
    double psi_round_trip = 0.0;
    double phi_round_trip = 0.0;
    double orbit_dl = 0.0;     ///< |dl X| for the orbit direction X
    double orbit_omega = 0.0;  ///< |omega_C2(X, Y)| for the orbit direction X
    double level_h = 0.0;      ///< |h| at the sampled points of Z0
};

PullbackReport verify_pullbacks(std::size_t n_trials, std::uint64_t seed);

enum class DoublePointKind { Cross, Touch };

const char* to_string(DoublePointKind k);

/// F(alpha, beta1) = F(alpha + pi, beta2) for every alpha; the planar point is gamma(beta1).
struct DoublePoint {
    double beta1 = 0.0;
    double beta2 = 0.0;
    Vec4 ambient_point; ///< F(0, beta1)
    Complex planar_point;
    DoublePointKind kind = DoublePointKind::Cross;
    double residual = 0.0;       ///< |gamma(beta1) + gamma(beta2)|
    double tangent_cross = 0.0;  ///< |gamma'(beta1) x gamma'(beta2)| / (|gamma'(beta1)| |gamma'(beta2)|)
    int tangent_rank = 0;        ///< rank of the four sheet tangents at alpha = 0
};

struct DoublePointOptions {
    std::size_t grid = 720;
    std::size_t symmetry_samples = 256;
    double symmetry_tolerance = 1e-9;
    double newton_tolerance = 1e-12;
    double root_tolerance = 1e-9;
    double merge_tolerance = 1e-7;
    double touch_tolerance = 1e-9;
    double rank_tolerance = 1e-9;
};

struct DoublePointResult {
    bool centrally_symmetric = false;
    /// Max over samples of dist(-gamma(beta), gamma).
    double symmetry_distance = 0.0;
    /// Parameter shift delta with -gamma(0) = gamma(delta); set when symmetric.
    double symmetry_shift = 0.0;
    /// Max |F(alpha + pi, beta + delta) - F(alpha, beta)| when symmetric.
    double cover_residual = 0.0;
    /// One entry per point of gamma meeting -gamma, sorted by beta1.
    std::vector<DoublePoint> points;
};

/// Solves gamma(beta1) + gamma(beta2) = 0 on the parameter torus.
DoublePointResult find_double_points(const CurveSpec& curve, const DoublePointOptions& opt = {});

/// max over an n x n grid of |F(alpha + pi, beta + shift) - F(alpha, beta)|.
double cover_residual(const CurveSpec& curve, double shift, std::size_t n = 64);

/// F(alpha, beta) from the curve.
Vec4 immersion_point(const CurveSpec& curve, double alpha, double beta);

struct TangentIdentityResidual {
    double alpha_identity = 0.0; ///< |dF/dalpha(a, b1) - dF/dalpha(a + pi, b2)|
    double beta_identity = 0.0;  ///< |dF/dbeta(a + pi, b2) + gamma'(b2)/sqrt2 (e^{ia}, e^{-ia})|
    double point_identity = 0.0; ///< |F(a, b1) - F(a + pi, b2)|
};

/// Max over n_alpha samples of alpha.
TangentIdentityResidual tangent_identities(const CurveSpec& curve, const DoublePoint& p, std::size_t n_alpha = 32);

} // namespace lagtorus
