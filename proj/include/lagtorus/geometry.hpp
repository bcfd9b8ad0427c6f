#pragma once

#include <Eigen/Core>

#include "lagtorus/curve.hpp"

namespace lagtorus {

/// Point or vector of R^4 = C^2 in coordinates (x1, y1, x2, y2).
using Vec4 = Eigen::Vector4d;

/// Complex structure: multiplication by i in each complex factor.
Vec4 apply_J(const Vec4& x);

/// Standard symplectic form dx1^dy1 + dx2^dy2, equal to <J X, Y>.
double omega_c2(const Vec4& x, const Vec4& y);

Vec4 from_complex(Complex z1, Complex z2);

/// F(alpha, beta) = rho/sqrt(2) (e^{i(f+alpha)}, e^{i(f-alpha)}) and its partials.
struct Immersion {
    Vec4 point;
    Vec4 e1; ///< dF/dalpha
    Vec4 e2; ///< dF/dbeta = tau F
};

Immersion immersion(const CurveJet& jet, double alpha);

/// Induced metric; the cross term g_ab vanishes identically.
struct Metric {
    double g_aa = 0.0;
    double g_bb = 0.0;
    double ginv_aa = 0.0;
    double ginv_bb = 0.0;
    double sqrt_det = 0.0;
};

Metric metric(const CurveJet& jet);

/// Christoffel symbols, named upper index first: alpha_ab = Gamma^alpha_{alpha beta}.
struct Christoffel {
    double alpha_aa = 0.0, alpha_ab = 0.0, alpha_bb = 0.0;
    double beta_aa = 0.0, beta_ab = 0.0, beta_bb = 0.0;
};

Christoffel christoffel(const CurveJet& jet);

struct SecondForm {
    Vec4 aa, ab, bb;
};

/// Closed forms of the covariant Hessian of F.
SecondForm second_form(const CurveJet& jet, double alpha);

struct MeanCurvature {
    double C = 0.0;          ///< H = C J e2
    Vec4 H;
    double norm_H = 0.0;     ///< |C| rho sqrt(v^2+w^2)
    double rho_norm_H = 0.0;
    /// B(eps1, eps1) = lambda J eps1.
    double lambda = 0.0;
    /// B(eps2, eps2) = mu J eps1 and B(eps1, eps2) = mu J eps2.
    double mu = 0.0;
};

/// C = (w' v - w v' + 2 w (v^2+w^2)) / (rho^2 (v^2+w^2)^2).
double mean_curvature_coefficient(const CurveJet& jet);

/// dC/dbeta, differentiated symbolically (uses v'', w'').
double mean_curvature_coefficient_derivative(const CurveJet& jet);

MeanCurvature mean_curvature(const CurveJet& jet, double alpha);

/// s = sqrt(det g) C = (w' v - w v' + 2 w (v^2+w^2)) / (v^2+w^2)^{3/2}.
double stationarity_density(const CurveJet& jet);

/// div_g(JH) = -[dC/dbeta + (d/dbeta ln sqrt(det g)) C].
double div_JH(const CurveJet& jet);

/// Everything at one (alpha, beta).
struct GeometryFrame {
    double alpha = 0.0;
    double beta = 0.0;
    Vec4 point, e1, e2;
    Vec4 eps1, eps2; ///< e2/|e2| and e1/|e1|
    Metric g;
    Christoffel gamma;
    SecondForm B;
    MeanCurvature mean;
    double div_JH = 0.0;
};

GeometryFrame geometry_frame(const CurveJet& jet, double alpha);
GeometryFrame geometry_frame(const CurveSpec& curve, double alpha, double beta);

} // namespace lagtorus
