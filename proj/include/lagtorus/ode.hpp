#pragma once

#include <cstddef>
#include <vector>

namespace lagtorus {

/// Reduced radial variable R = r / r_underline, r = rho^{-2}, for a stationary
/// twisted torus written in the arc parameter u:
///   (R')^2 = c^2 R^2 (R_min - R)(R - R_max),  R_min = (c-2)/c,  R_max = (c+2)/c.
struct OdeBounds {
    double R_min = 0.0;
    double R_max = 0.0;
};

/// Throws DomainError unless c > 2.
OdeBounds bounds(double c);

/// u(R) on the descending branch starting from R(0) = R_max:
///   u = (pi/2 - arctan[(c^2 (R-1)/2 + 2) / (sqrt(c^2-4) sqrt(1 - c^2 (R-1)^2 / 4))]) / sqrt(c^2-4).
/// Throws DomainError outside [R_min, R_max].
double closed_form_u(double R, double c);

/// u(R) on the ascending branch after the minimum at u1.
double closed_form_u_ascending(double R, double c);

struct PeriodAnalysis {
    double c = 0.0;
    int k = 0;
    double R_min = 0.0;
    double R_max = 0.0;
    double u1 = 0.0;              ///< pi / sqrt(c^2-4)
    double u_star = 0.0;          ///< 2 pi / sqrt(c^2-4), period of R
    double required_u_star = 0.0; ///< 2 (k+1) pi / c from total curvature
    double closure_gap = 0.0;     ///< u_star - required_u_star
};

/// Throws DomainError unless c > 2 and k in {0, 1}.
PeriodAnalysis period_analysis(double c, int k);

struct ProfileSample {
    double u = 0.0;
    double R = 0.0;
    double rho_candidate = 0.0; ///< (r_underline R)^{-1/2}
    double f = 0.0;
};

struct OdeProfile {
    PeriodAnalysis header;
    double numeric_u1 = 0.0;     ///< time of the event R' = 0 at R_min
    double numeric_period = 0.0; ///< time to return to R_max
    double r_underline = 1.0;
    double K = 0.0;              ///< df/du = K rho^{-2} + c/2
    double I_star = 0.0;         ///< int_0^period rho^{-2} du
    double angular_increment = 0.0;      ///< f(period) - f(0)
    double angular_closure_defect = 0.0; ///< distance of the increment to 2 pi Z
    double max_constraint_residual = 0.0; ///< max |(rho'/rho)^2 + (f')^2 - 1|
    double min_df_du = 0.0;
    std::size_t accepted_steps = 0;
    std::vector<ProfileSample> samples; ///< uniform in u over one numeric period, both ends included
};

struct ProfileOptions {
    int k = 0;
    double atol = 1e-13;
    double rtol = 1e-13;
    /// Distance to an extremum, relative to R_max - R_min, below which the
    /// turning point is crossed by the symmetric bridge instead of stepping.
    double turning_fraction = 1e-7;
    double bound_slack = 1e-9;
    std::size_t max_steps = 2'000'000;
};

/// Integrates R from R(0) = R_max through one oscillation using the signed
/// square-root field, switching branch at each turning point, and
/// reconstructs the candidate rho(u), f(u) with r_underline = 1, f(0) = 0.
/// Throws IntegrationFailure if R leaves [R_min, R_max] by more than the slack.
OdeProfile integrate_profile(double c, std::size_t n_steps, const ProfileOptions& opt = {});

} // namespace lagtorus
