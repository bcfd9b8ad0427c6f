#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include "lagtorus/trig_poly.hpp"

namespace lagtorus {

using Complex = std::complex<double>;

inline constexpr double kRegularityThreshold = 1e-12;
inline constexpr std::size_t kRegularityGrid = 4096;

/// Closed plane curve gamma(beta) = rho(beta) exp(i f(beta)) with
///   rho = exp(log_rho(beta)),  f = k beta + f_periodic(beta).
/// Positivity of rho and the quasi-periodicity f(beta + 2pi) = f(beta) + 2k pi
/// hold by construction.
struct CurveSpec {
    TrigPoly log_rho;
    TrigPoly f_periodic;
    int k = 0;

    double rho(double beta) const;
    double angle(double beta) const;
    Complex point(double beta) const;
    Complex velocity(double beta) const;

    /// Same curve scaled by lambda > 0 about the origin.
    CurveSpec scaled(double lambda) const;
    /// Same curve rotated by theta about the origin.
    CurveSpec rotated(double theta) const;

    bool operator==(const CurveSpec&) const = default;
};

/// Pointwise data of a curve: rho and f with derivatives up to order 3, plus
/// v = rho'/rho, w = f' and their first two derivatives.
struct CurveJet {
    double beta = 0.0;
    double rho = 0.0, rho_d1 = 0.0, rho_d2 = 0.0, rho_d3 = 0.0;
    double f_val = 0.0, f_d1 = 0.0, f_d2 = 0.0, f_d3 = 0.0;
    double v = 0.0, w = 0.0;
    double v_d1 = 0.0, w_d1 = 0.0;
    double v_d2 = 0.0, w_d2 = 0.0;
    Complex tau;

    double speed_sq() const { return v * v + w * w; }
};

/// Exact jet at beta. Throws RegularityViolation if v^2 + w^2 <= threshold.
CurveJet eval_jet(const CurveSpec& curve, double beta, double threshold = kRegularityThreshold);

/// Checks min(v^2 + w^2) over a uniform grid against the threshold.
void check_regularity(const CurveSpec& curve, std::size_t grid = kRegularityGrid,
                      double threshold = kRegularityThreshold);

/// Winding number about the origin. The structural value k is cross-checked
/// against (1/2 pi i) * contour integral of gamma'/gamma; throws
/// CrossCheckMismatch if they are 0.5 or more apart.
int winding_number(const CurveSpec& curve, std::size_t n_samples = 1024);

/// Quadrature value of the winding integral (real part of the index).
double winding_integral(const CurveSpec& curve, std::size_t n_samples = 1024);

enum class Orientation { CounterClockwise, Clockwise, Degenerate };

const char* to_string(Orientation o);

/// (1/2) * contour integral of (x dy - y dx).
double signed_area(const CurveSpec& curve, std::size_t n_samples = 1024);

Orientation orientation_check(const CurveSpec& curve, std::size_t n_samples = 1024);

/// u(beta) = int_0^beta sqrt(v^2 + w^2), beta in [0, 2pi].
double u_parameter(const CurveSpec& curve, double beta);

/// u(2 pi) by the doubling periodic trapezoidal rule.
double u_star(const CurveSpec& curve);

/// Signed curvature from the jet:
///   kappa = (1/rho) [ (w' v - w v') / (v^2+w^2)^{3/2} + w / sqrt(v^2+w^2) ].
double signed_curvature(const CurveJet& jet);
double signed_curvature(const CurveSpec& curve, double beta);

/// Contour integral of kappa ds.
double total_curvature(const CurveSpec& curve);

/// Circle of the given radius centred at the origin, f = beta.
CurveSpec origin_circle(double radius);

/// Circle |z - center| = radius traversed counterclockwise, as a truncated
/// log-series. Coefficients are dropped once they fall below 1e-18.
/// Throws DomainError if the circle passes through (or too close to) the origin.
CurveSpec offset_circle(Complex center, double radius);

/// Star-shaped curve rho = exp(amplitude cos(n beta)), f = beta.
CurveSpec radial_cosine(double amplitude, int harmonic = 1);

struct RandomCurveOptions {
    int max_harmonic = 3;
    /// |log_rho.cos[n]|, |log_rho.sin[n]| <= amplitude / n.
    double log_rho_amplitude = 0.3;
    /// |f.cos[n]|, |f.sin[n]| <= amplitude / n; keeps f' > 0 while
    /// 2 * max_harmonic * amplitude < 1.
    double angle_amplitude = 0.15;
};

/// Random star-shaped counterclockwise curve with k = 1, seeded deterministically.
CurveSpec random_star_curve(std::uint64_t seed, const RandomCurveOptions& opt = {});

} // namespace lagtorus
