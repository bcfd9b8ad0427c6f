#include "lagtorus/curve.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lagtorus/errors.hpp"
#include "lagtorus/quadrature.hpp"

namespace lagtorus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PeriodicQuadratureOptions fixed_nodes(std::size_t n) {
    PeriodicQuadratureOptions opt;
    opt.initial_nodes = n;
    return opt;
}

} // namespace

double CurveSpec::rho(double beta) const { return std::exp(log_rho(beta)); }

double CurveSpec::angle(double beta) const { return static_cast<double>(k) * beta + f_periodic(beta); }

Complex CurveSpec::point(double beta) const { return std::polar(rho(beta), angle(beta)); }

Complex CurveSpec::velocity(double beta) const {
    const auto L = log_rho.derivatives<1>(beta);
    const auto P = f_periodic.derivatives<1>(beta);
    const double r = std::exp(L[0]);
    const double fdot = static_cast<double>(k) + P[1];
    return Complex(r * L[1], r * fdot) * std::polar(1.0, static_cast<double>(k) * beta + P[0]);
}

CurveSpec CurveSpec::scaled(double lambda) const {
    if (!(lambda > 0.0)) throw DomainError("scale factor must be positive");
    CurveSpec out = *this;
    out.log_rho = log_rho.shifted(std::log(lambda));
    return out;
}

CurveSpec CurveSpec::rotated(double theta) const {
    CurveSpec out = *this;
    out.f_periodic = f_periodic.shifted(theta);
    return out;
}

CurveJet eval_jet(const CurveSpec& curve, double beta, double threshold) {
    const auto L = curve.log_rho.derivatives<3>(beta);
    const auto P = curve.f_periodic.derivatives<3>(beta);

    CurveJet j;
    j.beta = beta;
    j.rho = std::exp(L[0]);
    j.rho_d1 = j.rho * L[1];
    j.rho_d2 = j.rho * (L[2] + L[1] * L[1]);
    j.rho_d3 = j.rho * (L[3] + 3.0 * L[1] * L[2] + L[1] * L[1] * L[1]);
    j.f_val = static_cast<double>(curve.k) * beta + P[0];
    j.f_d1 = static_cast<double>(curve.k) + P[1];
    j.f_d2 = P[2];
    j.f_d3 = P[3];
    j.v = L[1];
    j.v_d1 = L[2];
    j.v_d2 = L[3];
    j.w = j.f_d1;
    j.w_d1 = j.f_d2;
    j.w_d2 = j.f_d3;
    j.tau = Complex(j.v, j.w);

    if (!(j.speed_sq() > threshold)) {
        std::ostringstream msg;
        msg << "curve is not regular at beta=" << beta << " (v^2+w^2=" << j.speed_sq() << ")";
        throw RegularityViolation(msg.str());
    }
    return j;
}

void check_regularity(const CurveSpec& curve, std::size_t grid, double threshold) {
    for (std::size_t i = 0; i < grid; ++i) eval_jet(curve, grid_angle(i, grid), threshold);
}

double winding_integral(const CurveSpec& curve, std::size_t n_samples) {
    const double im = periodic_trapezoid(
        [&](double b) {
            const Complex ratio = curve.velocity(b) / curve.point(b);
            return ratio.imag();
        },
        fixed_nodes(n_samples));
    return im / kTwoPi;
}

int winding_number(const CurveSpec& curve, std::size_t n_samples) {
    check_regularity(curve, n_samples);
    const double numeric = winding_integral(curve, n_samples);
    if (std::abs(numeric - static_cast<double>(curve.k)) >= 0.5) {
        std::ostringstream msg;
        msg << "winding quadrature " << numeric << " disagrees with structural k=" << curve.k;
        throw CrossCheckMismatch(msg.str());
    }
    return curve.k;
}

const char* to_string(Orientation o) {
    switch (o) {
    case Orientation::CounterClockwise: return "counterclockwise";
    case Orientation::Clockwise: return "clockwise";
    case Orientation::Degenerate: return "degenerate";
    }
    return "unknown";
}

double signed_area(const CurveSpec& curve, std::size_t n_samples) {
    return 0.5 * periodic_trapezoid(
                     [&](double b) {
                         const Complex p = curve.point(b);
                         const Complex d = curve.velocity(b);
                         return p.real() * d.imag() - p.imag() * d.real();
                     },
                     fixed_nodes(n_samples));
}

Orientation orientation_check(const CurveSpec& curve, std::size_t n_samples) {
    check_regularity(curve, n_samples);
    const double area = signed_area(curve, n_samples);
    const double scale = std::exp(2.0 * curve.log_rho.a0);
    if (std::abs(area) <= 1e-14 * scale) return Orientation::Degenerate;
    return area > 0.0 ? Orientation::CounterClockwise : Orientation::Clockwise;
}

double u_parameter(const CurveSpec& curve, double beta) {
    if (beta < 0.0 || beta > kTwoPi) throw DomainError("u_parameter expects beta in [0, 2pi]");
    if (beta == 0.0) return 0.0;
    auto speed = [&](double b) { return std::abs(eval_jet(curve, b).tau); };
    const int pieces = std::max(1, static_cast<int>(std::ceil(beta / (0.5 * std::numbers::pi))));
    double total = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double a = beta * p / pieces;
        const double b = beta * (p + 1) / pieces;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(speed, a, b, 12, 1e-14);
    }
    return total;
}

double u_star(const CurveSpec& curve) {
    return periodic_trapezoid([&](double b) { return std::abs(eval_jet(curve, b).tau); });
}

double signed_curvature(const CurveJet& j) {
    const double s2 = j.speed_sq();
    const double s = std::sqrt(s2);
    return ((j.w_d1 * j.v - j.w * j.v_d1) / (s2 * s) + j.w / s) / j.rho;
}

double signed_curvature(const CurveSpec& curve, double beta) { return signed_curvature(eval_jet(curve, beta)); }

double total_curvature(const CurveSpec& curve) {
    return periodic_trapezoid([&](double b) {
        const CurveJet j = eval_jet(curve, b);
        return signed_curvature(j) * j.rho * std::sqrt(j.speed_sq());
    });
}

CurveSpec origin_circle(double radius) {
    if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
    CurveSpec c;
    c.log_rho.a0 = std::log(radius);
    c.k = 1;
    return c;
}

CurveSpec offset_circle(Complex center, double radius) {
    if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
    const double d = std::abs(center);
    const double ratio = d > radius ? radius / d : d / radius;
    if (ratio > 1.0 - 1e-3) throw DomainError("circle passes too close to the origin");

    CurveSpec c;
    // log(1 + q e^{+-i n beta}) = sum_n (-1)^{n+1} q^n e^{+-i n beta} / n
    const bool encloses = d < radius;
    const Complex q = encloses ? center / radius : radius / center;
    if (encloses) {
        c.k = 1;
        c.log_rho.a0 = std::log(radius);
    } else {
        c.k = 0;
        c.log_rho.a0 = std::log(d);
        c.f_periodic.a0 = std::arg(center);
    }
    if (d == 0.0) return c;

    Complex qn = 1.0;
    for (int n = 1; n < 4000; ++n) {
        qn *= q;
        const Complex a = (n % 2 == 1 ? 1.0 : -1.0) * qn / static_cast<double>(n);
        if (std::abs(a) < 1e-18) break;
        if (encloses) {
            // a e^{-i n beta}
            c.log_rho.cos.push_back(a.real());
            c.log_rho.sin.push_back(a.imag());
            c.f_periodic.cos.push_back(a.imag());
            c.f_periodic.sin.push_back(-a.real());
        } else {
            // a e^{+i n beta}
            c.log_rho.cos.push_back(a.real());
            c.log_rho.sin.push_back(-a.imag());
            c.f_periodic.cos.push_back(a.imag());
            c.f_periodic.sin.push_back(a.real());
        }
    }
    return c;
}

CurveSpec radial_cosine(double amplitude, int harmonic) {
    if (harmonic < 1) throw DomainError("harmonic must be >= 1");
    CurveSpec c;
    c.k = 1;
    c.log_rho.cos.assign(static_cast<std::size_t>(harmonic), 0.0);
    c.log_rho.cos.back() = amplitude;
    return c;
}

CurveSpec random_star_curve(std::uint64_t seed, const RandomCurveOptions& opt) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    CurveSpec c;
    c.k = 1;
    c.log_rho.a0 = 0.5 * unit(rng);
    for (int n = 1; n <= opt.max_harmonic; ++n) {
        const double lr = opt.log_rho_amplitude / n;
        const double fa = opt.angle_amplitude / n;
        c.log_rho.cos.push_back(lr * unit(rng));
        c.log_rho.sin.push_back(lr * unit(rng));
        c.f_periodic.cos.push_back(fa * unit(rng));
        c.f_periodic.sin.push_back(fa * unit(rng));
    }
    return c;
}

} // namespace lagtorus
