#pragma once

// Classical dynamics in the infinite well and in the trigonometric
// Poeschl-Teller potentials: trajectories, periods, turning points, phase
// curves, action-angle transforms and the Maupertuis principal action.
//
// The well velocity is piecewise constant and its acceleration is a pair of
// Dirac combs; the latter is represented as a list of wall-hit impulse
// events rather than sampled values.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ptcs/quadrature.hpp"

namespace ptcs::classical {

// Classical coupling V0 is a free parameter here (the quantum convention
// V0 = hbar^2/4ma^2 does not apply to pure classical runs).
struct ClassicalParams {
    double mass = 1.0;
    double a = 1.0;       // interval is [0, pi*a]
    double v0 = 1.0;      // Poeschl-Teller coupling
    double lambda = 2.0;  // > 1
    double kappa = 2.0;   // > 1
};

struct ClassicalState {
    double q = 0.0;
    double p = 0.0;
};

struct ActionAngle {
    double action = 0.0;
    double angle = 0.0;
};

struct WallEvent {
    double t;         // impact time
    double dv;        // velocity jump (+2v at x=0, -2v at x=pi*a)
};

// ---------------------------------------------------------------- well ----

inline double well_speed(double E, const ClassicalParams& p) {
    if (!(E > 0.0)) throw std::domain_error("well: energy must be > 0");
    return std::sqrt(2.0 * E / p.mass);
}

// round-trip time T = 2 pi a sqrt(m / 2E)
inline double well_period(double E, const ClassicalParams& p) {
    return 2.0 * M_PI * p.a / well_speed(E, p);
}

// triangle wave with x(0) = 0
inline double well_trajectory(double t, double E, const ClassicalParams& p) {
    const double T = well_period(E, p);
    double tau = std::fmod(t, T);
    if (tau < 0.0) tau += T;
    const double v = well_speed(E, p);
    return (tau <= 0.5 * T) ? v * tau : 2.0 * M_PI * p.a - v * tau;
}

// periodized Haar function (+v on the outgoing half period)
inline double well_velocity(double t, double E, const ClassicalParams& p) {
    const double T = well_period(E, p);
    double tau = std::fmod(t, T);
    if (tau < 0.0) tau += T;
    const double v = well_speed(E, p);
    return (tau <= 0.5 * T) ? v : -v;
}

inline std::vector<WallEvent> well_wall_events(double E, const ClassicalParams& p,
                                               double t_max) {
    const double T = well_period(E, p);
    const double v = well_speed(E, p);
    std::vector<WallEvent> events;
    for (int n = 0; 0.5 * n * T <= t_max; ++n) {
        const double t = 0.5 * n * T;
        events.push_back({t, (n % 2 == 0) ? 2.0 * v : -2.0 * v});
    }
    return events;
}

// partial Fourier sum  pi a/2 - (4a/pi) sum_{n<n_terms} cos(2pi(2n+1)t/T)/(2n+1)^2
inline double well_fourier_trajectory(double t, double E, const ClassicalParams& p,
                                      int n_terms) {
    if (n_terms < 1) throw std::domain_error("well_fourier_trajectory: n_terms >= 1");
    const double T = well_period(E, p);
    double sum = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const double k = 2.0 * n + 1.0;
        sum += std::cos(2.0 * M_PI * k * t / T) / (k * k);
    }
    return 0.5 * M_PI * p.a - (4.0 * p.a / M_PI) * sum;
}

// uniform tail bound for the truncated Fourier series
inline double well_fourier_tail_bound(const ClassicalParams& p, int n_terms) {
    // sum_{n>=n_terms} 1/(2n+1)^2 <= integral bound 1/(2(2 n_terms - 1))
    return (4.0 * p.a / M_PI) / (2.0 * (2.0 * n_terms - 1.0));
}

inline double well_action(double E, const ClassicalParams& p) {
    if (E < 0.0) throw std::domain_error("well_action: energy must be >= 0");
    return p.a * std::sqrt(2.0 * p.mass * E);
}

inline ActionAngle well_action_angle(double q, double p_mom, double E,
                                     const ClassicalParams& p,
                                     double off_shell_tol = 1e-9) {
    const double e_check = 0.5 * p_mom * p_mom / p.mass;
    if (std::abs(e_check - E) > off_shell_tol * std::max(1.0, E))
        throw std::domain_error("well_action_angle: state not on the energy shell");
    ActionAngle aa;
    aa.action = std::abs(p_mom) * p.a;
    aa.angle = (p_mom >= 0.0) ? q / p.a : 2.0 * M_PI - q / p.a;
    return aa;
}

// ------------------------------------------------------- Poeschl-Teller ----

inline double pt_potential(double q, const ClassicalParams& p) {
    const double c = std::cos(0.5 * q / p.a);
    const double s = std::sin(0.5 * q / p.a);
    return 0.5 * p.v0 * (p.lambda * (p.lambda - 1.0) / (c * c) +
                         p.kappa * (p.kappa - 1.0) / (s * s));
}

inline double pt_potential_derivative(double q, const ClassicalParams& p) {
    const double c = std::cos(0.5 * q / p.a);
    const double s = std::sin(0.5 * q / p.a);
    return 0.5 * p.v0 / p.a *
           (p.lambda * (p.lambda - 1.0) * s / (c * c * c) -
            p.kappa * (p.kappa - 1.0) * c / (s * s * s));
}

inline double pt_vmin(const ClassicalParams& p) {
    const double r = std::sqrt(p.lambda * (p.lambda - 1.0)) +
                     std::sqrt(p.kappa * (p.kappa - 1.0));
    return 0.5 * p.v0 * r * r;
}

// potential minimum location: tan^2(x0/2a) = sqrt(kappa(kappa-1)/lambda(lambda-1))
inline double pt_minimum_location(const ClassicalParams& p) {
    const double t2 = std::sqrt(p.kappa * (p.kappa - 1.0) /
                                (p.lambda * (p.lambda - 1.0)));
    return 2.0 * p.a * std::atan(std::sqrt(t2));
}

namespace detail {

struct PTOrbit {
    double alpha, beta, delta;  // alpha = V0 lam(lam-1)/E, etc.
};

inline PTOrbit pt_orbit(double E, const ClassicalParams& p) {
    if (!(E > pt_vmin(p)))
        throw std::domain_error("pt: energy below the potential minimum");
    PTOrbit o;
    o.alpha = p.v0 * p.lambda * (p.lambda - 1.0) / E;
    o.beta = p.v0 * p.kappa * (p.kappa - 1.0) / E;
    const double sp = std::sqrt(o.alpha) + std::sqrt(o.beta);
    const double sm = std::sqrt(o.alpha) - std::sqrt(o.beta);
    o.delta = (1.0 - 0.5 * sp * sp) * (1.0 - 0.5 * sm * sm);
    return o;
}

inline double clamped_acos(double x) {
    return std::acos(std::min(1.0, std::max(-1.0, x)));
}

}  // namespace detail

// ordered turning points (x_-, x_+); V(x_-) = V(x_+) = E
inline std::pair<double, double> pt_turning_points(double E,
                                                   const ClassicalParams& p) {
    const auto o = detail::pt_orbit(E, p);
    const double sd = std::sqrt(std::max(0.0, o.delta));
    const double xm = p.a * detail::clamped_acos(0.5 * (o.alpha - o.beta) + sd);
    const double xp = p.a * detail::clamped_acos(0.5 * (o.alpha - o.beta) - sd);
    return {xm, xp};
}

// x(t) = a arccos[(alpha-beta)/2 + sqrt(Delta) cos(sqrt(2E/m) t/a)], x(0) = x_-
inline double pt_trajectory(double t, double E, const ClassicalParams& p) {
    const auto o = detail::pt_orbit(E, p);
    const double omega_cl = std::sqrt(2.0 * E / p.mass) / p.a;
    const double arg = 0.5 * (o.alpha - o.beta) +
                       std::sqrt(std::max(0.0, o.delta)) * std::cos(omega_cl * t);
    return p.a * detail::clamped_acos(arg);
}

inline double pt_velocity(double t, double E, const ClassicalParams& p) {
    const auto o = detail::pt_orbit(E, p);
    const double omega_cl = std::sqrt(2.0 * E / p.mass) / p.a;
    const double sd = std::sqrt(std::max(0.0, o.delta));
    const double arg = 0.5 * (o.alpha - o.beta) + sd * std::cos(omega_cl * t);
    const double denom = std::sqrt(std::max(1e-300, 1.0 - arg * arg));
    return p.a * sd * omega_cl * std::sin(omega_cl * t) / denom;
}

inline double pt_acceleration(double t, double E, const ClassicalParams& p) {
    return -pt_potential_derivative(pt_trajectory(t, E, p), p) / p.mass;
}

// same closed form as the well: independent of V0, lambda, kappa
inline double pt_period(double E, const ClassicalParams& p) {
    if (!(E > 0.0)) throw std::domain_error("pt_period: energy must be > 0");
    return 2.0 * M_PI * p.a * std::sqrt(0.5 * p.mass / E);
}

// A = a sqrt(2mE) - a sqrt(m V0) (sqrt(lam(lam-1)) + sqrt(kap(kap-1)));
// normalized so A(V_min) = 0
inline double pt_action(double E, const ClassicalParams& p) {
    if (E < pt_vmin(p) * (1.0 - 1e-12))
        throw std::domain_error("pt_action: energy below the potential minimum");
    const double r = std::sqrt(p.lambda * (p.lambda - 1.0)) +
                     std::sqrt(p.kappa * (p.kappa - 1.0));
    return p.a * std::sqrt(2.0 * p.mass * E) - p.a * std::sqrt(p.mass * p.v0) * r;
}

// |p|(q) on the energy-E orbit; vanishes at the turning points
inline double pt_phase_curve(double q, double E, const ClassicalParams& p) {
    const auto [xm, xp] = pt_turning_points(E, p);
    if (q < xm - 1e-12 * p.a || q > xp + 1e-12 * p.a)
        throw std::domain_error("pt_phase_curve: q outside the allowed interval");
    const auto o = detail::pt_orbit(E, p);
    const double cq = std::cos(q / p.a);
    const double bracket = 1.0 - (o.alpha + o.beta) + (o.alpha - o.beta) * cq - cq * cq;
    return std::sqrt(2.0 * p.mass * E) * std::sqrt(std::max(0.0, bracket)) /
           std::sin(q / p.a);
}

// unshifted canonical radius a [p^2 + 2 m V(q)]^{1/2}
inline double pt_action_unshifted(double q, double p_mom, const ClassicalParams& p) {
    return p.a * std::sqrt(p_mom * p_mom + 2.0 * p.mass * pt_potential(q, p));
}

inline ActionAngle pt_action_angle(double q, double p_mom, double E,
                                   const ClassicalParams& p,
                                   double off_shell_tol = 1e-9) {
    const double e_check = 0.5 * p_mom * p_mom / p.mass + pt_potential(q, p);
    if (std::abs(e_check - E) > off_shell_tol * std::max(1.0, E))
        throw std::domain_error("pt_action_angle: state not on the energy shell");
    const auto o = detail::pt_orbit(E, p);
    ActionAngle aa;
    aa.action = pt_action_unshifted(q, p_mom, p) -
                p.a * std::sqrt(2.0 * p.mass * pt_vmin(p));
    const double phi = detail::clamped_acos(
        (std::cos(q / p.a) - 0.5 * (o.alpha - o.beta)) /
        std::sqrt(std::max(1e-300, o.delta)));
    aa.angle = (p_mom >= 0.0) ? phi : 2.0 * M_PI - phi;
    return aa;
}

// Maupertuis principal action S(q) = -a sqrt(2mE) int_{u_-}^{u(q)}
// [1-(alpha+beta)+(alpha-beta)s-s^2]^{1/2} ds/(1-s^2),  u = cos(x/a).
// Evaluated after s = (alpha-beta)/2 + sqrt(Delta) cos(phi), which removes
// the square-root turning-point singularity; dS/dq = p on the upper branch.
inline double pt_principal_action(double q, double E, const ClassicalParams& p) {
    const auto [xm, xp] = pt_turning_points(E, p);
    if (q < xm - 1e-12 * p.a || q > xp + 1e-12 * p.a)
        throw std::domain_error("pt_principal_action: q outside the allowed interval");
    const auto o = detail::pt_orbit(E, p);
    const double sd = std::sqrt(std::max(1e-300, o.delta));
    const double ab2 = 0.5 * (o.alpha - o.beta);
    const double phi_q = detail::clamped_acos((std::cos(q / p.a) - ab2) / sd);
    auto integrand = [&](double phi) {
        const double s = ab2 + sd * std::cos(phi);
        const double sn = std::sin(phi);
        return sn * sn / (1.0 - s * s);
    };
    const double integral = quad::gl_refined(integrand, 0.0, phi_q, 1e-13);
    return p.a * std::sqrt(2.0 * p.mass * E) * o.delta * integral;
}

// ------------------------------------------------------------ dispatch ----

inline ActionAngle action_angle(double q, double p_mom, double E,
                                const ClassicalParams& p, bool poschl_teller) {
    return poschl_teller ? pt_action_angle(q, p_mom, E, p)
                         : well_action_angle(q, p_mom, E, p);
}

}  // namespace ptcs::classical
