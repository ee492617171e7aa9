#pragma once

// Action-angle coherent states |J, gamma>: moments rho_n, Bessel-form
// normalization, truncation control, state construction and evolution,
// the annihilation and action identities, the radial measure rho(u) with
// weight k(J), resolution-of-unity checks, and overlaps.
//
// Coefficient amplitudes are kept in log space with phases stored
// separately, so labels up to J ~ 1e6 are representable without overflow.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ptcs/model.hpp"
#include "ptcs/quadrature.hpp"
#include "ptcs/specfun.hpp"

namespace ptcs::coherent {

inline bool integer_order(double nu) {
    return std::abs(nu - std::round(nu)) < 1e-12;
}

// ln rho_n with rho_n = e_1 e_2 ... e_n = n! Gamma(n+nu+1)/Gamma(nu+1)
inline double log_moment(int n, double nu) {
    if (n < 0) throw std::domain_error("log_moment: n must be >= 0");
    return specfun::log_gamma(n + 1.0) + specfun::log_gamma(n + nu + 1.0) -
           specfun::log_gamma(nu + 1.0);
}

inline double moment(int n, double nu) { return std::exp(log_moment(n, nu)); }

// ln N(J)^2 with N(J)^2 = Gamma(nu+1) I_nu(2 sqrt J) / J^{nu/2}
inline double log_normalization_sq(double J, double nu) {
    if (!(J >= 0.0)) throw std::domain_error("normalization: J must be >= 0");
    if (J == 0.0) return 0.0;
    return specfun::log_gamma(nu + 1.0) +
           specfun::log_bessel_i(nu, 2.0 * std::sqrt(J)) -
           0.5 * nu * std::log(J);
}

inline double normalization_sq(double J, double nu) {
    return std::exp(log_normalization_sq(J, nu));
}

// Smallest n_max with sum_{n > n_max} J^n/rho_n <= tol * N(J)^2, using the
// geometric bound valid once J/e_{n+1} < 1/2.  Monotone in J and in tol.
inline int choose_truncation(double J, double nu, double tol) {
    if (!(J >= 0.0)) throw std::domain_error("choose_truncation: J must be >= 0");
    if (!(tol > 0.0)) throw std::domain_error("choose_truncation: tol must be > 0");
    if (J == 0.0) return 0;
    const double log_budget = std::log(tol) + log_normalization_sq(J, nu);
    const double logJ = std::log(J);
    for (int n = 0; n < 2000000; ++n) {
        const double e_next = (n + 1.0) * (n + 1.0 + nu);
        const double e_next2 = (n + 2.0) * (n + 2.0 + nu);
        if (J / e_next >= 0.5) continue;
        // tail(n) <= t_{n+1} / (1 - J/e_{n+2})
        const double log_t_next = (n + 1.0) * logJ - log_moment(n + 1, nu);
        const double log_tail_bound =
            log_t_next - std::log(1.0 - J / e_next2);
        if (log_tail_bound <= log_budget) return n;
    }
    throw std::runtime_error("choose_truncation: no convergence");
}

// |J, gamma> restricted to the first n_max+1 levels.  Amplitudes are exact
// values of the infinite expansion unless truncated_normalization is set,
// in which case the norm is fixed to 1 over the kept terms (the modified
// normalization used when working with a hard basis cutoff).
struct CoherentState {
    double J = 0.0;
    double gamma = 0.0;  // stored modulo 2 pi for integer nu
    int n_max = 0;
    double tail_bound = 0.0;
    bool truncated_normalization = false;
    double tol = 0.0;  // requested tail tolerance (0 for explicit n_max)
    ModelParams params;
    std::vector<double> e;        // dimensionless levels 0..n_max
    std::vector<double> log_amp;  // ln |c_n|
    std::vector<double> phase;    // arg c_n

    double weight(int n) const { return std::exp(2.0 * log_amp[n]); }

    std::complex<double> coeff(int n) const {
        return std::polar(std::exp(log_amp[n]), phase[n]);
    }

    std::vector<std::complex<double>> coeffs() const {
        std::vector<std::complex<double>> c(n_max + 1);
        for (int n = 0; n <= n_max; ++n) c[n] = coeff(n);
        return c;
    }

    double norm_sq() const {
        double s = 0.0;
        for (int n = n_max; n >= 0; --n) s += weight(n);
        return s;
    }

    double action_expectation() const {
        double s = 0.0;
        for (int n = n_max; n >= 0; --n) s += weight(n) * e[n];
        return s;
    }
};

namespace detail {

inline double reduce_gamma(double gamma, double nu) {
    if (!integer_order(nu)) return gamma;
    double g = std::fmod(gamma, 2.0 * M_PI);
    if (g < 0.0) g += 2.0 * M_PI;
    return g;
}

inline void fill_levels_and_phases(CoherentState& s) {
    const double nu = s.params.nu();
    s.e.resize(s.n_max + 1);
    s.phase.resize(s.n_max + 1);
    for (int n = 0; n <= s.n_max; ++n) {
        s.e[n] = static_cast<double>(n) * (n + nu);
        s.phase[n] = -s.gamma * s.e[n];
    }
}

}  // namespace detail

inline CoherentState make_state(double J, double gamma, const ModelParams& params,
                                double tol = 1e-14) {
    if (!(J >= 0.0)) throw std::domain_error("make_state: J must be >= 0");
    const double nu = params.nu();
    CoherentState s;
    s.J = J;
    s.gamma = detail::reduce_gamma(gamma, nu);
    s.params = params;
    s.tol = tol;
    s.n_max = choose_truncation(J, nu, tol);
    s.tail_bound = tol;
    detail::fill_levels_and_phases(s);
    s.log_amp.resize(s.n_max + 1);
    const double half_log_nsq = 0.5 * log_normalization_sq(J, nu);
    const double logJ = (J > 0.0) ? std::log(J) : 0.0;
    for (int n = 0; n <= s.n_max; ++n)
        s.log_amp[n] = 0.5 * n * logJ - half_log_nsq - 0.5 * log_moment(n, nu);
    return s;
}

inline CoherentState make_state_truncated(double J, double gamma,
                                          const ModelParams& params, int n_max) {
    if (!(J >= 0.0)) throw std::domain_error("make_state_truncated: J must be >= 0");
    if (n_max < 0) throw std::domain_error("make_state_truncated: n_max must be >= 0");
    const double nu = params.nu();
    CoherentState s;
    s.J = J;
    s.gamma = detail::reduce_gamma(gamma, nu);
    s.params = params;
    s.n_max = n_max;
    s.truncated_normalization = true;
    s.tail_bound = 0.0;
    detail::fill_levels_and_phases(s);
    s.log_amp.resize(n_max + 1);
    const double logJ = (J > 0.0) ? std::log(J) : 0.0;
    // log-sum-exp over the kept terms replaces the closed-form normalization
    double log_nsq = -std::numeric_limits<double>::infinity();
    std::vector<double> lt(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        lt[n] = n * logJ - log_moment(n, nu);
        if (lt[n] > log_nsq) log_nsq = lt[n];
    }
    double acc = 0.0;
    for (int n = 0; n <= n_max; ++n) acc += std::exp(lt[n] - log_nsq);
    log_nsq += std::log(acc);
    for (int n = 0; n <= n_max; ++n) s.log_amp[n] = 0.5 * (lt[n] - log_nsq);
    return s;
}

// temporal stability: gamma -> gamma + omega t
inline CoherentState evolve(const CoherentState& s, double t) {
    const double g = s.gamma + s.params.omega() * t;
    if (s.truncated_normalization)
        return make_state_truncated(s.J, g, s.params, s.n_max);
    return make_state(s.J, g, s.params, s.tol);
}

// || a_gamma c - sqrt(J) c ||_2 against the truncation-induced bound
// sqrt(J)(|c_{n_max}| + sqrt(tail)).
inline CheckReport annihilation_check(const CoherentState& s) {
    const double sqJ = std::sqrt(s.J);
    double acc = 0.0;
    for (int n = 0; n < s.n_max; ++n) {
        const std::complex<double> lower =
            std::sqrt(s.e[n + 1]) * s.coeff(n + 1) *
            std::polar(1.0, -s.gamma * (s.e[n] - s.e[n + 1]));
        acc += std::norm(lower - sqJ * s.coeff(n));
    }
    acc += std::norm(sqJ * s.coeff(s.n_max));
    const double residual = std::sqrt(acc);
    const double bound =
        sqJ * (std::exp(s.log_amp[s.n_max]) + std::sqrt(s.tail_bound)) + 1e-30;
    return CheckReport::make("coherent.annihilation", residual, 10.0 * bound);
}

// sum |c_n|^2 e_n = J
inline CheckReport action_identity(const CoherentState& s) {
    const double lhs = s.action_expectation();
    const double residual = (s.J == 0.0) ? std::abs(lhs) : std::abs(lhs - s.J) / s.J;
    return CheckReport::make("coherent.action_identity", residual, 1e-10);
}

// i <J,gamma| d |J,gamma> against J dgamma for the finite step (dJ, dgamma);
// the discrepancy is second order in the steps.
inline CheckReport darboux_check(double J, double gamma, double dJ, double dgamma,
                                 const ModelParams& params) {
    const CoherentState s = make_state(J, gamma, params);
    const CoherentState s2 = make_state(J + dJ, gamma + dgamma, params);
    std::complex<double> ov(0.0, 0.0);
    const int n_common = std::min(s.n_max, s2.n_max);
    for (int n = 0; n <= n_common; ++n)
        ov += std::conj(s.coeff(n)) * s2.coeff(n);
    const std::complex<double> form = std::complex<double>(0.0, 1.0) * (ov - 1.0);
    const double target = J * dgamma;
    double m3 = 0.0;
    for (int n = 0; n <= s.n_max; ++n) m3 += s.weight(n) * s.e[n] * s.e[n] * s.e[n];
    const double second_order = 0.5 * std::abs(dJ * dgamma) +
                                std::abs(dgamma) * std::abs(dgamma) * std::abs(dgamma) * m3 / 6.0 +
                                1e-12 * std::max(1.0, std::abs(target));
    return CheckReport::make("coherent.darboux", std::abs(form.real() - target),
                             10.0 * second_order);
}

// ------------------------------------------------------- radial measure ----

// rho(u) = (2/Gamma(nu+1)) u^{nu/2} K_nu(2 sqrt u); rho(0) = 1/nu
inline double measure_density(double u, double nu) {
    if (!(u >= 0.0)) throw std::domain_error("measure_density: u must be >= 0");
    if (u == 0.0) return 1.0 / nu;
    const double x = 2.0 * std::sqrt(u);
    const double log_val = std::log(2.0) - specfun::log_gamma(nu + 1.0) +
                           0.5 * nu * std::log(u) - x +
                           std::log(specfun::bessel_k_scaled(nu, x));
    return std::exp(log_val);
}

// k(J) = N(J)^2 rho(J) = 2 I_nu(2 sqrt J) K_nu(2 sqrt J); scaled Bessel
// product, finite up to J ~ 1e6 and beyond
inline double weight(double J, double nu) {
    if (!(J >= 0.0)) throw std::domain_error("weight: J must be >= 0");
    if (J == 0.0) return 1.0 / nu;
    const double x = 2.0 * std::sqrt(J);
    return 2.0 * specfun::bessel_i_scaled(nu, x) * specfun::bessel_k_scaled(nu, x);
}

// int_0^inf u^n rho(u) du / rho_n  (equals 1 when the measure reproduces
// the moments); evaluated as int s^{2n+nu+1} K_nu(2s) ds after u = s^2
inline double measure_moment_ratio(int n, double nu) {
    const double log_pref = std::log(4.0) - specfun::log_gamma(nu + 1.0) -
                            log_moment(n, nu);
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double lg = log_pref + (2.0 * n + nu + 1.0) * std::log(s) -
                          2.0 * s +
                          std::log(specfun::bessel_k_scaled(nu, 2.0 * s));
        return std::exp(lg);
    };
    const double peak = 0.5 * (2.0 * n + nu + 1.0);
    const double width = std::max(2.0, 0.25 * peak);
    return quad::to_infinity(f, 0.0, width, 1e-13);
}

// radial factor of the unity-resolution matrix element:
// int J^{(m+n)/2} rho(J) dJ / sqrt(rho_m rho_n)
inline double resolution_radial_entry(int m, int n, double nu) {
    const double log_pref = std::log(4.0) - specfun::log_gamma(nu + 1.0) -
                            0.5 * (log_moment(m, nu) + log_moment(n, nu));
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double lg = log_pref + (m + n + nu + 1.0) * std::log(s) - 2.0 * s +
                          std::log(specfun::bessel_k_scaled(nu, 2.0 * s));
        return std::exp(lg);
    };
    const double peak = 0.5 * (m + n + nu + 1.0);
    const double width = std::max(2.0, 0.25 * peak);
    return quad::to_infinity(f, 0.0, width, 1e-13);
}

// angular average of e^{-i gamma (e_n - e_m)} over [-G, G] in gamma;
// the infinite-window limit is delta_{mn} (exactly, for integer nu, already
// over one 2 pi period)
inline double angular_average(int m, int n, double nu, double window) {
    if (m == n) return 1.0;
    const double de = (static_cast<double>(n) - m) * (n + m + nu);
    return std::sin(window * de) / (window * de);
}

// integer-nu resolution of unity: angular average kills off-diagonals
// exactly, radial entries must be 1
inline CheckReport resolution_of_unity_check(int n_max, double nu) {
    if (!integer_order(nu))
        throw std::domain_error("resolution_of_unity_check: integer nu expected");
    double worst = 0.0;
    for (int m = 0; m <= n_max; ++m)
        worst = std::max(worst, std::abs(resolution_radial_entry(m, m, nu) - 1.0));
    return CheckReport::make("coherent.resolution_of_unity", worst, 1e-8);
}

// non-integer nu: finite-window off-diagonal averages must decay ~ 1/window
inline CheckReport resolution_offdiag_decay(double nu, int n_max,
                                            const std::vector<double>& windows) {
    double worst = 0.0;
    double prev_max = std::numeric_limits<double>::infinity();
    for (double w : windows) {
        double cur_max = 0.0;
        double bound = 0.0;
        for (int m = 0; m <= n_max; ++m)
            for (int n = m + 1; n <= n_max; ++n) {
                const double de = (static_cast<double>(n) - m) * (n + m + nu);
                const double entry = std::abs(angular_average(m, n, nu, w)) *
                                     resolution_radial_entry(m, n, nu);
                cur_max = std::max(cur_max, entry);
                bound = std::max(bound, 1.0 / (w * de));
            }
        if (cur_max > bound * (1.0 + 1e-9))
            worst = std::max(worst, cur_max - bound);
        if (cur_max >= prev_max) worst = std::max(worst, cur_max - prev_max);
        prev_max = cur_max;
    }
    return CheckReport::make("coherent.resolution_offdiag_decay", worst, 1e-12);
}

// <J2,g2 | J,g> by its series
inline std::complex<double> overlap(double J, double g, double J2, double g2,
                                    double nu) {
    if (!(J >= 0.0) || !(J2 >= 0.0))
        throw std::domain_error("overlap: J must be >= 0");
    const double dg = g - g2;
    const double G = std::sqrt(J * J2);
    if (G == 0.0 && J == 0.0 && J2 == 0.0) return 1.0;
    const int n_top = (G > 0.0) ? choose_truncation(G, nu, 1e-18) + 4 : 4;
    const double half_sum_log_nsq =
        0.5 * (log_normalization_sq(J, nu) + log_normalization_sq(J2, nu));
    const double logG = (G > 0.0) ? std::log(G) : 0.0;
    std::complex<double> acc(0.0, 0.0);
    for (int n = 0; n <= n_top; ++n) {
        if (G == 0.0 && n > 0) break;
        const double la = n * logG - log_moment(n, nu) - half_sum_log_nsq;
        const double en = static_cast<double>(n) * (n + nu);
        acc += std::polar(std::exp(la), -en * dg);
    }
    return acc;
}

}  // namespace ptcs::coherent
