#pragma once

// Physical analysis of the coherent states: weighting distribution and its
// Gaussian large-J limit, number statistics and the Mandel parameter from
// Bessel ratios, autocorrelation and revival structure, position densities,
// expectation-value dynamics and uncertainty products.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ptcs/coherent.hpp"
#include "ptcs/model.hpp"
#include "ptcs/specfun.hpp"
#include "ptcs/spectra.hpp"

namespace ptcs::observables {

// D(n, J, nu) = J^{n+nu/2} / (n! Gamma(n+nu+1) I_nu(2 sqrt J))
inline double weighting_distribution(int n, double J, double nu) {
    if (n < 0) throw std::domain_error("weighting_distribution: n must be >= 0");
    if (!(J >= 0.0)) throw std::domain_error("weighting_distribution: J must be >= 0");
    if (J == 0.0) return n == 0 ? 1.0 : 0.0;
    const double lg = (n + 0.5 * nu) * std::log(J) -
                      specfun::log_gamma(n + 1.0) -
                      specfun::log_gamma(n + nu + 1.0) -
                      specfun::log_bessel_i(nu, 2.0 * std::sqrt(J));
    return std::exp(lg);
}

// large-J limit of D: Gaussian centered at sqrt(J) - nu/2 - 1/4 with
// variance sqrt(J)/2
inline double weighting_gaussian_limit(int n, double J, double nu) {
    const double center = std::sqrt(J) - 0.5 * nu - 0.25;
    const double d = n - center;
    return std::exp(-d * d / std::sqrt(J)) / std::sqrt(M_PI * std::sqrt(J));
}

struct StatisticsReport {
    double mean_n = 0.0;
    double mean_n2 = 0.0;
    double delta_n = 0.0;
    double mandel_q = 0.0;
};

// <n> = sqrt(J) I_{nu+1}/I_nu, <n^2> = <n> + J I_{nu+2}/I_nu,
// Q = sqrt(J) [I_{nu+2}/I_{nu+1} - I_{nu+1}/I_nu]; ratios by continued
// fractions, overflow-safe at any J
inline StatisticsReport number_statistics(double J, double nu) {
    if (!(J >= 0.0)) throw std::domain_error("number_statistics: J must be >= 0");
    StatisticsReport r;
    if (J == 0.0) return r;
    const double x = 2.0 * std::sqrt(J);
    const double r1 = specfun::bessel_i_ratio(nu, x);
    const double r2 = specfun::bessel_i_ratio(nu + 1.0, x);
    r.mean_n = std::sqrt(J) * r1;
    r.mean_n2 = r.mean_n + J * r1 * r2;
    const double var = r.mean_n2 - r.mean_n * r.mean_n;
    r.delta_n = std::sqrt(std::max(0.0, var));
    r.mandel_q = std::sqrt(J) * (r2 - r1);
    return r;
}

// same statistics from the direct sums over |c_n|^2 (independent route)
inline StatisticsReport number_statistics_direct(double J, double nu,
                                                 double tol = 1e-16) {
    StatisticsReport r;
    if (J == 0.0) return r;
    const int n_top = coherent::choose_truncation(J, nu, tol) + 2;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int n = n_top; n >= 0; --n) {
        const double d = weighting_distribution(n, J, nu);
        s0 += d;
        s1 += d * n;
        s2 += d * static_cast<double>(n) * n;
    }
    r.mean_n = s1 / s0;
    r.mean_n2 = s2 / s0;
    const double var = r.mean_n2 - r.mean_n * r.mean_n;
    r.delta_n = std::sqrt(std::max(0.0, var));
    r.mandel_q = var / r.mean_n - 1.0;
    return r;
}

// ------------------------------------------------------- autocorrelation ----

// A(gamma) = sum_n D(n,J,nu) e^{-i e_n gamma}; A(0) = 1, |A| <= 1
inline std::complex<double> autocorrelation(double J, double nu, double gamma) {
    if (J == 0.0) return 1.0;
    const int n_top = coherent::choose_truncation(J, nu, 1e-16) + 2;
    std::complex<double> acc(0.0, 0.0);
    for (int n = 0; n <= n_top; ++n) {
        const double en = static_cast<double>(n) * (n + nu);
        acc += std::polar(weighting_distribution(n, J, nu), -en * gamma);
    }
    return acc;
}

inline std::vector<std::complex<double>> autocorrelation_grid(
    double J, double nu, const std::vector<double>& gammas) {
    std::vector<std::complex<double>> out(gammas.size(), std::complex<double>(1.0, 0.0));
    if (J == 0.0) return out;
    const int n_top = coherent::choose_truncation(J, nu, 1e-16) + 2;
    std::vector<double> d(n_top + 1), e(n_top + 1);
    for (int n = 0; n <= n_top; ++n) {
        d[n] = weighting_distribution(n, J, nu);
        e[n] = static_cast<double>(n) * (n + nu);
    }
    for (size_t i = 0; i < gammas.size(); ++i) {
        std::complex<double> acc(0.0, 0.0);
        for (int n = 0; n <= n_top; ++n) acc += std::polar(d[n], -e[n] * gammas[i]);
        out[i] = acc;
    }
    return out;
}

// local maxima of |A|^2 above a prominence threshold (fractional revivals)
inline std::vector<size_t> revival_peaks(const std::vector<double>& values,
                                         double prominence) {
    std::vector<size_t> peaks;
    for (size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] &&
            values[i] >= prominence)
            peaks.push_back(i);
    }
    return peaks;
}

// ------------------------------------------------------ position density ----

inline GridFunction position_density(const std::vector<double>& x_grid,
                                     const coherent::CoherentState& s) {
    const spectra::EigenstateTable table = spectra::build_table(s.params, s.n_max);
    GridFunction g;
    g.grid = x_grid;
    g.grid_unit = "x";
    g.value_unit = "probability density";
    g.values.resize(x_grid.size());
    std::vector<double> psi;
    const auto c = s.coeffs();
    for (size_t i = 0; i < x_grid.size(); ++i) {
        table.eigenfunctions_at(x_grid[i], psi);
        std::complex<double> amp(0.0, 0.0);
        for (int n = 0; n <= s.n_max; ++n) amp += c[n] * psi[n];
        g.values[i] = std::norm(amp);
    }
    return g;
}

// -------------------------------------------------- expectation dynamics ----

enum class Observable { Position, Momentum };

namespace detail {

inline Eigen::VectorXcd coefficients_at(const coherent::CoherentState& s,
                                        double gamma) {
    Eigen::VectorXcd c(s.n_max + 1);
    for (int n = 0; n <= s.n_max; ++n)
        c(n) = std::polar(std::exp(s.log_amp[n]), -gamma * s.e[n]);
    return c;
}

}  // namespace detail

// <J,gamma| M |J,gamma> over a gamma grid for M = Q or P
inline GridFunction expectation_dynamics(double J, const ModelParams& params,
                                         const std::vector<double>& gammas,
                                         Observable which, int n_max_override = -1,
                                         double tol = 1e-14) {
    const coherent::CoherentState s =
        (n_max_override >= 0)
            ? coherent::make_state_truncated(J, 0.0, params, n_max_override)
            : coherent::make_state(J, 0.0, params, tol);
    const Eigen::MatrixXcd M = (which == Observable::Position)
                                   ? spectra::position_matrix(s.n_max, params)
                                   : spectra::momentum_matrix(s.n_max, params);
    GridFunction g;
    g.grid = gammas;
    g.grid_unit = "gamma";
    g.value_unit = (which == Observable::Position) ? "<Q>" : "<P>";
    g.values.resize(gammas.size());
    for (size_t i = 0; i < gammas.size(); ++i) {
        const Eigen::VectorXcd c = detail::coefficients_at(s, gammas[i]);
        g.values[i] = (c.adjoint() * M * c)(0, 0).real();
    }
    return g;
}

struct UncertaintyDynamics {
    GridFunction dq2;      // (Delta Q)^2
    GridFunction dp2;      // (Delta P)^2
    GridFunction product;  // (Delta Q)^2 (Delta P)^2
};

// Variances from the truncated matrices; Q^2 and P^2 are squares of the
// truncated Q and P (the momentum second moment is the ||P c||^2 form).
// Truncation bias is measured by re-running with a doubled basis.
inline UncertaintyDynamics uncertainty_dynamics(double J, const ModelParams& params,
                                                const std::vector<double>& gammas,
                                                int n_max_override = -1,
                                                double tol = 1e-14) {
    const coherent::CoherentState s =
        (n_max_override >= 0)
            ? coherent::make_state_truncated(J, 0.0, params, n_max_override)
            : coherent::make_state(J, 0.0, params, tol);
    const Eigen::MatrixXcd Q = spectra::position_matrix(s.n_max, params);
    const Eigen::MatrixXcd P = spectra::momentum_matrix(s.n_max, params);
    const Eigen::MatrixXcd Q2 = Q * Q;
    const Eigen::MatrixXcd P2 = P.adjoint() * P;
    UncertaintyDynamics u;
    u.dq2.grid = u.dp2.grid = u.product.grid = gammas;
    u.dq2.grid_unit = u.dp2.grid_unit = u.product.grid_unit = "gamma";
    u.dq2.value_unit = "(Delta Q)^2";
    u.dp2.value_unit = "(Delta P)^2";
    u.product.value_unit = "(Delta Q)^2 (Delta P)^2";
    u.dq2.values.resize(gammas.size());
    u.dp2.values.resize(gammas.size());
    u.product.values.resize(gammas.size());
    for (size_t i = 0; i < gammas.size(); ++i) {
        const Eigen::VectorXcd c = detail::coefficients_at(s, gammas[i]);
        const double q = (c.adjoint() * Q * c)(0, 0).real();
        const double q2 = (c.adjoint() * Q2 * c)(0, 0).real();
        const double p = (c.adjoint() * P * c)(0, 0).real();
        const double p2 = (c.adjoint() * P2 * c)(0, 0).real();
        u.dq2.values[i] = q2 - q * q;
        u.dp2.values[i] = p2 - p * p;
        u.product.values[i] = u.dq2.values[i] * u.dp2.values[i];
    }
    return u;
}

// ------------------------------------------------------------- revivals ----

struct RevivalTimes {
    double t_cl = 0.0;   // classical period 2 pi m a^2 / (hbar (nbar + nu/2))
    double t_rev = 0.0;  // revival time 4 pi m a^2 / hbar = (2 nbar + nu) t_cl
    int n_bar = 0;       // round(<n>), half-up
};

inline RevivalTimes revival_times(double J, const ModelParams& params) {
    const double nu = params.nu();
    const StatisticsReport st = number_statistics(J, nu);
    RevivalTimes r;
    r.n_bar = static_cast<int>(std::floor(st.mean_n + 0.5));
    const double ma2 = params.mass * params.a * params.a;
    r.t_cl = 2.0 * M_PI * ma2 / (params.hbar * (r.n_bar + 0.5 * nu));
    r.t_rev = 4.0 * M_PI * ma2 / params.hbar;
    return r;
}

}  // namespace ptcs::observables
