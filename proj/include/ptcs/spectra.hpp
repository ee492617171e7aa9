#pragma once

// Quantum eigenproblem for the infinite well and the Poeschl-Teller family:
// spectra, eigenfunctions and their derivatives, momentum basis, matrix
// elements of Q and P over the energy basis, scaling and limit checks.
//
// Both spectra read E_n = hbar*omega * e_n with e_n = n(n+nu); the well is
// nu = 2 with sine eigenfunctions, the Poeschl-Teller eigenfunctions are
// (cos x/2a)^lambda (sin x/2a)^kappa 2F1(-n, n+nu; kappa+1/2; sin^2 x/2a)
// normalized numerically.  The terminating 2F1 is evaluated through the
// equivalent Jacobi polynomial three-term recurrence, which is stable for
// all n and arguments (the direct alternating sum loses digits near z = 1).

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ptcs/model.hpp"
#include "ptcs/quadrature.hpp"
#include "ptcs/specfun.hpp"

namespace ptcs::spectra {

struct EnergyLevel {
    double e;  // dimensionless, n(n+nu)
    double E;  // hbar * omega * e
};

inline EnergyLevel energy_level(int n, const ModelParams& p) {
    if (n < 0) throw std::domain_error("energy_level: n must be >= 0");
    EnergyLevel lv;
    lv.e = static_cast<double>(n) * (n + p.nu());
    lv.E = p.energy_scale() * lv.e;
    return lv;
}

inline double well_eigenfunction(int n, double x, const ModelParams& p) {
    if (x < 0.0 || x > p.width() * (1.0 + 1e-14))
        throw std::domain_error("well_eigenfunction: x outside [0, pi a]");
    return std::sqrt(2.0 / (M_PI * p.a)) * std::sin((n + 1.0) * x / p.a);
}

inline double well_eigenfunction_derivative(int n, double x, const ModelParams& p) {
    const double k = (n + 1.0) / p.a;
    return std::sqrt(2.0 / (M_PI * p.a)) * k * std::cos(k * x);
}

namespace detail {

// Jacobi polynomial P_n^{(alpha,beta)}(u), three-term recurrence; fills
// out[0..n_max].
inline void jacobi_all(int n_max, double alpha, double beta, double u,
                       double* out) {
    out[0] = 1.0;
    if (n_max == 0) return;
    out[1] = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (u - 1.0);
    for (int n = 2; n <= n_max; ++n) {
        const double ab = alpha + beta;
        const double c1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0);
        const double c2 = (2.0 * n + ab - 1.0) *
                          ((2.0 * n + ab) * (2.0 * n + ab - 2.0) * u +
                           alpha * alpha - beta * beta);
        const double c3 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) *
                          (2.0 * n + ab);
        out[n] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1;
    }
}

inline double jacobi_p(int n, double alpha, double beta, double u) {
    std::vector<double> buf(n + 1);
    jacobi_all(n, alpha, beta, u, buf.data());
    return buf[n];
}

// scale factor n!/(c)_n turning Jacobi values into 2F1(-n, n+nu; c; z)
inline double jacobi_to_2f1_scale(int n, double c) {
    return std::exp(specfun::log_gamma(n + 1.0) + specfun::log_gamma(c) -
                    specfun::log_gamma(c + n));
}

// 2F1(-n, n+lambda+kappa; kappa+1/2; z) via the Jacobi route
inline double pt_hyp2f1(int n, double lambda, double kappa, double z) {
    const double alpha = kappa - 0.5;
    const double beta = lambda - 0.5;
    return jacobi_to_2f1_scale(n, kappa + 0.5) *
           jacobi_p(n, alpha, beta, 1.0 - 2.0 * z);
}

struct PTPointEval {
    double value;   // unnormalized Psi
    double d1;      // first derivative
    double d2;      // second derivative
};

// unnormalized eigenfunction and derivatives at one interior point
inline PTPointEval pt_point(int n, double x, const ModelParams& p) {
    const double lambda = p.lambda, kappa = p.kappa;
    const double inv2a = 0.5 / p.a;
    const double s = std::sin(x * inv2a);
    const double c = std::cos(x * inv2a);
    const double z = s * s;
    const double u = 1.0 - 2.0 * z;

    const double alpha = kappa - 0.5;
    const double beta = lambda - 0.5;
    const double scale = jacobi_to_2f1_scale(n, kappa + 0.5);
    const double nab = n + alpha + beta + 1.0;  // n + lambda + kappa
    const double F = scale * jacobi_p(n, alpha, beta, u);
    const double Fz = (n >= 1)
                          ? -scale * nab * jacobi_p(n - 1, alpha + 1.0, beta + 1.0, u)
                          : 0.0;
    const double Fzz =
        (n >= 2) ? scale * nab * (nab + 1.0) *
                       jacobi_p(n - 2, alpha + 2.0, beta + 2.0, u)
                 : 0.0;

    // prefactor A = c^lambda s^kappa and its x-derivatives
    const double A = std::pow(c, lambda) * std::pow(s, kappa);
    const double A1 = inv2a * (kappa * std::pow(c, lambda + 1.0) * std::pow(s, kappa - 1.0) -
                               lambda * std::pow(c, lambda - 1.0) * std::pow(s, kappa + 1.0));
    const double A2 =
        inv2a * inv2a *
        (kappa * (kappa - 1.0) * std::pow(c, lambda + 2.0) * std::pow(s, kappa - 2.0) +
         lambda * (lambda - 1.0) * std::pow(c, lambda - 2.0) * std::pow(s, kappa + 2.0) -
         (2.0 * lambda * kappa + lambda + kappa) * std::pow(c, lambda) * std::pow(s, kappa));

    const double zp = s * c / p.a;                       // dz/dx
    const double zpp = (c * c - s * s) / (2.0 * p.a * p.a);  // d2z/dx2

    PTPointEval ev;
    ev.value = A * F;
    ev.d1 = A1 * F + A * Fz * zp;
    ev.d2 = A2 * F + 2.0 * A1 * Fz * zp + A * (Fzz * zp * zp + Fz * zpp);
    return ev;
}

}  // namespace detail

// Immutable eigenstate table: levels plus (for Poeschl-Teller) the numeric
// normalizers c_n fixed by integral |Psi_n|^2 = 1 with positive leading sign.
struct EigenstateTable {
    ModelParams params;
    int n_max = 0;
    std::vector<double> e;           // dimensionless levels
    std::vector<double> energy;      // hbar omega e_n
    std::vector<double> normalizer;  // squared norms of the raw PT profile

    double eigenfunction(int n, double x) const {
        if (n < 0 || n > n_max) throw std::out_of_range("eigenfunction: n");
        if (params.family == Potential::Well)
            return well_eigenfunction(n, x, params);
        if (x < 0.0 || x > params.width() * (1.0 + 1e-14))
            throw std::domain_error("eigenfunction: x outside [0, pi a]");
        if (x <= 0.0 || x >= params.width()) return 0.0;
        return detail::pt_point(n, x, params).value / std::sqrt(normalizer[n]);
    }

    double eigenfunction_derivative(int n, double x) const {
        if (n < 0 || n > n_max) throw std::out_of_range("eigenfunction_derivative: n");
        if (params.family == Potential::Well)
            return well_eigenfunction_derivative(n, x, params);
        return detail::pt_point(n, x, params).d1 / std::sqrt(normalizer[n]);
    }

    double eigenfunction_second_derivative(int n, double x) const {
        if (n < 0 || n > n_max) throw std::out_of_range("eigenfunction_second_derivative: n");
        if (params.family == Potential::Well) {
            const double k = (n + 1.0) / params.a;
            return -k * k * well_eigenfunction(n, x, params);
        }
        return detail::pt_point(n, x, params).d2 / std::sqrt(normalizer[n]);
    }

    // all eigenfunctions 0..n_max at one point (shared recurrence)
    void eigenfunctions_at(double x, std::vector<double>& out) const {
        out.assign(n_max + 1, 0.0);
        if (params.family == Potential::Well) {
            const double pref = std::sqrt(2.0 / (M_PI * params.a));
            for (int n = 0; n <= n_max; ++n)
                out[n] = pref * std::sin((n + 1.0) * x / params.a);
            return;
        }
        if (x <= 0.0 || x >= params.width()) return;
        const double inv2a = 0.5 / params.a;
        const double s = std::sin(x * inv2a);
        const double c = std::cos(x * inv2a);
        const double A = std::pow(c, params.lambda) * std::pow(s, params.kappa);
        const double u = 1.0 - 2.0 * s * s;
        std::vector<double> jac(n_max + 1);
        detail::jacobi_all(n_max, params.kappa - 0.5, params.lambda - 0.5, u,
                           jac.data());
        for (int n = 0; n <= n_max; ++n) {
            const double scale = detail::jacobi_to_2f1_scale(n, params.kappa + 0.5);
            out[n] = A * scale * jac[n] / std::sqrt(normalizer[n]);
        }
    }
};

inline EigenstateTable build_table(const ModelParams& p, int n_max) {
    if (n_max < 0) throw std::domain_error("build_table: n_max must be >= 0");
    EigenstateTable t;
    t.params = p;
    t.n_max = n_max;
    t.e.resize(n_max + 1);
    t.energy.resize(n_max + 1);
    t.normalizer.assign(n_max + 1, 1.0);
    for (int n = 0; n <= n_max; ++n) {
        const auto lv = energy_level(n, p);
        t.e[n] = lv.e;
        t.energy[n] = lv.E;
    }
    if (p.family == Potential::Well) return t;

    // c_n by Gauss-Legendre, node count doubled until two refinements agree
    std::vector<double> prev(n_max + 1, 0.0);
    for (int order = 128; order <= 8192; order *= 2) {
        std::vector<double> cur(n_max + 1, 0.0);
        const auto& ns = quad::gauss_legendre(order);
        const double half = 0.5 * p.width();
        std::vector<double> jac(n_max + 1);
        for (int i = 0; i < order; ++i) {
            const double x = half * (1.0 + ns.x[i]);
            const double w = half * ns.w[i];
            const double inv2a = 0.5 / p.a;
            const double s = std::sin(x * inv2a);
            const double c = std::cos(x * inv2a);
            const double A = std::pow(c, p.lambda) * std::pow(s, p.kappa);
            detail::jacobi_all(n_max, p.kappa - 0.5, p.lambda - 0.5,
                               1.0 - 2.0 * s * s, jac.data());
            for (int n = 0; n <= n_max; ++n) {
                const double scale = detail::jacobi_to_2f1_scale(n, p.kappa + 0.5);
                const double v = A * scale * jac[n];
                cur[n] += w * v * v;
            }
        }
        double rel = 0.0;
        for (int n = 0; n <= n_max; ++n)
            rel = std::max(rel, std::abs(cur[n] - prev[n]) / cur[n]);
        prev = cur;
        if (rel < 1e-12) break;
    }
    t.normalizer = prev;
    return t;
}

inline double pt_eigenfunction(int n, double x, const ModelParams& p) {
    if (p.family != Potential::PoeschlTeller)
        throw std::domain_error("pt_eigenfunction: Poeschl-Teller parameters required");
    return build_table(p, n).eigenfunction(n, x);
}

inline double pt_eigenfunction_derivative(int n, double x, const ModelParams& p) {
    if (p.family != Potential::PoeschlTeller)
        throw std::domain_error("pt_eigenfunction_derivative: Poeschl-Teller parameters required");
    return build_table(p, n).eigenfunction_derivative(n, x);
}

// ------------------------------------------------------ momentum basis ----

// chi_k(x) = exp(i 2 k x / a) / sqrt(pi a); eigenvalue 2 k hbar / a
inline std::complex<double> momentum_eigenfunction(int k, double x,
                                                   const ModelParams& p) {
    const double phase = 2.0 * k * x / p.a;
    return std::complex<double>(std::cos(phase), std::sin(phase)) /
           std::sqrt(M_PI * p.a);
}

// Coefficients of psi_n over the momentum basis, j = -j_max..j_max
// (returned index j + j_max).  Odd levels expand into exactly two plane
// waves; even levels have the slowly decaying 1/j^2 profile.
inline std::vector<std::complex<double>> well_momentum_expansion(int n, int j_max) {
    if (n < 0 || j_max < 0) throw std::domain_error("well_momentum_expansion: bad args");
    std::vector<std::complex<double>> coeff(2 * j_max + 1, 0.0);
    if (n % 2 == 1) {
        const int k = (n - 1) / 2;
        if (k + 1 <= j_max) {
            coeff[j_max + (k + 1)] = std::complex<double>(0.0, -1.0 / std::sqrt(2.0));
            coeff[j_max - (k + 1)] = std::complex<double>(0.0, 1.0 / std::sqrt(2.0));
        }
        return coeff;
    }
    const double M = n + 1.0;  // odd integer 2k+1
    for (int j = -j_max; j <= j_max; ++j) {
        coeff[j_max + j] = -2.0 * std::sqrt(2.0) / M_PI * M / (4.0 * j * j - M * M);
    }
    return coeff;
}

// -------------------------------------------------- semiclassical rules ----

// well: E = (n+1)^2 hbar^2 / 2 m a^2 (exact up to the energy-origin shift);
// Poeschl-Teller: the three-term expression for a general coupling v0.
inline double bohr_sommerfeld_energy(int n, const ModelParams& p,
                                     double v0_classical = -1.0) {
    if (n < 0) throw std::domain_error("bohr_sommerfeld_energy: n must be >= 0");
    const double scale = p.energy_scale();
    if (p.family == Potential::Well) return scale * (n + 1.0) * (n + 1.0);
    const double v0 = (v0_classical > 0.0) ? v0_classical : p.v0();
    const double r = std::sqrt(p.lambda * (p.lambda - 1.0)) +
                     std::sqrt(p.kappa * (p.kappa - 1.0));
    const double nh = n + 0.5;
    return scale * nh * nh +
           (p.hbar / (p.mass * p.a)) * std::sqrt(p.mass * v0) * nh * r +
           0.5 * v0 * r * r;
}

// ------------------------------------------------------------- moments ----

struct EigenstateMoments {
    double q_mean, q2_mean, p_mean, p2_mean;
    double dq() const { return std::sqrt(q2_mean - q_mean * q_mean); }
    double dp() const { return std::sqrt(p2_mean - p_mean * p_mean); }
    double uncertainty_product() const { return dq() * dp(); }
};

inline EigenstateMoments eigenstate_moments(int n, const ModelParams& p) {
    EigenstateMoments m;
    if (p.family == Potential::Well) {
        const double np1 = n + 1.0;
        m.q_mean = 0.5 * M_PI * p.a;
        m.q2_mean = p.a * p.a * (M_PI * M_PI / 3.0 - 0.5 / (np1 * np1));
        m.p_mean = 0.0;
        m.p2_mean = p.hbar * p.hbar * np1 * np1 / (p.a * p.a);
        return m;
    }
    const EigenstateTable t = build_table(p, n);
    auto psi = [&](double x) { return t.eigenfunction(n, x); };
    auto dpsi = [&](double x) { return t.eigenfunction_derivative(n, x); };
    m.q_mean = quad::gl_refined([&](double x) { const double v = psi(x); return x * v * v; },
                                0.0, p.width(), 1e-12);
    m.q2_mean = quad::gl_refined([&](double x) { const double v = psi(x); return x * x * v * v; },
                                 0.0, p.width(), 1e-12);
    m.p_mean = 0.0;  // real bound state
    // ||P psi||^2 interpretation
    m.p2_mean = p.hbar * p.hbar *
                quad::gl_refined([&](double x) { const double d = dpsi(x); return d * d; },
                                 0.0, p.width(), 1e-12);
    return m;
}

// ------------------------------------------------------ Q and P matrices ----

// well closed forms (validated against quadrature in the test suite):
//   Q_mn = -8 a (m+1)(n+1) / [pi (m-n)^2 (m+n+2)^2]   (m-n odd)
//   Q_nn = pi a / 2,  zero otherwise
//   P_mn = -4 i hbar (m+1)(n+1) / [a pi ((m+1)^2-(n+1)^2)]  (m-n odd)
inline Eigen::MatrixXcd position_matrix(int n_max, const ModelParams& p) {
    const int dim = n_max + 1;
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(dim, dim);
    if (p.family == Potential::Well) {
        for (int m = 0; m < dim; ++m) {
            Q(m, m) = 0.5 * M_PI * p.a;
            for (int n = 0; n < dim; ++n) {
                if (((m - n) & 1) == 0 || m == n) continue;
                const double dmn = m - n;
                const double smn = m + n + 2.0;
                Q(m, n) = -8.0 * p.a * (m + 1.0) * (n + 1.0) /
                          (M_PI * dmn * dmn * smn * smn);
            }
        }
        return Q;
    }
    const EigenstateTable t = build_table(p, n_max);
    for (int m = 0; m < dim; ++m)
        for (int n = m; n < dim; ++n) {
            const double v = quad::gl_refined(
                [&](double x) {
                    return x * t.eigenfunction(m, x) * t.eigenfunction(n, x);
                },
                0.0, p.width(), 1e-12);
            Q(m, n) = v;
            Q(n, m) = v;
        }
    return Q;
}

inline Eigen::MatrixXcd momentum_matrix(int n_max, const ModelParams& p) {
    const int dim = n_max + 1;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> mi(0.0, -1.0);
    if (p.family == Potential::Well) {
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n) {
                if (((m - n) & 1) == 0) continue;
                const double M = m + 1.0, N = n + 1.0;
                P(m, n) = mi * 4.0 * p.hbar * M * N /
                          (p.a * M_PI * (M * M - N * N));
            }
        return P;
    }
    const EigenstateTable t = build_table(p, n_max);
    for (int m = 0; m < dim; ++m)
        for (int n = m + 1; n < dim; ++n) {
            const double v = quad::gl_refined(
                [&](double x) {
                    return t.eigenfunction(m, x) * t.eigenfunction_derivative(n, x);
                },
                0.0, p.width(), 1e-12);
            P(m, n) = mi * p.hbar * v;
            P(n, m) = std::conj(P(m, n));
        }
    return P;
}

// --------------------------------------------------- scaling and limits ----

// E_n[a] * a^2 must not depend on a
inline CheckReport scaling_check(double a1, double a2,
                                 const std::vector<int>& n_list,
                                 const ModelParams& base) {
    ModelParams p1 = base, p2 = base;
    p1.a = a1;
    p2.a = a2;
    double worst = 0.0;
    for (int n : n_list) {
        const double v1 = energy_level(n, p1).E * a1 * a1;
        const double v2 = energy_level(n, p2).E * a2 * a2;
        const double ref = std::max({std::abs(v1), std::abs(v2), 1e-300});
        worst = std::max(worst, std::abs(v1 - v2) / ref);
    }
    return CheckReport::make("spectra.scaling", worst, 1e-12);
}

// symmetric Poeschl-Teller e_n(lambda) = n(n+2 lambda) decreases to n(n+2)
inline CheckReport pt_to_well_limit(int n, const std::vector<double>& lambdas) {
    const double target = static_cast<double>(n) * (n + 2.0);
    double prev = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (double lam : lambdas) {
        const double e = static_cast<double>(n) * (n + 2.0 * lam);
        if (e > prev) worst = std::max(worst, e - prev);  // must decrease
        if (e < target - 1e-12) worst = std::max(worst, target - e);
        prev = e;
    }
    const double gap = std::abs(prev - target);
    const double expected_gap = 2.0 * n * (lambdas.back() - 1.0);
    worst = std::max(worst, std::abs(gap - expected_gap));
    return CheckReport::make("spectra.pt_to_well_limit", worst, 1e-12);
}

}  // namespace ptcs::spectra
