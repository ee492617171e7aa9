#pragma once

// Special-function kernel: log-gamma, modified Bessel functions I_nu / K_nu
// for real order nu >= 0 (plus exponentially scaled variants and the
// overflow-safe ratio I_{nu+1}/I_nu), terminating 2F1 polynomials and the
// 1F2-type tail of the normalization series.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ptcs::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060;

// ln Gamma(x), x > 0.  Lanczos approximation, 14 coefficients
// (g = 671/128); relative error below 1e-14 over the whole domain.
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be > 0");
    static const double coef[14] = {
        57.1562356658629235,     -59.5979603554754912,
        14.1360979747417471,     -0.491913816097620199,
        3.39946499848118887e-5,   4.65236289270485756e-5,
        -9.83744753048795646e-5,  1.58088703224912494e-4,
        -2.10264441724104883e-4,  2.17439618115212643e-4,
        -1.64318106536763890e-4,  8.44182239838527433e-5,
        -2.61908384015814087e-5,  3.68991826595316234e-6};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += coef[j] / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

namespace detail {

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2 mu),
// gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)]/2, for |mu| <= 1/2.
struct GammaPair {
    double gam1, gam2, one_over_gamma_plus, one_over_gamma_minus;
};

inline GammaPair temme_gamma(double mu) {
    GammaPair g;
    g.one_over_gamma_plus  = std::exp(-log_gamma(1.0 + mu));
    g.one_over_gamma_minus = std::exp(-log_gamma(1.0 - mu));
    g.gam2 = 0.5 * (g.one_over_gamma_minus + g.one_over_gamma_plus);
    if (std::abs(mu) < 1e-3) {
        // series around mu = 0 avoids cancellation in the difference
        g.gam1 = -euler_gamma + 0.0420026350340952 * mu * mu;
    } else {
        g.gam1 = (g.one_over_gamma_minus - g.one_over_gamma_plus) / (2.0 * mu);
    }
    return g;
}

struct ScaledIK {
    double i;  // e^{-x} I_nu(x)
    double k;  // e^{+x} K_nu(x)
};

// Combined evaluation of I_nu and K_nu following the classical scheme:
// CF1 (Lentz) for I'_nu/I_nu, Temme's series (x < 2) or Steed's CF2
// (x >= 2) for K_mu and K_{mu+1} at the reduced order mu in [-1/2,1/2],
// Wronskian normalization for I, upward recurrence for K.
inline ScaledIK bessel_ik_scaled(double nu, double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_ik: argument must be > 0");
    if (!(nu >= 0.0))
        throw std::domain_error("bessel_ik: order must be >= 0");
    constexpr double eps = 1e-16;
    constexpr double fpmin = 1e-300;
    constexpr int max_iter = 100000;

    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    // CF1: h -> I'_nu / I_nu
    double h = std::max(nu * xi, fpmin);
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    for (int i = 1; i <= max_iter; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }

    // unnormalized I, I' recurred downward from nu to mu
    double ril = fpmin;
    double ripl = h * ril;
    const double ril1 = ril;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    const double f = ripl / ril;  // I'_mu / I_mu

    double rkmu, rk1;  // e^{x} K_mu, e^{x} K_{mu+1}
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = M_PI * mu;
        const double fct = (std::abs(pimu) < 1e-9) ? 1.0 : pimu / std::sin(pimu);
        double dlog = -std::log(x2);
        double e = mu * dlog;
        const double fct2 = (std::abs(e) < 1e-9) ? 1.0 : std::sinh(e) / e;
        const GammaPair g = temme_gamma(mu);
        double ff = fct * (g.gam1 * std::cosh(e) + g.gam2 * fct2 * dlog);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.one_over_gamma_plus;
        double q = 0.5 / (e * g.one_over_gamma_minus);
        double cc = 1.0;
        const double x4 = x2 * x2;
        double sum1 = p;
        for (int i = 1; i <= max_iter; ++i) {
            ff = (i * ff + p + q) / (i * i - mu2);
            cc *= x4 / i;
            p /= (i - mu);
            q /= (i + mu);
            const double del = cc * ff;
            sum += del;
            sum1 += cc * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * eps) break;
        }
        const double ex = std::exp(x);
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        // Steed's CF2
        double b2 = 2.0 * (1.0 + x);
        double d2 = 1.0 / b2;
        double h2 = d2;
        double delh = d2;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1;
        double c2 = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        for (int i = 2; i <= max_iter; ++i) {
            a -= 2 * (i - 1);
            c2 = -a * c2 / i;
            const double qnew = (q1 - b2 * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c2 * qnew;
            b2 += 2.0;
            d2 = 1.0 / (b2 + a * d2);
            delh = (b2 * d2 - 1.0) * delh;
            h2 += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < eps) break;
        }
        h2 = a1 * h2;
        rkmu = std::sqrt(M_PI / (2.0 * x)) / s;
        rk1 = rkmu * (mu + x + 0.5 - h2) * xi;
    }

    const double rkmup = mu * xi * rkmu - rk1;
    const double rimu = xi / (f * rkmu - rkmup);  // e^{-x} I_mu
    ScaledIK out;
    out.i = rimu * (ril1 / ril);
    for (int i = 1; i <= nl; ++i) {
        const double rktemp = (mu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    out.k = rkmu;
    return out;
}

}  // namespace detail

// e^{-x} I_nu(x); x >= 0.
inline double bessel_i_scaled(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return detail::bessel_ik_scaled(nu, x).i;
}

// e^{+x} K_nu(x); x > 0.
inline double bessel_k_scaled(double nu, double x) {
    return detail::bessel_ik_scaled(nu, x).k;
}

// ln I_nu(x); -inf at x = 0 for nu > 0.
inline double log_bessel_i(double nu, double x) {
    if (x == 0.0) {
        if (nu == 0.0) return 0.0;
        return -std::numeric_limits<double>::infinity();
    }
    return x + std::log(detail::bessel_ik_scaled(nu, x).i);
}

inline double bessel_i(double nu, double x) {
    if (!(nu >= 0.0))
        throw std::domain_error("bessel_i: order must be >= 0");
    if (x < 0.0)
        throw std::domain_error("bessel_i: argument must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double lg = log_bessel_i(nu, x);
    if (lg > 709.0)
        throw std::overflow_error("bessel_i: result exceeds double range");
    return std::exp(lg);
}

inline double bessel_k(double nu, double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_k: argument must be > 0");
    if (!(nu >= 0.0))
        throw std::domain_error("bessel_k: order must be >= 0");
    // e^{-x} underflows harmlessly to 0 for very large x
    return std::exp(-x) * detail::bessel_ik_scaled(nu, x).k;
}

// I_{nu+1}(x) / I_nu(x) by the continued fraction
// r = 1/(b1 + 1/(b2 + ...)), b_k = 2(nu+k)/x.  Overflow-safe for any x.
inline double bessel_i_ratio(double nu, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("bessel_i_ratio: argument must be >= 0");
    if (x == 0.0) return 0.0;
    constexpr double eps = 1e-16;
    constexpr double fpmin = 1e-300;
    constexpr int max_iter = 200000;
    double fv = fpmin;
    double C = fv;
    double D = 0.0;
    for (int k = 1; k <= max_iter; ++k) {
        const double bk = 2.0 * (nu + k) / x;
        D = bk + D;
        if (D == 0.0) D = fpmin;
        C = bk + 1.0 / C;
        if (C == 0.0) C = fpmin;
        D = 1.0 / D;
        const double del = C * D;
        fv *= del;
        if (std::abs(del - 1.0) < eps) return fv;
    }
    throw std::runtime_error("bessel_i_ratio: continued fraction did not converge");
}

// Terminating Gauss series 2F1(-n, b; c; z) = sum_{k=0}^{n}
// (-n)_k (b)_k / ((c)_k k!) z^k.
inline double hyp2f1_terminating(int n, double b, double c, double z) {
    if (n < 0)
        throw std::domain_error("hyp2f1_terminating: n must be >= 0");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < n; ++k) {
        const double ck = c + k;
        if (ck == 0.0)
            throw std::domain_error(
                "hyp2f1_terminating: pole, (c)_k vanishes at k = " +
                std::to_string(k + 1));
        term *= (static_cast<double>(k - n) * (b + k)) / (ck * (k + 1)) * z;
        sum += term;
    }
    return sum;
}

// Tail of the normalization series:
//   sum_{p > n_max} J^p / (p! Gamma(p + nu + 1)).
// Direct convergent summation, first term in log space.
inline double hyp1f2_tail(int n_max, double nu, double J) {
    if (!(J >= 0.0))
        throw std::domain_error("hyp1f2_tail: J must be >= 0");
    if (J == 0.0) return 0.0;
    const double p0 = n_max + 1.0;
    double term = std::exp(p0 * std::log(J) - log_gamma(p0 + 1.0) -
                           log_gamma(p0 + nu + 1.0));
    if (std::isinf(term))
        throw std::overflow_error("hyp1f2_tail: leading term overflows");
    double sum = 0.0;
    double p = p0;
    for (int it = 0; it < 1000000; ++it) {
        sum += term;
        if (std::isinf(sum))
            throw std::overflow_error("hyp1f2_tail: sum overflows");
        const double ratio = J / ((p + 1.0) * (p + 1.0 + nu));
        term *= ratio;
        if (ratio < 0.5 && term <= sum * 1e-17) return sum;
        p += 1.0;
    }
    throw std::runtime_error("hyp1f2_tail: summation did not converge");
}

}  // namespace ptcs::specfun
