#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ptcs/quadrature.hpp"
#include "ptcs/specfun.hpp"

using namespace ptcs;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// power-series oracle sum_k (x/2)^{2k+nu}/(k! Gamma(k+nu+1)); all terms
// positive, so no cancellation at any x in range
double bessel_i_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double h = 0.5 * x;
    double term = std::exp(nu * std::log(h) - specfun::log_gamma(nu + 1.0));
    double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= h * h / (k * (k + nu));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

// integral-representation oracle K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt
double bessel_k_integral(double nu, double x) {
    auto f = [&](double t) {
        const double expo = -x * std::cosh(t) ;
        if (expo < -700.0) return 0.0;
        return std::exp(expo) * std::cosh(nu * t);
    };
    return quad::adaptive(f, 0.0, 40.0, 1e-13);
}

}  // namespace

TEST_CASE("log_gamma basics and oracle values") {
    CHECK(specfun::log_gamma(1.0) == Catch::Approx(0.0).margin(1e-14));
    CHECK(rel_err(specfun::log_gamma(5.0), std::log(24.0)) < 1e-14);
    // Gamma(4.5) = 3.5 * 2.5 * 1.5 * 0.5 * sqrt(pi)
    const double g45 = 3.5 * 2.5 * 1.5 * 0.5 * std::sqrt(M_PI);
    CHECK(rel_err(specfun::log_gamma(4.5), std::log(g45)) < 1e-13);
    CHECK_THROWS_AS(specfun::log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::log_gamma(-2.5), std::domain_error);
}

TEST_CASE("log_gamma against the library implementation over the domain") {
    for (double lx = std::log(1e-3); lx <= std::log(1e6); lx += 0.37) {
        const double x = std::exp(lx);
        CHECK(rel_err(specfun::log_gamma(x), std::lgamma(x)) < 1e-13);
    }
}

TEST_CASE("bessel_i special points") {
    CHECK(specfun::bessel_i(2.0, 0.0) == 0.0);
    CHECK(specfun::bessel_i(0.0, 0.0) == 1.0);
    CHECK(rel_err(specfun::bessel_i(2.0, 2.0), 0.68894844769873820) < 1e-12);
    CHECK_THROWS_AS(specfun::bessel_i(2.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_i(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_i(0.0, 800.0), std::overflow_error);
}

TEST_CASE("bessel_i against the power-series oracle") {
    const std::vector<double> orders = {0.0, 0.5, 2.0, 3.7, 12.0, 40.0};
    for (double nu : orders) {
        for (double x : {1e-3, 0.1, 0.7, 1.9, 2.1, 5.0, 12.0, 35.0, 80.0, 200.0}) {
            const double want = bessel_i_series(nu, x);
            CHECK(rel_err(specfun::bessel_i(nu, x), want) < 1e-10);
        }
    }
}

TEST_CASE("scaled bessel_i consistency") {
    for (double nu : {0.0, 2.0, 7.3}) {
        for (double x : {0.5, 3.0, 40.0}) {
            const double direct = specfun::bessel_i(nu, x);
            CHECK(rel_err(std::exp(x) * specfun::bessel_i_scaled(nu, x), direct) < 1e-12);
            CHECK(rel_err(std::exp(specfun::log_bessel_i(nu, x)), direct) < 1e-12);
        }
    }
    // scaled values stay finite far beyond the unscaled overflow point
    const double is = specfun::bessel_i_scaled(2.0, 2000.0);
    CHECK(is > 0.0);
    CHECK(is < 1.0);
}

TEST_CASE("bessel_k half-integer closed form") {
    for (double x : {0.05, 0.3, 1.0, 4.0, 25.0, 100.0}) {
        const double want = std::sqrt(0.5 * M_PI / x) * std::exp(-x);
        CHECK(rel_err(specfun::bessel_k(0.5, x), want) < 1e-12);
    }
    CHECK(rel_err(specfun::bessel_k(0.5, 1.0), 0.46106850444789458) < 1e-12);
    CHECK_THROWS_AS(specfun::bessel_k(2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_k(2.0, -3.0), std::domain_error);
}

TEST_CASE("bessel_k against the integral-representation oracle") {
    for (double nu : {0.0, 1.0, 2.0, 3.7, 6.0}) {
        for (double x : {0.05, 0.4, 1.5, 2.5, 8.0, 30.0}) {
            const double want = bessel_k_integral(nu, x);
            CHECK(rel_err(specfun::bessel_k(nu, x), want) < 1e-8);
        }
    }
}

TEST_CASE("bessel_k continuity in the order near integers") {
    const double k2 = specfun::bessel_k(2.0, 3.0);
    const double k2p = specfun::bessel_k(2.0 + 1e-6, 3.0);
    CHECK(std::abs(k2p - k2) <= 1e-5 * k2);
    // same at a larger non-integer offset for sanity
    const double k0 = specfun::bessel_k(0.0, 0.7);
    const double k0p = specfun::bessel_k(1e-7, 0.7);
    CHECK(std::abs(k0p - k0) <= 1e-5 * k0);
}

TEST_CASE("Wronskian-type identity I_nu K_nu+1 + I_nu+1 K_nu = 1/x") {
    for (double nu : {0.0, 0.5, 2.0, 3.7, 12.0}) {
        for (double lx = std::log(0.01); lx <= std::log(50.0); lx += 0.31) {
            const double x = std::exp(lx);
            const double lhs = specfun::bessel_i(nu, x) * specfun::bessel_k(nu + 1.0, x) +
                               specfun::bessel_i(nu + 1.0, x) * specfun::bessel_k(nu, x);
            CHECK(rel_err(lhs, 1.0 / x) < 1e-8);
        }
    }
}

TEST_CASE("three-term recurrence I_nu-1 - I_nu+1 = (2 nu / x) I_nu") {
    for (double nu : {1.0, 2.0, 3.7, 12.0}) {
        for (double lx = std::log(0.01); lx <= std::log(50.0); lx += 0.31) {
            const double x = std::exp(lx);
            const double lhs = specfun::bessel_i(nu - 1.0, x) - specfun::bessel_i(nu + 1.0, x);
            const double rhs = 2.0 * nu / x * specfun::bessel_i(nu, x);
            CHECK(rel_err(lhs, rhs) < 1e-9);
        }
    }
}

TEST_CASE("Turan-type inequality (I_nu+1)^2 >= I_nu I_nu+2") {
    for (double nu : {0.0, 0.5, 2.0, 3.7, 12.0}) {
        for (double x : {0.01, 0.3, 1.0, 4.0, 17.0, 60.0, 150.0}) {
            const double i0 = specfun::bessel_i(nu, x);
            const double i1 = specfun::bessel_i(nu + 1.0, x);
            const double i2 = specfun::bessel_i(nu + 2.0, x);
            CHECK(i1 * i1 >= i0 * i2 * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("bessel_i_ratio agrees with the direct quotient") {
    for (double nu : {0.0, 2.0, 3.7, 12.0}) {
        for (double x : {1e-3, 0.1, 2.0, 30.0, 200.0}) {
            const double want = specfun::bessel_i(nu + 1.0, x) / specfun::bessel_i(nu, x);
            CHECK(rel_err(specfun::bessel_i_ratio(nu, x), want) < 1e-12);
        }
    }
    // overflow-safe regime: compare against the scaled quotient
    for (double x : {700.0, 2000.0}) {
        const double want = specfun::bessel_i_scaled(3.0, x) / specfun::bessel_i_scaled(2.0, x);
        CHECK(rel_err(specfun::bessel_i_ratio(2.0, x), want) < 1e-11);
    }
    CHECK(specfun::bessel_i_ratio(2.0, 0.0) == 0.0);
    // small-x limit (x/2)/(nu+1)
    CHECK(rel_err(specfun::bessel_i_ratio(3.0, 1e-4), 0.5e-4 / 4.0) < 1e-7);
}

TEST_CASE("hyp2f1_terminating") {
    CHECK(specfun::hyp2f1_terminating(0, 3.0, 1.5, 0.9) == 1.0);
    CHECK(specfun::hyp2f1_terminating(1, 3.0, 1.5, 0.25) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(specfun::hyp2f1_terminating(2, 6.0, 2.5, 0.5) == Catch::Approx(-0.2).epsilon(1e-13));
    // z = 0 gives 1 for any parameters
    for (int n : {0, 1, 3, 9}) {
        CHECK(specfun::hyp2f1_terminating(n, -2.3, 0.7, 0.0) == 1.0);
    }
    // pole when (c)_k vanishes within the first n terms
    CHECK_THROWS_AS(specfun::hyp2f1_terminating(2, 1.0, -1.0, 0.3), std::domain_error);
    CHECK_NOTHROW(specfun::hyp2f1_terminating(1, 1.0, -1.5, 0.3));
}

TEST_CASE("hyp1f2_tail by summation consistency") {
    // full series sum_p J^p/(p! Gamma(p+nu+1)) = tail(-1)
    auto full_series = [](double nu, double J) {
        double term = std::exp(-specfun::log_gamma(nu + 1.0));
        double sum = term;
        for (int p = 1; p < 10000; ++p) {
            term *= J / (p * (p + nu));
            sum += term;
            if (term < sum * 1e-18) break;
        }
        return sum;
    };

    SECTION("tail(n) + partial(n) = full series") {
        const double nu = 3.7, J = 25.0;
        const double full = full_series(nu, J);
        for (int n : {5, 10, 20}) {
            double partial = 0.0;
            for (int p = 0; p <= n; ++p)
                partial += std::exp(p * std::log(J) - specfun::log_gamma(p + 1.0) -
                                    specfun::log_gamma(p + nu + 1.0));
            const double tail = specfun::hyp1f2_tail(n, nu, J);
            CHECK(rel_err(tail + partial, full) < 1e-12);
        }
    }

    SECTION("n_max = 0 equals full minus first term") {
        const double nu = 2.0, J = 1.0;
        const double want = full_series(nu, J) - std::exp(-specfun::log_gamma(nu + 1.0));
        CHECK(rel_err(specfun::hyp1f2_tail(0, nu, J), want) < 1e-12);
    }

    SECTION("deep tails vanish") {
        CHECK(specfun::hyp1f2_tail(400, 2.0, 1.0) < 1e-300);
        CHECK(specfun::hyp1f2_tail(0, 2.0, 0.0) == 0.0);
    }
}
