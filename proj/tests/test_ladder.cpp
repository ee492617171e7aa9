#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "ptcs/ladder.hpp"

using namespace ptcs;
using ladder::SpectrumSequence;
using ladder::TruncatedOperator;

TEST_CASE("ladder operator matrix elements") {
    const auto seq = SpectrumSequence::make(2.0, 8);
    const auto a = ladder::lowering(8, seq);
    const auto ad = ladder::raising(8, seq);

    SECTION("a|1> = sqrt(3)|0> for the well") {
        CHECK(a(0, 1).real() == Catch::Approx(std::sqrt(3.0)).epsilon(1e-15));
    }

    SECTION("a|0> = 0") {
        CHECK(a.col(0).cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("raising is the conjugate transpose") {
        CHECK((ad - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("finite differences of diagonal operators") {
    const auto seq = SpectrumSequence::make(2.0, 10);

    SECTION("X'_N has diagonal 2n+3 for the well") {
        const auto xp = ladder::x_n_prime(10, seq);
        for (int n = 0; n <= 10; ++n)
            CHECK(xp(n, n).real() == Catch::Approx(2.0 * n + 3.0).epsilon(1e-15));
    }

    SECTION("X''_N = 2 I and X'''_N = 0 exactly") {
        const auto x2 = ladder::diagonal_finite_difference(seq.e, 2, 11);
        const auto x3 = ladder::diagonal_finite_difference(seq.e, 3, 11);
        for (int n = 0; n <= 10; ++n) {
            CHECK(x2(n, n).real() == 2.0);
            CHECK(x3(n, n).real() == 0.0);
        }
    }

    SECTION("PT first difference 2n+1+nu") {
        const auto s = SpectrumSequence::make(12.0, 6);
        const auto xp = ladder::x_n_prime(6, s);
        for (int n = 0; n <= 6; ++n)
            CHECK(xp(n, n).real() == Catch::Approx(2.0 * n + 13.0).epsilon(1e-15));
    }

    SECTION("sequence too short is rejected") {
        std::vector<double> short_seq = {0.0, 3.0, 8.0};
        CHECK_THROWS_AS(ladder::diagonal_finite_difference(short_seq, 2, 3),
                        std::domain_error);
    }
}

TEST_CASE("commutators on the interior block") {
    const int n_max = 12;
    const int margin = 2;

    for (double nu : {2.0, 3.7, 12.0}) {
        const auto seq = SpectrumSequence::make(nu, n_max);
        const auto a = ladder::lowering(n_max, seq);
        const auto ad = ladder::raising(n_max, seq);
        const auto xp = ladder::x_n_prime(n_max, seq);

        SECTION("[a, a^dag] = X'_N  (nu = " + std::to_string(nu) + ")") {
            CHECK(ladder::interior_residual(ladder::commutator(a, ad), xp, margin) < 1e-12);
        }

        SECTION("[a, X'_N] = 2a and [a^dag, X'_N] = -2a^dag (nu = " + std::to_string(nu) + ")") {
            CHECK(ladder::interior_residual(ladder::commutator(a, xp),
                                            TruncatedOperator(2.0 * a), margin) < 1e-12);
            CHECK(ladder::interior_residual(ladder::commutator(ad, xp),
                                            TruncatedOperator(-2.0 * ad), margin) < 1e-12);
        }

        SECTION("[A, A] = 0 (nu = " + std::to_string(nu) + ")") {
            CHECK(ladder::commutator(a, a).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("diagonal commutation identities for random diagonals") {
    const int n_max = 15;
    const auto seq = SpectrumSequence::make(3.7, n_max);
    const auto a = ladder::lowering(n_max, seq);
    const auto ad = ladder::raising(n_max, seq);

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> delta(n_max + 2);
        for (auto& d : delta) d = uni(rng);
        const auto D = ladder::diagonal(std::vector<double>(delta.begin(), delta.end() - 1));
        const auto Dp = ladder::diagonal_finite_difference(delta, 1, n_max + 1);
        // [a, D] = D' a and [a^dag, D] = -a^dag D'
        CHECK(ladder::interior_residual(ladder::commutator(a, D),
                                        TruncatedOperator(Dp * a), 1) < 1e-13);
        CHECK(ladder::interior_residual(ladder::commutator(ad, D),
                                        TruncatedOperator(-ad * Dp), 1) < 1e-13);
    }
}

TEST_CASE("enveloping-algebra relations") {
    const int n_max = 14;
    const auto seq = SpectrumSequence::make(2.0, n_max);
    const auto a = ladder::lowering(n_max, seq);
    const auto xn = ladder::x_n(n_max, seq);
    const auto xp = ladder::x_n_prime(n_max, seq);

    // [a, X_N] = X'_N a and [a, X'_N a] = 2 a^2
    CHECK(ladder::interior_residual(ladder::commutator(a, xn),
                                    TruncatedOperator(xp * a), 2) < 1e-12);
    CHECK(ladder::interior_residual(ladder::commutator(a, TruncatedOperator(xp * a)),
                                    TruncatedOperator(2.0 * a * a), 2) < 1e-12);
}

TEST_CASE("su(1,1) generators and discrete-series label") {
    SECTION("well: eta = 3/2 and L12|0> = eta|0>") {
        const auto seq = SpectrumSequence::make(2.0, 10);
        CHECK(ladder::eta(2.0) == 1.5);
        const auto g = ladder::su11_generators(10, seq);
        CHECK(g.l12(0, 0).real() == Catch::Approx(1.5).epsilon(1e-15));
        for (int n = 0; n <= 10; ++n)
            CHECK(g.l12(n, n).real() == Catch::Approx(1.5 + n).epsilon(1e-15));
    }

    SECTION("PT: eta = (lambda+kappa+1)/2") {
        CHECK(ladder::eta(12.0) == 6.5);
        CHECK(ladder::eta(3.7) == Catch::Approx(2.35).epsilon(1e-15));
    }

    SECTION("commutation table [L+-, L12] = -+ L+-, [L-, L+] = L12") {
        for (double nu : {2.0, 3.7, 12.0}) {
            const int n_max = 40;
            const auto seq = SpectrumSequence::make(nu, n_max);
            const auto g = ladder::su11_generators(n_max, seq);
            const int margin = 3;  // interior rows < 38
            CHECK(ladder::relative_interior_residual(ladder::commutator(g.l_minus, g.l12),
                                                     TruncatedOperator(g.l_minus), margin) < 1e-12);
            CHECK(ladder::relative_interior_residual(ladder::commutator(g.l_plus, g.l12),
                                                     TruncatedOperator(-g.l_plus), margin) < 1e-12);
            CHECK(ladder::relative_interior_residual(ladder::commutator(g.l_minus, g.l_plus),
                                                     g.l12, margin) < 1e-12);
        }
    }
}

TEST_CASE("Casimir operator equals eta(eta-1) I") {
    SECTION("well interior: 3/4") {
        const auto seq = SpectrumSequence::make(2.0, 12);
        const auto Q = ladder::casimir(12, seq);
        const auto want = TruncatedOperator(0.75 * TruncatedOperator::Identity(13, 13));
        CHECK(ladder::interior_residual(Q, want, 1) < 1e-12);
    }

    SECTION("PT (4,8): 35.75") {
        const auto seq = SpectrumSequence::make(12.0, 12);
        const auto Q = ladder::casimir(12, seq);
        const auto want = TruncatedOperator(35.75 * TruncatedOperator::Identity(13, 13));
        CHECK(ladder::interior_residual(Q, want, 1) < 1e-12);
    }

    SECTION("single-entry truncation") {
        const auto seq = SpectrumSequence::make(2.0, 0);
        const auto Q = ladder::casimir(0, seq);
        CHECK(Q(0, 0).real() == Catch::Approx(0.75).epsilon(1e-14));
    }
}

TEST_CASE("number operator recovered from X_N") {
    SECTION("well") {
        const auto seq = SpectrumSequence::make(2.0, 10);
        const auto N = ladder::number_from_xn(seq, 11);
        CHECK(N(0, 0).real() == 0.0);
        CHECK(N(4, 4).real() == Catch::Approx(4.0).epsilon(1e-14));  // -1 + sqrt(25)
    }

    SECTION("PT nu = 12") {
        const auto seq = SpectrumSequence::make(12.0, 10);
        const auto N = ladder::number_from_xn(seq, 11);
        CHECK(N(3, 3).real() == Catch::Approx(3.0).epsilon(1e-14));  // -6 + sqrt(45+36)
        for (int n = 0; n <= 10; ++n)
            CHECK(std::abs(N(n, n).real() - n) < 1e-12);
    }

    SECTION("non-integer nu") {
        const auto seq = SpectrumSequence::make(3.7, 20);
        const auto N = ladder::number_from_xn(seq, 21);
        for (int n = 0; n <= 20; ++n)
            CHECK(std::abs(N(n, n).real() - n) < 1e-12);
    }
}

TEST_CASE("quadratic relation between X_N and X'_N") {
    // the constant is nu^2 - 1: the well value 3 at nu = 2, and e.g. 8 at nu = 3
    SECTION("well spot checks") {
        const auto seq = SpectrumSequence::make(2.0, 10);
        CHECK(ladder::xn_quadratic_relation(seq).pass);
        // n = 0: (9 - 6 - 3)/4 = 0; n = 2: (49 - 14 - 3)/4 = 8 = e_2
        CHECK(0.25 * (9.0 - 6.0 - 3.0) == seq.e[0]);
        CHECK(0.25 * (49.0 - 14.0 - 3.0) == seq.e[2]);
    }

    SECTION("PT nu = 3: constant must be nu^2-1 = 8, not (nu+1)nu = 12") {
        const auto seq = SpectrumSequence::make(3.0, 10);
        CHECK(ladder::xn_quadratic_relation(seq).pass);
        const double ep1 = seq.e[2] - seq.e[1];  // 2*1 + 1 + nu = 6
        CHECK(ep1 == 6.0);
        CHECK(0.25 * (ep1 * ep1 - 2.0 * ep1 - 8.0) == seq.e[1]);   // = 4
        CHECK(0.25 * (ep1 * ep1 - 2.0 * ep1 - 12.0) != seq.e[1]);  // = 3, wrong
    }

    SECTION("direct-substitution oracle: solve for C at each n") {
        for (double nu : {2.0, 3.7, 12.0}) {
            const auto seq = SpectrumSequence::make(nu, 30);
            for (int n = 0; n <= 30; ++n) {
                const double ep = seq.e[n + 1] - seq.e[n];
                const double C = ep * ep - 2.0 * ep - 4.0 * seq.e[n];
                CHECK(std::abs(C - (nu * nu - 1.0)) < 1e-10);
            }
        }
    }
}

TEST_CASE("injected spectrum perturbation breaks the algebra") {
    auto seq = SpectrumSequence::make(2.0, 12);
    seq.e[5] += 1e-3;
    // [a, a^dag] = X'_N holds for any sequence; what fails is the su(1,1)
    // representation structure: Casimir no longer proportional to identity,
    // second difference no longer 2I, quadratic relation violated
    const auto Q = ladder::casimir(12, seq);
    const auto want = TruncatedOperator(0.75 * TruncatedOperator::Identity(13, 13));
    CHECK(ladder::interior_residual(Q, want, 2) > 1e-5);
    const auto x2 = ladder::diagonal_finite_difference(seq.e, 2, 11);
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
        worst = std::max(worst, std::abs(x2(n, n).real() - 2.0));
    CHECK(worst > 1e-5);
    CHECK_FALSE(ladder::xn_quadratic_relation(seq).pass);
}
