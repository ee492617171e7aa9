#pragma once

// Dynamical su(1,1) algebra over the energy basis, as finite truncations:
// ladder operators a, a^dag with a|n> = sqrt(e_n)|n-1>, the diagonal X_N and
// its finite differences, commutators, the so(2,1) generators and Casimir,
// and the discrete-series label eta.
//
// Finite sections of infinite band matrices violate the algebra only near
// the truncation cut; every identity is therefore asserted on the interior
// block (rows/cols below dim - margin), with the outermost band treated as
// boundary-corrupted.  Spectrum sequences carry dim + 3 entries so finite
// differences up to third order are exact at the edge.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ptcs/model.hpp"

namespace ptcs::ladder {

using TruncatedOperator = Eigen::MatrixXcd;

struct SpectrumSequence {
    double nu = 2.0;
    std::vector<double> e;  // e_0 .. e_{n_max+3}

    static SpectrumSequence make(double nu, int n_max) {
        if (n_max < 0) throw std::domain_error("SpectrumSequence: n_max >= 0");
        SpectrumSequence s;
        s.nu = nu;
        s.e.resize(n_max + 4);
        for (int n = 0; n < static_cast<int>(s.e.size()); ++n)
            s.e[n] = static_cast<double>(n) * (n + nu);
        return s;
    }

    int dim() const { return static_cast<int>(e.size()) - 3; }
};

inline double eta(double nu) { return 0.5 * (nu + 1.0); }

inline TruncatedOperator lowering(int n_max, const SpectrumSequence& seq) {
    const int dim = n_max + 1;
    if (static_cast<int>(seq.e.size()) < dim + 1)
        throw std::domain_error("lowering: sequence too short");
    TruncatedOperator a = TruncatedOperator::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(seq.e[n + 1]);
    return a;
}

inline TruncatedOperator raising(int n_max, const SpectrumSequence& seq) {
    return lowering(n_max, seq).adjoint();
}

inline TruncatedOperator diagonal(const std::vector<double>& values) {
    const int dim = static_cast<int>(values.size());
    TruncatedOperator d = TruncatedOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) d(n, n) = values[n];
    return d;
}

// m-th finite difference of a diagonal sequence; needs values up to
// dim - 1 + order.
inline TruncatedOperator diagonal_finite_difference(const std::vector<double>& delta,
                                                    int order, int dim) {
    if (order < 0) throw std::domain_error("diagonal_finite_difference: order >= 0");
    if (static_cast<int>(delta.size()) < dim + order)
        throw std::domain_error("diagonal_finite_difference: sequence too short");
    std::vector<double> work(delta.begin(), delta.end());
    for (int m = 0; m < order; ++m)
        for (size_t i = 0; i + 1 < work.size(); ++i) work[i] = work[i + 1] - work[i];
    work.resize(dim);
    return diagonal(work);
}

inline TruncatedOperator x_n(int n_max, const SpectrumSequence& seq) {
    return diagonal_finite_difference(seq.e, 0, n_max + 1);
}

inline TruncatedOperator x_n_prime(int n_max, const SpectrumSequence& seq) {
    return diagonal_finite_difference(seq.e, 1, n_max + 1);
}

inline TruncatedOperator commutator(const TruncatedOperator& A,
                                    const TruncatedOperator& B) {
    return A * B - B * A;
}

struct Su11Generators {
    TruncatedOperator l_minus, l_plus, l12;
};

// L- = a/sqrt2, L+ = a^dag/sqrt2, L12 = X'_N/2 with diagonal eta + n
inline Su11Generators su11_generators(int n_max, const SpectrumSequence& seq) {
    Su11Generators g;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    g.l_minus = inv_sqrt2 * lowering(n_max, seq);
    g.l_plus = inv_sqrt2 * raising(n_max, seq);
    g.l12 = 0.5 * x_n_prime(n_max, seq);
    return g;
}

// Casimir L12(L12 - 1) - 2 L+ L-; equals eta(eta-1) I on the interior block
inline TruncatedOperator casimir(int n_max, const SpectrumSequence& seq) {
    const auto g = su11_generators(n_max, seq);
    const int dim = n_max + 1;
    const TruncatedOperator id = TruncatedOperator::Identity(dim, dim);
    return g.l12 * (g.l12 - id) - 2.0 * g.l_plus * g.l_minus;
}

// N = -nu/2 + sqrt(X_N + nu^2/4): recovers diag(0, 1, 2, ...)
inline TruncatedOperator number_from_xn(const SpectrumSequence& seq, int dim) {
    std::vector<double> n_vals(dim);
    for (int n = 0; n < dim; ++n)
        n_vals[n] = -0.5 * seq.nu + std::sqrt(seq.e[n] + 0.25 * seq.nu * seq.nu);
    return diagonal(n_vals);
}

// Quadratic relation between X_N and X'_N:  e_n = (e'_n^2 - 2 e'_n - C)/4.
// Solving for the constant gives C = nu^2 - 1 = (nu+1)(nu-1) for every n;
// for the well (nu = 2) this is the familiar constant 3.
inline CheckReport xn_quadratic_relation(const SpectrumSequence& seq) {
    const double C = seq.nu * seq.nu - 1.0;
    double worst = 0.0;
    for (int n = 0; n + 1 < static_cast<int>(seq.e.size()); ++n) {
        const double ep = seq.e[n + 1] - seq.e[n];
        const double rhs = 0.25 * (ep * ep - 2.0 * ep - C);
        worst = std::max(worst, std::abs(rhs - seq.e[n]) /
                                    std::max(1.0, std::abs(seq.e[n])));
    }
    return CheckReport::make("ladder.xn_quadratic_relation", worst, 1e-12);
}

// Largest entry of (A - B) over the interior block.
inline double interior_residual(const TruncatedOperator& A,
                                const TruncatedOperator& B, int margin) {
    const int dim = static_cast<int>(A.rows());
    const int keep = dim - margin;
    if (keep <= 0) throw std::domain_error("interior_residual: margin too large");
    return (A.topLeftCorner(keep, keep) - B.topLeftCorner(keep, keep))
        .cwiseAbs()
        .maxCoeff();
}

// Same, normalized by the magnitude of the identity under test, so a
// tolerance like 1e-12 is meaningful for operators with O(10^3) entries.
inline double relative_interior_residual(const TruncatedOperator& A,
                                         const TruncatedOperator& B, int margin) {
    const int keep = static_cast<int>(A.rows()) - margin;
    const double scale =
        std::max(1.0, B.topLeftCorner(keep, keep).cwiseAbs().maxCoeff());
    return interior_residual(A, B, margin) / scale;
}

}  // namespace ptcs::ladder
