#pragma once

// Gauss-Legendre quadrature: cached nodes/weights, fixed-order panel rule,
// adaptive bisection, and a panel accumulator for semi-infinite integrals
// of exponentially decaying integrands.

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ptcs::quad {

struct NodeSet {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

namespace detail {

// Newton iteration on the Legendre polynomial recurrence.
inline NodeSet compute_gauss_legendre(int n) {
    NodeSet ns;
    ns.x.resize(n);
    ns.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        ns.x[i] = -z;
        ns.x[n - 1 - i] = z;
        ns.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        ns.w[n - 1 - i] = ns.w[i];
    }
    return ns;
}

}  // namespace detail

inline const NodeSet& gauss_legendre(int n) {
    static std::map<int, NodeSet> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
    return it->second;
}

template <class F>
double gl(F&& f, double a, double b, int n) {
    const NodeSet& ns = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += ns.w[i] * f(mid + half * ns.x[i]);
    return half * sum;
}

namespace detail {

template <class F>
double adaptive_impl(F& f, double a, double b, double rel_tol, double abs_tol,
                     int depth) {
    const double coarse = gl(f, a, b, 16);
    const double fine = gl(f, a, b, 32);
    const double err = std::abs(fine - coarse);
    if (err <= abs_tol || err <= rel_tol * std::abs(fine) || depth >= 40)
        return fine;
    const double mid = 0.5 * (a + b);
    return adaptive_impl(f, a, mid, rel_tol, 0.5 * abs_tol, depth + 1) +
           adaptive_impl(f, mid, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

}  // namespace detail

template <class F>
double adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                double abs_tol = 0.0) {
    return detail::adaptive_impl(f, a, b, rel_tol, abs_tol, 0);
}

// Integrate on a fixed interval with order doubling until two refinements
// agree to rel_tol (used where the integrand is smooth but the caller wants
// a certified self-consistent value).
template <class F>
double gl_refined(F&& f, double a, double b, double rel_tol = 1e-12,
                  int n0 = 32, int n_cap = 4096) {
    double prev = gl(f, a, b, n0);
    for (int n = 2 * n0; n <= n_cap; n *= 2) {
        const double cur = gl(f, a, b, n);
        if (std::abs(cur - prev) <= rel_tol * std::max(1e-300, std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

// Panel sweep over [a, inf) for integrands decaying (at least) exponentially;
// stops once two consecutive panels contribute below rel_tol of the total.
template <class F>
double to_infinity(F&& f, double a, double panel_width, double rel_tol = 1e-12,
                   int order = 64, int max_panels = 100000) {
    double total = 0.0;
    int quiet = 0;
    double lo = a;
    for (int p = 0; p < max_panels; ++p) {
        const double hi = lo + panel_width;
        const double part = gl(f, lo, hi, order);
        total += part;
        if (std::abs(part) <= rel_tol * std::abs(total))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2) return total;
        lo = hi;
    }
    throw std::runtime_error("quad::to_infinity: no convergence");
}

}  // namespace ptcs::quad
