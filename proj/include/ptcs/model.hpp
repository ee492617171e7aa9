#pragma once

// Shared domain types: model parameters for the two confining potentials,
// sampled grid functions, and check reports.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptcs {

enum class Potential { Well, PoeschlTeller };

// Quantum model parameters.  The Poeschl-Teller coupling follows the
// convention V0 = hbar^2/(4 m a^2), which makes both spectra read
// E_n = hbar*omega * n(n+nu) with nu = lambda+kappa (well: nu = 2).
struct ModelParams {
    Potential family = Potential::Well;
    double lambda = 1.0;  // > 1 for Poeschl-Teller
    double kappa = 1.0;   // > 1 for Poeschl-Teller
    double a = 1.0;       // well width is pi*a
    double mass = 1.0;
    double hbar = 1.0;

    static ModelParams well(double a = 1.0, double mass = 1.0, double hbar = 1.0) {
        ModelParams p;
        p.family = Potential::Well;
        p.a = a;
        p.mass = mass;
        p.hbar = hbar;
        return p;
    }

    static ModelParams poschl_teller(double lambda, double kappa, double a = 1.0,
                                     double mass = 1.0, double hbar = 1.0) {
        if (!(lambda > 1.0) || !(kappa > 1.0))
            throw std::domain_error("ModelParams: lambda, kappa must be > 1");
        ModelParams p;
        p.family = Potential::PoeschlTeller;
        p.lambda = lambda;
        p.kappa = kappa;
        p.a = a;
        p.mass = mass;
        p.hbar = hbar;
        return p;
    }

    double nu() const {
        return family == Potential::Well ? 2.0 : lambda + kappa;
    }
    double omega() const { return hbar / (2.0 * mass * a * a); }
    double energy_scale() const { return hbar * omega(); }  // hbar^2/(2 m a^2)
    double v0() const { return hbar * hbar / (4.0 * mass * a * a); }
    double width() const { return M_PI * a; }
};

struct GridFunction {
    std::vector<double> grid;
    std::vector<double> values;
    std::string grid_unit;
    std::string value_unit;
};

struct CheckReport {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static CheckReport make(std::string name, double residual, double tolerance) {
        CheckReport r;
        r.name = std::move(name);
        r.residual = residual;
        r.tolerance = tolerance;
        r.pass = residual <= tolerance;
        return r;
    }
};

}  // namespace ptcs
