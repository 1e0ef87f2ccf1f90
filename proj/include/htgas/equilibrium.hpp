#pragma once

#include "htgas/grid.hpp"
#include "htgas/potential.hpp"

namespace htgas {

// Solution of the thermal equilibrium equation
//   V(x) + 2P U^rho(x) + ln rho(x) = lambda
// on a finite grid, together with the attached transform fields.
struct EquilibriumMeasure {
    Potential potential;
    double pressure = 0.0;
    Grid grid;
    GridFunction rho;          // density, unit trapezoid mass
    std::vector<double> log_rho;
    double lambda = 0.0;
    GridFunction u_log;        // U^rho
    GridFunction h_rho;        // H[rho]
    GridFunction rho_prime;    // -(V' + 2P H[rho]) rho
    GridFunction rho_second;
    int support_lo = 0;        // effective support: rho >= 1e-12
    int support_hi = 0;
    int iterations = 0;

    double density_floor() const { return 1e-12; }
};

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 5000;
    double theta = 0.5;        // damping of the Picard iteration
    bool adaptive = true;      // halve theta when the residual grows
    bool validate = true;      // refuse potentials with hard validation failures
};

// Damped fixed-point iteration rho <- (1-theta) rho + theta exp(-V - 2P U^rho - lambda),
// lambda fixed by unit mass each step, started from the free Gibbs density.
EquilibriumMeasure solve_equilibrium(const Potential& V, double P, const Grid& grid,
                                     const SolveOptions& opts = {});

// sup over the effective support of |V + 2P U^rho + ln rho - lambda|
double equilibrium_residual(const EquilibriumMeasure& eq);

// (rho', rho'') by the closed formulas, not finite differences.
std::pair<GridFunction, GridFunction> density_derivatives(const EquilibriumMeasure& eq);

// Closed-form density for the Gaussian potential: rho(x) = phi(x)/|fhat_P(x)|^2
// with fhat_P a confluent-type oscillatory integral evaluated per node.
struct GaussianReference {
    GridFunction density;
    double raw_mass = 0.0;     // trapezoid mass before renormalization
};
GaussianReference gaussian_reference_density(double P, const Grid& grid);

// Grow the half-width until the tail bound exp(-V(L) + 2P ln(1+L)) < 1e-14,
// then double the resolution until lambda moves by less than lambda_tol.
Grid auto_grid(const Potential& V, double P, const SolveOptions& opts = {},
               int n_start = 1024, int n_max = 16384, double lambda_tol = 1e-8);

}  // namespace htgas
