#pragma once

#include <Eigen/Dense>
#include <memory>

#include "htgas/equilibrium.hpp"

namespace htgas {

// Schroedinger potential w_V of the conjugated operator S = -d^2/dx^2 + w_V,
// evaluated in the expanded form
//   w_V = (1/2)( V'^2/2 - V'' + 2P V' H[rho] - 2P H[rho'] + 2P^2 H[rho]^2 ),
// which avoids logarithms of the vanishing density.
GridFunction schrodinger_potential(const EquilibriumMeasure& eq);

// Eigenpairs of the Sturm-Liouville operator A[u] = -(u' rho)'/rho on the
// zero-mean subspace of L2(mu). Obtained by diagonalizing S with Dirichlet
// walls (second-order finite differences), mapping psi -> psi/sqrt(rho),
// dropping the ground mode (the image of constants) and projecting to zero
// mean. Eigenfunctions are orthonormal in L2(mu).
struct SpectralBasis {
    std::shared_ptr<const EquilibriumMeasure> eq;
    std::vector<double> eigenvalues;           // ascending, all > 0
    std::vector<GridFunction> eigenfunctions;  // L2(mu)-orthonormal, zero mu-mean
    int n_modes = 0;
};

SpectralBasis diagonalize_A(std::shared_ptr<const EquilibriumMeasure> eq, int n_modes);

// Direct actions on grid functions.
GridFunction apply_A(const EquilibriumMeasure& eq, const GridFunction& u);
GridFunction apply_W(const EquilibriumMeasure& eq, const GridFunction& u);
GridFunction apply_Xi(const EquilibriumMeasure& eq, const GridFunction& u);
GridFunction apply_L(const EquilibriumMeasure& eq, const GridFunction& u);

// A^{-1}[f](x) = -int_x^inf ds/rho(s) int_s^inf f rho dt + C, C fixing zero
// mu-mean; requires int f dmu = 0 within 1e-8.
GridFunction invert_A(const EquilibriumMeasure& eq, const GridFunction& f);

// mu-weighted Nystrom discretization of the log kernel
//   k(x,y) = 2P ln|x-y| + 2P U^rho(y),
// with the diagonal singularity integrated exactly per cell. Satisfies
// 2P W[A^{-1}[f]] = -K[f].
struct FredholmKernel {
    Eigen::MatrixXd k;             // K_ij acting as (K g)_i = sum_j K_ij g_j
    std::vector<double> weights;   // mu-quadrature weights w_j rho_j (smooth part)
};
FredholmKernel fredholm_kernel(const EquilibriumMeasure& eq);

// Galerkin image of -L = A + 2P W in the H-orthonormalized eigenbasis
// psi_n = phi_n / sqrt(lambda_n):  l_matrix = diag(lambda) + 2P w_matrix.
struct OperatorAssembly {
    SpectralBasis basis;
    Eigen::MatrixXd w_matrix;
    Eigen::MatrixXd l_matrix;
    double pressure = 0.0;
};
OperatorAssembly assemble_operators(const SpectralBasis& basis);

// Solve L[u] = f - int f dmu in span{psi_1..psi_M}; returns u with zero mean.
GridFunction invert_L_spectral(const OperatorAssembly& assembly, const GridFunction& f,
                               int n_modes = 0);

// Same solve through the explicit route: g = (id - K)^{-1} f~, u = -A^{-1}[g].
// cond_estimate, when given, receives a 1-norm condition estimate of (id - K).
GridFunction invert_L_fredholm(const EquilibriumMeasure& eq, const GridFunction& f,
                               double* cond_estimate = nullptr);

// Forward variance q(phi) = int (phi'^2 + V'' phi^2) dmu
//                         + P  int int ((phi(x)-phi(y))/(x-y))^2 dmu dmu.
double forward_variance_q(const EquilibriumMeasure& eq, const GridFunction& phi);

// Limiting CLT variance of the linear statistics of f: sigma^2 = q(psi) with
// psi solving Xi[psi] = f - int f dmu (psi = (L^{-1} f~)'). The compact inner
// product form -<f', psi>_{L2(mu)} is recorded as a diagnostic along with the
// Galerkin mode-doubling history.
struct VarianceResult {
    double sigma2 = 0.0;
    GridFunction psi;
    double compact_form = 0.0;           // -<f', psi>_{L2(mu)}
    double compact_rel_diff = 0.0;
    std::vector<std::pair<int, double>> mode_history;  // (modes, sigma2)
};
VarianceResult limiting_variance(const EquilibriumMeasure& eq, const OperatorAssembly& assembly,
                                 const GridFunction& f);

// Relative discrepancy of
//   int int ((phi'(x)-phi'(y))/(x-y))^2 dmu dmu
//     = 2 int (H[rho]' phi'^2 - H[phi' rho]' phi') dmu.
double variance_identity_check(const EquilibriumMeasure& eq, const GridFunction& phi);

// n-th limiting average current: J = (P/2)(sigma^2(h1+hn) - sigma^2(h1)
// - sigma^2(hn)) with h_k(x) = x^k smoothly truncated at |x| = cutoff. The
// value at 1.25*cutoff is reported as a sensitivity probe.
struct TodaCurrent {
    double value = 0.0;
    double value_wider_cutoff = 0.0;
};
TodaCurrent toda_current(const EquilibriumMeasure& eq, const OperatorAssembly& assembly, int n,
                         double cutoff);

// x^k with a smooth cosine taper to zero on [cutoff, 1.15*cutoff].
GridFunction truncated_monomial(const Grid& grid, int k, double cutoff);

}  // namespace htgas
