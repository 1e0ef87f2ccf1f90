#pragma once

#include <functional>
#include <string>
#include <vector>

#include "htgas/grid.hpp"

namespace htgas {

// Serializable description of a confining potential.
struct PotentialSpec {
    std::string type;             // gaussian | quartic | sym_poly | cosh | abs
    std::vector<double> params;   // sym_poly: c2 c4 ...; cosh: a b
};

// Confining potential with derivatives up to third order.
struct Potential {
    PotentialSpec spec;
    std::string name;
    std::function<double(double)> v, dv, d2v, d3v;
    // second derivative of the declared convex part, used by the log-concavity
    // route of the Poincare check; defaults to d2v
    std::function<double(double)> convex_d2v;

    double operator()(double x) const { return v(x); }
};

Potential make_potential(const PotentialSpec& spec);
Potential gaussian_potential();                                  // x^2/2
Potential quartic_potential();                                   // x^4
Potential sym_poly_potential(const std::vector<double>& even_coeffs);
Potential cosh_potential(double a, double b);                    // a cosh(bx)
Potential abs_potential();                                       // |x|, fails validation

enum class CheckStatus { pass, warn, fail };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool hard_fail() const;
    bool all_pass() const;
    std::string summary() const;
};

// Numerical probes of the admissibility conditions: growth of V and |V'|,
// decay of Q(V') e^{-V}, the window criterion on V''/V'^2, integrability of
// V'^{-2} with boundedness of V''/V' and V'''/V', and a sufficient Poincare
// criterion (existence of eps in {2^-k} with V_conv'' + 2P (a - x^2)/(a + x^2)^2
// >= 0 on the grid, a = 1/eps). Growth failures are hard; the rest warn.
ValidationReport validate_potential(const Potential& V, double P, const Grid& grid);

// Probe of the third-derivative growth condition at a finite particle count:
// sup |V'''| over [-(edge+1), edge+1] divided by sqrt(N). Reported, not gated.
double third_derivative_edge_ratio(const Potential& V, double edge, int n_particles);

}  // namespace htgas
