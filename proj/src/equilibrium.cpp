#include "htgas/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "htgas/transforms.hpp"

namespace htgas {

namespace {

void normalize_in_place(GridFunction& f) {
    const double m = integrate(f);
    if (!(m > 0.0)) throw numeric_error("equilibrium iterate lost positivity");
    for (double& v : f.values) v /= m;
}

void find_support(const GridFunction& rho, double floor, int& lo, int& hi) {
    const int n = rho.size();
    lo = 0;
    hi = n - 1;
    while (lo < n - 1 && rho.values[lo] < floor) ++lo;
    while (hi > 0 && rho.values[hi] < floor) --hi;
    if (lo >= hi) throw numeric_error("equilibrium density has empty effective support");
}

}  // namespace

EquilibriumMeasure solve_equilibrium(const Potential& V, double P, const Grid& grid,
                                     const SolveOptions& opts) {
    if (P < 0.0) throw numeric_error("pressure must be nonnegative");
    if (opts.validate) {
        const auto rep = validate_potential(V, P, grid);
        if (rep.hard_fail())
            throw validation_error("potential fails admissibility checks:\n" + rep.summary());
    }

    const int n = grid.n_points;
    GridFunction vvals = sample_on_grid(grid, V.v);

    // start from the free Gibbs density
    GridFunction rho(grid);
    {
        const double vmin = *std::min_element(vvals.values.begin(), vvals.values.end());
        for (int i = 0; i < n; ++i) rho.values[i] = std::exp(-(vvals.values[i] - vmin));
        normalize_in_place(rho);
    }

    double lambda = 0.0;
    double theta = opts.theta;
    double prev_res = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = (P == 0.0);

    if (P == 0.0) {
        // exact: rho = e^{-V}/Z, lambda = ln Z
        GridFunction raw(grid);
        for (int i = 0; i < n; ++i) raw.values[i] = std::exp(-vvals.values[i]);
        lambda = std::log(integrate(raw));
        for (int i = 0; i < n; ++i) rho.values[i] = std::exp(-vvals.values[i] - lambda);
    } else {
        for (it = 1; it <= opts.max_iter; ++it) {
            GridFunction u = log_potential(rho);
            // lambda from unit-mass normalization of exp(-V - 2P U)
            double emax = -1e300;
            std::vector<double> expo(n);
            for (int i = 0; i < n; ++i) {
                expo[i] = -vvals.values[i] - 2.0 * P * u.values[i];
                emax = std::max(emax, expo[i]);
            }
            GridFunction target(grid);
            for (int i = 0; i < n; ++i) target.values[i] = std::exp(expo[i] - emax);
            const double mass = integrate(target);
            lambda = emax + std::log(mass);
            for (double& v : target.values) v /= mass;

            // undamped residual sup |ln rho - ln target| on the effective support
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                if (rho.values[i] < 1e-12 && target.values[i] < 1e-12) continue;
                const double a = std::max(rho.values[i], 1e-300);
                const double b = std::max(target.values[i], 1e-300);
                res = std::max(res, std::abs(std::log(a) - std::log(b)));
            }

            if (res < opts.tol) { converged = true; break; }

            if (opts.adaptive) {
                if (res > prev_res * 1.000001) theta = std::max(0.02, 0.5 * theta);
                else theta = std::min(opts.theta, 1.1 * theta);
            }
            prev_res = res;

            for (int i = 0; i < n; ++i)
                rho.values[i] = (1.0 - theta) * rho.values[i] + theta * target.values[i];
            normalize_in_place(rho);
        }
        if (!converged)
            throw numeric_error("equilibrium iteration did not converge: residual " +
                                std::to_string(prev_res) + " after " +
                                std::to_string(opts.max_iter) + " iterations");
    }

    EquilibriumMeasure eq;
    eq.potential = V;
    eq.pressure = P;
    eq.grid = grid;
    eq.iterations = it;

    // final self-consistent state: lambda from the last normalization, the
    // density regenerated from the equation so ln rho is available exactly
    GridFunction u = log_potential(rho);
    {
        double emax = -1e300;
        std::vector<double> expo(n);
        for (int i = 0; i < n; ++i) {
            expo[i] = -vvals.values[i] - 2.0 * P * u.values[i];
            emax = std::max(emax, expo[i]);
        }
        GridFunction raw(grid);
        for (int i = 0; i < n; ++i) raw.values[i] = std::exp(expo[i] - emax);
        const double mass = integrate(raw);
        eq.lambda = emax + std::log(mass);
        eq.log_rho.resize(n);
        eq.rho = GridFunction(grid);
        for (int i = 0; i < n; ++i) {
            eq.log_rho[i] = expo[i] - eq.lambda;
            eq.rho.values[i] = std::exp(eq.log_rho[i]);
        }
    }
    eq.u_log = log_potential(eq.rho);
    eq.h_rho = hilbert_transform(eq.rho);
    find_support(eq.rho, eq.density_floor(), eq.support_lo, eq.support_hi);

    auto [rp, rs] = density_derivatives(eq);
    eq.rho_prime = std::move(rp);
    eq.rho_second = std::move(rs);
    return eq;
}

double equilibrium_residual(const EquilibriumMeasure& eq) {
    // At the fixed point, V + 2P U^rho + ln rho is the constant -lambda under
    // the normalization lambda = ln int exp(-V - 2P U^rho); the residual is
    // the sup-deviation from that constant.
    double res = 0.0;
    for (int i = eq.support_lo; i <= eq.support_hi; ++i) {
        if (eq.rho.values[i] < eq.density_floor()) continue;
        const double x = eq.grid.node(i);
        const double r = eq.potential.v(x) + 2.0 * eq.pressure * eq.u_log.values[i] +
                         eq.log_rho[i] + eq.lambda;
        res = std::max(res, std::abs(r));
    }
    return res;
}

std::pair<GridFunction, GridFunction> density_derivatives(const EquilibriumMeasure& eq) {
    const int n = eq.grid.n_points;
    const double P = eq.pressure;
    GridFunction rp(eq.grid), rs(eq.grid);
    for (int i = 0; i < n; ++i) {
        const double x = eq.grid.node(i);
        rp.values[i] = -(eq.potential.dv(x) + 2.0 * P * eq.h_rho.values[i]) * eq.rho.values[i];
    }
    GridFunction h_rho_prime = hilbert_transform(rp);  // H[rho]' = H[rho']
    for (int i = 0; i < n; ++i) {
        const double x = eq.grid.node(i);
        const double dv = eq.potential.dv(x);
        const double h = eq.h_rho.values[i];
        rs.values[i] = (-2.0 * P * h_rho_prime.values[i] - eq.potential.d2v(x) + dv * dv +
                        4.0 * P * P * h * h + 4.0 * P * dv * h) *
                       eq.rho.values[i];
    }
    return {std::move(rp), std::move(rs)};
}

namespace {

// int_0^inf t^{P-1} e^{-t^2/2} e^{ixt} dt; the [0,1] piece uses t = u^{1/P}
// to absorb the endpoint singularity for P < 1.
std::complex<double> oscillatory_gamma_integral(double P, double x) {
    using cplx = std::complex<double>;
    auto f = [&](double t) {
        return std::exp(-0.5 * t * t) * cplx(std::cos(x * t), std::sin(x * t));
    };
    cplx s1(0.0, 0.0);
    {
        const int n = 2048;  // Simpson on u in [0,1], integrand f(u^{1/P})/P
        const double du = 1.0 / n;
        cplx acc(0.0, 0.0);
        for (int i = 0; i <= n; ++i) {
            const double u = i * du;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * f(std::pow(u, 1.0 / P));
        }
        s1 = acc * (du / 3.0) / P;
    }
    cplx s2(0.0, 0.0);
    {
        const double tmax = 10.0;
        const int n = 8192;
        const double dt = (tmax - 1.0) / n;
        for (int i = 0; i <= n; ++i) {
            const double t = 1.0 + i * dt;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s2 += w * std::pow(t, P - 1.0) * f(t);
        }
        s2 *= dt / 3.0;
    }
    return s1 + s2;
}

}  // namespace

GaussianReference gaussian_reference_density(double P, const Grid& grid) {
    if (P <= 0.0) throw numeric_error("gaussian reference density requires P > 0");
    const int n = grid.n_points;
    const double pref = P / std::tgamma(P);  // |fhat|^2 carries P/Gamma(P)
    GridFunction rho(grid);
    // |fhat(-x)| = |fhat(x)|: evaluate the upper half and mirror
    const int half = n / 2;
    for (int i = half; i < n; ++i) {
        const double x = grid.node(i);
        const auto fh = oscillatory_gamma_integral(P, x);
        const double mod2 = pref * std::norm(fh);
        rho.values[i] = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI) / mod2;
    }
    for (int i = 0; i < half; ++i) {
        const double x = grid.node(i);
        const auto fh = oscillatory_gamma_integral(P, -x);  // grid is symmetric
        rho.values[i] = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI) / (pref * std::norm(fh));
    }
    GaussianReference out;
    out.raw_mass = integrate(rho);
    for (double& v : rho.values) v /= out.raw_mass;
    out.density = std::move(rho);
    return out;
}

Grid auto_grid(const Potential& V, double P, const SolveOptions& opts, int n_start, int n_max,
               double lambda_tol) {
    double L = 2.0;
    while (-V.v(L) + 2.0 * P * std::log1p(L) >= std::log(1e-14)) {
        L *= 1.25;
        if (L > 1e4) throw numeric_error("auto_grid: potential grows too slowly");
    }
    L = 0.5 * std::ceil(2.0 * L);

    int n = n_start;
    Grid g = build_grid(L, n);
    double lam = solve_equilibrium(V, P, g, opts).lambda;
    while (2 * n <= n_max) {
        Grid g2 = build_grid(L, 2 * n);
        const double lam2 = solve_equilibrium(V, P, g2, opts).lambda;
        const bool done = std::abs(lam2 - lam) < lambda_tol;
        n *= 2;
        g = g2;
        lam = lam2;
        if (done) break;
    }
    return g;
}

}  // namespace htgas
