#include <doctest.h>

#include <cmath>

#include "htgas/equilibrium.hpp"
#include "htgas/transforms.hpp"
#include "test_helpers.hpp"

using namespace htgas;
using namespace htgas_test;

TEST_CASE("P=0 reduces to the exact Gibbs density") {
    Grid g = build_grid(8.0, 2048);
    auto eq = solve_equilibrium(gaussian_potential(), 0.0, g);
    double err = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        err = std::max(err, std::abs(eq.rho.values[i] - std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI)));
    }
    CHECK(err < 1e-10);
    CHECK(eq.lambda == doctest::Approx(0.5 * std::log(2 * M_PI)).epsilon(1e-10));
    CHECK(equilibrium_residual(eq) < 1e-12);

    // quartic: lambda = ln int e^{-x^4} = ln(2 Gamma(5/4))
    Grid gq = build_grid(4.0, 2048);
    auto eq2 = solve_equilibrium(quartic_potential(), 0.0, gq);
    const double lnz = std::log(2.0) + std::lgamma(1.25);
    CHECK(eq2.lambda == doctest::Approx(lnz).epsilon(1e-10));
}

TEST_CASE("gaussian P=1 equilibrium matches the closed-form reference") {
    Grid g = build_grid(8.0, 2048);
    auto eq = solve_equilibrium(gaussian_potential(), 1.0, g, {.tol = 1e-11});
    auto ref = gaussian_reference_density(1.0, g);

    // frozen value of the reference at the origin: sqrt(pi/2) in the
    // oscillatory integral gives rho(0) = (1/sqrt(2 pi)) * 2/pi
    const double rho0 = 2.0 / (M_PI * std::sqrt(2.0 * M_PI));
    CHECK(interpolate(ref.density, 0.0) == doctest::Approx(rho0).epsilon(1e-6));

    double rel = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        if (std::abs(x) > 4.0) continue;
        rel = std::max(rel, std::abs(eq.rho.values[i] - ref.density.values[i]) / ref.density.values[i]);
    }
    CHECK(rel < 1e-4);
    CHECK(equilibrium_residual(eq) < 1e-6);
}

TEST_CASE("gaussian reference density is even and normalized") {
    Grid g = build_grid(8.0, 1024);
    auto ref = gaussian_reference_density(1.0, g);
    CHECK(std::abs(ref.raw_mass - 1.0) < 1e-6);
    CHECK(std::abs(integrate(ref.density) - 1.0) < 1e-12);
    double asym = 0.0;
    for (int i = 0; i < g.n_points; ++i)
        asym = std::max(asym, std::abs(ref.density.values[i] - ref.density.values[g.n_points - 1 - i]));
    CHECK(asym < 1e-10);
    CHECK_THROWS_AS(gaussian_reference_density(0.0, g), numeric_error);
}

TEST_CASE("equilibrium residual flags a non-equilibrium density") {
    Grid g = build_grid(8.0, 1024);
    auto eq = solve_equilibrium(gaussian_potential(), 1.0, g);
    // hand-built rho = e^{-V}/Z is the wrong fixed point at P=1
    EquilibriumMeasure fake = eq;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        fake.rho.values[i] = std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
        fake.log_rho[i] = -0.5 * x * x - 0.5 * std::log(2 * M_PI);
    }
    fake.u_log = log_potential(fake.rho);
    CHECK(equilibrium_residual(fake) > 0.05);
}

TEST_CASE("density derivative formulas agree with finite differences") {
    Grid g = build_grid(8.0, 4096);
    auto eq = solve_equilibrium(gaussian_potential(), 1.0, g, {.tol = 1e-11});

    auto fd1 = derivative(eq.rho);
    auto fd2 = second_derivative(eq.rho);
    const double h2 = g.spacing * g.spacing;
    double e1 = 0.0, e2 = 0.0;
    for (int i = eq.support_lo + 2; i <= eq.support_hi - 2; ++i) {
        e1 = std::max(e1, std::abs(eq.rho_prime.values[i] - fd1.values[i]));
        e2 = std::max(e2, std::abs(eq.rho_second.values[i] - fd2.values[i]));
    }
    CHECK(e1 < 5.0 * h2);
    CHECK(e2 < 50.0 * h2);

    // P=0: rho' = -x rho exactly
    auto eq0 = solve_equilibrium(gaussian_potential(), 0.0, g);
    double e0 = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        e0 = std::max(e0, std::abs(eq0.rho_prime.values[i] + x * eq0.rho.values[i]));
    }
    CHECK(e0 < 1e-8);
}

TEST_CASE("tail asymptotics of the equilibrium fields") {
    Grid g = build_grid(10.0, 2048);
    auto eq = solve_equilibrium(gaussian_potential(), 1.0, g, {.tol = 1e-11});

    // x H[rho](x) -> -1 within 5% at |x| = 0.9 L
    const double x9 = 0.9 * g.half_width;
    CHECK(x9 * interpolate(eq.h_rho, x9) == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(-x9 * interpolate(eq.h_rho, -x9) == doctest::Approx(-1.0).epsilon(0.05));

    // U^rho(x) + ln|x| decays like 1/x at the edges
    const double at9 = interpolate(eq.u_log, x9) + std::log(x9);
    const double at7 = interpolate(eq.u_log, 0.7 * g.half_width) + std::log(0.7 * g.half_width);
    CHECK(std::abs(at9) < 0.2);
    CHECK(std::abs(at9) < std::abs(at7));

    // tail bound rho <= C (1+|x|)^{2P} e^{-V} on the outer 10%
    double cfit = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        if (std::abs(x) < 0.9 * g.half_width) continue;
        const double bound = std::pow(1.0 + std::abs(x), 2.0) * std::exp(-0.5 * x * x);
        cfit = std::max(cfit, eq.rho.values[i] / bound);
    }
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        const double bound = std::pow(1.0 + std::abs(x), 2.0) * std::exp(-0.5 * x * x);
        CHECK(eq.rho.values[i] <= 1.05 * std::max(cfit, 1.0) * bound + 1e-30);
    }
}

TEST_CASE("second moment of the gaussian equilibrium increases with pressure") {
    Grid g = build_grid(10.0, 1024);
    double prev = 0.0;
    for (double P : {0.5, 1.0, 2.0, 4.0}) {
        auto eq = solve_equilibrium(gaussian_potential(), P, g, {.tol = 1e-9});
        auto x2 = sample_on_grid(g, [](double x) { return x * x; });
        const double var = inner_l2(x2, eq.rho);
        CHECK(var > prev);
        prev = var;
    }
}

TEST_CASE("converged solve is idempotent") {
    Grid g = build_grid(8.0, 1024);
    const double tol = 1e-10;
    auto eq = solve_equilibrium(gaussian_potential(), 1.0, g, {.tol = tol});
    // one more undamped step moves ln rho by less than tol (up to roundoff)
    auto u = log_potential(eq.rho);
    double shift = 0.0;
    GridFunction target(g);
    for (int i = 0; i < g.n_points; ++i)
        target.values[i] = std::exp(-eq.potential.v(g.node(i)) - 2.0 * u.values[i]);
    const double mass = integrate(target);
    for (int i = eq.support_lo; i <= eq.support_hi; ++i) {
        const double t = target.values[i] / mass;
        shift = std::max(shift, std::abs(std::log(t) - eq.log_rho[i]));
    }
    CHECK(shift < 10 * tol);
}

TEST_CASE("validation: gaussian and quartic pass, |x| fails hard") {
    Grid g = build_grid(8.0, 1024);
    auto rep_g = validate_potential(gaussian_potential(), 1.0, g);
    CHECK(!rep_g.hard_fail());
    CHECK(rep_g.all_pass());

    Grid gq = build_grid(3.0, 1024);
    auto rep_q = validate_potential(quartic_potential(), 1.0, gq);
    CHECK(!rep_q.hard_fail());
    for (const auto& c : rep_q.checks)
        if (c.name == "poincare_convexity") CHECK(c.status == CheckStatus::pass);

    auto rep_abs = validate_potential(abs_potential(), 1.0, g);
    CHECK(rep_abs.hard_fail());
    CHECK_THROWS_AS(solve_equilibrium(abs_potential(), 1.0, g), validation_error);
}

TEST_CASE("non-convergence raises an iteration error") {
    Grid g = build_grid(8.0, 1024);
    SolveOptions opts;
    opts.max_iter = 2;
    opts.tol = 1e-14;
    CHECK_THROWS_AS(solve_equilibrium(gaussian_potential(), 1.0, g, opts), numeric_error);
}

TEST_CASE("negative pressure is rejected") {
    Grid g = build_grid(8.0, 1024);
    CHECK_THROWS_AS(solve_equilibrium(gaussian_potential(), -1.0, g), numeric_error);
}
