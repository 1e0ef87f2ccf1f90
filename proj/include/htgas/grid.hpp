#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace htgas {

// Error taxonomy used across the library. The CLI maps these to exit codes.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform symmetric grid on [-L, L] with a power-of-two node count.
struct Grid {
    double half_width = 0.0;
    int n_points = 0;
    double spacing = 0.0;

    double node(int i) const { return -half_width + i * spacing; }
    std::vector<double> nodes() const;
    bool operator==(const Grid& other) const {
        return half_width == other.half_width && n_points == other.n_points;
    }
};

Grid build_grid(double half_width, int n_points);

// Far-field Laurent model: g(t) ~ sum_k coeffs[k] / t^{k+1} for |t| > cutoff.
// Attached to grid functions whose decay is too slow for plain truncation
// (typically Hilbert transforms of integrable inputs).
struct FarField {
    std::vector<double> coeffs;
    double cutoff = 0.0;
};

struct GridFunction {
    Grid grid;
    std::vector<double> values;
    std::optional<FarField> far_field;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.n_points, 0.0) {}
    GridFunction(const Grid& g, std::vector<double> v);

    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
    int size() const { return grid.n_points; }

    bool all_finite() const;
};

// Sample a callable on the grid.
template <typename F>
GridFunction sample_on_grid(const Grid& g, F&& f) {
    GridFunction out(g);
    for (int i = 0; i < g.n_points; ++i) out.values[i] = f(g.node(i));
    return out;
}

// Composite trapezoid; exact for piecewise-linear integrands on the grid.
double integrate(const GridFunction& f);

// Trapezoid inner products. The weighted versions take nodal weights w
// (e.g. an equilibrium density) applied pointwise.
double inner_l2(const GridFunction& f, const GridFunction& g);
double inner_l2_weighted(const GridFunction& f, const GridFunction& g,
                         const GridFunction& w);
double norm_l2(const GridFunction& f);

// L2 norm including the closed-form tail mass of the far-field model, when
// one is attached.
double norm_l2_with_tail(const GridFunction& f);

// Centered second-order finite differences, one-sided at the boundary.
GridFunction derivative(const GridFunction& f);
GridFunction second_derivative(const GridFunction& f);

// Right cumulative integral F(x_i) = int_{x_i}^{L} f, fourth-order via an
// Euler-Maclaurin endpoint correction of the cumulative trapezoid.
GridFunction cumulative_integral_right(const GridFunction& f);

// Moments m_k = int t^k f(t) dt for k = 0..count-1.
std::vector<double> moments(const GridFunction& f, int count);

// Nonnegative and unit trapezoid mass within tol.
bool is_density(const GridFunction& f, double tol = 1e-10);

// Piecewise-linear evaluation; clamps to the boundary values outside.
double interpolate(const GridFunction& f, double x);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);

}  // namespace htgas
