#include "htgas/grid.hpp"

#include <algorithm>
#include <cmath>

namespace htgas {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::vector<double> Grid::nodes() const {
    std::vector<double> x(n_points);
    for (int i = 0; i < n_points; ++i) x[i] = node(i);
    return x;
}

Grid build_grid(double half_width, int n_points) {
    if (half_width <= 0.0) throw config_error("half_width must be positive");
    if (n_points < 256 || !is_power_of_two(n_points))
        throw config_error("n_points must be a power of two >= 256");
    Grid g;
    g.half_width = half_width;
    g.n_points = n_points;
    g.spacing = 2.0 * half_width / (n_points - 1);
    return g;
}

GridFunction::GridFunction(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n_points)
        throw config_error("value array length does not match grid");
}

bool GridFunction::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

double integrate(const GridFunction& f) {
    const int n = f.size();
    double s = 0.5 * (f.values[0] + f.values[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += f.values[i];
    return s * f.grid.spacing;
}

double inner_l2(const GridFunction& f, const GridFunction& g) {
    const int n = f.size();
    double s = 0.5 * (f.values[0] * g.values[0] + f.values[n - 1] * g.values[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += f.values[i] * g.values[i];
    return s * f.grid.spacing;
}

double inner_l2_weighted(const GridFunction& f, const GridFunction& g, const GridFunction& w) {
    const int n = f.size();
    double s = 0.5 * (f.values[0] * g.values[0] * w.values[0] +
                      f.values[n - 1] * g.values[n - 1] * w.values[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += f.values[i] * g.values[i] * w.values[i];
    return s * f.grid.spacing;
}

double norm_l2(const GridFunction& f) { return std::sqrt(inner_l2(f, f)); }

double norm_l2_with_tail(const GridFunction& f) {
    double s2 = inner_l2(f, f);
    if (f.far_field) {
        const auto& c = f.far_field->coeffs;
        const double L = f.far_field->cutoff;
        // int_{|x|>L} (sum_k c_k x^{-(k+1)})^2 dx, termwise closed form
        for (size_t k = 0; k < c.size(); ++k)
            for (size_t l = 0; l < c.size(); ++l) {
                if ((k + l) % 2 != 0) continue;  // odd powers cancel between the two tails
                const double p = static_cast<double>(k + l + 1);
                s2 += 2.0 * c[k] * c[l] / (p * std::pow(L, p));
            }
    }
    return std::sqrt(s2);
}

GridFunction derivative(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing;
    GridFunction d(f.grid);
    for (int i = 1; i < n - 1; ++i) d.values[i] = (f.values[i + 1] - f.values[i - 1]) / (2 * h);
    d.values[0] = (-3 * f.values[0] + 4 * f.values[1] - f.values[2]) / (2 * h);
    d.values[n - 1] = (3 * f.values[n - 1] - 4 * f.values[n - 2] + f.values[n - 3]) / (2 * h);
    return d;
}

GridFunction second_derivative(const GridFunction& f) {
    const int n = f.size();
    const double h2 = f.grid.spacing * f.grid.spacing;
    GridFunction d(f.grid);
    for (int i = 1; i < n - 1; ++i)
        d.values[i] = (f.values[i + 1] - 2 * f.values[i] + f.values[i - 1]) / h2;
    d.values[0] = (2 * f.values[0] - 5 * f.values[1] + 4 * f.values[2] - f.values[3]) / h2;
    d.values[n - 1] =
        (2 * f.values[n - 1] - 5 * f.values[n - 2] + 4 * f.values[n - 3] - f.values[n - 4]) / h2;
    return d;
}

GridFunction cumulative_integral_right(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing;
    GridFunction F(f.grid);
    F.values[n - 1] = 0.0;
    for (int i = n - 2; i >= 0; --i)
        F.values[i] = F.values[i + 1] + 0.5 * h * (f.values[i] + f.values[i + 1]);
    // trapezoid correction -(h^2/12)(f'(b) - f'(x)) per segment endpoint
    GridFunction fp = derivative(f);
    const double c = h * h / 12.0;
    for (int i = 0; i < n; ++i) F.values[i] += c * (fp.values[i] - fp.values[n - 1]);
    return F;
}

std::vector<double> moments(const GridFunction& f, int count) {
    std::vector<double> m(count, 0.0);
    const int n = f.size();
    for (int k = 0; k < count; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            s += w * std::pow(f.grid.node(i), k) * f.values[i];
        }
        m[k] = s * f.grid.spacing;
    }
    return m;
}

bool is_density(const GridFunction& f, double tol) {
    for (double v : f.values)
        if (v < 0.0 || !std::isfinite(v)) return false;
    return std::abs(integrate(f) - 1.0) <= tol;
}

double interpolate(const GridFunction& f, double x) {
    const Grid& g = f.grid;
    if (x <= -g.half_width) return f.values.front();
    if (x >= g.half_width) return f.values.back();
    const double t = (x + g.half_width) / g.spacing;
    const int i = std::min(static_cast<int>(t), g.n_points - 2);
    const double a = t - i;
    return (1.0 - a) * f.values[i] + a * f.values[i + 1];
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    GridFunction out(a.grid);
    for (int i = 0; i < a.size(); ++i) out.values[i] = a.values[i] + b.values[i];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    GridFunction out(a.grid);
    for (int i = 0; i < a.size(); ++i) out.values[i] = a.values[i] - b.values[i];
    return out;
}

GridFunction operator*(double s, const GridFunction& a) {
    GridFunction out(a.grid);
    for (int i = 0; i < a.size(); ++i) out.values[i] = s * a.values[i];
    return out;
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
    GridFunction out(a.grid);
    for (int i = 0; i < a.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

}  // namespace htgas
