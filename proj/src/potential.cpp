#include "htgas/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace htgas {

Potential gaussian_potential() {
    Potential p;
    p.spec = {"gaussian", {}};
    p.name = "gaussian";
    p.v = [](double x) { return 0.5 * x * x; };
    p.dv = [](double x) { return x; };
    p.d2v = [](double) { return 1.0; };
    p.d3v = [](double) { return 0.0; };
    p.convex_d2v = p.d2v;
    return p;
}

Potential quartic_potential() {
    Potential p;
    p.spec = {"quartic", {}};
    p.name = "quartic";
    p.v = [](double x) { return x * x * x * x; };
    p.dv = [](double x) { return 4.0 * x * x * x; };
    p.d2v = [](double x) { return 12.0 * x * x; };
    p.d3v = [](double x) { return 24.0 * x; };
    p.convex_d2v = p.d2v;
    return p;
}

Potential sym_poly_potential(const std::vector<double>& c) {
    if (c.empty()) throw config_error("sym_poly potential needs at least one coefficient");
    Potential p;
    p.spec = {"sym_poly", c};
    std::ostringstream name;
    name << "sym_poly(";
    for (size_t i = 0; i < c.size(); ++i) name << (i ? "," : "") << c[i];
    name << ")";
    p.name = name.str();
    p.v = [c](double x) {
        double s = 0.0, x2 = x * x, p2 = x2;
        for (double ck : c) { s += ck * p2; p2 *= x2; }
        return s;
    };
    p.dv = [c](double x) {
        double s = 0.0, x2 = x * x, pw = x;
        for (size_t k = 0; k < c.size(); ++k) { s += c[k] * (2.0 * (k + 1)) * pw; pw *= x2; }
        return s;
    };
    p.d2v = [c](double x) {
        double s = 0.0, x2 = x * x, pw = 1.0;
        for (size_t k = 0; k < c.size(); ++k) {
            const double d = 2.0 * (k + 1);
            s += c[k] * d * (d - 1.0) * pw;
            pw *= x2;
        }
        return s;
    };
    p.d3v = [c](double x) {
        double s = 0.0, x2 = x * x, pw = x;
        for (size_t k = 1; k < c.size(); ++k) {
            const double d = 2.0 * (k + 1);
            s += c[k] * d * (d - 1.0) * (d - 2.0) * pw;
            pw *= x2;
        }
        return s;
    };
    p.convex_d2v = p.d2v;
    return p;
}

Potential cosh_potential(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw config_error("cosh potential needs positive a, b");
    Potential p;
    p.spec = {"cosh", {a, b}};
    std::ostringstream name;
    name << "cosh(" << a << "," << b << ")";
    p.name = name.str();
    p.v = [a, b](double x) { return a * std::cosh(b * x); };
    p.dv = [a, b](double x) { return a * b * std::sinh(b * x); };
    p.d2v = [a, b](double x) { return a * b * b * std::cosh(b * x); };
    p.d3v = [a, b](double x) { return a * b * b * b * std::sinh(b * x); };
    p.convex_d2v = p.d2v;
    return p;
}

Potential abs_potential() {
    Potential p;
    p.spec = {"abs", {}};
    p.name = "abs";
    p.v = [](double x) { return std::abs(x); };
    p.dv = [](double x) { return x >= 0.0 ? 1.0 : -1.0; };
    p.d2v = [](double) { return 0.0; };
    p.d3v = [](double) { return 0.0; };
    p.convex_d2v = p.d2v;
    return p;
}

Potential make_potential(const PotentialSpec& spec) {
    if (spec.type == "gaussian") return gaussian_potential();
    if (spec.type == "quartic") return quartic_potential();
    if (spec.type == "sym_poly") return sym_poly_potential(spec.params);
    if (spec.type == "cosh") {
        if (spec.params.size() != 2) throw config_error("cosh potential needs params a b");
        return cosh_potential(spec.params[0], spec.params[1]);
    }
    if (spec.type == "abs") return abs_potential();
    throw config_error("unknown potential type: " + spec.type);
}

bool ValidationReport::hard_fail() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status == CheckStatus::pass; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        const char* s = c.status == CheckStatus::pass ? "pass"
                        : c.status == CheckStatus::warn ? "warn" : "FAIL";
        os << s << "  " << c.name << ": " << c.detail << "\n";
    }
    return os.str();
}

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}
}  // namespace

ValidationReport validate_potential(const Potential& V, double P, const Grid& grid) {
    ValidationReport rep;
    const double L = grid.half_width;

    // growth of V and |V'| toward the boundary (hard requirements)
    {
        double vin = -1e300;
        for (int i = 0; i < grid.n_points; ++i)
            if (std::abs(grid.node(i)) <= 0.5 * L) vin = std::max(vin, V.v(grid.node(i)));
        const bool v_grows = V.v(-L) > vin + 0.5 && V.v(L) > vin + 0.5;
        const bool dv_grows = V.dv(L) >= 2.0 && V.dv(-L) <= -2.0 &&
                              std::abs(V.dv(L)) > 1.5 * std::abs(V.dv(0.5 * L)) - 1e-12;
        CheckResult c{"growth", v_grows && dv_grows ? CheckStatus::pass : CheckStatus::fail,
                      "V(L)=" + fmt(V.v(L)) + ", V'(L)=" + fmt(V.dv(L))};
        rep.checks.push_back(c);
    }

    // decay probes Q(V') e^{-V} * x^4 -> 0 for Q in {1, x^2, V'^2}
    {
        bool ok = true;
        double worst = 0.0;
        for (double frac : {0.9, 1.0}) {
            const double x = frac * L;
            const double e = std::exp(-V.v(x));
            for (double q : {1.0, x * x, V.dv(x) * V.dv(x)}) {
                const double probe = q * e * std::pow(std::abs(x), 4.0);
                worst = std::max(worst, probe);
                if (probe > 1e-6) ok = false;
            }
        }
        rep.checks.push_back({"superpolynomial_decay",
                              ok ? CheckStatus::pass : CheckStatus::warn,
                              "max probe " + fmt(worst)});
    }

    // window criterion: sup_{|w|<=1} |V''(x+w)| / V'(x)^2 small near the edge
    {
        double worst = 0.0;
        for (double frac : {0.8, 0.9, 1.0}) {
            const double x = frac * L;
            double sup = 0.0;
            for (double w = -1.0; w <= 1.0; w += 0.125)
                sup = std::max(sup, std::abs(V.d2v(x + w)));
            const double dv2 = V.dv(x) * V.dv(x);
            if (dv2 > 0) worst = std::max(worst, sup / dv2);
        }
        rep.checks.push_back({"curvature_window", worst < 0.25 ? CheckStatus::pass : CheckStatus::warn,
                              "sup|V''|/V'^2 = " + fmt(worst)});
    }

    // integrability of V'^{-2} and boundedness of V''/V', V'''/V' at the edge
    {
        const double r1 = std::abs(V.d2v(L) / V.dv(L));
        const double r2 = std::abs(V.d3v(L) / V.dv(L));
        // V'^{-2} integrable at infinity if x V'(x)^{-2} is small and shrinking
        const double p1 = 0.5 * L / (V.dv(0.5 * L) * V.dv(0.5 * L));
        const double p2 = L / (V.dv(L) * V.dv(L));
        const bool ok = r1 < 25.0 && r2 < 25.0 && p2 < p1 + 1e-12;
        rep.checks.push_back({"derivative_ratios", ok ? CheckStatus::pass : CheckStatus::warn,
                              "V''/V'=" + fmt(r1) + ", V'''/V'=" + fmt(r2)});
    }

    // sufficient Poincare criterion through a convexity comparison
    {
        bool found = false;
        double best_eps = 0.0;
        for (int k = 0; k <= 20 && !found; ++k) {
            const double eps = std::ldexp(1.0, -k);
            const double a = 1.0 / eps;
            double minv = 1e300;
            for (int i = 0; i < grid.n_points; ++i) {
                const double x = grid.node(i);
                const double den = a + x * x;
                minv = std::min(minv, V.convex_d2v(x) + 2.0 * P * (a - x * x) / (den * den));
            }
            if (minv >= 0.0) { found = true; best_eps = eps; }
        }
        rep.checks.push_back({"poincare_convexity",
                              found ? CheckStatus::pass : CheckStatus::warn,
                              found ? "eps = " + fmt(best_eps) : "no eps in 2^{-0..20} works"});
    }

    return rep;
}

double third_derivative_edge_ratio(const Potential& V, double edge, int n_particles) {
    double sup = 0.0;
    const double lo = -std::abs(edge) - 1.0, hi = std::abs(edge) + 1.0;
    for (int i = 0; i <= 256; ++i) {
        const double x = lo + (hi - lo) * i / 256.0;
        sup = std::max(sup, std::abs(V.d3v(x)));
    }
    return sup / std::sqrt(static_cast<double>(n_particles));
}

}  // namespace htgas
