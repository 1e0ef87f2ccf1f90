#include "htgas/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace htgas {

namespace {

std::mutex fftw_plan_mutex;

int next_pow2(long long n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

// forward real FFT of a length-M buffer
std::vector<std::complex<double>> fft_r2c(std::vector<double>& in) {
    const int m = static_cast<int>(in.size());
    std::vector<std::complex<double>> out(m / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(m, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> fft_c2r(std::vector<std::complex<double>>& in, int m) {
    std::vector<double> out(m);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_c2r_1d(m, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    for (double& v : out) v /= m;
    return out;
}

// result_i = sum_j kernel(i-j) f_j through a circular embedding of length 4n
std::vector<double> toeplitz_apply(const std::vector<double>& f,
                                   const std::vector<double>& kernel_by_offset /* [-(n-1)..n-1] */) {
    const int n = static_cast<int>(f.size());
    const int m = next_pow2(4LL * n);
    std::vector<double> kbuf(m, 0.0), fbuf(m, 0.0);
    for (int k = 0; k < n; ++k) kbuf[k] = kernel_by_offset[(n - 1) + k];
    for (int k = 1; k < n; ++k) kbuf[m - k] = kernel_by_offset[(n - 1) - k];
    std::copy(f.begin(), f.end(), fbuf.begin());
    auto kf = fft_r2c(kbuf);
    auto ff = fft_r2c(fbuf);
    for (size_t i = 0; i < kf.size(); ++i) kf[i] *= ff[i];
    auto conv = fft_c2r(kf, m);
    conv.resize(n);
    return conv;
}

// J_m(x; L) = int_L^inf dt / (t^m (t - x)), |x| < L
double tail_J(int m, double x, double L) {
    if (std::abs(x) < 0.5 * L) {
        // power series sum_j (x/L)^j / ((m+j) L^m)
        const double r = x / L;
        double term = 1.0, s = 0.0;
        for (int j = 0; j < 200; ++j) {
            const double add = term / (m + j);
            s += add;
            if (std::abs(add) < 1e-17 * std::abs(s) + 1e-300) break;
            term *= r;
        }
        return s / std::pow(L, m);
    }
    // closed form for J_1, then stable forward recursion (|x| > 1 here)
    double j = -std::log1p(-x / L) / x;
    double lpow = L;
    for (int k = 1; k < m; ++k) {
        j = (j - 1.0 / (k * lpow)) / x;
        lpow *= L;
    }
    return j;
}

// int_a^b ((t-a)/h)/(t-x) dt for x <= a: a unit ramp rising across the seam
// cell; vanishes at the singular point so it stays finite at x = a.
double rise_ramp_right(double x, double a, double b, double h) {
    if (a - x < 1e-12 * h) return 1.0;
    return 1.0 + ((x - a) / h) * std::log((b - x) / (a - x));
}

// int_{-b}^{-a} ((-a-t)/h)/(t-x) dt for x >= -a
double rise_ramp_left(double x, double a, double b, double h) {
    if (x + a < 1e-12 * h) return -1.0;
    return -1.0 + ((x + a) / h) * std::log((b + x) / (a + x));
}

double laurent_eval(const std::vector<double>& c, double t) {
    double s = 0.0, p = 1.0 / t;
    for (double ck : c) {
        s += ck * p;
        p /= t;
    }
    return s;
}

constexpr int kFarFieldOrder = 12;

}  // namespace

double hilbert_kernel_weight(long long m) {
    if (m == 0) return 0.0;
    const double md = static_cast<double>(m);
    auto xlnx = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)); };
    return 2.0 * xlnx(md) - xlnx(1.0 + md) - (-xlnx(1.0 - md));
}

double log_kernel_weight(long long m, double h) {
    const double md = static_cast<double>(m);
    auto sq_ln = [](double u) { return u == 0.0 ? 0.0 : u * u * std::log(std::abs(u)); };
    const double g = sq_ln(md + 1.0) + sq_ln(md - 1.0) - 2.0 * sq_ln(md);
    // -int hat(s) ln|mh - s| ds = h(3/2 - ln h) - (h/2) g
    return h * (1.5 - std::log(h)) - 0.5 * h * g;
}

bool decays_at_endpoints(const GridFunction& f) {
    double mx = 0.0;
    for (double v : f.values) mx = std::max(mx, std::abs(v));
    if (mx == 0.0) return true;
    return std::abs(f.values.front()) < 1e-8 * mx && std::abs(f.values.back()) < 1e-8 * mx;
}

GridFunction hilbert_transform(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing;
    const double L = f.grid.half_width;

    std::vector<double> kernel(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k)
        kernel[(n - 1) + k] = hilbert_kernel_weight(k);

    GridFunction out(f.grid);
    out.values = toeplitz_apply(f.values, kernel);

    if (f.far_field && !f.far_field->coeffs.empty()) {
        // The plain convolution integrates the linear-element extension, which
        // ramps to zero over one cell beyond +-L. Bridge those cells to the
        // Laurent tail values at +-(L+h) and integrate the tails from there;
        // every piece is finite, including at the boundary nodes.
        const auto& c = f.far_field->coeffs;
        const double a = L, b = L + h;
        const double cr = laurent_eval(c, b);
        const double cl = laurent_eval(c, -b);
        for (int i = 0; i < n; ++i) {
            const double x = f.grid.node(i);
            double t = cr * rise_ramp_right(x, a, b, h) + cl * rise_ramp_left(x, a, b, h);
            for (size_t k = 0; k < c.size(); ++k) {
                const double jp = tail_J(static_cast<int>(k) + 1, x, b);
                const double jm = tail_J(static_cast<int>(k) + 1, -x, b);
                t += c[k] * (jp + ((k % 2 == 0) ? jm : -jm));
            }
            out.values[i] += t;
        }
    }

    // H[f](x) = -sum_k m_k / x^{k+1} beyond the support
    auto mk = moments(f, kFarFieldOrder);
    FarField ff;
    ff.cutoff = L;
    ff.coeffs.resize(mk.size());
    for (size_t k = 0; k < mk.size(); ++k) ff.coeffs[k] = -mk[k];
    out.far_field = ff;
    return out;
}

GridFunction log_potential(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing;
    if (integrate(f) < -1e-12) throw numeric_error("log_potential: negative input mass");

    std::vector<double> kernel(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k)
        kernel[(n - 1) + k] = log_kernel_weight(k, h);

    GridFunction out(f.grid);
    out.values = toeplitz_apply(f.values, kernel);
    return out;
}

std::pair<double, std::vector<double>> fourier_modulus_sq(const GridFunction& f,
                                                          double max_domega) {
    const int n = f.size();
    const double h = f.grid.spacing;
    const long long need = static_cast<long long>(std::ceil(2.0 * M_PI / (max_domega * h)));
    const int m = next_pow2(std::max(4LL * n, need));
    std::vector<double> buf(m, 0.0);
    std::copy(f.values.begin(), f.values.end(), buf.begin());
    auto spec = fft_r2c(buf);
    std::vector<double> mod2(spec.size());
    for (size_t k = 0; k < spec.size(); ++k) mod2[k] = std::norm(spec[k]) * h * h;
    return {2.0 * M_PI / (m * h), std::move(mod2)};
}

double half_norm_sq(const GridFunction& f) {
    auto [dw, mod2] = fourier_modulus_sq(f);
    double s = 0.0;
    for (size_t k = 1; k < mod2.size(); ++k) s += (k * dw) * mod2[k];
    const double m0 = integrate(f);
    // Euler-Maclaurin endpoint term: d/dt [t|F|^2](0) = m0^2
    return 2.0 * (dw * s + dw * dw / 12.0 * m0 * m0);
}

double half_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, half_norm_sq(f))); }

double half_inner(const GridFunction& a, const GridFunction& b) {
    const int n = a.size();
    const double h = a.grid.spacing;
    const long long need = static_cast<long long>(std::ceil(2.0 * M_PI / (0.02 * h)));
    const int m = next_pow2(std::max(4LL * n, need));
    std::vector<double> abuf(m, 0.0), bbuf(m, 0.0);
    std::copy(a.values.begin(), a.values.end(), abuf.begin());
    std::copy(b.values.begin(), b.values.end(), bbuf.begin());
    auto fa = fft_r2c(abuf);
    auto fb = fft_r2c(bbuf);
    const double dw = 2.0 * M_PI / (m * h);
    double s = 0.0;
    for (size_t k = 1; k < fa.size(); ++k)
        s += (k * dw) * (fa[k].real() * fb[k].real() + fa[k].imag() * fb[k].imag());
    const double m0 = integrate(a) * integrate(b);
    return 2.0 * (h * h * dw * s + dw * dw / 12.0 * m0);
}

double fourier_distance_D_of_difference(const GridFunction& nu) {
    if (std::abs(integrate(nu)) > 1e-8)
        throw numeric_error("fourier_distance_D: mass mismatch, integral diverges");
    auto [dw, mod2] = fourier_modulus_sq(nu);
    double s = 0.0;
    for (size_t k = 1; k < mod2.size(); ++k) s += mod2[k] / (k * dw);
    // integrand -> |m1|^2 t as t -> 0 by mass cancellation; the t=0 node
    // contributes zero and the trapezoid endpoint correction uses m1^2
    const double m1 = moments(nu, 2)[1];
    const double d2 = dw * s + dw * dw / 12.0 * m1 * m1;
    return std::sqrt(std::max(0.0, d2));
}

double fourier_distance_D(const GridFunction& f, const GridFunction& g) {
    return fourier_distance_D_of_difference(f - g);
}

GridFunction spectral_derivative(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing;
    const int m = next_pow2(4LL * n);
    std::vector<double> buf(m, 0.0);
    std::copy(f.values.begin(), f.values.end(), buf.begin());
    auto spec = fft_r2c(buf);
    const double dw = 2.0 * M_PI / (m * h);
    for (size_t k = 0; k < spec.size(); ++k) {
        const double w = (k == spec.size() - 1) ? 0.0 : k * dw;  // drop Nyquist
        spec[k] *= std::complex<double>(0.0, w);
    }
    auto d = fft_c2r(spec, m);
    GridFunction out(f.grid);
    std::copy(d.begin(), d.begin() + n, out.values.begin());
    return out;
}

}  // namespace htgas
