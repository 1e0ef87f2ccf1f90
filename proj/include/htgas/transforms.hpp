#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "htgas/grid.hpp"

namespace htgas {

// Principal-value Hilbert transform H[f](x) = pv int f(t)/(t-x) dt.
// The integral is taken against the piecewise-linear interpolant of f, with
// the singular cell integrated in closed form; the resulting Toeplitz
// convolution is applied through a 4x zero-padded FFT. A far-field Laurent
// model (coefficients -m_k(f)) is attached to the result, since H[f] decays
// only like -m_0/x.
//
// If `f` carries a far-field model itself, its tail integrals are added in
// closed form, which makes composition H[H[f]] accurate; the outermost node
// on each side falls back to the plain truncated value.
GridFunction hilbert_transform(const GridFunction& f);

// True when |f| at the grid endpoints is below 1e-8 * max|f| (the transform
// is reliable without a tail model).
bool decays_at_endpoints(const GridFunction& f);

// Logarithmic potential U^f(x) = -int ln|x-y| f(y) dy, with the kernel
// integrated exactly against linear elements. Requires nonnegative mass.
GridFunction log_potential(const GridFunction& f);

// Squared Sobolev 1/2-seminorm int |t| |F[f](t)|^2 dt, with
// F[f](x) = int f(t) e^{-itx} dt.
double half_norm_sq(const GridFunction& f);
double half_norm(const GridFunction& f);

// Cross version Re int |t| F[a](t) conj(F[b](t)) dt on a common padding.
double half_inner(const GridFunction& a, const GridFunction& b);

// Fourier distance D(f,g)^2 = int_0^inf |F[f-g](t)|^2 / t dt between two
// equal-mass densities. Mass mismatch beyond 1e-8 is refused (divergent).
double fourier_distance_D(const GridFunction& f, const GridFunction& g);

// Same integral for a signed zero-mass difference already formed.
double fourier_distance_D_of_difference(const GridFunction& nu);

// FFT differentiation on the 4x zero-padded extension; for smooth functions
// that decay at the grid ends.
GridFunction spectral_derivative(const GridFunction& f);

// |F[f](omega_k)|, k = 0..M/2, padded so that the frequency spacing is at
// most max_domega. Returns (domega, modulus squared).
std::pair<double, std::vector<double>> fourier_modulus_sq(const GridFunction& f,
                                                          double max_domega = 0.02);

// Raw padded DFT (common phase for functions on the same grid), for batched
// frequency-domain inner products. F[f](omega_k) = spacing * spectrum[k] up
// to a k-dependent phase that cancels in products.
std::pair<double, std::vector<std::complex<double>>> fourier_spectrum(const GridFunction& f,
                                                                      double max_domega = 0.02);

// Closed-form weights, exposed for the Nystrom assembly of log-kernel
// integral operators: row integrals int ln|x_i - y| g(y) dy evaluate as
// sum_j log_kernel_weight(i-j, h) * g_j.
double log_kernel_weight(long long m, double h);
double hilbert_kernel_weight(long long m);

}  // namespace htgas
