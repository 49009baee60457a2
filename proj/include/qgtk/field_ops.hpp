#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "qgtk/fft.hpp"
#include "qgtk/grid.hpp"

namespace qgtk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// sqrt(x1^2 + x2^2 + alpha^2 x3^2)
inline double anisotropic_norm(const Vec3& x, double alpha) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + alpha * alpha * x[2] * x[2]);
}

// C-infinity step: 1 for r <= r0, 0 for r >= r1.
double smooth_cutoff(double r, double r0, double r1);

// Riemann-sum L^p norm with cell weight h^3; p = kInf gives max |f|.
double lp_norm(const ScalarField& f, double p);
double max_abs(const ScalarField& f);
double mean(const ScalarField& f);
ScalarField remove_mean(ScalarField f);
double inner(const ScalarField& a, const ScalarField& b);  // sum a b h^3
double rel_linf(const ScalarField& a, const ScalarField& ref);  // |a-ref|_inf / |ref|_inf

ScalarField sample(const Grid3& g, const std::function<double(const Vec3&)>& fn);
ScalarField gaussian(const Grid3& g, double sigma, const Vec3& center = {0.0, 0.0, 0.0}, double amplitude = 1.0);

// Apply a symbol m(xi1, xi2, xi3) (returning double or cplx) coefficient-wise.
template <class Fn>
void multiply_inplace(SpectralField& s, Fn&& sym) {
    const Grid3& g = s.grid;
    const int n = g.n;
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a) {
        const double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            const double k2 = g.wavenumber(b);
            for (int e = 0; e < n; ++e) {
                const double k3 = g.wavenumber(e);
                s.c[g.index(a, b, e)] *= sym(k1, k2, k3);
            }
        }
    }
}

template <class Fn>
SpectralField multiply(SpectralField s, Fn&& sym) {
    multiply_inplace(s, std::forward<Fn>(sym));
    return s;
}

template <class Fn>
ScalarField apply_symbol(const ScalarField& f, Fn&& sym) {
    return inverse_transform(multiply(transform(f), std::forward<Fn>(sym)));
}

// Exact derivative of the trigonometric interpolant; Nyquist mode dropped on that axis.
SpectralField derivative(const SpectralField& s, int axis);
ScalarField spectral_derivative(const ScalarField& f, int axis);
ScalarField spectral_derivative(const ScalarField& f, int axis1, int axis2);
std::array<ScalarField, 3> gradient(const ScalarField& f);
ScalarField divergence(const std::array<ScalarField, 3>& v);
ScalarField laplacian(const ScalarField& f);

// zero every mode with |k_i| > n/3 on some axis
void dealias_inplace(SpectralField& s);
ScalarField dealias(const ScalarField& f);
// product of two fields computed with 2/3-rule truncation of inputs and output
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

// Random field with spectrum confined to |xi| <= kmax (smooth taper from 0.8 kmax), unit L^inf on return.
ScalarField random_bandlimited(const Grid3& g, std::mt19937_64& rng, double kmax, bool zero_mean = true);
// Random field supported spectrally in the annulus lo <= |xi| <= hi, unit L^inf.
ScalarField random_annulus(const Grid3& g, std::mt19937_64& rng, double lo, double hi);

// share of the l2 spectral energy at |xi| > radius
double spectral_energy_fraction_above(const ScalarField& f, double radius);

}  // namespace qgtk
