#include "qgtk/field_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgtk {

double smooth_cutoff(double r, double r0, double r1) {
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    const double t = (r - r0) / (r1 - r0);
    const double a = std::exp(-1.0 / (1.0 - t));
    const double b = std::exp(-1.0 / t);
    return a / (a + b);
}

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) return max_abs(f);
    const std::size_t N = f.size();
    double s = 0.0;
    if (p == 2.0) {
#pragma omp parallel for reduction(+ : s) schedule(static)
        for (std::size_t i = 0; i < N; ++i) s += f.v[i] * f.v[i];
    } else if (p == 1.0) {
#pragma omp parallel for reduction(+ : s) schedule(static)
        for (std::size_t i = 0; i < N; ++i) s += std::abs(f.v[i]);
    } else {
#pragma omp parallel for reduction(+ : s) schedule(static)
        for (std::size_t i = 0; i < N; ++i) s += std::pow(std::abs(f.v[i]), p);
    }
    return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    const std::size_t N = f.size();
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(f.v[i]));
    return m;
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s / static_cast<double>(f.size());
}

ScalarField remove_mean(ScalarField f) {
    const double m = mean(f);
    for (auto& x : f.v) x -= m;
    return f;
}

double inner(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.v[i] * b.v[i];
    return s * a.grid.cell_volume();
}

double rel_linf(const ScalarField& a, const ScalarField& ref) {
    require_same_grid(a.grid, ref.grid);
    double d = 0.0, m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a.v[i] - ref.v[i]));
        m = std::max(m, std::abs(ref.v[i]));
    }
    return m > 0.0 ? d / m : d;
}

ScalarField sample(const Grid3& g, const std::function<double(const Vec3&)>& fn) {
    ScalarField f(g);
    const std::size_t N = g.size();
    for (std::size_t i = 0; i < N; ++i) f.v[i] = fn(g.point(i));
    return f;
}

ScalarField gaussian(const Grid3& g, double sigma, const Vec3& c, double amplitude) {
    const double s2 = 2.0 * sigma * sigma;
    return sample(g, [&](const Vec3& x) {
        double r2 = 0.0;
        for (int d = 0; d < 3; ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
        return amplitude * std::exp(-r2 / s2);
    });
}

SpectralField derivative(const SpectralField& s, int axis) {
    const double nyq = s.grid.nyquist();
    return multiply(s, [axis, nyq](double k1, double k2, double k3) {
        const double k = axis == 0 ? k1 : (axis == 1 ? k2 : k3);
        // the Nyquist wavenumber is -pi n / L; drop it to keep the output real
        if (std::abs(k + nyq) < 1e-12 * nyq) return cplx(0.0, 0.0);
        return cplx(0.0, k);
    });
}

ScalarField spectral_derivative(const ScalarField& f, int axis) {
    return inverse_transform(derivative(transform(f), axis));
}

ScalarField spectral_derivative(const ScalarField& f, int axis1, int axis2) {
    return inverse_transform(derivative(derivative(transform(f), axis1), axis2));
}

std::array<ScalarField, 3> gradient(const ScalarField& f) {
    SpectralField s = transform(f);
    return {inverse_transform(derivative(s, 0)), inverse_transform(derivative(s, 1)),
            inverse_transform(derivative(s, 2))};
}

ScalarField divergence(const std::array<ScalarField, 3>& v) {
    SpectralField acc(v[0].grid);
    for (int d = 0; d < 3; ++d) acc += derivative(transform(v[d]), d);
    return inverse_transform(acc);
}

ScalarField laplacian(const ScalarField& f) {
    return apply_symbol(f, [](double a, double b, double c) { return -(a * a + b * b + c * c); });
}

void dealias_inplace(SpectralField& s) {
    const Grid3& g = s.grid;
    const int n = g.n;
    const int kc = n / 3;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) {
                if (std::abs(g.freq_index(a)) > kc || std::abs(g.freq_index(b)) > kc ||
                    std::abs(g.freq_index(e)) > kc)
                    s.c[g.index(a, b, e)] = 0.0;
            }
}

ScalarField dealias(const ScalarField& f) {
    SpectralField s = transform(f);
    dealias_inplace(s);
    return inverse_transform(s);
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    ScalarField p = dealias(a) * dealias(b);
    return dealias(p);
}

namespace {

ScalarField normalize_inf(ScalarField f) {
    const double m = max_abs(f);
    if (m > 0.0) f *= 1.0 / m;
    return f;
}

ScalarField white_noise(const Grid3& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    ScalarField f(g);
    for (auto& x : f.v) x = nd(rng);
    return f;
}

}  // namespace

ScalarField random_bandlimited(const Grid3& g, std::mt19937_64& rng, double kmax, bool zero_mean) {
    ScalarField w = white_noise(g, rng);
    SpectralField s = transform(w);
    multiply_inplace(s, [kmax](double a, double b, double c) {
        return smooth_cutoff(std::sqrt(a * a + b * b + c * c), 0.8 * kmax, kmax);
    });
    if (zero_mean) s.c[0] = 0.0;
    return normalize_inf(inverse_transform(s));
}

ScalarField random_annulus(const Grid3& g, std::mt19937_64& rng, double lo, double hi) {
    ScalarField w = white_noise(g, rng);
    SpectralField s = transform(w);
    multiply_inplace(s, [lo, hi](double a, double b, double c) {
        const double r = std::sqrt(a * a + b * b + c * c);
        return (r >= lo && r <= hi) ? 1.0 : 0.0;
    });
    return normalize_inf(inverse_transform(s));
}

double spectral_energy_fraction_above(const ScalarField& f, double radius) {
    SpectralField s = transform(f);
    const Grid3& g = s.grid;
    double tot = 0.0, above = 0.0;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int e = 0; e < g.n; ++e) {
                const double k1 = g.wavenumber(a), k2 = g.wavenumber(b), k3 = g.wavenumber(e);
                const double e2 = std::norm(s.c[g.index(a, b, e)]);
                tot += e2;
                if (std::sqrt(k1 * k1 + k2 * k2 + k3 * k3) > radius) above += e2;
            }
    return tot > 0.0 ? above / tot : 0.0;
}

}  // namespace qgtk
