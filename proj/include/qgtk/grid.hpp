#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qgtk {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Largest dyadic annulus radius relative to 2^j.
inline constexpr double kC0 = 8.0 / 3.0;

// Periodic box [-L/2, L/2)^3 sampled with n points per axis.
struct Grid3 {
    int n = 64;
    double L = 0.0;

    Grid3() = default;
    Grid3(int n_, double L_);

    double spacing() const { return L / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }
    double nyquist() const;
    // integer frequency index in [-n/2, n/2)
    int freq_index(int i) const { return i < n / 2 ? i : i - n; }
    double wavenumber(int i) const;
    double coord(int i) const { return -0.5 * L + i * spacing(); }
    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * n + i2) * n + i3;
    }
    Vec3 point(std::size_t idx) const;
    // largest j with C0 * 2^j strictly below the Nyquist frequency
    int max_dyadic_index() const;
    void require_dyadic(int jmax) const;

    bool operator==(const Grid3& o) const { return n == o.n && L == o.L; }
    bool operator!=(const Grid3& o) const { return !(*this == o); }
};

// Grid with n points whose Nyquist frequency clears C0 * 2^jmax by the given margin.
Grid3 grid_for_dyadic(int n, int jmax, double margin = 1.05);

struct ScalarField {
    Grid3 grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid3& g, double value = 0.0) : grid(g), v(g.size(), value) {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    std::size_t size() const { return v.size(); }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double a);
    bool finite() const;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(const ScalarField& a, const ScalarField& b);

struct SpectralField {
    Grid3 grid;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(const Grid3& g) : grid(g), c(g.size(), cplx(0.0, 0.0)) {}

    cplx& operator[](std::size_t i) { return c[i]; }
    const cplx& operator[](std::size_t i) const { return c[i]; }
    std::size_t size() const { return c.size(); }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator*=(double a);
    // max |c(k) - conj(c(-k))|
    double hermitian_defect() const;
};

void require_same_grid(const Grid3& a, const Grid3& b);

}  // namespace qgtk
