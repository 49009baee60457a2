#include "qgtk/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgtk/params.hpp"

namespace qgtk {

std::string PhysicalParams::describe() const {
    std::ostringstream os;
    os << "nu=" << nu << " nu'=" << nu_prime << " F=" << F;
    return os.str();
}

Grid3::Grid3(int n_, double L_) : n(n_), L(L_) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two >= 8");
    if (!(L > 0.0))
        throw std::invalid_argument("box length must be positive");
}

double Grid3::nyquist() const { return M_PI * n / L; }

double Grid3::wavenumber(int i) const { return 2.0 * M_PI * freq_index(i) / L; }

Vec3 Grid3::point(std::size_t idx) const {
    int i3 = static_cast<int>(idx % n);
    int i2 = static_cast<int>((idx / n) % n);
    int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    return {coord(i1), coord(i2), coord(i3)};
}

int Grid3::max_dyadic_index() const {
    int j = -1;
    while (kC0 * std::ldexp(1.0, j + 1) < nyquist()) ++j;
    return j;
}

void Grid3::require_dyadic(int jmax) const {
    if (!(kC0 * std::ldexp(1.0, jmax) < nyquist())) {
        std::ostringstream os;
        os << "dyadic index " << jmax << " not resolved: 8/3*2^j >= Nyquist " << nyquist();
        throw std::invalid_argument(os.str());
    }
}

Grid3 grid_for_dyadic(int n, int jmax, double margin) {
    double L = M_PI * n / (margin * kC0 * std::ldexp(1.0, jmax));
    return Grid3(n, L);
}

void require_same_grid(const Grid3& a, const Grid3& b) {
    if (a != b) throw std::invalid_argument("grid mismatch");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    for (auto& x : v) x *= a;
    return *this;
}

bool ScalarField::finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid);
    ScalarField r(a.grid);
    for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = a.v[i] * b.v[i];
    return r;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& x : c) x *= a;
    return *this;
}

double SpectralField::hermitian_defect() const {
    const int n = grid.n;
    double d = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) {
                std::size_t i = grid.index(a, b, e);
                std::size_t j = grid.index((n - a) % n, (n - b) % n, (n - e) % n);
                d = std::max(d, std::abs(c[i] - std::conj(c[j])));
            }
    return d;
}

}  // namespace qgtk
