#include "qgtk/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgtk {

std::vector<Node1D> gauss_legendre(int npts, double a, double b) {
    if (npts < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(npts));
    std::vector<Node1D> out(npts);
    for (int i = 0; i < npts; ++i) {
        double x, w;
        gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &x, &w, t);
        out[i] = {x, w};
    }
    gsl_integration_glfixed_table_free(t);
    return out;
}

std::vector<Direction> product_sphere(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("product_sphere: empty rule");
    std::vector<Direction> d;
    d.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    const double dphi = 2.0 * M_PI / n_phi;
    for (const Node1D& t : gauss_legendre(n_theta, -1.0, 1.0)) {
        const double st = std::sqrt(std::max(0.0, 1.0 - t.x * t.x));
        for (int k = 0; k < n_phi; ++k) {
            const double phi = (k + 0.5) * dphi;
            d.push_back({{st * std::cos(phi), st * std::sin(phi), t.x}, t.w * dphi});
        }
    }
    return d;
}

std::vector<Direction> cube26() {
    std::vector<Direction> d;
    const double w = 4.0 * M_PI / 26.0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const double r = std::sqrt(double(a * a + b * b + c * c));
                d.push_back({{a / r, b / r, c / r}, w});
            }
    return d;
}

}  // namespace qgtk
