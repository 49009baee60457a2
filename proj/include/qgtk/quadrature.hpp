#pragma once

#include <vector>

#include "qgtk/grid.hpp"

namespace qgtk {

struct Node1D {
    double x;
    double w;
};

struct Direction {
    Vec3 u;     // unit vector
    double w;   // solid-angle weight
};

// Gauss-Legendre nodes on [a, b].
std::vector<Node1D> gauss_legendre(int npts, double a, double b);
// Lebedev rule with 26, 50, 110 or 194 points.
std::vector<Direction> lebedev(int npts);
// Gauss-Legendre in cos(theta) times the trapezoid rule in phi (phases offset by half a step).
std::vector<Direction> product_sphere(int n_theta, int n_phi);
// 6 faces + 12 edges + 8 corners of the cube, equal weights 4 pi / 26.
std::vector<Direction> cube26();

}  // namespace qgtk
