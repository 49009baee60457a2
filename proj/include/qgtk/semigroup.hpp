#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qgtk/field_ops.hpp"
#include "qgtk/grid.hpp"
#include "qgtk/params.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

struct SemigroupKernel {
    PhysicalParams params;
    Grid3 grid;
    ScalarField K1;
    double l1_norm = 0.0;
    double min_value = 0.0;
    double integral = 0.0;
    double nyquist_value = 0.0;  // largest e^{-q0} on the Nyquist faces
    // sup |grad^k K1| (1+|x|^2)^2 over |x| <= L/8, L/4 and the whole box, k = 0, 1, 2
    std::array<std::array<double, 3>, 3> envelope{};
    double envelope_constant() const { return envelope[0][2]; }
};

SemigroupKernel compute_K1(const PhysicalParams& p, const Grid3& g);
// Default kernel grid: unit-scale resolution with e^{-q0} negligible at Nyquist.
Grid3 default_kernel_grid(int n = 64);

ScalarField apply_semigroup(const ScalarField& u, double t, const PhysicalParams& p);

// Field whose Fourier modes are those of a seeded j = 0 annulus field dilated by 2^j,
// so that u_j(x) = u_0(2^j x) on the torus.
ScalarField dyadic_scaled_field(const Grid3& g, int j, std::uint64_t seed);

struct SemigroupCheckOptions {
    std::vector<double> p_list{1.0, 2.0, kInf};
    std::vector<int> j_list{0, 1, 2, 3};
    std::uint64_t seed = 1;
    int n_random = 3;
};

VerificationReport verify_semigroup_bounds(const PhysicalParams& p, const Grid3& g,
                                           const SemigroupCheckOptions& opt = {});

}  // namespace qgtk
