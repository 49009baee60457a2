#pragma once

#include <array>
#include <cstdint>

#include "qgtk/grid.hpp"
#include "qgtk/params.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

// |xi|_F^2 = xi1^2 + xi2^2 + F^2 xi3^2
inline double xiF2(const PhysicalParams& p, double a, double b, double c) {
    return a * a + b * b + p.F * p.F * c * c;
}

// q(xi) = |xi|^2 / |xi|_F^2 (nu xi1^2 + nu xi2^2 + nu' F^2 xi3^2), q(0) = 0. Gamma has symbol -q.
double q_symbol(const PhysicalParams& p, double a, double b, double c);
// q/nu0 from the polynomial-plus-remainder split
double q0_split(const PhysicalParams& p, double a, double b, double c);
double gammaL_symbol(const PhysicalParams& p, double a, double b, double c);
double lambda_symbol(const PhysicalParams& p, double a, double b, double c);
double deltaF_inv_symbol(const PhysicalParams& p, double a, double b, double c);

ScalarField apply_gamma(const ScalarField& u, const PhysicalParams& p);
ScalarField apply_gamma_L(const ScalarField& u, const PhysicalParams& p);
ScalarField apply_lambda_spectral(const ScalarField& u, const PhysicalParams& p);
ScalarField apply_deltaF_inverse(const ScalarField& u, const PhysicalParams& p);

// symbol-level identity on the whole frequency grid plus field-level check on random fields
VerificationReport verify_gamma_decomposition(const PhysicalParams& p, const Grid3& g, std::uint64_t seed = 1,
                                              int n_fields = 3);

struct BiotSavartResult {
    std::array<ScalarField, 4> U;  // (v1, v2, v3 = 0, theta)
    bool mean_projected = false;
    double removed_mean = 0.0;
};

BiotSavartResult biot_savart(const ScalarField& omega, const PhysicalParams& p);
// d1 U2 - d2 U1 - F d3 U4
ScalarField reconstruct_vorticity(const std::array<ScalarField, 4>& U, const PhysicalParams& p);

// ellipticity nu0 |xi|^2 <= q <= max(nu,nu') |xi|^2 on the grid; returns worst violation (<= 0 means ok)
double ellipticity_violation(const PhysicalParams& p, const Grid3& g);

}  // namespace qgtk
