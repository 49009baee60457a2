#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qgtk/flow.hpp"
#include "qgtk/grid.hpp"
#include "qgtk/params.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

struct CommutatorRecord {
    int j = 0;
    int l = 0;                          // output block for localized results
    std::map<double, double> lp_norms;  // p -> norm (p = inf as infinity)
    double V = 0.0;
    double bound_shape = 0.0;
};

// f o psi on the grid. Uniform translations are applied as spectral phase shifts and
// grid-to-grid permutations exactly; everything else goes through interpolation.
ScalarField compose_flow(const ScalarField& f, const FlowMap& flow);

// Fraction of the spectral energy of f outside the closed annulus [3/4, 8/3] 2^j.
double annulus_leakage(const ScalarField& f, int j);

// (Lambda f) o psi - Lambda (f o psi)
ScalarField commutator_Ij(const ScalarField& f, const FlowMap& flow, const PhysicalParams& p);

struct RewriteSettings {
    double r_min = 0.0;  // 0 selects h / 2
    double r_max = 0.0;  // 0 selects 0.4 L
    int n_radii = 40;
    int n_theta = 24;
    int n_phi = 48;
    double C_flow = 1.0;  // constant in the hypothesis e^{2CV} - 1 <= 1/2
};

struct RewritePoint {
    Vec3 x;               // evaluation point; I_j is evaluated at psi^{-1}(x)
    double value = 0.0;   // (A + B) / 2
    double A = 0.0, B = 0.0;
    double A_inner = 0.0, B_inner = 0.0;  // closed-form contribution of the ball rho < r_min
    double tail = 0.0;                    // contribution of rho > r_max to A (the f(x) term)
    std::vector<double> A_shells, B_shells;  // contributions of [r/2, r] for r = r0, r0 / 2, r0 / 4
    double A_scaled_sup = 0.0;  // sup of |A integrand| |y|^2 over rho < 4 r_min
    double B_scaled_sup = 0.0;  // sup of |B integrand| |y|^3 / min(1, 2^j |y|) over rho < 4 r_min
};

// Shell quadrature of the A/B form of I_j(psi^{-1}(x)) at the given points, for f localized well
// inside the box. Uses the analytic kernel constant.
std::vector<RewritePoint> commutator_rewrite(const ScalarField& f, const FlowMap& flow, const PhysicalParams& p,
                                             const std::vector<Vec3>& xs, const RewriteSettings& q = {});

struct FlowCommutators {
    ScalarField local;     // (Gamma_L u) o psi - Gamma_L (u o psi)
    ScalarField nonlocal;  // (nu - nu') F^2 (1 - F^2) times the Lambda^2 commutator, assembled from two I-terms
};
FlowCommutators nonlocal_commutator(const ScalarField& u_j, const FlowMap& flow, const PhysicalParams& p);

// S_{j-1} v . grad u_j - Delta_j (v . grad u) with dealiased products
ScalarField remainder_Rj(const VectorField& v, const ScalarField& u, int j);

struct CommutatorScalingSettings {
    int n = 64;
    std::vector<int> js = {1, 2, 3};
    std::vector<double> amps = {0.0025, 0.005, 0.01, 0.02};
    double amp = 0.01;  // fixed amplitude for the j-sweep
    int j_fixed = 2;    // fixed index for the V-sweep
    int j_local = 1;    // fixed index for the l-sweep
    double t_final = 1.0;
    double C_flow = 1.0;
    int rewrite_points = 8;
    std::uint64_t seed = 1;
};

// CSV: check_id, j, l, p, V, measured, bound_shape, fitted_constant, slope, pass
VerificationReport verify_commutator_scaling(const PhysicalParams& p, const CommutatorScalingSettings& s = {});

}  // namespace qgtk
