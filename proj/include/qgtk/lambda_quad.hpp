#pragma once

#include <cstdint>
#include <vector>

#include "qgtk/grid.hpp"
#include "qgtk/params.hpp"
#include "qgtk/quadrature.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

// K(y) = -cK (y1^2 + y2^2 - 3 y3^2 / F^2) / |y|_{1/F}^6
struct KernelK {
    PhysicalParams params;
    double cK = 0.0;

    KernelK() = default;
    KernelK(const PhysicalParams& p, double c) : params(p), cK(c) {}
    static KernelK analytic(const PhysicalParams& p) { return KernelK(p, analytic_cK(p.F)); }
    // 2C / F^3 with C = 1 / (2 pi^2)
    static double analytic_cK(double F);

    double operator()(const Vec3& y) const;
};

// Shell quadrature for second-difference integrals. Displacements are y = rho * A w with
// A = diag(1, 1, F), w on a spherical rule and rho = |y|_{1/F} on Gauss-Legendre nodes in log rho.
struct QuadSettings {
    double r_min = 0.0;  // 0 selects the grid spacing
    double r_max = 0.0;  // 0 selects L / 4
    int n_radii = 32;
    int n_dirs = 50;
    bool inner_correction = true;  // closed-form radial integral over rho < r_min
    bool outer_correction = true;  // closed-form radial integral over rho > r_max
    int n_dirs_outer = 194;        // the tail integrand has a kink in w, so it gets a finer rule
};

struct ShellNode {
    Vec3 y;        // displacement
    double rho;    // |y|_{1/F}
    double weight; // includes F, angular weight, kernel angular factor, radial weight; unit cK
};

struct ShellRule {
    PhysicalParams params;
    double r_min = 0.0, r_max = 0.0;
    std::vector<Direction> dirs;      // w
    std::vector<double> kappa;        // angular kernel factor for unit cK: -(1 - 4 w3^2)
    std::vector<Node1D> radial;       // nodes in rho with d rho / rho folded in
    std::vector<Direction> outer_dirs;
    std::vector<ShellNode> nodes;
};

ShellRule make_shell_rule(const Grid3& g, const PhysicalParams& p, const QuadSettings& q);

// Spectral multiplier of the quadrature applied with unit cK (shell part, inner and outer corrections separately).
struct QuadratureSymbol {
    SpectralField shell, inner, outer;
};
QuadratureSymbol lambda_quadrature_symbol(const Grid3& g, const ShellRule& rule);

ScalarField apply_lambda_quadrature(const ScalarField& f, const PhysicalParams& p, const QuadSettings& q = {},
                                    double cK = 0.0);
// shell quadrature of the first-difference form over |y|_{1/F} >= eps, no desingularization (diagnostic)
ScalarField apply_lambda_first_difference(const ScalarField& f, const PhysicalParams& p, double eps,
                                          const QuadSettings& q = {}, double cK = 0.0);

struct Calibration {
    std::vector<double> sigmas;
    std::vector<double> cK_per_sigma;
    double cK = 0.0;
    double spread = 0.0;      // (max - min) / mean over sigmas
    double C_fit = 0.0;       // cK F^3 / 2
    double C_analytic = 0.0;  // 1 / (2 pi^2)
    double max_rel_linf = 0.0;  // worst quadrature-vs-spectral error with the fitted constant
};

Calibration calibrate_kernel_constant(const PhysicalParams& p, const Grid3& g, const QuadSettings& q = {},
                                      const std::vector<double>& sigma_in_h = {1.5, 2.0, 2.5});

// M(f,g)(x) = int K(y) (f(x-y) - f(x)) (g(x-y) - g(x)) dy
ScalarField bilinear_M(const ScalarField& f, const ScalarField& g, const PhysicalParams& p, const QuadSettings& q = {},
                       double cK = 0.0);
VerificationReport verify_leibniz(const ScalarField& f, const ScalarField& g, const PhysicalParams& p,
                                  const QuadSettings& q = {});
// ||M(f,g)||_p <= C sqrt(||f||_p ||grad f||_p ||g||_inf ||grad g||_inf) across a family of f
VerificationReport verify_M_bound(const Grid3& grid, const PhysicalParams& p, const QuadSettings& q = {});

VerificationReport besov1_interpolation(const std::vector<ScalarField>& family, double r, int jmax);
VerificationReport verify_lambda_quadrature(const PhysicalParams& p, const Grid3& g, const QuadSettings& q = {});

}  // namespace qgtk
