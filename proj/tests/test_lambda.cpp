#include <doctest.h>

#include <cmath>
#include <random>

#include "qgtk/field_ops.hpp"
#include "qgtk/lambda_quad.hpp"
#include "qgtk/reference.hpp"
#include "qgtk/symbols.hpp"

using namespace qgtk;

TEST_CASE("analytic kernel constant") {
    CHECK(KernelK::analytic_cK(1.0) == doctest::Approx(1.0 / (M_PI * M_PI)));
    CHECK(KernelK::analytic_cK(0.5) == doctest::Approx(8.0 / (M_PI * M_PI)));
}

TEST_CASE("kernel is even, homogeneous of degree -4 and vanishes on its cone") {
    const PhysicalParams p(1, 2, 0.5);
    const KernelK K = KernelK::analytic(p);
    const Vec3 y = {0.3, -0.7, 0.2};
    CHECK(K(y) == doctest::Approx(K({-0.3, 0.7, -0.2})));
    CHECK(K({0.6, -1.4, 0.4}) == doctest::Approx(K(y) / 16.0));
    // y1^2 + y2^2 = 3 y3^2 / F^2
    const double y3 = 0.4, rh = std::sqrt(3.0) * y3 / p.F;
    CHECK(std::abs(K({rh, 0.0, y3})) < 1e-12 * std::abs(K(y)));
    CHECK(K({1.0, 0.0, 0.0}) < 0.0);
    CHECK(K({0.0, 0.0, 1.0}) > 0.0);
}

TEST_CASE("shell quadrature matches the direct serial sum") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 16.0);
    const ScalarField f = gaussian(g, 2.0 * g.spacing(), {0.3, -0.2, 0.1});
    QuadSettings q;
    q.inner_correction = false;
    q.outer_correction = false;
    q.n_radii = 8;
    q.n_dirs = 26;
    const ScalarField lam = apply_lambda_quadrature(f, p, q);
    const double scale = max_abs(lam);
    for (std::size_t i : {g.index(8, 8, 8), g.index(9, 7, 8), g.index(3, 12, 5)}) {
        const double ref = reference::lambda_shell_at(f, p, q, g.point(i));
        CHECK(std::abs(lam[i] - ref) < 1e-10 * scale);
    }
}

TEST_CASE("bilinear defect matches the direct serial sum") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 16.0);
    std::mt19937_64 rng(1);
    const ScalarField f = random_bandlimited(g, rng, 0.3 * g.nyquist());
    const ScalarField h = random_bandlimited(g, rng, 0.3 * g.nyquist());
    QuadSettings q;
    q.inner_correction = false;
    q.outer_correction = false;
    q.n_radii = 8;
    q.n_dirs = 26;
    const ScalarField M = bilinear_M(f, h, p, q);
    const double scale = max_abs(M);
    for (std::size_t i : {g.index(8, 8, 8), g.index(1, 14, 6)}) {
        const double ref = reference::M_shell_at(f, h, p, q, g.point(i));
        CHECK(std::abs(M[i] - ref) < 1e-9 * scale);
    }
}

TEST_CASE("quadrature Lambda approximates the spectral operator") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(32, 32.0);
    const ScalarField f = gaussian(g, 2.0 * g.spacing());
    const ScalarField spec = apply_lambda_spectral(f, p);
    const ScalarField quad = apply_lambda_quadrature(f, p);
    CHECK(rel_linf(quad, spec) < 0.02);
}

TEST_CASE("calibrated constant is close to the analytic one") {
    const PhysicalParams p(1, 2, 0.5);
    const Calibration c = calibrate_kernel_constant(p, Grid3(32, 32.0));
    CHECK(c.spread < 0.02);
    CHECK(std::abs(c.C_fit / c.C_analytic - 1.0) < 0.02);
    CHECK(c.C_analytic == doctest::Approx(1.0 / (2.0 * M_PI * M_PI)));
}

TEST_CASE("Leibniz defect vanishes for a constant factor") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 16.0);
    const ScalarField f = gaussian(g, 2.0 * g.spacing());
    const ScalarField one(g, 1.0);
    CHECK(max_abs(bilinear_M(f, one, p)) < 1e-12 * max_abs(apply_lambda_spectral(f, p)));
}

TEST_CASE("Leibniz and M-bound checks pass") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(32, 32.0);
    const ScalarField f = gaussian(g, 2.0 * g.spacing());
    const ScalarField h = gaussian(g, 2.5 * g.spacing(), {0.5, 0.0, 0.0});
    CHECK(verify_leibniz(f, h, p).pass);
}
