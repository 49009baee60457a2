#include <doctest.h>

#include <cmath>
#include <random>

#include "qgtk/field_ops.hpp"
#include "qgtk/flow.hpp"
#include "qgtk/symbols.hpp"

using namespace qgtk;

TEST_CASE("q reduces to the viscosity on each axis") {
    const PhysicalParams p(1.0, 2.0, 0.5);
    CHECK(q_symbol(p, 1.0, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(q_symbol(p, 0.0, 3.0, 0.0) == doctest::Approx(9.0));
    CHECK(q_symbol(p, 0.0, 0.0, 1.0) == doctest::Approx(2.0));
    CHECK(q_symbol(p, 0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("equal viscosities give the Laplacian symbol") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    for (double F : {0.2, 0.7, 1.0}) {
        const PhysicalParams p(1.3, 1.3, F);
        for (int i = 0; i < 50; ++i) {
            const double a = N(rng), b = N(rng), c = N(rng);
            CHECK(q_symbol(p, a, b, c) == doctest::Approx(1.3 * (a * a + b * b + c * c)).epsilon(1e-13));
        }
    }
}

TEST_CASE("Gamma splits into a local part and a Lambda^2 part") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> N;
    for (const PhysicalParams& p : {PhysicalParams(1, 2, 0.5), PhysicalParams(3, 0.5, 0.3), PhysicalParams(1, 1, 0.4),
                                    PhysicalParams(2, 1, 1.0)}) {
        for (int i = 0; i < 100; ++i) {
            const double a = N(rng), b = N(rng), c = N(rng);
            const double lam = lambda_symbol(p, a, b, c);
            const double lhs = -q_symbol(p, a, b, c);
            const double rhs = gammaL_symbol(p, a, b, c) + p.nonlocal_coeff() * lam * lam;
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
            // Lambda = d3^2 (-Delta_F)^{-1/2}
            CHECK(lam == doctest::Approx(-c * c / std::sqrt(xiF2(p, a, b, c))).epsilon(1e-13));
        }
    }
}

TEST_CASE("q is elliptic between nu0 and max viscosity") {
    const Grid3 g(16, 4.0);
    CHECK(ellipticity_violation(PhysicalParams(1, 2, 0.5), g) <= 1e-14);
    CHECK(ellipticity_violation(PhysicalParams(4, 0.5, 0.9), g) <= 1e-14);
}

TEST_CASE("q is homogeneous of degree 2 and even") {
    const PhysicalParams p(1, 3, 0.6);
    CHECK(q_symbol(p, 0.4, -1.1, 0.7) * 4.0 == doctest::Approx(q_symbol(p, 0.8, -2.2, 1.4)));
    CHECK(q_symbol(p, 0.4, -1.1, 0.7) == doctest::Approx(q_symbol(p, -0.4, 1.1, -0.7)));
}

TEST_CASE("operator identity on fields") {
    const Grid3 g(16, 2.0 * M_PI);
    std::mt19937_64 rng(3);
    const ScalarField u = random_bandlimited(g, rng, 5.0);
    const PhysicalParams p(1, 2, 0.5);
    const ScalarField lam = apply_lambda_spectral(u, p);
    const ScalarField rhs = apply_gamma_L(u, p) + p.nonlocal_coeff() * apply_lambda_spectral(lam, p);
    CHECK(rel_linf(rhs, apply_gamma(u, p)) < 1e-12);
    // Delta_F^{-1} inverts Delta_F on mean-zero fields
    const ScalarField w = apply_deltaF_inverse(u, p);
    const ScalarField back = spectral_derivative(w, 0, 0) + spectral_derivative(w, 1, 1) +
                             p.F * p.F * spectral_derivative(w, 2, 2);
    CHECK(rel_linf(back, remove_mean(u)) < 1e-12);
}

TEST_CASE("verify_gamma_decomposition passes including degenerate cases") {
    const Grid3 g(16, 2.0 * M_PI);
    for (const PhysicalParams& p : {PhysicalParams(1, 2, 0.5), PhysicalParams(1, 1, 0.5), PhysicalParams(1, 2, 1.0),
                                    PhysicalParams(0.3, 5, 0.1), PhysicalParams(2, 0.7, 0.9)}) {
        const VerificationReport r = verify_gamma_decomposition(p, g, 1, 2);
        CHECK(r.pass);
        if (p.nu == p.nu_prime || p.F == 1.0) CHECK(r.get("nonlocal_max") == 0.0);
    }
}

TEST_CASE("velocity law reproduces the vorticity and is divergence free") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g = flow_grid(16);
    std::mt19937_64 rng(4);
    const ScalarField w = remove_mean(dealias(random_bandlimited(g, rng, 2.5)));
    const BiotSavartResult bs = biot_savart(w, p);
    CHECK(rel_linf(reconstruct_vorticity(bs.U, p), w) < 1e-12);
    CHECK(max_abs(bs.U[2]) == 0.0);
    const VectorField v = {bs.U[0], bs.U[1], bs.U[2]};
    CHECK(max_divergence(v) < 1e-12 * std::max(1.0, max_gradient_norm(v)));
}
