#include <doctest.h>

#include <cmath>
#include <random>

#include "qgtk/field_ops.hpp"
#include "qgtk/reference.hpp"
#include "qgtk/semigroup.hpp"
#include "qgtk/symbols.hpp"

using namespace qgtk;

TEST_CASE("single Fourier mode decays at rate q") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 2.0 * M_PI);
    const ScalarField u = sample(g, [](const Vec3& x) { return std::cos(2.0 * x[0] + x[2]); });
    const double t = 0.3;
    const double rate = q_symbol(p, 2.0, 0.0, 1.0);
    const ScalarField ref = std::exp(-rate * t) * u;
    CHECK(rel_linf(apply_semigroup(u, t, p), ref) < 1e-13);
}

TEST_CASE("semigroup matches the serial reference and composes") {
    const PhysicalParams p(0.7, 3, 0.4);
    const Grid3 g(16, 5.0);
    std::mt19937_64 rng(1);
    const ScalarField u = random_bandlimited(g, rng, 4.0);
    const ScalarField a = apply_semigroup(u, 0.2, p);
    CHECK(rel_linf(a, reference::apply_semigroup(u, 0.2, p)) < 1e-13);
    const ScalarField b = apply_semigroup(apply_semigroup(u, 0.05, p), 0.15, p);
    CHECK(rel_linf(b, a) < 1e-12);
    CHECK(rel_linf(apply_semigroup(u, 0.0, p), u) < 1e-14);
}

TEST_CASE("semigroup contracts L2 and preserves the mean") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 4.0);
    std::mt19937_64 rng(2);
    const ScalarField u = random_bandlimited(g, rng, 4.0, false);
    double prev = lp_norm(u, 2.0);
    for (double t : {0.01, 0.1, 1.0}) {
        const ScalarField v = apply_semigroup(u, t, p);
        const double cur = lp_norm(v, 2.0);
        CHECK(cur <= prev * (1.0 + 1e-14));
        CHECK(mean(v) == doctest::Approx(mean(u)).epsilon(1e-12));
        prev = cur;
    }
}

TEST_CASE("equal viscosities give the heat kernel") {
    const PhysicalParams p(1, 1, 0.6);
    const SemigroupKernel K = compute_K1(p, default_kernel_grid(32));
    double err = 0.0;
    for (std::size_t i = 0; i < K.grid.size(); ++i) {
        const Vec3 x = K.grid.point(i);
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        err = std::max(err, std::abs(K.K1[i] - std::pow(4.0 * M_PI, -1.5) * std::exp(-r2 / 4.0)));
    }
    CHECK(err < 1e-6);
    CHECK(K.l1_norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(K.integral == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unequal viscosities give a sign-changing profile with L1 norm above one") {
    for (const PhysicalParams& p : {PhysicalParams(1, 2, 0.5), PhysicalParams(1, 5, 0.5), PhysicalParams(3, 1, 0.3)}) {
        const SemigroupKernel K = compute_K1(p, default_kernel_grid(32));
        CAPTURE(p.describe());
        CHECK(K.integral == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(K.min_value < 0.0);
        CHECK(K.l1_norm > 1.0 + 1e-3);
        CHECK(K.nyquist_value < 1e-12);
    }
}

TEST_CASE("F = 1 removes the non-local part") {
    const PhysicalParams p(1, 2, 1.0);
    const SemigroupKernel K = compute_K1(p, default_kernel_grid(32));
    CHECK(K.min_value > -1e-14);
    CHECK(K.l1_norm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dilated annulus field satisfies matches the undilated field on the doubled lattice") {
    const Grid3 g = grid_for_dyadic(32, 2);
    const ScalarField u0 = dyadic_scaled_field(g, 0, 5);
    const ScalarField u1 = dyadic_scaled_field(g, 1, 5);
    const int n = g.n;
    ScalarField m(g);
    // phases are taken from the corner -L/2, so index i maps to 2i (mod n)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                auto w = [&](int i) { return (2 * i) % n; };
                m[g.index(a, b, c)] = u0[g.index(w(a), w(b), w(c))];
            }
    // both fields are normalized to unit sup, so compare shapes
    CHECK(rel_linf(u1, (1.0 / max_abs(m)) * m) < 1e-12);
}

TEST_CASE("semigroup bound checks pass on a small grid") {
    SemigroupCheckOptions o;
    o.j_list = {0, 1, 2};
    o.n_random = 2;
    const VerificationReport r = verify_semigroup_bounds(PhysicalParams(1, 2, 0.5), grid_for_dyadic(32, 2), o);
    CHECK(r.pass);
}
