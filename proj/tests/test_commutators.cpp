#include <doctest.h>

#include <cmath>
#include <random>

#include "qgtk/commutators.hpp"
#include "qgtk/field_ops.hpp"
#include "qgtk/littlewood_paley.hpp"
#include "qgtk/semigroup.hpp"
#include "qgtk/symbols.hpp"

using namespace qgtk;

namespace {
ScalarField annulus_field(const Grid3& g, int j, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_annulus(g, rng, 0.8 * std::ldexp(1.0, j), 2.5 * std::ldexp(1.0, j));
}
}  // namespace

TEST_CASE("Lambda commutes with rigid flows") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g = flow_grid(16);
    const ScalarField f = annulus_field(g, 1, 1);
    const double scale = max_abs(apply_lambda_spectral(f, p));
    CHECK(max_abs(commutator_Ij(f, FlowMap::identity(g, 1), p)) < 1e-12 * scale);
    CHECK(max_abs(commutator_Ij(f, FlowMap::translation(g, {0.3, 0.1, -0.4}, 1), p)) < 1e-11 * scale);
    // the operator is invariant under rotations of the horizontal plane
    const Grid3 c(16, 8.0);
    const ScalarField h = annulus_field(c, 1, 2);
    CHECK(max_abs(commutator_Ij(h, FlowMap::rotation90(c, 1), p)) < 1e-12 * max_abs(apply_lambda_spectral(h, p)));
}

TEST_CASE("non-local commutator vanishes for degenerate parameters") {
    const Grid3 g = flow_grid(16);
    const FlowMap f = integrate_flow(VelocitySeries::steady(lacunary_velocity(g, 0.02, -1, 1, 1)), 1, 1.0, 0.1);
    const ScalarField u = annulus_field(g, 1, 3);
    for (const PhysicalParams& p : {PhysicalParams(1, 1, 0.5), PhysicalParams(1, 2, 1.0)}) {
        const FlowCommutators fc = nonlocal_commutator(u, f, p);
        CHECK(max_abs(fc.nonlocal) == 0.0);
    }
    const FlowCommutators fc = nonlocal_commutator(u, f, PhysicalParams(1, 2, 0.5));
    CHECK(max_abs(fc.nonlocal) > 0.0);
}

TEST_CASE("commutator grows with the flow strength") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g = flow_grid(16);
    const ScalarField u = annulus_field(g, 1, 4);
    double prev = 0.0;
    for (double a : {0.005, 0.01, 0.02}) {
        const FlowMap f = integrate_flow(VelocitySeries::steady(lacunary_velocity(g, a, -1, 1, 1)), 1, 1.0, 0.1);
        const double n = lp_norm(commutator_Ij(u, f, p), 2.0);
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("annulus leakage of a dyadic field") {
    const Grid3 g = grid_for_dyadic(32, 2);
    const ScalarField u = dyadic_scaled_field(g, 1, 5);
    CHECK(annulus_leakage(u, 1) < 1e-28);
    CHECK(annulus_leakage(u, 3) > 0.5);
}

TEST_CASE("transport remainder vanishes for zero and uniform velocity") {
    const Grid3 g = flow_grid(16);
    std::mt19937_64 rng(6);
    const ScalarField u = remove_mean(dealias(random_bandlimited(g, rng, 2.0)));
    const VectorField zero = {ScalarField(g), ScalarField(g), ScalarField(g)};
    CHECK(max_abs(remainder_Rj(zero, u, 1)) == 0.0);
    const VectorField c = {ScalarField(g, 0.2), ScalarField(g, -0.1), ScalarField(g, 0.3)};
    // a constant drift commutes with Delta_j
    CHECK(max_abs(remainder_Rj(c, u, 1)) < 1e-12 * max_abs(u));
}

TEST_CASE("composition with a flow is close to interpolation of the inverse map") {
    const Grid3 g = flow_grid(16);
    const FlowMap f = integrate_flow(VelocitySeries::steady(lacunary_velocity(g, 0.01, -1, 1, 2)), 2, 1.0, 0.1);
    std::mt19937_64 rng(7);
    const ScalarField u = random_bandlimited(g, rng, 1.5);
    const ScalarField a = compose_flow(u, f);
    const ScalarField b = compose(u, f.forward);
    CHECK(rel_linf(a, b) < 1e-12);
    const ScalarField back = compose(a, f.inverse);
    CHECK(rel_linf(back, u) < 1e-2);
}
