#include <doctest.h>

#include <cmath>
#include <random>

#include "qgtk/commutators.hpp"
#include "qgtk/field_ops.hpp"
#include "qgtk/flow.hpp"
#include "qgtk/reference.hpp"

using namespace qgtk;

namespace {
double max_point_error(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int c = 0; c < 3; ++c) e = std::max(e, std::abs(a[i][c] - b[i][c]));
    return e;
}
}  // namespace

TEST_CASE("zero velocity gives the identity map") {
    const Grid3 g = flow_grid(16);
    const VectorField zero = {ScalarField(g), ScalarField(g), ScalarField(g)};
    const FlowMap f = integrate_flow(VelocitySeries::steady(zero), 2, 1.0, 0.25);
    const FlowMap id = FlowMap::identity(g, 2);
    CHECK(max_point_error(f.forward, id.forward) == 0.0);
    CHECK(f.V == 0.0);
    CHECK(f.det_defect < 1e-14);
}

TEST_CASE("uniform velocity gives a translation") {
    const Grid3 g = flow_grid(16);
    const Vec3 c = {0.3, -0.1, 0.2};
    const VectorField v = {ScalarField(g, c[0]), ScalarField(g, c[1]), ScalarField(g, c[2])};
    const FlowMap f = integrate_flow(VelocitySeries::steady(v), 2, 2.0, 0.1);
    const FlowMap t = FlowMap::translation(g, {0.6, -0.2, 0.4}, 2);
    CHECK(max_point_error(f.forward, t.forward) < 1e-12);
    CHECK(max_point_error(f.inverse, t.inverse) < 1e-12);
    CHECK(f.V == 0.0);
}

TEST_CASE("composition with a translation is a shift") {
    const Grid3 g = flow_grid(16);
    std::mt19937_64 rng(1);
    const ScalarField u = random_bandlimited(g, rng, 1.5);
    const Vec3 a = {0.37, -0.21, 0.05};
    const ScalarField got = compose_flow(u, FlowMap::translation(g, a));
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < g.size(); i += 29) {
        const Vec3 x = g.point(i);
        pts.push_back({x[0] + a[0], x[1] + a[1], x[2] + a[2]});
    }
    const std::vector<double> ref = reference::trig_eval(u, pts);
    double err = 0.0;
    for (std::size_t k = 0, i = 0; i < g.size(); i += 29, ++k) err = std::max(err, std::abs(got[i] - ref[k]));
    CHECK(err < 1e-12 * max_abs(u));
}

TEST_CASE("grid rotation permutes values exactly") {
    const Grid3 g(16, 4.0);
    std::mt19937_64 rng(2);
    const ScalarField u = random_bandlimited(g, rng, 3.0);
    const ScalarField r = compose_flow(u, FlowMap::rotation90(g));
    const int n = g.n;
    double err = 0.0;
    // (x1, x2) -> (-x2, x1): index i -> n - i (mod n) for the negated coordinate
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) err = std::max(err, std::abs(r[g.index(a, b, c)] - u[g.index((n - b) % n, a, c)]));
    CHECK(err == 0.0);
}

TEST_CASE("lacunary velocity is divergence free with the requested shells") {
    const Grid3 g = flow_grid(32);
    const VectorField v = lacunary_velocity(g, 0.02, -1, 2, 1);
    CHECK(max_divergence(v) < 1e-12);
    CHECK(max_gradient_norm(v) > 0.0);
    const VectorField w = broadband_velocity(g, 0.02, 7.0, 1);
    CHECK(max_divergence(w) < 1e-12);
}

TEST_CASE("incompressible flow preserves volume and inverts") {
    const Grid3 g = flow_grid(16);
    const FlowMap f = integrate_flow(VelocitySeries::steady(lacunary_velocity(g, 0.02, -1, 1, 3)), 2, 1.0, 0.05);
    CHECK(f.det_defect < 1e-6);
    CHECK(f.roundtrip_error < 1e-6);
    CHECK(f.V > 0.0);
    const FlowNorms nrm = measure_flow_norms(f);
    CHECK(nrm.Dpsi_dev <= std::exp(f.V) - 1.0 + 1e-9);
}

TEST_CASE("velocity series interpolates linearly") {
    const Grid3 g(8, 1.0);
    VelocitySeries s;
    s.t = {0.0, 1.0};
    s.v = {{ScalarField(g, 0.0), ScalarField(g, 1.0), ScalarField(g, 2.0)},
           {ScalarField(g, 2.0), ScalarField(g, 1.0), ScalarField(g, 0.0)}};
    const VectorField m = s.at(0.25);
    CHECK(m[0][0] == doctest::Approx(0.5));
    CHECK(m[1][0] == doctest::Approx(1.0));
    CHECK(m[2][0] == doctest::Approx(1.5));
}

TEST_CASE("displacement is exactly zero for the identity and small for weak flows") {
    const Grid3 g = flow_grid(16);
    const FlowMap id = FlowMap::identity(g, 3);
    const MxEvaluator E(id);
    const MxRecord r = E.at({0.1, 0.2, 0.3}, {0.05, -0.02, 0.01});
    CHECK(r.m_plus[0] == doctest::Approx(-0.05));
    CHECK(r.Yp == doctest::Approx(1.0));
    CHECK(r.Ym == doctest::Approx(1.0));
}
