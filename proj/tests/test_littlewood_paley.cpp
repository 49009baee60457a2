#include <doctest.h>

#include <cmath>
#include <random>

#include "qgtk/field_ops.hpp"
#include "qgtk/flow.hpp"
#include "qgtk/littlewood_paley.hpp"

using namespace qgtk;

TEST_CASE("radial profiles") {
    CHECK(lp_chi(0.0) == 1.0);
    CHECK(lp_chi(0.75) == 1.0);
    CHECK(lp_chi(4.0 / 3.0) == 0.0);
    CHECK(lp_chi(2.0) == 0.0);
    CHECK(lp_phi(1.4) == 1.0);
    CHECK(lp_phi(0.5) == 0.0);
    CHECK(lp_phi(3.0) == 0.0);
    for (double r = 0.0; r < 10.0; r += 0.013) {
        CHECK(lp_chi(r) >= 0.0);
        CHECK(lp_chi(r) <= 1.0);
        double sum = lp_chi(r);
        for (int l = 0; l < 6; ++l) sum += lp_phi(r / std::ldexp(1.0, l));
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("partition of unity on the lattice") {
    const Grid3 g = grid_for_dyadic(32, 2);
    CHECK(partition_of_unity_error(g, false) < 1e-12);
    CHECK(partition_of_unity_error(g, true) < 1e-12);
}

TEST_CASE("blocks reconstruct the field") {
    const Grid3 g = grid_for_dyadic(32, 2);
    std::mt19937_64 rng(1);
    const ScalarField u = random_bandlimited(g, rng, 0.9 * g.nyquist());
    const DyadicDecomposition d = decompose(u, 2);
    CHECK(rel_linf(d.reconstruct(), u) < 1e-12);
    CHECK(rel_linf(d.low_cut(2), low_cut(u, 2)) < 1e-12);
}

TEST_CASE("a mode at 1.4 2^j lives in block j only") {
    // flow_grid holds the wavenumbers 1.4 2^q, where phi = 1
    const Grid3 g = flow_grid(32);
    const double k = 1.4 * 2.0;
    const ScalarField u = sample(g, [k](const Vec3& x) { return std::cos(k * x[1]); });
    const double l2 = std::sqrt(std::pow(g.L, 3) / 2.0);
    CHECK(lp_norm(u, 2.0) == doctest::Approx(l2).epsilon(1e-12));
    CHECK(rel_linf(dyadic_block(u, 1), u) < 1e-12);
    CHECK(max_abs(dyadic_block(u, 0)) < 1e-12);
    CHECK(max_abs(dyadic_block(u, 2)) < 1e-12);
    for (double s : {-0.5, 0.0, 0.7})
        for (double r : {1.0, 2.0, kInf})
            CHECK(besov_norm(u, s, 2.0, r, 2) == doctest::Approx(std::pow(2.0, s) * l2).epsilon(1e-10));
}

TEST_CASE("Besov norms are monotone in r and s") {
    const Grid3 g = grid_for_dyadic(32, 2);
    std::mt19937_64 rng(2);
    const ScalarField u = random_bandlimited(g, rng, 0.9 * g.nyquist());
    for (double p : {2.0, kInf}) {
        CHECK(besov_norm(u, 0.5, p, 1.0, 2) >= besov_norm(u, 0.5, p, 2.0, 2));
        CHECK(besov_norm(u, 0.5, p, 2.0, 2) >= besov_norm(u, 0.5, p, kInf, 2));
        CHECK(besov_norm(u, 0.7, p, 2.0, 2) >= besov_norm(u, 0.3, p, 2.0, 2));
    }
    CHECK(besov_from_blocks({1.0, 2.0}, -1, 1.0, 1.0) == doctest::Approx(0.5 + 2.0));
    CHECK(besov_from_blocks({1.0, 2.0}, -1, 0.0, kInf) == doctest::Approx(2.0));
}

TEST_CASE("time norm of a constant") {
    const std::vector<double> t = {0.0, 0.5, 1.0, 1.5, 2.0};
    const std::vector<double> y(t.size(), 3.0);
    CHECK(time_norm(t, y, 1.0) == doctest::Approx(6.0));
    CHECK(time_norm(t, y, 2.0) == doctest::Approx(3.0 * std::sqrt(2.0)));
    CHECK(time_norm(t, y, kInf) == doctest::Approx(3.0));
}

TEST_CASE("Minkowski ordering of tilde and plain time-Besov norms") {
    const Grid3 g = grid_for_dyadic(16, 1);
    std::mt19937_64 rng(3);
    TimeSeries ts;
    for (int i = 0; i <= 6; ++i) {
        ts.t.push_back(0.1 * i);
        ts.u.push_back(random_bandlimited(g, rng, 0.9 * g.nyquist()));
    }
    const int J = 1;
    // rho <= r: tilde <= plain; rho >= r: plain <= tilde
    CHECK(tilde_besov_norm(ts, 1.0, 0.3, 2.0, 2.0, J) <= time_besov_norm(ts, 1.0, 0.3, 2.0, 2.0, J) * (1 + 1e-12));
    CHECK(time_besov_norm(ts, 2.0, 0.3, 2.0, 1.0, J) <= tilde_besov_norm(ts, 2.0, 0.3, 2.0, 1.0, J) * (1 + 1e-12));
    CHECK(time_besov_norm(ts, 2.0, 0.3, 2.0, 2.0, J) == doctest::Approx(tilde_besov_norm(ts, 2.0, 0.3, 2.0, 2.0, J)));
    CHECK(tilde_besov_norm(ts, kInf, 0.3, 2.0, kInf, J) <= time_besov_norm(ts, kInf, 0.3, 2.0, kInf, J) * (1 + 1e-12));
}

TEST_CASE("Bony pieces sum to the product") {
    const Grid3 g = grid_for_dyadic(32, 2);
    std::mt19937_64 rng(4);
    const ScalarField u = random_bandlimited(g, rng, 0.3 * g.nyquist());
    const ScalarField v = random_bandlimited(g, rng, 0.3 * g.nyquist());
    const BonyParts b = bony_decompose(u, v);
    CHECK_FALSE(b.aliasing_flag);
    CHECK(rel_linf(b.T_uv + b.T_vu + b.R, u * v) < 1e-8);
}

TEST_CASE("finite-difference and dyadic Besov norms are comparable") {
    const Grid3 g = grid_for_dyadic(32, 2);
    const ScalarField u = gaussian(g, 3.0 * g.spacing());
    for (double s : {0.3, 0.7}) {
        const double a = fd_besov_norm(u, s, 2.0, 2.0, 1), b = besov_norm(u, s, 2.0, 2.0, 2);
        CHECK(a / b > 0.05);
        CHECK(a / b < 20.0);
    }
}
