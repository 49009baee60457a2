#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "qgtk/config.hpp"
#include "qgtk/fft.hpp"
#include "qgtk/field_ops.hpp"
#include "qgtk/interp.hpp"
#include "qgtk/reference.hpp"
#include "qgtk/snapshot.hpp"
#include "qgtk/stats.hpp"

using namespace qgtk;

namespace {
ScalarField random_field(const Grid3& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_bandlimited(g, rng, 0.3 * g.nyquist());
}
}  // namespace

TEST_CASE("grid coordinates span the centred box") {
    const Grid3 g(16, 4.0);
    CHECK(g.coord(0) == doctest::Approx(-2.0));
    CHECK(g.coord(8) == doctest::Approx(0.0));
    CHECK(g.spacing() == doctest::Approx(0.25));
    CHECK(g.nyquist() == doctest::Approx(M_PI / 0.25));
    CHECK(g.freq_index(9) == -7);
    CHECK_THROWS(Grid3(15, 1.0));
}

TEST_CASE("grid_for_dyadic clears the largest annulus") {
    for (int j = 0; j <= 4; ++j) {
        const Grid3 g = grid_for_dyadic(64, j);
        CHECK(g.nyquist() == doctest::Approx(1.05 * kC0 * std::ldexp(1.0, j)));
        CHECK(g.max_dyadic_index() == j);
    }
}

TEST_CASE("forward transform of a cosine has two half-amplitude modes") {
    const Grid3 g(16, 2.0 * M_PI);
    const ScalarField f = sample(g, [](const Vec3& x) { return std::cos(3.0 * (x[0] + M_PI)); });
    const SpectralField s = transform(f);
    CHECK(std::abs(s[g.index(3, 0, 0)] - cplx(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(s[g.index(13, 0, 0)] - cplx(0.5, 0.0)) < 1e-14);
    double rest = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (i != g.index(3, 0, 0) && i != g.index(13, 0, 0)) rest = std::max(rest, std::abs(s[i]));
    CHECK(rest < 1e-14);
}

TEST_CASE("transform round trip and Hermitian symmetry") {
    const Grid3 g(16, 3.0);
    const ScalarField f = random_field(g, 3);
    const SpectralField s = transform(f);
    CHECK(s.hermitian_defect() < 1e-14);
    CHECK(rel_linf(inverse_transform(s), f) < 1e-13);
}

TEST_CASE("parallel norms match the serial reference") {
    const Grid3 g(16, 5.0);
    const ScalarField f = random_field(g, 4);
    for (double p : {1.0, 2.0, 3.5})
        CHECK(lp_norm(f, p) == doctest::Approx(reference::lp_norm(f, p)).epsilon(1e-12));
    CHECK(max_abs(f) == reference::max_abs(f));
    CHECK(lp_norm(f, kInf) == max_abs(f));
}

TEST_CASE("L2 norm of a constant is value times box volume to the 1/2") {
    const Grid3 g(8, 2.0);
    const ScalarField f(g, 3.0);
    CHECK(lp_norm(f, 2.0) == doctest::Approx(3.0 * std::sqrt(8.0)));
    CHECK(mean(f) == doctest::Approx(3.0));
    CHECK(max_abs(remove_mean(f)) < 1e-15);
}

TEST_CASE("spectral derivative of a sine") {
    const Grid3 g(16, 2.0 * M_PI);
    const ScalarField f = sample(g, [](const Vec3& x) { return std::sin(2.0 * x[1]); });
    const ScalarField ref = sample(g, [](const Vec3& x) { return 2.0 * std::cos(2.0 * x[1]); });
    CHECK(rel_linf(spectral_derivative(f, 1), ref) < 1e-13);
    const ScalarField lap = laplacian(f);
    CHECK(rel_linf(lap, -4.0 * f) < 1e-13);
}

TEST_CASE("dealiasing removes the upper third of the spectrum") {
    const Grid3 g(32, 2.0 * M_PI);
    const ScalarField f = random_field(g, 6) + sample(g, [](const Vec3& x) { return std::cos(14.0 * x[0]); });
    const ScalarField d = dealias(f);
    CHECK(spectral_energy_fraction_above(d, 2.0 / 3.0 * g.nyquist()) < 1e-28);
    CHECK(spectral_energy_fraction_above(f, 2.0 / 3.0 * g.nyquist()) > 1e-3);
}

TEST_CASE("interpolant matches the direct trigonometric sum") {
    const Grid3 g(16, 4.0);
    const ScalarField f = random_field(g, 7);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<Vec3> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({U(rng), U(rng), U(rng)});
    const std::vector<double> ref = reference::trig_eval(f, pts);
    const double scale = max_abs(f);
    for (auto mode : {SpectralInterpolant::Mode::Sparse, SpectralInterpolant::Mode::Nufft}) {
        const SpectralInterpolant I(f, mode);
        const std::vector<double> got = I.evaluate(pts);
        double err = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) err = std::max(err, std::abs(got[i] - ref[i]));
        CHECK(err / scale < 1e-8);
    }
    const SpectralInterpolant I(f);
    const std::vector<double> serial = reference::interpolate_serial(I, pts);
    const std::vector<double> par = I.evaluate(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(par[i] == serial[i]);
}

TEST_CASE("interpolant reproduces grid values") {
    const Grid3 g(8, 1.0);
    const ScalarField f = random_field(g, 9);
    const SpectralInterpolant I(f);
    for (std::size_t i = 0; i < g.size(); i += 37) CHECK(I(g.point(i)) == doctest::Approx(f[i]).epsilon(1e-9));
}

TEST_CASE("snapshot round trip is exact") {
    const Grid3 g(8, 1.5);
    const ScalarField f = random_field(g, 10);
    const auto path = std::filesystem::temp_directory_path() / "qgtk_snapshot_test.bin";
    write_snapshot(path.string(), f);
    const ScalarField h = read_snapshot(path.string());
    CHECK(h.grid == g);
    CHECK(h.v == f.v);
    std::filesystem::remove(path);
}

TEST_CASE("linear fits recover exact lines") {
    const std::vector<double> x = {0, 1, 2, 3};
    const LinearFit a = linear_fit(x, {1, 3, 5, 7});
    CHECK(a.slope == doctest::Approx(2.0));
    CHECK(a.intercept == doctest::Approx(1.0));
    CHECK(a.r2 == doctest::Approx(1.0));
    const LinearFit b = log2_fit(x, {1, 2, 4, 8});
    CHECK(b.slope == doctest::Approx(1.0));
    const LinearFit c = loglog_fit({1, 2, 4}, {3, 12, 48});
    CHECK(c.slope == doctest::Approx(2.0));
}

TEST_CASE("config parsing") {
    const auto kv = parse_key_values("nu = 2  # viscosity\n\n# comment\nF=0.25\nsuite = kernel-l1, leibniz\n");
    CHECK(kv.at("nu") == "2");
    CHECK(kv.at("F") == "0.25");
    RunConfig c;
    apply_settings(c, kv);
    CHECK(c.params.nu == 2.0);
    CHECK(c.params.F == 0.25);
    CHECK(c.suite == std::vector<std::string>{"kernel-l1", "leibniz"});
    CHECK_THROWS_AS(apply_setting(c, "viscosity", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "n", "abc"), ConfigError);
    CHECK_THROWS_AS(parse_key_values("no equals sign"), ConfigError);
    CHECK(parse_list("0.25,0.5, 1") == std::vector<double>{0.25, 0.5, 1.0});
}
