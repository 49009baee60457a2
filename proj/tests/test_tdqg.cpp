#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "qgtk/field_ops.hpp"
#include "qgtk/flow.hpp"
#include "qgtk/semigroup.hpp"
#include "qgtk/snapshot.hpp"
#include "qgtk/symbols.hpp"
#include "qgtk/tdqg.hpp"

using namespace qgtk;

namespace {
VectorField uniform(const Grid3& g, const Vec3& c) { return {ScalarField(g, c[0]), ScalarField(g, c[1]), ScalarField(g, c[2])}; }

TdqgProblem base_problem(const Grid3& g, const PhysicalParams& p) {
    TdqgProblem pr;
    pr.params = p;
    pr.u0 = ScalarField(g);
    pr.v = VelocitySeries::steady(uniform(g, {0, 0, 0}));
    return pr;
}
}  // namespace

TEST_CASE("no velocity and no forcing reproduces the semigroup") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g = flow_grid(16);
    TdqgProblem pr = base_problem(g, p);
    std::mt19937_64 rng(1);
    pr.u0 = random_bandlimited(g, rng, 2.0);
    pr.t_final = 0.5;
    pr.dt = 0.1;
    const TdqgSolution s = solve_tdqg(pr);
    CHECK(s.steps == 5);
    CHECK(s.ts.u.size() == 6);
    CHECK(rel_linf(s.ts.u.back(), apply_semigroup(pr.u0, 0.5, p)) < 1e-12);
    CHECK(s.V == 0.0);
}

TEST_CASE("steady forcing converges to the Duhamel integral at second order") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 2.0 * M_PI);
    const ScalarField f = sample(g, [](const Vec3& x) { return std::cos(x[0] + 2.0 * x[2]); });
    const double q = q_symbol(p, 1.0, 0.0, 2.0), T = 1.0;
    const ScalarField exact = (-std::expm1(-q * T) / q) * f;
    std::vector<double> err;
    for (double dt : {0.1, 0.05, 0.025}) {
        TdqgProblem pr = base_problem(g, p);
        pr.Fe = [f](double) { return f; };
        pr.t_final = T;
        pr.dt = dt;
        err.push_back(rel_linf(solve_tdqg(pr).ts.u.back(), exact));
    }
    CHECK(err[2] < 5e-3);
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("uniform drift translates the solution") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 2.0 * M_PI);
    const Vec3 c = {0.4, 0.0, -0.3};
    TdqgProblem pr = base_problem(g, p);
    pr.diffusion = false;
    pr.u0 = sample(g, [](const Vec3& x) { return std::sin(x[0] + x[2]); });
    pr.v = VelocitySeries::steady(uniform(g, c));
    pr.t_final = 1.0;
    pr.dt = 0.01;
    const TdqgSolution s = solve_tdqg(pr);
    const ScalarField exact = sample(g, [&](const Vec3& x) { return std::sin(x[0] - c[0] + x[2] - c[2]); });
    CHECK(rel_linf(s.ts.u.back(), exact) < 1e-4);
    CHECK(s.mean_drift < 1e-14);
}

TEST_CASE("transport with diffusion keeps the mean and does not raise L2") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g = flow_grid(16);
    TdqgProblem pr = base_problem(g, p);
    pr.u0 = gaussian(g, 1.0);
    pr.v = VelocitySeries::steady(lacunary_velocity(g, 0.05, -1, 0, 2));
    pr.t_final = 1.0;
    pr.dt = 0.05;
    const TdqgSolution s = solve_tdqg(pr);
    CHECK(s.mean_drift < 1e-12 * max_abs(pr.u0));
    for (std::size_t i = 1; i < s.l2.size(); ++i) CHECK(s.l2[i] <= s.l2[i - 1] * (1.0 + 1e-12));
    CHECK(s.max_div < 1e-10);
    CHECK(s.V > 0.0);
}

TEST_CASE("solution is linear in the data for a fixed velocity") {
    const PhysicalParams p(1, 2, 0.5);
    EstimateSettings st;
    TdqgProblem a = reference_problem(p, 16, st, 0.5);
    TdqgProblem b = a;
    b.u0 = 2.0 * a.u0;
    const auto f0 = a.Fe;
    b.Fe = [f0](double t) { return 2.0 * f0(t); };
    const TdqgSolution sa = solve_tdqg(a), sb = solve_tdqg(b);
    CHECK(rel_linf(sb.ts.u.back(), 2.0 * sa.ts.u.back()) < 1e-13);
}

TEST_CASE("large steps trip the CFL guard") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(16, 2.0 * M_PI);
    TdqgProblem pr = base_problem(g, p);
    pr.v = VelocitySeries::steady(uniform(g, {3.0, 0.0, 0.0}));
    pr.t_final = 1.0;
    pr.dt = 0.5;
    CHECK_THROWS_AS(solve_tdqg(pr), CflError);
    pr.dt = -1.0;
    CHECK_THROWS_AS(solve_tdqg(pr), std::invalid_argument);
}

TEST_CASE("QG solver rejects bad initial data and reconstructs the vorticity") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g = flow_grid(16);
    CHECK_THROWS_AS(solve_qg(gaussian(g, 1.0), p, 0.1, 0.05), std::invalid_argument);
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(solve_qg(remove_mean(random_bandlimited(g, rng, 0.95 * g.nyquist())), p, 0.1, 0.05),
                    std::invalid_argument);
    ScalarField w = remove_mean(dealias(random_bandlimited(g, rng, 2.0)));
    w *= 1.0 / max_abs(w);
    const TdqgSolution s = solve_qg(w, p, 0.2, 0.05);
    CHECK(s.recon_error < 1e-12);
    CHECK(s.l2.back() <= s.l2.front());
}

TEST_CASE("short window saturates the first hypothesis") {
    const PhysicalParams p(1, 2, 0.5);
    const double Cp = 0.3;
    const double T = short_window_length(p, Cp);
    const HypothesisCheck h = check_hypotheses(p, Cp, T, 0.0, 1.0, 1.0);
    CHECK(h.cond1_lhs == doctest::Approx(h.cond1_rhs).epsilon(1e-12));
    CHECK(h.cond1_rhs == doctest::Approx(0.5 * std::pow(p.nu0(), 0.75)));
    CHECK(std::isinf(short_window_length(p, 0.0)));
    const HypothesisCheck bad = check_hypotheses(p, Cp, 0.5 * T, 1.0, 1.0, 1.0);
    CHECK(bad.cond2_lhs == doctest::Approx(std::expm1(1.0)));
    CHECK_FALSE(bad.ok);
    CHECK(check_hypotheses(p, Cp, 0.5 * T, 0.01, 1.0, 1.0, 0.5 * T).ok == false);
    CHECK(check_hypotheses(p, Cp, 0.5 * T, 0.01, 1.0, 1.0).ok);
}

TEST_CASE("archive holds every snapshot and a manifest") {
    const PhysicalParams p(1, 2, 0.5);
    const Grid3 g(8, 2.0 * M_PI);
    TdqgProblem pr = base_problem(g, p);
    pr.u0 = sample(g, [](const Vec3& x) { return std::cos(x[1]); });
    pr.t_final = 0.3;
    pr.dt = 0.1;
    const TdqgSolution s = solve_tdqg(pr);
    const auto dir = std::filesystem::temp_directory_path() / "qgtk_archive_test";
    std::filesystem::remove_all(dir);
    write_archive(dir.string(), s, p);
    std::ifstream in(dir / "manifest.json");
    const nlohmann::json m = nlohmann::json::parse(in);
    CHECK(m["snapshots"].size() == 4);
    CHECK(m["grid"]["n"] == 8);
    CHECK(m["times"][3].get<double>() == doctest::Approx(0.3));
    const ScalarField last = read_snapshot((dir / m["snapshots"][3].get<std::string>()).string());
    CHECK(last.v == s.ts.u.back().v);
    std::filesystem::remove_all(dir);
}
