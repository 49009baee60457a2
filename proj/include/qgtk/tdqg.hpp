#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgtk/flow.hpp"
#include "qgtk/grid.hpp"
#include "qgtk/littlewood_paley.hpp"
#include "qgtk/params.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

using Forcing = std::function<ScalarField(double)>;  // empty means zero

struct CflError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HypothesisError : std::domain_error {
    using std::domain_error::domain_error;
};

struct TdqgProblem {
    PhysicalParams params;
    ScalarField u0;
    VelocitySeries v;  // ignored by solve_qg
    Forcing Fe, Ge;
    double t_final = 1.0;
    double dt = 0.05;
    int save_every = 1;
    bool diffusion = true;  // false switches Gamma off (test mode)
};

struct TdqgSolution {
    TimeSeries ts;
    double C_prime = 0.0;     // sup_t ||v||_{L^6}
    double V = 0.0;           // int ||grad v||_inf
    double max_div = 0.0;     // worst div v over the slices used
    double max_cfl = 0.0;     // dt max|v| / h
    double mean_drift = 0.0;  // max |mean u(t) - mean u0|
    double recon_error = 0.0; // QG only: worst relative L^inf reconstruction defect
    std::vector<double> l2;   // ||u(t)||_2 at the saved times
    int steps = 0;
};

// Integrating-factor midpoint scheme:
//   u* = E(dt/2) (u + dt/2 N(u, t)),  u+ = E(dt) u + dt E(dt/2) N(u*, t + dt/2)
// with E(s) = e^{s Gamma} and N(u, t) = -div(v u) + Fe + Ge.
TdqgSolution solve_tdqg(const TdqgProblem& pr);
TdqgSolution solve_qg(const ScalarField& omega0, const PhysicalParams& p, double t_final, double dt,
                      int save_every = 1);

// C with ||grad K_t||_{L^{6/5}} 4 t^{1/4} = C nu0^{-3/4} t^{1/4}; short window C C' t^{1/4} <= nu0^{3/4} / 2
double short_window_constant(const PhysicalParams& p);
double short_window_length(const PhysicalParams& p, double C_prime);

struct HypothesisCheck {
    double C = 0.0, C_prime = 0.0, T = 0.0, V = 0.0;
    double cond1_lhs = 0.0, cond1_rhs = 0.0;  // C C' T^{1/4} <= nu0^{3/4} / 2
    double cond2_lhs = 0.0, cond2_rhs = 0.0;  // e^{C_flow V} - 1 <= 1 / (C_F M_visc)
    double cond3_lhs = 0.0, cond3_rhs = 0.0;  // T + V <= C_s
    bool ok = false;
    std::string describe() const;
};
HypothesisCheck check_hypotheses(const PhysicalParams& p, double C_prime, double T, double V, double C_flow,
                                 double C_F, double C_s = kInf);

struct EstimateSettings {
    std::vector<int> ns = {32, 64};
    double amp_v = 0.01;      // per-shell velocity gradient
    double amp_lp = 0.02;     // velocity for the long L^p run (short window about 1.8)
    double sigma0 = 1.0;      // width of the initial bump
    double t_final = 2.0;     // verification window, about 1 / nu0 for the default parameters
    double long_t = 20.0;     // long run for the L^p ratio shape
    int steps = 40;
    double C_flow = 1.0;
    double C_F = 1.0;
    double C_s = 2.5;
    std::uint64_t seed = 1;
};

// Reference problem on flow_grid(n): mean-zero Gaussian bump, steady lacunary velocity, mild mean-zero forcing.
TdqgProblem reference_problem(const PhysicalParams& p, int n, const EstimateSettings& s, double t_final,
                              double forcing_amp = 0.2);

// long_t horizon at dt = 0.1, every second step saved
TdqgProblem long_run_problem(const PhysicalParams& p, int n, const EstimateSettings& s);

VerificationReport verify_lp_estimate(const TdqgProblem& pr, const std::vector<double>& p_list,
                                      const EstimateSettings& s = {});
VerificationReport verify_smoothing(const PhysicalParams& p, const std::vector<double>& r_list,
                                    const std::vector<double>& p_list, const EstimateSettings& s = {});
VerificationReport verify_apriori(const PhysicalParams& p, const std::vector<double>& s_list,
                                  const std::vector<double>& r_list, const EstimateSettings& s = {});

// solver-level checks: semigroup match, transport conservation, self-convergence, Duhamel step, QG runs
VerificationReport verify_solver(const PhysicalParams& p, int n = 32, std::uint64_t seed = 1);

// snapshots u_0000.bin ... plus manifest.json
void write_archive(const std::string& dir, const TdqgSolution& sol, const PhysicalParams& p,
                   const HypothesisCheck* hyp = nullptr);

}  // namespace qgtk
