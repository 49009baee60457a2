// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed below.
// usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qgtk/commutators.hpp"
#include "qgtk/flow.hpp"
#include "qgtk/lambda_quad.hpp"
#include "qgtk/littlewood_paley.hpp"
#include "qgtk/semigroup.hpp"
#include "qgtk/suite.hpp"
#include "qgtk/symbols.hpp"
#include "qgtk/tdqg.hpp"

using namespace qgtk;
namespace fs = std::filesystem;

namespace {

// pinned tolerances
constexpr double kSymbolTol = 1e-10;
constexpr double kSymbolSeconds = 1.0;
constexpr double kQuadRelLinf = 0.02;
constexpr double kConstantRel = 0.02;
constexpr double kOracleSeconds = 120.0;
constexpr double kHeatTol = 1e-6;
constexpr double kL1Excess = 1e-3;
constexpr double kEnvelopeGrowth = 1.1;
constexpr double kDecayC0 = 0.75;
constexpr double kDecaySpread = 1.2;
constexpr double kDetTol = 1e-6;
constexpr double kSlopeJLo = 0.75, kSlopeJHi = 1.25;
constexpr double kSlopeVLo = 0.8, kSlopeVHi = 1.2;
constexpr double kSlopeLLo = -1.25, kSlopeLHi = -0.75;
constexpr std::size_t kMinSamples = 200;
constexpr std::size_t kMinFlows = 4;
constexpr double kCrossoverFactor = 4.0;
constexpr double kTwoPath = 0.05;
constexpr double kCommutatorSeconds = 600.0;
constexpr double kPartitionTol = 1e-10;
constexpr double kBonyTol = 1e-8;
constexpr double kFdFactor = 4.0;
constexpr double kR2 = 0.9;
constexpr double kDrift = 0.15;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void need(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [miss: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int column(const VerificationReport& r, const std::string& name) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        if (r.columns[i] == name) return static_cast<int>(i);
    throw std::out_of_range(r.check + ": no column " + name);
}

std::vector<std::vector<std::string>> rows_with(const VerificationReport& r, const std::string& id) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : r.rows)
        if (row[0] == id) out.push_back(row);
    return out;
}

double num(const std::vector<std::string>& row, int col) { return std::stod(row[static_cast<std::size_t>(col)]); }

std::string g4(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", x);
    return b;
}

const PhysicalParams kBase(1.0, 2.0, 0.5);

void c1(Outcome& o) {
    const Grid3 g(64, 2.0 * M_PI * 16.0);
    const std::vector<PhysicalParams> triples = {kBase,           PhysicalParams(1, 1, 0.5), PhysicalParams(1, 2, 1.0),
                                                 PhysicalParams(0.3, 5, 0.1), PhysicalParams(2, 0.7, 0.9),
                                                 PhysicalParams(1, 3, 0.25)};
    double worst = 0.0, slowest = 0.0;
    for (const auto& p : triples) {
        const auto t0 = std::chrono::steady_clock::now();
        const VerificationReport r = verify_gamma_decomposition(p, g);
        slowest = std::max(slowest, seconds_since(t0));
        worst = std::max({worst, r.get("symbol_error"), r.get("field_error")});
        o.need(r.pass, r.notes.empty() ? "report" : r.notes.front());
        if (p.nu == p.nu_prime || p.F == 1.0) o.need(r.get("nonlocal_max") == 0.0, "non-local term vanishes");
    }
    o.need(worst < kSymbolTol, "relative error below 1e-10");
    o.need(slowest < kSymbolSeconds, "runtime below 1 s");
    o.detail << triples.size() << " triples, worst rel error " << g4(worst) << ", slowest " << g4(slowest) << " s";
}

void c2(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid3 g(64, 32.0);
    const VerificationReport r = verify_lambda_quadrature(kBase, g);
    const auto gs = rows_with(r, "gaussian-vs-spectral");
    double worst = 0.0;
    for (const auto& row : gs) worst = std::max(worst, num(row, 2));
    o.need(gs.size() >= 3, "at least 3 Gaussians");
    o.need(worst < kQuadRelLinf, "quadrature within 2%");
    const Calibration cal = calibrate_kernel_constant(kBase, g);
    const double target = 2.0 * M_PI * M_PI;
    const double inv = 1.0 / cal.C_fit;
    const double rel = std::abs(inv - target) / target;
    o.need(rel < kConstantRel, "fitted constant within 2%");
    const double dt = seconds_since(t0);
    o.need(dt < kOracleSeconds, "runtime below 2 min");
    o.detail << gs.size() << " Gaussians, worst rel Linf " << g4(worst) << "; 1/C_fit = " << g4(inv)
             << " vs 2 pi^2 = " << g4(target) << " (rel " << g4(rel) << "); C_fit = " << g4(cal.C_fit) << "; "
             << g4(dt) << " s";
}

void c3(Outcome& o) {
    RunConfig c;
    c.n = 64;
    c.params = kBase;
    const VerificationReport a = run_check("kernel-l1", c).parts.front();
    c.params = PhysicalParams(1, 1, 0.5);
    const VerificationReport b = run_check("kernel-l1", c).parts.front();
    o.need(a.get("min_value") < 0.0, "min K1 < 0");
    o.need(a.get("l1_norm") > 1.0 + kL1Excess, "L1 norm above 1 + 1e-3");
    o.need(b.get("heat_kernel_diff") < kHeatTol, "heat kernel match");
    o.need(std::abs(b.get("l1_norm") - 1.0) < kHeatTol, "L1 norm equals 1");
    for (const auto* r : {&a, &b})
        o.need(r->get("envelope_double_box") <= kEnvelopeGrowth * r->get("envelope_box"), "envelope bounded");
    o.detail << "nu != nu': min " << g4(a.get("min_value")) << ", L1 " << g4(a.get("l1_norm")) << ", envelope "
             << g4(a.get("envelope_box")) << " -> " << g4(a.get("envelope_double_box")) << "; nu = nu': heat diff "
             << g4(b.get("heat_kernel_diff")) << ", L1 - 1 = " << g4(b.get("l1_norm") - 1.0);
}

void c4(Outcome& o) {
    SemigroupCheckOptions opt;
    opt.j_list = {0, 1, 2, 3};
    const VerificationReport r = verify_semigroup_bounds(kBase, grid_for_dyadic(64, 3), opt);
    const int jc = column(r, "j"), mc = column(r, "measured"), pc = column(r, "p");
    double worst_margin = kInf;
    for (const auto& row : rows_with(r, "decay-rate")) {
        const int j = std::stoi(row[static_cast<std::size_t>(jc)]);
        const double bound = kDecayC0 * kDecayC0 / 8.0 * kBase.nu0() * std::ldexp(1.0, 2 * j);
        worst_margin = std::min(worst_margin, num(row, mc) / bound);
        o.need(num(row, mc) >= bound, "rate at j=" + std::to_string(j) + " p=" + row[static_cast<std::size_t>(pc)]);
    }
    double spread = 0.0;
    for (const auto& row : rows_with(r, "decay-scaling")) spread = std::max(spread, num(row, mc));
    o.need(spread <= kDecaySpread, "rho/4^j within 20%");
    o.detail << "min rho/bound " << g4(worst_margin) << ", worst rho/4^j spread " << g4(spread);
}

void c5(Outcome& o) {
    const Grid3 g = flow_grid(32);
    const FlowMap f = integrate_flow(VelocitySeries::steady(lacunary_velocity(g, 0.02, -1, 2, 1)), 3, 1.0, 0.05);
    const VerificationReport b = verify_flow_bounds(f);
    const VerificationReport s = verify_flow_scaling(g, 1);
    const double det = std::max(f.det_defect, s.get("det_defect"));
    const double d2 = s.get("D2_slope"), dev = s.get("deviation_slope");
    o.need(det < kDetTol, "volume preservation");
    o.need(d2 >= kSlopeJLo && d2 <= kSlopeJHi, "D2 psi slope in j");
    o.need(dev >= kSlopeVLo && dev <= kSlopeVHi, "deviation slope in V");
    o.need(b.pass && s.pass, "flow reports");
    o.detail << "det defect " << g4(det) << ", D2 psi slope " << g4(d2) << ", deviation slope " << g4(dev);
}

void c6(Outcome& o) {
    RunConfig c;
    c.n = 32;
    c.params = kBase;
    const CheckResult res = run_check("mx-properties", c);
    const VerificationReport& r = res.parts.front();
    const int mc = column(r, "measured");
    const auto samples = rows_with(r, "samples");
    std::size_t fewest = static_cast<std::size_t>(-1);
    for (const auto& row : samples) fewest = std::min(fewest, static_cast<std::size_t>(num(row, mc)));
    o.need(samples.size() >= kMinFlows, "at least 4 flows");
    o.need(fewest >= kMinSamples, "200 samples per flow");
    bool points = true;
    for (int k = 1; k <= 9; ++k)
        for (const auto& row : rows_with(r, "point-" + std::to_string(k))) points = points && row.back() == "1";
    o.need(points, "nine bounds with one C");
    double lo = kInf, hi = 0.0;
    for (const auto& row : rows_with(r, "crossover")) {
        lo = std::min(lo, num(row, mc));
        hi = std::max(hi, num(row, mc));
    }
    o.need(lo >= 1.0 / kCrossoverFactor && hi <= kCrossoverFactor, "crossover at 2^-j within a factor 4");
    o.detail << samples.size() << " flows, >= " << fewest << " samples, C = " << g4(r.get("C_global"))
             << ", crossover 2^j|y| in [" << g4(lo) << ", " << g4(hi) << "]";
}

void c7(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    CommutatorScalingSettings s;
    s.n = 64;
    const VerificationReport r = verify_commutator_scaling(kBase, s);
    const double dt = seconds_since(t0);
    const int mc = column(r, "measured");
    auto slopes = [&](const std::string& id, double lo, double hi, const std::string& what) {
        std::ostringstream os;
        for (const auto& row : rows_with(r, id)) {
            const double v = num(row, mc);
            os << g4(v) << " ";
            o.need(v >= lo && v <= hi, what);
        }
        return os.str();
    };
    const std::string sj = slopes("Ij-j-slope", kSlopeJLo, kSlopeJHi, "I_j slope in j");
    const std::string sv = slopes("Ij-V-slope", kSlopeVLo, kSlopeVHi, "I_j slope in e^{CV} - 1");
    const std::string sl = slopes("S-l-slope", kSlopeLLo, kSlopeLHi, "S slope in l");
    for (const char* id : {"vanish-identity", "vanish-translation", "vanish-rotation90", "vanish-nonlocal-nu",
                           "vanish-nonlocal-F1"}) {
        const auto rows = rows_with(r, id);
        o.need(!rows.empty() && rows.front().back() == "1", id);
    }
    double tp = 0.0;
    for (const auto& row : rows_with(r, "two-path")) tp = std::max(tp, num(row, mc));
    o.need(tp <= kTwoPath, "two-path agreement 5%");
    o.need(dt < kCommutatorSeconds, "runtime below 10 min");
    o.detail << "j slopes " << sj << "| V slopes " << sv << "| l slopes " << sl << "| two-path " << g4(tp) << " | "
             << g4(dt) << " s";
}

void c8(Outcome& o) {
    const VerificationReport r = verify_littlewood_paley(grid_for_dyadic(64, 4), 1);
    const int mc = column(r, "measured");
    double pu = 0.0, bony = 0.0, fd = 0.0;
    for (const auto& row : rows_with(r, "partition-of-unity")) pu = std::max(pu, num(row, mc));
    for (const auto& row : rows_with(r, "bony-reconstruction")) bony = std::max(bony, num(row, mc));
    const auto fds = rows_with(r, "fd-equivalence");
    for (const auto& row : fds) fd = std::max(fd, num(row, mc));
    const auto mk = rows_with(r, "minkowski");
    bool mk_ok = mk.size() >= 2;
    for (const auto& row : mk) mk_ok = mk_ok && row.back() == "1";
    o.need(pu < kPartitionTol, "partition of unity");
    o.need(bony < kBonyTol, "Bony reconstruction");
    o.need(fds.size() >= 4 && fd <= kFdFactor, "fd-vs-dyadic factor");
    o.need(mk_ok, "Minkowski both ways");
    o.detail << "partition " << g4(pu) << ", Bony " << g4(bony) << ", fd spread " << g4(fd) << " over " << fds.size()
             << " s-values (j up to 4), Minkowski rows " << mk.size();
}

void c9(Outcome& o) {
    RunConfig c;
    c.n = 64;
    c.params = kBase;
    const VerificationReport lp = run_check("lp-estimate", c).parts.front();
    const VerificationReport sm = run_check("smoothing", c).parts.front();
    const VerificationReport ap = run_check("apriori", c).parts.front();
    double r2 = 1.0, dfit = 0.0;
    std::size_t fits = 0;
    for (const auto& [k, v] : lp.summary) {
        if (k.rfind("r2_p", 0) == 0) {
            r2 = std::min(r2, v);
            ++fits;
        }
        if (k.rfind("D_fit_p", 0) == 0) dfit = std::max(dfit, v);
    }
    o.need(fits >= 3, "fits for three exponents");
    o.need(lp.pass, "L^p estimate report");
    o.need(r2 > kR2, "R^2 above 0.9");
    o.need(sm.pass && ap.pass, "smoothing and a priori reports");
    const double d1 = sm.get("max_refinement_drift"), d2 = ap.get("max_refinement_drift");
    o.need(d1 < kDrift && d2 < kDrift, "refinement drift below 15%");
    for (const auto* r : {&lp, &sm, &ap})
        for (const auto& n : r->notes) o.detail << " [" << r->check << ": " << n << "]";
    o.detail << "min R^2 " << g4(r2) << " over " << fits << " exponents, max D_fit " << g4(dfit) << ", drift " << g4(d1) << " / "
             << g4(d2) << ", a priori spread " << g4(ap.get("sweep_spread"));
}

void c10(Outcome& o) {
    RunConfig c;
    c.n = 32;
    c.params = kBase;
    c.suite = {"gamma-decomposition", "kernel-l1", "semigroup-bounds", "lp-estimate"};
    const fs::path base = fs::temp_directory_path() / "qgtk_acceptance_determinism";
    fs::remove_all(base);
    write_outputs((base / "a").string(), run_suite(c), c);
    write_outputs((base / "b").string(), run_suite(c), c);
    std::size_t files = 0, diff = 0;
    for (const auto& e : fs::directory_iterator(base / "a")) {
        const fs::path other = base / "b" / e.path().filename();
        std::ifstream x(e.path(), std::ios::binary), y(other, std::ios::binary);
        std::ostringstream sx, sy;
        sx << x.rdbuf();
        sy << y.rdbuf();
        ++files;
        if (!fs::exists(other) || sx.str() != sy.str()) ++diff;
    }
    o.need(files > 0 && diff == 0, "byte-identical reports");
    o.detail << files << " files compared, " << diff << " differ";
    fs::remove_all(base);
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments select criteria by number
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"symbol identity", c1},         {"quadrature oracle and kernel constant", c2},
        {"semigroup kernel profile", c3}, {"localized decay rate", c4},
        {"flow bounds", c5},             {"displacement suite", c6},
        {"commutator scaling", c7},      {"Besov machinery", c8},
        {"estimate ratios", c9},         {"determinism", c10},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(k + 1)) == only.end()) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [error: " << e.what() << "]";
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %zu (%s): %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.str().c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
