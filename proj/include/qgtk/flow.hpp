#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qgtk/grid.hpp"
#include "qgtk/interp.hpp"
#include "qgtk/params.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

using Mat3 = std::array<double, 9>;  // row-major
using VectorField = std::array<ScalarField, 3>;

// Velocity slices on a uniform or irregular time grid; one slice means steady.
struct VelocitySeries {
    std::vector<double> t;
    std::vector<VectorField> v;

    static VelocitySeries steady(VectorField v0);
    VectorField at(double time) const;  // piecewise-linear in time
};

// Few-mode trigonometric vector field with value and gradient evaluated per point from one
// exponential per mode; falls back to per-component interpolants if the spectrum is dense.
class TrigVectorField {
public:
    explicit TrigVectorField(const VectorField& v);
    void eval(const Vec3& x, Vec3& u, Mat3& G) const;  // G[i*3+k] = d_k u_i
    bool sparse() const { return sparse_; }

private:
    Grid3 grid_;
    bool sparse_ = false;
    std::vector<Vec3> k_;
    std::vector<std::array<cplx, 3>> c_;
    std::vector<SpectralInterpolant> dense_;  // 3 values then 9 gradient entries
};

struct FlowMap {
    Grid3 grid;
    int j = 0;
    double t_final = 0.0;
    double dt = 0.0;
    double V = 0.0;  // int_0^t ||grad v||_inf with the unregularized velocity
    std::vector<double> V_history;
    std::vector<Vec3> forward;   // psi(x) per grid point, unwrapped
    std::vector<Vec3> inverse;   // psi^{-1}(x)
    std::vector<Mat3> jacobian;  // D psi
    std::vector<Mat3> inverse_jacobian;
    bool periodic_displacement = true;  // psi - id periodic; false for the grid rotation
    double det_defect = 0.0;            // max |det D psi - 1| over both directions
    double roundtrip_error = 0.0;       // max |psi(psi^{-1}(x)) - x| / L

    static FlowMap identity(const Grid3& g, int j = 0);
    static FlowMap translation(const Grid3& g, const Vec3& a, int j = 0);
    // exact grid rotation (x1, x2, x3) -> (-x2, x1, x3)
    static FlowMap rotation90(const Grid3& g, int j = 0);

    // displacement psi^{+-1}(x) - x as fields
    VectorField displacement(bool inverse_map = false) const;
};

// RK4 on particles from every grid point with the variational equation for the Jacobian.
// The advecting field is S_{j-1} v; dt is shrunk to divide t_final.
FlowMap integrate_flow(const VelocitySeries& v, int j, double t_final, double dt);

double max_divergence(const VectorField& v);
double max_gradient_norm(const VectorField& v);  // max over points of the Frobenius norm

// Divergence-free ABC-type field with one shell per dyadic band: wavenumber mu 2^q along the axes,
// q = qmin..qmax, per-shell gradient of order amp (doubled on the lowest shell so that
// sums of 2^q over the retained shells are exactly proportional to 2^j).
VectorField lacunary_velocity(const Grid3& g, double amp, int qmin, int qmax, std::uint64_t seed,
                              double mu = 1.4);
// Divergence-free ABC-type field on every axis wavenumber m delta <= kmax, equal gradient weight per octave.
VectorField broadband_velocity(const Grid3& g, double amp, double kmax, std::uint64_t seed);
// Grid whose lattice holds the wavenumbers 1.4 * 2^q for q >= -1.
Grid3 flow_grid(int n);
// Rigid horizontal rotation of rate omega inside |x_h| < L/8, smoothly switched off by L/4.
VectorField windowed_rotation(const Grid3& g, double omega);

struct FlowNorms {
    double V = 0.0;
    double Dpsi = 0.0, Dpsi_inv = 0.0;          // max operator norm
    double Dpsi_dev = 0.0, Dpsi_inv_dev = 0.0;  // max operator norm of D psi - I
    double D2 = 0.0, D3 = 0.0;                  // forward map, Frobenius
    double D2_inv = 0.0, D3_inv = 0.0;
};
FlowNorms measure_flow_norms(const FlowMap& f);

// Single-flow checks: volume preservation, round trip, e^{CV} shapes with fitted C.
VerificationReport verify_flow_bounds(const FlowMap& f);
// V-sweep and j-sweep regressions on lacunary flows.
VerificationReport verify_flow_scaling(const Grid3& g, std::uint64_t seed = 1);

struct MxRecord {
    Vec3 x{}, y{};
    Vec3 m_plus{}, m_minus{};  // m_x(y), m_x(-y)
    double Yp = 0.0, Ym = 0.0, YpF = 0.0, YmF = 0.0;
    bool in_window = true;
};

// m_x(y) = psi^{-1}(x) - psi^{-1}(x+y) from the interpolated inverse displacement.
class MxEvaluator {
public:
    explicit MxEvaluator(const FlowMap& f);
    MxRecord at(const Vec3& x, const Vec3& y, double F = 1.0) const;
    const FlowMap& flow() const { return *flow_; }

private:
    const FlowMap* flow_;
    std::vector<SpectralInterpolant> d_;  // inverse displacement components
};

std::vector<MxRecord> evaluate_mx(const FlowMap& f, const Vec3& x, const std::vector<Vec3>& ys,
                                  double F = 1.0);

struct MxSampleSet {
    std::vector<Vec3> xs;
    std::vector<Vec3> ys;  // used for every x
};
// base points in the interior half-box, |y| log-spaced over [lo, hi] 2^{-j} with random directions
MxSampleSet make_mx_samples(const FlowMap& f, int n_x, int n_y, std::uint64_t seed, double lo = 1.0 / 16.0,
                            double hi = 16.0);

struct MxFit {
    double C = 0.0;                     // one constant for all nine points
    std::array<double, 9> C_point{};    // smallest C per point
    double crossover = 0.0;             // |y| where point 9 leaves its linear regime, times 2^j
    double slope_below = 0.0, slope_above = 0.0;
    std::size_t n_samples = 0;
};
// evaluates all nine point quantities; C = max over points and samples
MxFit fit_mx(const FlowMap& f, const MxSampleSet& s, double F);

VerificationReport verify_mx_properties(const std::vector<FlowMap>& flows, double F, int n_x = 20, int n_y = 20,
                                        std::uint64_t seed = 1);

// |y|^4 |K(y) - K(m_x(-y))| and |y|^4 |K(m_x(y)) - K(m_x(-y))| / min(1, 2^j |y|), sup over samples
struct KernelDifference {
    double first = 0.0, second = 0.0;
    double small_y_ratio = 0.0;  // second / first averaged over |y| < 2^{-j} / 4
};
KernelDifference kernel_difference_sup(const PhysicalParams& p, const FlowMap& f, const MxSampleSet& s);
VerificationReport verify_kernel_difference_bounds(const PhysicalParams& p, const std::vector<FlowMap>& flows,
                                                   double C, std::uint64_t seed = 1);

}  // namespace qgtk
