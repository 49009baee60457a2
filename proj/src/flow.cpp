#include "qgtk/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qgtk/fft.hpp"
#include "qgtk/field_ops.hpp"
#include "qgtk/lambda_quad.hpp"
#include "qgtk/littlewood_paley.hpp"
#include "qgtk/stats.hpp"

namespace qgtk {

namespace {

constexpr double kPi = std::numbers::pi;

Mat3 eye3() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 matmul(const Mat3& A, const Mat3& B) {
    Mat3 C{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            double s = 0.0;
            for (int m = 0; m < 3; ++m) s += A[i * 3 + m] * B[m * 3 + k];
            C[i * 3 + k] = s;
        }
    return C;
}

double det3(const Mat3& A) {
    return A[0] * (A[4] * A[8] - A[5] * A[7]) - A[1] * (A[3] * A[8] - A[5] * A[6]) +
           A[2] * (A[3] * A[7] - A[4] * A[6]);
}

// largest singular value via the characteristic polynomial of A^T A
double op_norm(const Mat3& A) {
    Mat3 B{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            double s = 0.0;
            for (int m = 0; m < 3; ++m) s += A[m * 3 + i] * A[m * 3 + k];
            B[i * 3 + k] = s;
        }
    const double p1 = B[1] * B[1] + B[2] * B[2] + B[5] * B[5];
    const double q = (B[0] + B[4] + B[8]) / 3.0;
    double lmax;
    if (p1 < 1e-300) {
        lmax = std::max({B[0], B[4], B[8]});
    } else {
        const double p2 = (B[0] - q) * (B[0] - q) + (B[4] - q) * (B[4] - q) + (B[8] - q) * (B[8] - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        Mat3 Cm = B;
        Cm[0] -= q;
        Cm[4] -= q;
        Cm[8] -= q;
        for (auto& x : Cm) x /= p;
        const double r = std::clamp(det3(Cm) / 2.0, -1.0, 1.0);
        lmax = q + 2.0 * p * std::cos(std::acos(r) / 3.0);
    }
    return std::sqrt(std::max(lmax, 0.0));
}

double norm3(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

Vec3 vsub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 vadd(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

VectorField regularize(const VectorField& v, int j) {
    return {low_cut(v[0], j - 1), low_cut(v[1], j - 1), low_cut(v[2], j - 1)};
}

// Advects points (and optionally Jacobians) through slices in forward or reversed time.
struct Integrator {
    std::vector<double> t;
    std::vector<TrigVectorField> f;

    void eval(double time, const Vec3& x, Vec3& u, Mat3& G) const {
        if (f.size() == 1) {
            f[0].eval(x, u, G);
            return;
        }
        std::size_t k = 0;
        if (time <= t.front()) k = 0;
        else if (time >= t.back()) k = t.size() - 2;
        else k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), time) - t.begin()) - 1;
        k = std::min(k, t.size() - 2);
        const double th = std::clamp((time - t[k]) / (t[k + 1] - t[k]), 0.0, 1.0);
        Vec3 u0, u1;
        Mat3 G0, G1;
        f[k].eval(x, u0, G0);
        f[k + 1].eval(x, u1, G1);
        for (int i = 0; i < 3; ++i) u[i] = (1.0 - th) * u0[i] + th * u1[i];
        for (int i = 0; i < 9; ++i) G[i] = (1.0 - th) * G0[i] + th * G1[i];
    }

    // sign = +1: forward from t0; sign = -1: s -> x(t_final - s) with reversed velocity
    void run(std::vector<Vec3>& X, std::vector<Mat3>* J, double t_final, int nsteps, int sign) const {
        const double h = t_final / nsteps;
        const std::size_t N = X.size();
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < N; ++i) {
            Vec3 x = X[i];
            Mat3 M = J ? (*J)[i] : eye3();
            for (int s = 0; s < nsteps; ++s) {
                const double s0 = s * h;
                auto rhs = [&](double ss, const Vec3& xx, const Mat3& MM, Vec3& dx, Mat3& dM) {
                    const double time = sign > 0 ? ss : t_final - ss;
                    Vec3 u;
                    Mat3 G;
                    eval(time, xx, u, G);
                    for (int c = 0; c < 3; ++c) dx[c] = sign * u[c];
                    if (J) {
                        dM = matmul(G, MM);
                        for (auto& m : dM) m *= sign;
                    }
                };
                Vec3 k1, k2, k3, k4, xt;
                Mat3 m1{}, m2{}, m3{}, m4{}, Mt{};
                rhs(s0, x, M, k1, m1);
                for (int c = 0; c < 3; ++c) xt[c] = x[c] + 0.5 * h * k1[c];
                if (J) for (int c = 0; c < 9; ++c) Mt[c] = M[c] + 0.5 * h * m1[c];
                rhs(s0 + 0.5 * h, xt, Mt, k2, m2);
                for (int c = 0; c < 3; ++c) xt[c] = x[c] + 0.5 * h * k2[c];
                if (J) for (int c = 0; c < 9; ++c) Mt[c] = M[c] + 0.5 * h * m2[c];
                rhs(s0 + 0.5 * h, xt, Mt, k3, m3);
                for (int c = 0; c < 3; ++c) xt[c] = x[c] + h * k3[c];
                if (J) for (int c = 0; c < 9; ++c) Mt[c] = M[c] + h * m3[c];
                rhs(s0 + h, xt, Mt, k4, m4);
                for (int c = 0; c < 3; ++c) x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
                if (J)
                    for (int c = 0; c < 9; ++c) M[c] += h / 6.0 * (m1[c] + 2.0 * m2[c] + 2.0 * m3[c] + m4[c]);
            }
            X[i] = x;
            if (J) (*J)[i] = M;
        }
    }
};

std::vector<Vec3> grid_points(const Grid3& g) {
    std::vector<Vec3> pts(g.size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = g.point(i);
    return pts;
}

}  // namespace

VelocitySeries VelocitySeries::steady(VectorField v0) {
    VelocitySeries s;
    s.t = {0.0};
    s.v = {std::move(v0)};
    return s;
}

VectorField VelocitySeries::at(double time) const {
    if (v.empty()) throw std::invalid_argument("empty velocity series");
    if (v.size() == 1 || time <= t.front()) return v.front();
    if (time >= t.back()) return v.back();
    const std::size_t k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), time) - t.begin()) - 1;
    const double th = (time - t[k]) / (t[k + 1] - t[k]);
    VectorField out = v[k];
    for (int c = 0; c < 3; ++c) {
        out[c] *= 1.0 - th;
        ScalarField b = v[k + 1][c];
        b *= th;
        out[c] += b;
    }
    return out;
}

TrigVectorField::TrigVectorField(const VectorField& v) : grid_(v[0].grid) {
    const Grid3& g = grid_;
    std::array<SpectralField, 3> s = {transform(v[0]), transform(v[1]), transform(v[2])};
    double cmax = 0.0;
    for (const auto& sc : s)
        for (const auto& c : sc.c) cmax = std::max(cmax, std::abs(c));
    const double thresh = 1e-14 * cmax;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(s[0].c[i]) > thresh || std::abs(s[1].c[i]) > thresh || std::abs(s[2].c[i]) > thresh)
            idx.push_back(i);
    sparse_ = idx.size() <= static_cast<std::size_t>(SpectralInterpolant::kSparseLimit);
    if (sparse_) {
        const int n = g.n;
        for (std::size_t i : idx) {
            const int a = static_cast<int>(i / (static_cast<std::size_t>(n) * n));
            const int b = static_cast<int>((i / n) % n);
            const int e = static_cast<int>(i % n);
            k_.push_back({g.wavenumber(a), g.wavenumber(b), g.wavenumber(e)});
            c_.push_back({s[0].c[i], s[1].c[i], s[2].c[i]});
        }
        return;
    }
    for (int c = 0; c < 3; ++c) dense_.emplace_back(s[c]);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < 3; ++k) dense_.emplace_back(derivative(s[c], k));
}

void TrigVectorField::eval(const Vec3& x, Vec3& u, Mat3& G) const {
    if (!sparse_) {
        for (int c = 0; c < 3; ++c) u[c] = dense_[c](x);
        for (int c = 0; c < 9; ++c) G[c] = dense_[3 + c](x);
        return;
    }
    u = {0.0, 0.0, 0.0};
    G.fill(0.0);
    const double h = 0.5 * grid_.L;
    const Vec3 xs = {x[0] + h, x[1] + h, x[2] + h};
    for (std::size_t m = 0; m < k_.size(); ++m) {
        const Vec3& k = k_[m];
        const cplx e = std::polar(1.0, k[0] * xs[0] + k[1] * xs[1] + k[2] * xs[2]);
        for (int c = 0; c < 3; ++c) {
            const cplx ce = c_[m][c] * e;
            u[c] += ce.real();
            // d/dx_k Re(c e^{i k.x}) = -k_k Im(c e^{i k.x})
            for (int d = 0; d < 3; ++d) G[c * 3 + d] -= k[d] * ce.imag();
        }
    }
}

double max_divergence(const VectorField& v) { return max_abs(divergence(v)); }

double max_gradient_norm(const VectorField& v) {
    const Grid3& g = v[0].grid;
    ScalarField acc(g, 0.0);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < 3; ++k) {
            const ScalarField d = spectral_derivative(v[c], k);
            for (std::size_t i = 0; i < g.size(); ++i) acc.v[i] += d.v[i] * d.v[i];
        }
    return std::sqrt(max_abs(acc));
}

FlowMap FlowMap::identity(const Grid3& g, int j) {
    FlowMap f;
    f.grid = g;
    f.j = j;
    f.forward = grid_points(g);
    f.inverse = f.forward;
    f.jacobian.assign(g.size(), eye3());
    f.inverse_jacobian = f.jacobian;
    f.V_history = {0.0};
    return f;
}

FlowMap FlowMap::translation(const Grid3& g, const Vec3& a, int j) {
    FlowMap f = identity(g, j);
    for (auto& x : f.forward) x = vadd(x, a);
    for (auto& x : f.inverse) x = vsub(x, a);
    return f;
}

FlowMap FlowMap::rotation90(const Grid3& g, int j) {
    FlowMap f = identity(g, j);
    f.periodic_displacement = false;
    for (auto& x : f.forward) x = {-x[1], x[0], x[2]};
    for (auto& x : f.inverse) x = {x[1], -x[0], x[2]};
    const Mat3 R = {0, -1, 0, 1, 0, 0, 0, 0, 1};
    const Mat3 Rt = {0, 1, 0, -1, 0, 0, 0, 0, 1};
    f.jacobian.assign(g.size(), R);
    f.inverse_jacobian.assign(g.size(), Rt);
    return f;
}

VectorField FlowMap::displacement(bool inverse_map) const {
    if (!periodic_displacement) throw std::logic_error("displacement of this map is not periodic");
    VectorField d = {ScalarField(grid), ScalarField(grid), ScalarField(grid)};
    const auto& P = inverse_map ? inverse : forward;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec3 x = grid.point(i);
        for (int c = 0; c < 3; ++c) d[c].v[i] = P[i][c] - x[c];
    }
    return d;
}

FlowMap integrate_flow(const VelocitySeries& v, int j, double t_final, double dt) {
    if (v.v.empty() || v.t.size() != v.v.size()) throw std::invalid_argument("malformed velocity series");
    if (!(t_final >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("flow needs t_final >= 0 and dt > 0");
    const Grid3 g = v.v[0][0].grid;
    Integrator integ;
    integ.t = v.t;
    double cfl = 0.0;
    for (const auto& slice : v.v) {
        for (int c = 0; c < 3; ++c) require_same_grid(slice[c].grid, g);
        const double scale = std::max(1.0, max_gradient_norm(slice));
        if (max_divergence(slice) > 1e-8 * scale) throw std::invalid_argument("velocity is not divergence-free");
        const VectorField sv = regularize(slice, j);
        cfl = std::max(cfl, max_gradient_norm(sv));
        integ.f.emplace_back(sv);
    }
    if (dt * cfl > 0.1 * (1.0 + 1e-12)) throw std::invalid_argument("flow time step violates dt <= 0.1 / |grad S v|");

    FlowMap f;
    f.grid = g;
    f.j = j;
    f.t_final = t_final;
    const int nsteps = std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-9)));
    f.dt = t_final / nsteps;

    f.V_history.assign(1, 0.0);
    double prev = max_gradient_norm(v.at(0.0));
    for (int s = 1; s <= nsteps; ++s) {
        const double cur = v.v.size() == 1 ? prev : max_gradient_norm(v.at(s * f.dt));
        f.V_history.push_back(f.V_history.back() + 0.5 * f.dt * (prev + cur));
        prev = cur;
    }
    f.V = f.V_history.back();

    f.forward = grid_points(g);
    f.jacobian.assign(g.size(), eye3());
    integ.run(f.forward, &f.jacobian, t_final, nsteps, +1);
    f.inverse = grid_points(g);
    f.inverse_jacobian.assign(g.size(), eye3());
    integ.run(f.inverse, &f.inverse_jacobian, t_final, nsteps, -1);

    for (std::size_t i = 0; i < g.size(); ++i)
        f.det_defect = std::max({f.det_defect, std::abs(det3(f.jacobian[i]) - 1.0),
                                 std::abs(det3(f.inverse_jacobian[i]) - 1.0)});
    std::vector<Vec3> back = f.inverse;
    integ.run(back, nullptr, t_final, nsteps, +1);
    for (std::size_t i = 0; i < g.size(); ++i)
        f.roundtrip_error = std::max(f.roundtrip_error, norm3(vsub(back[i], g.point(i))) / g.L);
    return f;
}

Grid3 flow_grid(int n) { return Grid3(n, 2.0 * kPi / 0.7); }

VectorField lacunary_velocity(const Grid3& g, double amp, int qmin, int qmax, std::uint64_t seed, double mu) {
    if (qmax < qmin) throw std::invalid_argument("empty shell range");
    const double delta = 2.0 * kPi / g.L;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 2.0 * kPi);
    VectorField v = {ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0)};
    for (int q = qmin; q <= qmax; ++q) {
        const double kappa = mu * std::ldexp(1.0, q);
        const double m = kappa / delta;
        if (std::abs(m - std::round(m)) > 1e-9 || m < 0.5)
            throw std::invalid_argument("shell wavenumber not on the lattice");
        if (kappa > g.nyquist() * (2.0 / 3.0)) throw std::invalid_argument("shell wavenumber above resolved band");
        const double A = (q == qmin ? 2.0 : 1.0) * amp / kappa;
        std::array<double, 6> th;
        for (auto& t : th) t = U(rng);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 x = g.point(i);
            v[0].v[i] += A * (std::sin(kappa * x[2] + th[0]) + std::cos(kappa * x[1] + th[1]));
            v[1].v[i] += A * (std::sin(kappa * x[0] + th[2]) + std::cos(kappa * x[2] + th[3]));
            v[2].v[i] += A * (std::sin(kappa * x[1] + th[4]) + std::cos(kappa * x[0] + th[5]));
        }
    }
    return v;
}

VectorField broadband_velocity(const Grid3& g, double amp, double kmax, std::uint64_t seed) {
    const double delta = 2.0 * kPi / g.L;
    if (kmax > g.nyquist() * (2.0 / 3.0)) throw std::invalid_argument("kmax above resolved band");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 2.0 * kPi);
    VectorField v = {ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0)};
    const int M = static_cast<int>(std::floor(kmax / delta + 1e-9));
    for (int m = 1; m <= M; ++m) {
        const double kappa = m * delta;
        const double A = amp / (kappa * m);
        std::array<double, 6> th;
        for (auto& t : th) t = U(rng);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 x = g.point(i);
            v[0].v[i] += A * (std::sin(kappa * x[2] + th[0]) + std::cos(kappa * x[1] + th[1]));
            v[1].v[i] += A * (std::sin(kappa * x[0] + th[2]) + std::cos(kappa * x[2] + th[3]));
            v[2].v[i] += A * (std::sin(kappa * x[1] + th[4]) + std::cos(kappa * x[0] + th[5]));
        }
    }
    return v;
}

VectorField windowed_rotation(const Grid3& g, double omega) {
    const double L = g.L;
    const ScalarField phi = sample(g, [&](const Vec3& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return 0.5 * omega * r2 * smooth_cutoff(std::sqrt(r2), L / 8.0, L / 4.0);
    });
    ScalarField v1 = spectral_derivative(phi, 1);
    v1 *= -1.0;
    return {v1, spectral_derivative(phi, 0), ScalarField(g, 0.0)};
}

FlowNorms measure_flow_norms(const FlowMap& f) {
    FlowNorms out;
    out.V = f.V;
    for (std::size_t i = 0; i < f.jacobian.size(); ++i) {
        Mat3 d = f.jacobian[i], di = f.inverse_jacobian[i];
        out.Dpsi = std::max(out.Dpsi, op_norm(d));
        out.Dpsi_inv = std::max(out.Dpsi_inv, op_norm(di));
        d[0] -= 1.0; d[4] -= 1.0; d[8] -= 1.0;
        di[0] -= 1.0; di[4] -= 1.0; di[8] -= 1.0;
        out.Dpsi_dev = std::max(out.Dpsi_dev, op_norm(d));
        out.Dpsi_inv_dev = std::max(out.Dpsi_inv_dev, op_norm(di));
    }
    if (!f.periodic_displacement) return out;  // linear map: higher derivatives vanish
    const Grid3& g = f.grid;
    for (int inv = 0; inv < 2; ++inv) {
        const VectorField d = f.displacement(inv == 1);
        ScalarField a2(g, 0.0), a3(g, 0.0);
        for (int c = 0; c < 3; ++c) {
            const SpectralField s = transform(d[c]);
            for (int a = 0; a < 3; ++a) {
                const SpectralField sa = derivative(s, a);
                for (int b = 0; b < 3; ++b) {
                    const SpectralField sab = derivative(sa, b);
                    const ScalarField dab = inverse_transform(sab);
                    for (std::size_t i = 0; i < g.size(); ++i) a2.v[i] += dab.v[i] * dab.v[i];
                    for (int e = 0; e < 3; ++e) {
                        const ScalarField dabe = inverse_transform(derivative(sab, e));
                        for (std::size_t i = 0; i < g.size(); ++i) a3.v[i] += dabe.v[i] * dabe.v[i];
                    }
                }
            }
        }
        const double n2 = std::sqrt(max_abs(a2)), n3 = std::sqrt(max_abs(a3));
        if (inv == 0) { out.D2 = n2; out.D3 = n3; }
        else { out.D2_inv = n2; out.D3_inv = n3; }
    }
    return out;
}

VerificationReport verify_flow_bounds(const FlowMap& f) {
    VerificationReport rep("flow-bounds", {"check_id", "j", "V", "measured", "bound", "fitted_constant", "pass"});
    const FlowNorms nm = measure_flow_norms(f);
    auto row = [&](const std::string& id, double m, double b, double C, bool ok) {
        rep.add_row({id, fmt_int(f.j), fmt_num(f.V), fmt_num(m), fmt_num(b), fmt_num(C), fmt_bool(ok)});
        rep.require(ok, id);
    };
    row("det-defect", f.det_defect, 1e-6, 0.0, f.det_defect < 1e-6);
    row("roundtrip", f.roundtrip_error, 1e-6, 0.0, f.roundtrip_error < 1e-6);
    if (f.V <= 0.0) {
        const double dev = std::max({nm.Dpsi_dev, nm.Dpsi_inv_dev, nm.D2, nm.D3});
        row("zero-flow-deviation", dev, 1e-12, 0.0, dev <= 1e-12);
        return rep;
    }
    // smallest C with |D psi^{+-1}| <= e^{CV} and |D psi^{+-1} - I| <= e^{CV} - 1
    const double C1 = std::max(std::log(nm.Dpsi), std::log(nm.Dpsi_inv)) / f.V;
    const double C2 = std::max(std::log1p(nm.Dpsi_dev), std::log1p(nm.Dpsi_inv_dev)) / f.V;
    const double C = std::max({C1, C2, 0.0});
    rep.set("C_fit", C);
    const double e = std::exp(C * f.V);
    row("Dpsi", std::max(nm.Dpsi, nm.Dpsi_inv), e, C, std::isfinite(C));
    row("Dpsi-minus-I", std::max(nm.Dpsi_dev, nm.Dpsi_inv_dev), e - 1.0, C, std::isfinite(C));
    // k >= 2: |D^k psi| <= C' 2^{(k-1)j} (e^{CV} - 1)
    const double C2k = std::max(nm.D2, nm.D2_inv) / (std::ldexp(1.0, f.j) * (e - 1.0));
    const double C3k = std::max(nm.D3, nm.D3_inv) / (std::ldexp(1.0, 2 * f.j) * (e - 1.0));
    row("D2psi", std::max(nm.D2, nm.D2_inv), std::ldexp(1.0, f.j) * (e - 1.0), C2k, std::isfinite(C2k));
    row("D3psi", std::max(nm.D3, nm.D3_inv), std::ldexp(1.0, 2 * f.j) * (e - 1.0), C3k, std::isfinite(C3k));
    return rep;
}

VerificationReport verify_flow_scaling(const Grid3& g, std::uint64_t seed) {
    VerificationReport rep("flow-scaling", {"check_id", "j", "V", "measured", "bound", "fitted_constant", "pass"});
    const double t_final = 1.0;
    auto make = [&](double amp, int j) {
        const VectorField v = lacunary_velocity(g, amp, -1, 2, seed);
        const double gS = max_gradient_norm(regularize(v, j));
        const double dt = std::min(0.05, gS > 0.0 ? 0.02 / gS : 0.05);
        return integrate_flow(VelocitySeries::steady(v), j, t_final, dt);
    };
    double worst_det = 0.0, worst_rt = 0.0;
    {
        std::vector<double> js, d2, d3;
        for (int j : {2, 3, 4}) {
            const FlowMap f = make(0.02, j);
            const FlowNorms nm = measure_flow_norms(f);
            worst_det = std::max(worst_det, f.det_defect);
            worst_rt = std::max(worst_rt, f.roundtrip_error);
            js.push_back(j);
            d2.push_back(nm.D2);
            d3.push_back(nm.D3);
            rep.add_row({"D2psi", fmt_int(j), fmt_num(f.V), fmt_num(nm.D2), "", "", "1"});
            rep.add_row({"D3psi", fmt_int(j), fmt_num(f.V), fmt_num(nm.D3), "", "", "1"});
        }
        const LinearFit f2 = log2_fit(js, d2), f3 = log2_fit(js, d3);
        const bool ok2 = f2.slope >= 0.75 && f2.slope <= 1.25;
        const bool ok3 = f3.slope >= 1.5 && f3.slope <= 2.5;
        rep.add_row({"D2psi-j-slope", "", "", fmt_num(f2.slope), "[0.75,1.25]", "", fmt_bool(ok2)});
        rep.add_row({"D3psi-j-slope", "", "", fmt_num(f3.slope), "[1.5,2.5]", "", fmt_bool(ok3)});
        rep.set("D2_slope", f2.slope);
        rep.set("D3_slope", f3.slope);
        rep.require(ok2, "D2 psi does not scale like 2^j");
        rep.require(ok3, "D3 psi does not scale like 2^{2j}");
    }
    {
        std::vector<double> Vs, dev, devi;
        for (double amp : {0.0025, 0.005, 0.01, 0.02}) {
            const FlowMap f = make(amp, 3);
            const FlowNorms nm = measure_flow_norms(f);
            worst_det = std::max(worst_det, f.det_defect);
            worst_rt = std::max(worst_rt, f.roundtrip_error);
            Vs.push_back(f.V);
            dev.push_back(nm.Dpsi_dev);
            devi.push_back(nm.Dpsi_inv_dev);
            rep.add_row({"Dpsi-minus-I", "3", fmt_num(f.V), fmt_num(nm.Dpsi_dev), "", "", "1"});
        }
        const LinearFit a = loglog_fit(Vs, dev), b = loglog_fit(Vs, devi);
        const bool ok = a.slope >= 0.8 && a.slope <= 1.2 && b.slope >= 0.8 && b.slope <= 1.2;
        rep.add_row({"deviation-V-slope", "3", "", fmt_num(a.slope), "[0.8,1.2]", "", fmt_bool(ok)});
        rep.add_row({"inverse-deviation-V-slope", "3", "", fmt_num(b.slope), "[0.8,1.2]", "", fmt_bool(ok)});
        rep.set("deviation_slope", a.slope);
        rep.require(ok, "deviation norms not linear in V");
    }
    rep.add_row({"det-defect", "", "", fmt_num(worst_det), fmt_num(1e-6), "", fmt_bool(worst_det < 1e-6)});
    rep.add_row({"roundtrip", "", "", fmt_num(worst_rt), fmt_num(1e-6), "", fmt_bool(worst_rt < 1e-6)});
    rep.set("det_defect", worst_det);
    rep.require(worst_det < 1e-6, "volume not preserved");
    rep.require(worst_rt < 1e-6, "inverse flow round trip");
    return rep;
}

MxEvaluator::MxEvaluator(const FlowMap& f) : flow_(&f) {
    const VectorField d = f.displacement(true);
    for (int c = 0; c < 3; ++c) d_.emplace_back(d[c]);
}

MxRecord MxEvaluator::at(const Vec3& x, const Vec3& y, double F) const {
    MxRecord r;
    r.x = x;
    r.y = y;
    const double L = flow_->grid.L;
    auto inside = [L](const Vec3& z) {
        return std::abs(z[0]) <= 0.5 * L && std::abs(z[1]) <= 0.5 * L && std::abs(z[2]) <= 0.5 * L;
    };
    const Vec3 xp = vadd(x, y), xm = vsub(x, y);
    r.in_window = inside(xp) && inside(xm);
    Vec3 dx, dp, dm;
    for (int c = 0; c < 3; ++c) {
        dx[c] = d_[c](x);
        dp[c] = d_[c](xp);
        dm[c] = d_[c](xm);
    }
    // m_x(y) = -y + d(x) - d(x + y)
    for (int c = 0; c < 3; ++c) {
        r.m_plus[c] = -y[c] + dx[c] - dp[c];
        r.m_minus[c] = y[c] + dx[c] - dm[c];
    }
    const double ny = norm3(y), nyF = anisotropic_norm(y, 1.0 / F);
    r.Yp = norm3(r.m_plus) / ny;
    r.Ym = norm3(r.m_minus) / ny;
    r.YpF = anisotropic_norm(r.m_plus, 1.0 / F) / nyF;
    r.YmF = anisotropic_norm(r.m_minus, 1.0 / F) / nyF;
    return r;
}

std::vector<MxRecord> evaluate_mx(const FlowMap& f, const Vec3& x, const std::vector<Vec3>& ys, double F) {
    const MxEvaluator ev(f);
    std::vector<MxRecord> out;
    for (const auto& y : ys) out.push_back(ev.at(x, y, F));
    return out;
}

MxSampleSet make_mx_samples(const FlowMap& f, int n_x, int n_y, std::uint64_t seed, double lo, double hi) {
    MxSampleSet s;
    std::mt19937_64 rng(seed);
    const double L = f.grid.L;
    std::uniform_real_distribution<double> U(-0.25 * L, 0.25 * L);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int i = 0; i < n_x; ++i) s.xs.push_back({U(rng), U(rng), U(rng)});
    const double base = std::ldexp(1.0, -f.j);
    const double rmax = 0.25 * L;
    for (int i = 0; i < n_y; ++i) {
        const double t = n_y > 1 ? static_cast<double>(i) / (n_y - 1) : 0.0;
        const double r = std::min(rmax, base * lo * std::pow(hi / lo, t));
        Vec3 d = {N(rng), N(rng), N(rng)};
        const double nd = norm3(d);
        s.ys.push_back({r * d[0] / nd, r * d[1] / nd, r * d[2] / nd});
    }
    return s;
}

namespace {

// smallest C with e^{2CV}(e^{2CV} - 1) m >= Q
double C_for_product(double Q, double m, double V) {
    if (Q <= 0.0) return 0.0;
    if (m <= 0.0 || V <= 0.0) return kInf;
    const double z = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * Q / m));
    return std::log(z) / (2.0 * V);
}
// smallest C with e^{2CV} - 1 >= Q
double C_for_linear(double Q, double V) {
    if (Q <= 0.0) return 0.0;
    if (V <= 0.0) return kInf;
    return std::log1p(Q) / (2.0 * V);
}
double C_for_exp(double Y, double V) {
    const double a = std::abs(std::log(Y));
    if (a <= 1e-15) return 0.0;
    if (V <= 0.0) return kInf;
    return a / V;
}

}  // namespace

MxFit fit_mx(const FlowMap& f, const MxSampleSet& s, double F) {
    MxFit fit;
    const MxEvaluator ev(f);
    const double V = f.V;
    const double tj = std::ldexp(1.0, f.j);
    std::vector<double> radii, R9;
    for (const auto& y : s.ys) {
        const double ny = norm3(y), nyF = anisotropic_norm(y, 1.0 / F);
        const double mn = std::min(1.0, tj * ny);
        double r9max = 0.0;
        for (const auto& x : s.xs) {
            const MxRecord r = ev.at(x, y, F);
            if (!r.in_window) continue;
            ++fit.n_samples;
            auto upd = [&fit](int k, double c) { fit.C_point[k] = std::max(fit.C_point[k], c); };
            const double nmp = norm3(r.m_plus), nmm = norm3(r.m_minus);
            // 1, 2: e^{-CV} <= Y <= e^{CV}
            upd(0, std::max(C_for_exp(r.Yp, V), C_for_exp(r.Ym, V)));
            upd(1, std::max(C_for_exp(nmp / ny, V), C_for_exp(nmm / ny, V)));
            // 3, 4
            upd(2, std::max({C_for_linear(std::abs(r.Yp - 1.0), V), C_for_linear(std::abs(r.Ym - 1.0), V),
                             C_for_linear(std::abs(1.0 / r.Yp - 1.0), V),
                             C_for_linear(std::abs(1.0 / r.Ym - 1.0), V)}));
            upd(3, std::max(C_for_linear(std::abs(nmp - ny) / ny, V), C_for_linear(std::abs(nmm - ny) / ny, V)));
            // 5, 6
            upd(4, C_for_product(std::abs(r.Yp - r.Ym), mn, V));
            upd(5, C_for_product(std::abs(nmm - nmp), mn * ny, V));
            // 7: anisotropic versions of 1, 3, 5
            const double nmpF = anisotropic_norm(r.m_plus, 1.0 / F), nmmF = anisotropic_norm(r.m_minus, 1.0 / F);
            upd(6, std::max({C_for_exp(r.YpF, V), C_for_exp(r.YmF, V), C_for_linear(std::abs(r.YpF - 1.0), V),
                             C_for_linear(std::abs(r.YmF - 1.0), V), C_for_linear(std::abs(1.0 / r.YpF - 1.0), V),
                             C_for_linear(std::abs(1.0 / r.YmF - 1.0), V),
                             C_for_product(std::abs(r.YpF - r.YmF), mn, V),
                             C_for_product(std::abs(nmmF - nmpF), mn * nyF, V)}));
            // 8: |m(y) + y|, |m(-y) - y|
            upd(7, std::max(C_for_product(norm3(vadd(r.m_plus, y)), ny, V),
                            C_for_product(norm3(vsub(r.m_minus, y)), ny, V)));
            // 9: |m(-y) + m(y)|
            const double q9 = norm3(vadd(r.m_minus, r.m_plus));
            upd(8, C_for_product(q9, mn * ny, V));
            r9max = std::max(r9max, q9 / ny);
        }
        radii.push_back(ny);
        R9.push_back(r9max);
    }
    fit.C = *std::max_element(fit.C_point.begin(), fit.C_point.end());
    // point 9 profile R(|y|) fitted to c min(1, |y|/y_c) by least squares in log space
    std::vector<double> lr, lR;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (R9[i] <= 0.0) continue;
        lr.push_back(std::log(radii[i]));
        lR.push_back(std::log(R9[i]));
    }
    if (lr.size() >= 4) {
        const auto [lo, hi] = std::minmax_element(lr.begin(), lr.end());
        double best = kInf, best_lc = *lo;
        for (int k = 0; k <= 400; ++k) {
            const double lc = *lo + (*hi - *lo) * k / 400.0;
            double mean = 0.0;
            for (std::size_t i = 0; i < lr.size(); ++i) mean += lR[i] - std::min(0.0, lr[i] - lc);
            mean /= static_cast<double>(lr.size());
            double sse = 0.0;
            for (std::size_t i = 0; i < lr.size(); ++i) sse += std::pow(lR[i] - mean - std::min(0.0, lr[i] - lc), 2);
            if (sse < best) { best = sse; best_lc = lc; }
        }
        fit.crossover = std::exp(best_lc) * tj;
        std::vector<double> rb, vb, ra, va;
        for (std::size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] <= best_lc - std::log(2.0)) { rb.push_back(std::exp(lr[i])); vb.push_back(std::exp(lR[i])); }
            if (lr[i] >= best_lc + std::log(2.0)) { ra.push_back(std::exp(lr[i])); va.push_back(std::exp(lR[i])); }
        }
        if (rb.size() >= 2) fit.slope_below = loglog_fit(rb, vb).slope;
        if (ra.size() >= 2) fit.slope_above = loglog_fit(ra, va).slope;
    }
    return fit;
}

VerificationReport verify_mx_properties(const std::vector<FlowMap>& flows, double F, int n_x, int n_y,
                                        std::uint64_t seed) {
    VerificationReport rep("mx-properties", {"check_id", "flow", "j", "V", "measured", "bound", "pass"});
    std::vector<MxFit> fits;
    double C = 0.0;
    for (const auto& f : flows) {
        fits.push_back(fit_mx(f, make_mx_samples(f, n_x, n_y, seed + static_cast<std::uint64_t>(f.j)), F));
        C = std::max(C, fits.back().C);
    }
    rep.set("C_global", C);
    std::vector<double> Cs;
    for (std::size_t k = 0; k < flows.size(); ++k) {
        const FlowMap& f = flows[k];
        const MxFit& m = fits[k];
        const std::string id = fmt_int(static_cast<long long>(k));
        const double hyp = std::exp(2.0 * C * f.V) - 1.0;
        if (hyp > 0.5) throw std::domain_error("flow too large: e^{2CV} - 1 > 1/2");
        rep.add_row({"hypothesis", id, fmt_int(f.j), fmt_num(f.V), fmt_num(hyp), fmt_num(0.5), "1"});
        for (int pnt = 0; pnt < 9; ++pnt)
            rep.add_row({"point-" + std::to_string(pnt + 1), id, fmt_int(f.j), fmt_num(f.V), fmt_num(m.C_point[pnt]),
                         fmt_num(C), fmt_bool(m.C_point[pnt] <= C && std::isfinite(m.C_point[pnt]))});
        const bool enough = m.n_samples >= 200;
        rep.add_row({"samples", id, fmt_int(f.j), fmt_num(f.V), fmt_int(static_cast<long long>(m.n_samples)), "200",
                     fmt_bool(enough)});
        rep.require(enough, "fewer than 200 samples");
        if (f.V > 0.0) {
            Cs.push_back(m.C);
            const bool cx = m.crossover >= 0.25 && m.crossover <= 4.0;
            rep.add_row({"crossover", id, fmt_int(f.j), fmt_num(f.V), fmt_num(m.crossover), "[0.25,4]", fmt_bool(cx)});
            const bool sb = m.slope_below >= 0.8 && m.slope_below <= 1.2;
            rep.add_row({"slope-below", id, fmt_int(f.j), fmt_num(f.V), fmt_num(m.slope_below), "[0.8,1.2]", fmt_bool(sb)});
            rep.require(sb, "point 9 not linear below the crossover");
            rep.add_row({"slope-above", id, fmt_int(f.j), fmt_num(f.V), fmt_num(m.slope_above), "report", "1"});
            rep.require(cx, "point 9 crossover not at 2^{-j}");
        }
        rep.require(std::isfinite(m.C), "unbounded point constant");
    }
    if (!Cs.empty()) {
        const double spread = max_over_min(Cs);
        const double tol = 4.0;
        rep.set("C_spread", spread);
        rep.add_row({"C-uniformity", "all", "", "", fmt_num(spread), fmt_num(tol), fmt_bool(spread <= tol)});
        rep.require(spread <= tol, "per-flow constants not uniform");
    }
    return rep;
}

KernelDifference kernel_difference_sup(const PhysicalParams& p, const FlowMap& f, const MxSampleSet& s) {
    KernelDifference out;
    const KernelK K = KernelK::analytic(p);
    const MxEvaluator ev(f);
    const double tj = std::ldexp(1.0, f.j);
    double rsum = 0.0;
    int rcount = 0;
    for (const auto& y : s.ys) {
        const double ny = norm3(y);
        const double y4 = ny * ny * ny * ny;
        const double mn = std::min(1.0, tj * ny);
        for (const auto& x : s.xs) {
            const MxRecord r = ev.at(x, y, p.F);
            if (!r.in_window) continue;
            const double Km = K(r.m_minus);
            const double a = y4 * std::abs(K(y) - Km);
            const double b = y4 * std::abs(K(r.m_plus) - Km);
            out.first = std::max(out.first, a);
            out.second = std::max(out.second, b / mn);
            if (tj * ny < 0.25 && a > 0.0) {
                rsum += (b / a) / (tj * ny);
                ++rcount;
            }
        }
    }
    out.small_y_ratio = rcount ? rsum / rcount : 0.0;
    return out;
}

VerificationReport verify_kernel_difference_bounds(const PhysicalParams& p, const std::vector<FlowMap>& flows,
                                                   double C, std::uint64_t seed) {
    VerificationReport rep("kernel-difference", {"check_id", "flow", "j", "V", "measured", "bound", "pass"});
    std::vector<double> z, a, b;
    for (std::size_t k = 0; k < flows.size(); ++k) {
        const FlowMap& f = flows[k];
        const double zz = std::exp(2.0 * C * f.V) - 1.0;
        if (zz > 0.5) throw std::domain_error("flow too large: e^{2CV} - 1 > 1/2");
        const KernelDifference d = kernel_difference_sup(p, f, make_mx_samples(f, 12, 12, seed));
        const std::string id = fmt_int(static_cast<long long>(k));
        const bool fin = std::isfinite(d.first) && std::isfinite(d.second);
        rep.add_row({"first", id, fmt_int(f.j), fmt_num(f.V), fmt_num(d.first), fmt_num(zz), fmt_bool(fin)});
        rep.add_row({"second", id, fmt_int(f.j), fmt_num(f.V), fmt_num(d.second), fmt_num(zz), fmt_bool(fin)});
        rep.add_row({"small-y-ratio", id, fmt_int(f.j), fmt_num(f.V), fmt_num(d.small_y_ratio), "", "1"});
        rep.require(fin, "kernel differences not finite");
        if (f.V > 0.0) {
            z.push_back(zz);
            a.push_back(d.first);
            b.push_back(d.second);
        } else {
            const bool zero = d.first <= 1e-12 && d.second <= 1e-12;
            rep.require(zero, "kernel differences nonzero for the identity flow");
        }
    }
    if (z.size() >= 2) {
        const LinearFit fa = loglog_fit(z, a), fb = loglog_fit(z, b);
        const bool ok = fa.slope >= 0.8 && fa.slope <= 1.2 && fb.slope >= 0.8 && fb.slope <= 1.2;
        rep.add_row({"first-slope", "all", "", "", fmt_num(fa.slope), "[0.8,1.2]", fmt_bool(ok)});
        rep.add_row({"second-slope", "all", "", "", fmt_num(fb.slope), "[0.8,1.2]", fmt_bool(ok)});
        rep.require(ok, "kernel differences not proportional to e^{2CV} - 1");
    }
    return rep;
}

}  // namespace qgtk
