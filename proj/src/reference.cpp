#include "qgtk/reference.hpp"

#include <algorithm>
#include <cmath>

#include "qgtk/fft.hpp"
#include "qgtk/symbols.hpp"

namespace qgtk::reference {

double lp_norm(const ScalarField& f, double p) {
    if (std::isinf(p)) return max_abs(f);
    double s = 0.0;
    for (double x : f.v) s += std::pow(std::abs(x), p);
    return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

void multiply_inplace(SpectralField& s, const std::function<double(double, double, double)>& sym) {
    const Grid3& g = s.grid;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int e = 0; e < g.n; ++e)
                s.c[g.index(a, b, e)] *= sym(g.wavenumber(a), g.wavenumber(b), g.wavenumber(e));
}

ScalarField apply_semigroup(const ScalarField& u, double t, const PhysicalParams& p) {
    SpectralField s = transform(u);
    multiply_inplace(s, [&](double a, double b, double c) { return std::exp(-t * q_symbol(p, a, b, c)); });
    return inverse_transform(s);
}

double trig_eval(const SpectralField& s, const Vec3& x) {
    const Grid3& g = s.grid;
    const double half = 0.5 * g.L;
    double acc = 0.0;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int e = 0; e < g.n; ++e) {
                const double th = g.wavenumber(a) * (x[0] + half) + g.wavenumber(b) * (x[1] + half) +
                                  g.wavenumber(e) * (x[2] + half);
                const cplx c = s.c[g.index(a, b, e)];
                acc += c.real() * std::cos(th) - c.imag() * std::sin(th);
            }
    return acc;
}

std::vector<double> trig_eval(const ScalarField& f, const std::vector<Vec3>& pts) {
    const SpectralField s = transform(f);
    std::vector<double> out;
    out.reserve(pts.size());
    for (const auto& x : pts) out.push_back(trig_eval(s, x));
    return out;
}

std::vector<double> interpolate_serial(const SpectralInterpolant& I, const std::vector<Vec3>& pts) {
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = I(pts[i]);
    return out;
}

namespace {

double resolve(const PhysicalParams& p, double cK) { return cK > 0.0 ? cK : KernelK::analytic_cK(p.F); }

std::vector<Vec3> shifted(const ShellRule& rule, const Vec3& x) {
    std::vector<Vec3> pts;
    pts.reserve(rule.nodes.size());
    for (const auto& nd : rule.nodes) pts.push_back({x[0] + nd.y[0], x[1] + nd.y[1], x[2] + nd.y[2]});
    return pts;
}

}  // namespace

double lambda_shell_at(const ScalarField& f, const PhysicalParams& p, const QuadSettings& q, const Vec3& x,
                       double cK) {
    const ShellRule rule = make_shell_rule(f.grid, p, q);
    const SpectralField s = transform(f);
    const double f0 = trig_eval(s, x);
    double acc = 0.0;
    const auto pts = shifted(rule, x);
    for (std::size_t i = 0; i < pts.size(); ++i) acc += rule.nodes[i].weight * (trig_eval(s, pts[i]) - f0);
    return resolve(p, cK) * acc;
}

double M_shell_at(const ScalarField& f, const ScalarField& g, const PhysicalParams& p, const QuadSettings& q,
                  const Vec3& x, double cK) {
    const ShellRule rule = make_shell_rule(f.grid, p, q);
    const SpectralField sf = transform(f), sg = transform(g);
    const double f0 = trig_eval(sf, x), g0 = trig_eval(sg, x);
    double acc = 0.0;
    const auto pts = shifted(rule, x);
    for (std::size_t i = 0; i < pts.size(); ++i)
        acc += rule.nodes[i].weight * (trig_eval(sf, pts[i]) - f0) * (trig_eval(sg, pts[i]) - g0);
    return resolve(p, cK) * acc;
}

}  // namespace qgtk::reference
