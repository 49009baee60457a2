#include "qgtk/lambda_quad.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qgtk/fft.hpp"
#include "qgtk/field_ops.hpp"
#include "qgtk/littlewood_paley.hpp"
#include "qgtk/stats.hpp"
#include "qgtk/symbols.hpp"

namespace qgtk {

namespace {

constexpr double kPi = std::numbers::pi;

double Si(double x) { return x == 0.0 ? 0.0 : gsl_sf_Si(x); }

// int_0^r rho^-2 (cos(a rho) - 1) d rho
double inner_radial(double a, double r) {
    if (a == 0.0) return 0.0;
    return -(std::cos(a * r) - 1.0) / r - a * Si(a * r);
}

// int_R^inf rho^-2 (cos(a rho) - 1) d rho
double outer_radial(double a, double R) {
    if (a == 0.0) return -1.0 / R;
    return std::cos(a * R) / R - a * (0.5 * kPi - Si(a * R)) - 1.0 / R;
}

double resolve_cK(const PhysicalParams& p, double cK) { return cK > 0.0 ? cK : KernelK::analytic_cK(p.F); }

// Hermitian-safe copy: drop Nyquist modes so translations stay real.
SpectralField drop_nyquist(SpectralField s) {
    const Grid3& g = s.grid;
    const int n = g.n, h = n / 2;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e)
                if (a == h || b == h || e == h) s.c[g.index(a, b, e)] = 0.0;
    return s;
}

// The shell rule is invariant under axis reflections, so symbols are computed on one octant.
template <class Fn>
void fill_octant(const Grid3& g, Fn&& fn, std::vector<cplx>& out) {
    const int n = g.n, h = n / 2;
    out.assign(g.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a <= h; ++a)
        for (int b = 0; b <= h; ++b)
            for (int e = 0; e <= h; ++e) {
                const cplx v = fn(g.wavenumber(a), g.wavenumber(b), g.wavenumber(e));
                for (int ia : {a, (n - a) % n})
                    for (int ib : {b, (n - b) % n})
                        for (int ie : {e, (n - e) % n}) out[g.index(ia, ib, ie)] = v;
            }
}

void warn_if_not_bandlimited(const ScalarField& f, VerificationReport* rep) {
    const double frac = spectral_energy_fraction_above(f, f.grid.nyquist() * (2.0 / 3.0));
    if (frac > 1e-8 && rep) rep->notes.push_back("input not band-limited: energy fraction " + fmt_num(frac));
}

}  // namespace

double KernelK::analytic_cK(double F) { return 1.0 / (kPi * kPi * F * F * F); }

double KernelK::operator()(const Vec3& y) const {
    const double F = params.F;
    const double r = anisotropic_norm(y, 1.0 / F);
    if (r == 0.0) throw std::domain_error("kernel K evaluated at the origin");
    const double num = y[0] * y[0] + y[1] * y[1] - 3.0 * y[2] * y[2] / (F * F);
    const double r2 = r * r;
    return -cK * num / (r2 * r2 * r2);
}

ShellRule make_shell_rule(const Grid3& g, const PhysicalParams& p, const QuadSettings& q) {
    ShellRule rule;
    rule.params = p;
    const double h = g.spacing();
    rule.r_min = q.r_min > 0.0 ? q.r_min : h;
    rule.r_max = q.r_max > 0.0 ? q.r_max : g.L / 4.0;
    if (rule.r_min < h * (1.0 - 1e-12)) throw std::invalid_argument("quadrature r_min below grid spacing");
    if (rule.r_max <= rule.r_min) throw std::invalid_argument("quadrature needs r_max > r_min");
    if (q.n_radii < 1) throw std::invalid_argument("quadrature needs at least one radius");
    rule.dirs = lebedev(q.n_dirs);
    for (const auto& d : rule.dirs) rule.kappa.push_back(-(1.0 - 4.0 * d.u[2] * d.u[2]));
    rule.outer_dirs = lebedev(q.n_dirs_outer);
    // GL in log rho; rho^-2 d rho = rho^-1 d log rho
    for (const auto& nd : gauss_legendre(q.n_radii, std::log(rule.r_min), std::log(rule.r_max)))
        rule.radial.push_back({std::exp(nd.x), nd.w});
    for (std::size_t k = 0; k < rule.dirs.size(); ++k) {
        const auto& d = rule.dirs[k];
        for (const auto& r : rule.radial) {
            ShellNode sn;
            sn.y = {r.x * d.u[0], r.x * d.u[1], r.x * p.F * d.u[2]};
            sn.rho = r.x;
            sn.weight = p.F * d.w * rule.kappa[k] * r.w / r.x;
            rule.nodes.push_back(sn);
        }
    }
    return rule;
}

QuadratureSymbol lambda_quadrature_symbol(const Grid3& g, const ShellRule& rule) {
    QuadratureSymbol out{SpectralField(g), SpectralField(g), SpectralField(g)};
    const double F = rule.params.F;
    const std::size_t nd = rule.dirs.size();
    std::vector<Vec3> Aw(nd);
    std::vector<double> wk(nd);
    for (std::size_t k = 0; k < nd; ++k) {
        Aw[k] = {rule.dirs[k].u[0], rule.dirs[k].u[1], F * rule.dirs[k].u[2]};
        wk[k] = F * rule.dirs[k].w * rule.kappa[k];
    }
    // pack shell and inner in one complex slot, outer in another
    std::vector<cplx> si, ou;
    auto shell_inner = [&](double k1, double k2, double k3) -> cplx {
        double sh = 0.0, in = 0.0;
        if (k1 == 0.0 && k2 == 0.0 && k3 == 0.0) return 0.0;
        for (std::size_t k = 0; k < nd; ++k) {
            const double s = std::abs(k1 * Aw[k][0] + k2 * Aw[k][1] + k3 * Aw[k][2]);
            double acc = 0.0;
            for (const auto& r : rule.radial) acc += r.w / r.x * (std::cos(r.x * s) - 1.0);
            sh += wk[k] * acc;
            in += wk[k] * inner_radial(s, rule.r_min);
        }
        return {sh, in};
    };
    auto outer = [&](double k1, double k2, double k3) -> cplx {
        if (k1 == 0.0 && k2 == 0.0 && k3 == 0.0) return 0.0;
        double o = 0.0;
        for (const auto& d : rule.outer_dirs) {
            const double w = F * d.w * -(1.0 - 4.0 * d.u[2] * d.u[2]);
            o += w * outer_radial(std::abs(k1 * d.u[0] + k2 * d.u[1] + k3 * F * d.u[2]), rule.r_max);
        }
        return o;
    };
    fill_octant(g, shell_inner, si);
    fill_octant(g, outer, ou);
    for (std::size_t i = 0; i < si.size(); ++i) {
        out.shell.c[i] = si[i].real();
        out.inner.c[i] = si[i].imag();
        out.outer.c[i] = ou[i];
    }
    return out;
}

ScalarField apply_lambda_quadrature(const ScalarField& f, const PhysicalParams& p, const QuadSettings& q, double cK) {
    const ShellRule rule = make_shell_rule(f.grid, p, q);
    const QuadratureSymbol sym = lambda_quadrature_symbol(f.grid, rule);
    const double c = resolve_cK(p, cK);
    SpectralField s = transform(f);
    for (std::size_t i = 0; i < s.c.size(); ++i) {
        double m = sym.shell.c[i].real();
        if (q.inner_correction) m += sym.inner.c[i].real();
        if (q.outer_correction) m += sym.outer.c[i].real();
        s.c[i] *= c * m;
    }
    return inverse_transform(s);
}

ScalarField apply_lambda_first_difference(const ScalarField& f, const PhysicalParams& p, double eps,
                                          const QuadSettings& q, double cK) {
    QuadSettings qq = q;
    qq.r_min = eps;
    const ShellRule rule = make_shell_rule(f.grid, p, qq);
    const Grid3& g = f.grid;
    const QuadratureSymbol sym = lambda_quadrature_symbol(g, rule);
    const double c = resolve_cK(p, cK);
    SpectralField s = transform(f);
    // sum over nodes of w (exp(-i xi.y) - 1), odd part kept
    std::vector<cplx> m;
    fill_octant(
        g,
        [&](double k1, double k2, double k3) {
            cplx acc = 0.0;
            for (const auto& nd : rule.nodes) {
                const double ph = k1 * nd.y[0] + k2 * nd.y[1] + k3 * nd.y[2];
                acc += nd.weight * cplx(std::cos(ph) - 1.0, -std::sin(ph));
            }
            return acc;
        },
        m);
    for (std::size_t i = 0; i < s.c.size(); ++i) {
        cplx mm = m[i];
        if (qq.outer_correction) mm += sym.outer.c[i].real();
        s.c[i] *= c * mm;
    }
    return inverse_transform(s);
}

Calibration calibrate_kernel_constant(const PhysicalParams& p, const Grid3& g, const QuadSettings& q,
                                      const std::vector<double>& sigma_in_h) {
    Calibration cal;
    const ShellRule rule = make_shell_rule(g, p, q);
    const QuadratureSymbol sym = lambda_quadrature_symbol(g, rule);
    double num = 0.0, den = 0.0;
    std::vector<ScalarField> unit, ref;
    for (double sh : sigma_in_h) {
        const double sigma = sh * g.spacing();
        const ScalarField f = gaussian(g, sigma);
        SpectralField s = transform(f);
        for (std::size_t i = 0; i < s.c.size(); ++i) {
            double m = sym.shell.c[i].real();
            if (q.inner_correction) m += sym.inner.c[i].real();
            if (q.outer_correction) m += sym.outer.c[i].real();
            s.c[i] *= m;
        }
        ScalarField qf = inverse_transform(s);
        ScalarField le = apply_lambda_spectral(f, p);
        const double qq = inner(qf, qf), ql = inner(qf, le);
        if (!(qq > 0.0) || !std::isfinite(ql)) throw std::runtime_error("kernel calibration did not converge");
        cal.sigmas.push_back(sigma);
        cal.cK_per_sigma.push_back(ql / qq);
        num += ql;
        den += qq;
        unit.push_back(std::move(qf));
        ref.push_back(std::move(le));
    }
    if (!(den > 0.0)) throw std::runtime_error("kernel calibration did not converge");
    cal.cK = num / den;
    if (!std::isfinite(cal.cK) || cal.cK <= 0.0) throw std::runtime_error("kernel calibration did not converge");
    double mean_c = 0.0;
    for (double c : cal.cK_per_sigma) mean_c += c;
    mean_c /= static_cast<double>(cal.cK_per_sigma.size());
    cal.spread = (max_of(cal.cK_per_sigma) - min_of(cal.cK_per_sigma)) / mean_c;
    cal.C_fit = cal.cK * p.F * p.F * p.F / 2.0;
    cal.C_analytic = 1.0 / (2.0 * kPi * kPi);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        ScalarField fit = unit[i];
        fit *= cal.cK;
        cal.max_rel_linf = std::max(cal.max_rel_linf, rel_linf(fit, ref[i]));
    }
    return cal;
}

ScalarField bilinear_M(const ScalarField& f, const ScalarField& g, const PhysicalParams& p, const QuadSettings& q,
                       double cK) {
    require_same_grid(f.grid, g.grid);
    const Grid3& G = f.grid;
    const int n = G.n;
    const std::size_t N = G.size();
    const ShellRule rule = make_shell_rule(G, p, q);
    const double c = resolve_cK(p, cK);

    // f + i g packed in one complex transform; both real so the pair separates
    SpectralField sf = drop_nyquist(transform(f)), sg = drop_nyquist(transform(g));
    std::vector<cplx> packed(N);
    for (std::size_t i = 0; i < N; ++i) packed[i] = sf.c[i] + cplx(0.0, 1.0) * sg.c[i];

    std::vector<double> acc(N, 0.0);
    std::vector<cplx> buf(N);
    std::vector<cplx> e1(n), e2(n), e3(n);
    for (const auto& nd : rule.nodes) {
        for (int a = 0; a < n; ++a) {
            const double k = G.wavenumber(a);
            e1[a] = std::polar(1.0, -k * nd.y[0]);
            e2[a] = std::polar(1.0, -k * nd.y[1]);
            e3[a] = std::polar(1.0, -k * nd.y[2]);
        }
#pragma omp parallel for schedule(static)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const cplx e12 = e1[a] * e2[b];
                for (int e = 0; e < n; ++e) {
                    const std::size_t idx = G.index(a, b, e);
                    buf[idx] = packed[idx] * e12 * e3[e];
                }
            }
        fft3d_inplace(buf, n, +1);
        const double w = nd.weight;
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < N; ++i)
            acc[i] += w * (buf[i].real() - f.v[i]) * (buf[i].imag() - g.v[i]);
    }
    ScalarField out(G);
    for (std::size_t i = 0; i < N; ++i) out.v[i] = acc[i];

    if (q.inner_correction) {
        // int_{rho < r_min} K (y.grad f)(y.grad g) dy
        double B[3][3] = {};
        for (std::size_t k = 0; k < rule.dirs.size(); ++k) {
            const Vec3 Aw = {rule.dirs[k].u[0], rule.dirs[k].u[1], p.F * rule.dirs[k].u[2]};
            const double w = rule.r_min * p.F * rule.dirs[k].w * rule.kappa[k];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) B[i][j] += w * Aw[i] * Aw[j];
        }
        const auto gf = gradient(f);
        const auto gg = gradient(g);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (B[i][j] == 0.0) continue;
                for (std::size_t m = 0; m < N; ++m) out.v[m] += B[i][j] * gf[i].v[m] * gg[j].v[m];
            }
    }
    if (q.outer_correction) {
        // tail: T(fg) - f T g - g T f with T the outer radial multiplier
        const QuadratureSymbol sym = lambda_quadrature_symbol(G, rule);
        auto tail = [&](const ScalarField& u) {
            SpectralField s = transform(u);
            for (std::size_t i = 0; i < N; ++i) s.c[i] *= sym.outer.c[i].real();
            return inverse_transform(s);
        };
        const ScalarField Tfg = tail(f * g), Tf = tail(f), Tg = tail(g);
        for (std::size_t m = 0; m < N; ++m) out.v[m] += Tfg.v[m] - f.v[m] * Tg.v[m] - g.v[m] * Tf.v[m];
    }
    out *= c;
    return out;
}

VerificationReport verify_leibniz(const ScalarField& f, const ScalarField& g, const PhysicalParams& p,
                                  const QuadSettings& q) {
    VerificationReport rep("leibniz", {"check_id", "measured", "bound", "pass"});
    warn_if_not_bandlimited(f, &rep);
    warn_if_not_bandlimited(g, &rep);
    const ScalarField M = bilinear_M(f, g, p, q);
    const ScalarField lhs = apply_lambda_spectral(f * g, p);
    ScalarField rhs = f * apply_lambda_spectral(g, p);
    rhs += g * apply_lambda_spectral(f, p);
    rhs += M;
    const double res = rel_linf(rhs, lhs);
    const double tol = 3e-2;
    rep.add_row({"identity-residual", fmt_num(res), fmt_num(tol), fmt_bool(res < tol)});
    rep.require(res < tol, "Leibniz residual above tolerance");
    rep.set("residual", res);

    ScalarField g2 = g;
    g2 *= 2.0;
    ScalarField M2 = bilinear_M(f, g2, p, q);
    ScalarField twoM = M;
    twoM *= 2.0;
    const double lin = max_abs(M) > 0.0 ? rel_linf(M2, twoM) : max_abs(M2);
    rep.add_row({"bilinearity", fmt_num(lin), fmt_num(1e-12), fmt_bool(lin < 1e-12)});
    rep.require(lin < 1e-12, "M not bilinear");

    ScalarField one(f.grid);
    for (auto& x : one.v) x = 1.0;
    const double mc = max_abs(bilinear_M(f, one, p, q)) / std::max(max_abs(M), 1e-300);
    rep.add_row({"constant-factor", fmt_num(mc), fmt_num(1e-10), fmt_bool(mc < 1e-10)});
    rep.require(mc < 1e-10, "M(f, const) not zero");
    return rep;
}

VerificationReport verify_M_bound(const Grid3& grid, const PhysicalParams& p, const QuadSettings& q) {
    VerificationReport rep("M-bound", {"check_id", "p", "sigma", "lhs", "rhs", "ratio", "pass"});
    const double h = grid.spacing();
    const ScalarField g = gaussian(grid, 3.0 * h, {h, 0.0, 0.0});
    const auto gg = gradient(g);
    ScalarField gradg(grid);
    for (std::size_t i = 0; i < g.size(); ++i)
        gradg.v[i] = std::sqrt(gg[0].v[i] * gg[0].v[i] + gg[1].v[i] * gg[1].v[i] + gg[2].v[i] * gg[2].v[i]);
    const std::vector<double> ps = {2.0, kInf};
    const double stability = 4.0;
    for (double pp : ps) {
        std::vector<double> ratios;
        for (double sh : {2.0, 3.0, 4.0}) {
            const ScalarField f = gaussian(grid, sh * h);
            const auto gf = gradient(f);
            ScalarField gradf(grid);
            for (std::size_t i = 0; i < f.size(); ++i)
                gradf.v[i] =
                    std::sqrt(gf[0].v[i] * gf[0].v[i] + gf[1].v[i] * gf[1].v[i] + gf[2].v[i] * gf[2].v[i]);
            const double lhs = lp_norm(bilinear_M(f, g, p, q), pp);
            const double rhs = std::sqrt(lp_norm(f, pp) * lp_norm(gradf, pp) * max_abs(g) * max_abs(gradg));
            ratios.push_back(lhs / rhs);
            rep.add_row({"ratio", fmt_num(pp), fmt_num(sh * h), fmt_num(lhs), fmt_num(rhs), fmt_num(lhs / rhs),
                         fmt_bool(std::isfinite(lhs / rhs))});
        }
        const double spread = max_over_min(ratios);
        const std::string tag = std::isinf(pp) ? "inf" : fmt_num(pp);
        rep.set("C_F_p" + tag, max_of(ratios));
        rep.set("spread_p" + tag, spread);
        rep.add_row({"stability", fmt_num(pp), "", "", fmt_num(stability), fmt_num(spread),
                     fmt_bool(spread <= stability)});
        rep.require(spread <= stability, "fitted C_F not stable across family");
    }
    return rep;
}

VerificationReport besov1_interpolation(const std::vector<ScalarField>& family, double r, int jmax) {
    VerificationReport rep("besov1-interpolation", {"check_id", "member", "lhs", "rhs", "ratio", "pass"});
    std::vector<double> ratios;
    for (std::size_t m = 0; m < family.size(); ++m) {
        const ScalarField& u = family[m];
        const double lhs = besov_norm(u, 1.0, r, 1.0, jmax, true);
        ScalarField hess(u.grid);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const ScalarField d = spectral_derivative(u, i, j);
                for (std::size_t k = 0; k < u.size(); ++k) hess.v[k] += d.v[k] * d.v[k];
            }
        for (auto& x : hess.v) x = std::sqrt(x);
        const double rhs = std::sqrt(lp_norm(u, r) * lp_norm(hess, r));
        const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
        const bool ok = std::isfinite(ratio) && (rhs > 0.0 || lhs <= 1e-14);
        rep.add_row({"member", fmt_int(static_cast<long long>(m)), fmt_num(lhs), fmt_num(rhs), fmt_num(ratio),
                     fmt_bool(ok)});
        rep.require(ok, "interpolation inequality not finite");
        if (rhs > 0.0) ratios.push_back(ratio);
    }
    if (!ratios.empty()) {
        const double spread = max_over_min(ratios) - 1.0;
        const double tol = 0.05;
        rep.set("C_fit", max_of(ratios));
        rep.set("spread", spread);
        rep.add_row({"uniformity", "", "", fmt_num(tol), fmt_num(spread), fmt_bool(spread <= tol)});
        rep.require(spread <= tol, "fitted constant not uniform across family");
    }
    return rep;
}

VerificationReport verify_lambda_quadrature(const PhysicalParams& p, const Grid3& g, const QuadSettings& q) {
    VerificationReport rep("lambda-quadrature", {"check_id", "param", "measured", "bound", "pass"});
    const double h = g.spacing();
    const double L = g.L;

    const ScalarField f = gaussian(g, 2.0 * h);
    const ScalarField ref = apply_lambda_spectral(f, p);
    const double ref_inf = max_abs(ref);
    const ScalarField base = apply_lambda_quadrature(f, p, q);

    for (double sh : {1.5, 2.0, 2.5}) {
        const ScalarField fs = gaussian(g, sh * h);
        const double err = rel_linf(apply_lambda_quadrature(fs, p, q), apply_lambda_spectral(fs, p));
        rep.add_row({"gaussian-vs-spectral", fmt_num(sh * h), fmt_num(err), fmt_num(2e-2), fmt_bool(err < 2e-2)});
        rep.require(err < 2e-2, "quadrature differs from spectral Lambda");
    }

    const ScalarField flat = sample(g, [&](const Vec3& x) {
        const double s2 = 4.0 * h * h;
        return std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2.0 * s2));
    });
    // relative to the order-one scale |D| f of the same input
    const double flat_scale = max_abs(apply_symbol(flat, [](double a, double b, double c) {
        return std::sqrt(a * a + b * b + c * c);
    }));
    const double flat_err = max_abs(apply_lambda_quadrature(flat, p, q)) / flat_scale;
    rep.add_row({"x3-independent", "", fmt_num(flat_err), fmt_num(2e-2), fmt_bool(flat_err < 2e-2)});
    rep.require(flat_err < 2e-2, "x3-independent input not annihilated");

    QuadSettings coarse = q;
    coarse.r_min = 2.0 * h;
    QuadSettings fine = q;
    fine.r_min = h;
    const double dr = rel_linf(apply_lambda_quadrature(f, p, fine), apply_lambda_quadrature(f, p, coarse));
    rep.add_row({"inner-convergence", fmt_num(h), fmt_num(dr), fmt_num(1e-3), fmt_bool(dr < 1e-3)});
    rep.require(dr < 1e-3, "halving r_min changed result");

    // small-radius asymptotics need radii well inside the bump
    const ScalarField wide = gaussian(g, 8.0 * h);
    const ScalarField wide_ref = apply_lambda_spectral(wide, p);
    {
        std::vector<double> rs, vals;
        for (double r : {4.0 * h, 3.0 * h, 2.0 * h}) {
            QuadSettings s = q;
            s.r_min = 0.5 * r;
            s.r_max = r;
            s.n_radii = 8;
            s.inner_correction = s.outer_correction = false;
            rs.push_back(r);
            vals.push_back(max_abs(apply_lambda_quadrature(wide, p, s)));
        }
        const LinearFit fit = loglog_fit(rs, vals);
        const bool ok = fit.slope > 0.8 && fit.slope < 1.2;
        rep.add_row({"inner-shell-decay", "slope", fmt_num(fit.slope), "[0.8,1.2]", fmt_bool(ok)});
        rep.require(ok, "inner shell contributions do not decay linearly");
    }
    {
        std::vector<double> Rs, errs;
        for (double R : {L / 8.0, 3.0 * L / 16.0, L / 4.0}) {
            QuadSettings s = q;
            s.r_max = R;
            s.outer_correction = false;
            Rs.push_back(R);
            ScalarField out = apply_lambda_quadrature(f, p, s);
            out -= base;
            errs.push_back(max_abs(out) / ref_inf);
        }
        const LinearFit fit = loglog_fit(Rs, errs);
        const bool ok = fit.slope < -0.8 && fit.slope > -1.2;
        rep.add_row({"outer-truncation-decay", "slope", fmt_num(fit.slope), "[-1.2,-0.8]", fmt_bool(ok)});
        rep.require(ok, "outer truncation error does not decay like 1/r_max");
    }
    {
        // bias of the truncated first-difference form against the desingularized result
        std::vector<double> eps, errs;
        const ScalarField full = apply_lambda_quadrature(wide, p, q);
        for (double e : {2.0 * h, 1.5 * h, h}) {
            eps.push_back(e);
            errs.push_back(rel_linf(apply_lambda_first_difference(wide, p, e, q), full));
        }
        const LinearFit fit = loglog_fit(eps, errs);
        const double floor = 1e-3;
        const bool ok = fit.slope > 0.8 && fit.slope < 1.2 && errs.back() > floor;
        rep.add_row({"first-difference-bias", "slope", fmt_num(fit.slope), "[0.8,1.2]", fmt_bool(ok)});
        rep.add_row({"first-difference-at-h", fmt_num(h), fmt_num(errs.back()), fmt_num(floor),
                     fmt_bool(errs.back() > floor)});
        rep.require(ok, "first-difference diagnostic did not show fixed-eps bias");
        rep.set("first_difference_error_h", errs.back());
    }
    rep.set("rel_linf", rel_linf(base, ref));
    return rep;
}

}  // namespace qgtk
