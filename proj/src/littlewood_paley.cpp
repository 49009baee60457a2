#include "qgtk/littlewood_paley.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qgtk/quadrature.hpp"
#include "qgtk/stats.hpp"

namespace qgtk {

double lp_chi(double r) { return smooth_cutoff(r, 0.75, 4.0 / 3.0); }
double lp_phi(double r) { return lp_chi(0.5 * r) - lp_chi(r); }

namespace {

double block_symbol(double r, int j, bool homogeneous) {
    if (j == -1 && !homogeneous) return lp_chi(r);
    return lp_phi(std::ldexp(r, -j));
}

double radius(double a, double b, double c) { return std::sqrt(a * a + b * b + c * c); }

}  // namespace

ScalarField dyadic_block(const ScalarField& u, int j, bool homogeneous) {
    if (!homogeneous && j < -1) return ScalarField(u.grid, 0.0);
    return apply_symbol(u, [j, homogeneous](double a, double b, double c) {
        return block_symbol(radius(a, b, c), j, homogeneous);
    });
}

ScalarField low_cut(const ScalarField& u, int j) {
    return apply_symbol(u, [j](double a, double b, double c) { return lp_chi(std::ldexp(radius(a, b, c), -j)); });
}

int homogeneous_jmin(const Grid3& g) {
    const double d = 2.0 * M_PI / g.L;
    return static_cast<int>(std::floor(std::log2(0.75 * d)));
}

int covering_index(const Grid3& g) {
    const double top = std::sqrt(3.0) * g.nyquist();
    int J = -1;
    while (0.75 * std::ldexp(1.0, J + 1) < top) ++J;
    return J;
}

ScalarField DyadicDecomposition::low_cut(int j) const {
    ScalarField s(grid, 0.0);
    for (const auto& [q, b] : blocks)
        if (q <= j - 1) s += b;
    return s;
}

ScalarField DyadicDecomposition::reconstruct() const {
    ScalarField s = tail;
    for (const auto& kv : blocks) s += kv.second;
    return s;
}

DyadicDecomposition decompose(const ScalarField& u, int jmax, bool homogeneous) {
    u.grid.require_dyadic(jmax);
    DyadicDecomposition d;
    d.grid = u.grid;
    d.homogeneous = homogeneous;
    d.jmax = jmax;
    d.jmin = homogeneous ? homogeneous_jmin(u.grid) : -1;
    SpectralField s = transform(u);
    if (homogeneous) s.c[0] = 0.0;
    for (int j = d.jmin; j <= jmax; ++j) {
        d.blocks[j] = inverse_transform(multiply(s, [j, homogeneous](double a, double b, double c) {
            return block_symbol(radius(a, b, c), j, homogeneous);
        }));
    }
    d.tail = inverse_transform(multiply(s, [jmax](double a, double b, double c) {
        return 1.0 - lp_chi(std::ldexp(radius(a, b, c), -(jmax + 1)));
    }));
    return d;
}

double partition_of_unity_error(const Grid3& g, bool homogeneous) {
    const int J = covering_index(g);
    const int j0 = homogeneous ? homogeneous_jmin(g) : -1;
    double err = 0.0;
    const int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) {
                const double r = radius(g.wavenumber(a), g.wavenumber(b), g.wavenumber(e));
                if (homogeneous && r == 0.0) continue;
                double s = 0.0;
                for (int j = j0; j <= J; ++j) s += block_symbol(r, j, homogeneous);
                err = std::max(err, std::abs(s - 1.0));
            }
    return err;
}

double besov_from_blocks(const std::vector<double>& bn, int jmin, double s, double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < bn.size(); ++i) {
        const double v = std::pow(2.0, (jmin + static_cast<int>(i)) * s) * bn[i];
        if (std::isinf(r)) acc = std::max(acc, v);
        else acc += std::pow(v, r);
    }
    return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

double besov_norm(const ScalarField& u, double s, double p, double r, int jmax, bool homogeneous) {
    DyadicDecomposition d = decompose(u, jmax, homogeneous);
    std::vector<double> bn;
    for (int j = d.jmin; j <= jmax; ++j) bn.push_back(lp_norm(d.blocks.at(j), p));
    return besov_from_blocks(bn, d.jmin, s, r);
}

double time_norm(const std::vector<double>& t, const std::vector<double>& y, double rho) {
    if (t.size() != y.size() || t.empty()) throw std::invalid_argument("time_norm: size mismatch");
    if (std::isinf(rho)) return max_of(y);
    if (t.size() == 1) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        acc += 0.5 * (t[i + 1] - t[i]) * (std::pow(std::abs(y[i]), rho) + std::pow(std::abs(y[i + 1]), rho));
    return std::pow(acc, 1.0 / rho);
}

double tilde_besov_norm(const TimeSeries& ts, double rho, double s, double p, double r, int jmax, bool homogeneous) {
    std::vector<std::vector<double>> bn;  // [time][block]
    int jmin = -1;
    for (const auto& u : ts.u) {
        DyadicDecomposition d = decompose(u, jmax, homogeneous);
        jmin = d.jmin;
        std::vector<double> row;
        for (int j = d.jmin; j <= jmax; ++j) row.push_back(lp_norm(d.blocks.at(j), p));
        bn.push_back(row);
    }
    std::vector<double> per_block;
    for (std::size_t b = 0; b < bn.front().size(); ++b) {
        std::vector<double> y;
        for (const auto& row : bn) y.push_back(row[b]);
        per_block.push_back(time_norm(ts.t, y, rho));
    }
    return besov_from_blocks(per_block, jmin, s, r);
}

double time_besov_norm(const TimeSeries& ts, double rho, double s, double p, double r, int jmax, bool homogeneous) {
    std::vector<double> y;
    for (const auto& u : ts.u) y.push_back(besov_norm(u, s, p, r, jmax, homogeneous));
    return time_norm(ts.t, y, rho);
}

FdTable fd_table(const ScalarField& u, double p, int order, int n_radii) {
    if (order != 1 && order != 2) throw std::invalid_argument("fd order must be 1 or 2");
    if (n_radii < 2) throw std::invalid_argument("fd table needs >= 2 radii");
    const Grid3& g = u.grid;
    FdTable t;
    t.order = order;
    t.p = p;
    const double r0 = 2.0 * g.spacing(), r1 = 0.25 * g.L;
    const double dl = std::log(r1 / r0) / (n_radii - 1);
    for (int i = 0; i < n_radii; ++i) {
        t.radii.push_back(r0 * std::exp(dl * i));
        t.log_weights.push_back((i == 0 || i == n_radii - 1) ? 0.5 * dl : dl);
    }
    // ||tau_y u - u||_p depends only on the line through y: keep one of each antipodal pair
    std::vector<Vec3> dirs;
    for (const auto& d : cube26()) {
        const Vec3& w = d.u;
        const bool rep = w[0] > 1e-12 || (std::abs(w[0]) < 1e-12 && (w[1] > 1e-12 || (std::abs(w[1]) < 1e-12 && w[2] > 0)));
        if (rep) {
            dirs.push_back(w);
            t.dir_weights.push_back(2.0 * d.w);
        }
    }
    SpectralField s = transform(u);
    t.diff.assign(n_radii, std::vector<double>(dirs.size(), 0.0));
    for (int i = 0; i < n_radii; ++i)
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            const Vec3 y = {t.radii[i] * dirs[k][0], t.radii[i] * dirs[k][1], t.radii[i] * dirs[k][2]};
            SpectralField m = multiply(s, [&y, order](double a, double b, double c) {
                const double th = a * y[0] + b * y[1] + c * y[2];
                if (order == 1) return cplx(std::cos(th) - 1.0, std::sin(th));
                return cplx(2.0 * std::cos(th) - 2.0, 0.0);
            });
            t.diff[i][k] = lp_norm(inverse_transform(m), p);
        }
    return t;
}

double fd_besov_from_table(const FdTable& t, double s, double r) {
    if (t.order == 1 && !(s > 0.0 && s < 1.0)) throw std::invalid_argument("first differences need s in (0,1)");
    if (t.order == 2 && !(s > 0.0 && s < 2.0)) throw std::invalid_argument("second differences need s in (0,2)");
    double acc = 0.0;
    for (std::size_t i = 0; i < t.radii.size(); ++i)
        for (std::size_t k = 0; k < t.dir_weights.size(); ++k) {
            const double v = t.diff[i][k] / std::pow(t.radii[i], s);
            if (std::isinf(r)) acc = std::max(acc, v);
            else acc += t.log_weights[i] * t.dir_weights[k] * std::pow(v, r);
        }
    return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

double fd_besov_norm(const ScalarField& u, double s, double p, double r, int order, int n_radii) {
    if (order == 1 && !(s > 0.0 && s < 1.0)) throw std::invalid_argument("first differences need s in (0,1)");
    if (order == 2 && !(s > 0.0 && s < 2.0)) throw std::invalid_argument("second differences need s in (0,2)");
    return fd_besov_from_table(fd_table(u, p, order, n_radii), s, r);
}

namespace {

double spectral_radius_of_support(const ScalarField& u) {
    SpectralField s = transform(u);
    const Grid3& g = s.grid;
    double cmax = 0.0;
    for (const auto& c : s.c) cmax = std::max(cmax, std::abs(c));
    double rmax = 0.0;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int e = 0; e < g.n; ++e)
                if (std::abs(s.c[g.index(a, b, e)]) > 1e-13 * cmax)
                    rmax = std::max(rmax, radius(g.wavenumber(a), g.wavenumber(b), g.wavenumber(e)));
    return rmax;
}

}  // namespace

BonyParts bony_decompose(const ScalarField& u, const ScalarField& v) {
    require_same_grid(u.grid, v.grid);
    const Grid3& g = u.grid;
    const int J = covering_index(g);
    SpectralField su = transform(u), sv = transform(v);
    std::vector<ScalarField> bu, bv;  // index l + 1
    for (int l = -1; l <= J; ++l) {
        auto sym = [l](double a, double b, double c) { return block_symbol(radius(a, b, c), l, false); };
        bu.push_back(inverse_transform(multiply(su, sym)));
        bv.push_back(inverse_transform(multiply(sv, sym)));
    }
    BonyParts out{ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0), false};
    ScalarField Su(g, 0.0), Sv(g, 0.0);  // S_{l-1}: blocks q <= l - 2
    const int nb = static_cast<int>(bu.size());
    for (int i = 0; i < nb; ++i) {
        if (i >= 2) { Su += bu[i - 2]; Sv += bv[i - 2]; }
        out.T_uv += Su * bv[i];
        out.T_vu += Sv * bu[i];
        for (int k = std::max(0, i - 1); k <= std::min(nb - 1, i + 1); ++k) out.R += bu[i] * bv[k];
    }
    out.aliasing_flag = spectral_radius_of_support(u) + spectral_radius_of_support(v) > g.nyquist();
    return out;
}

}  // namespace qgtk

namespace qgtk {

VerificationReport verify_littlewood_paley(const Grid3& g, std::uint64_t seed) {
    VerificationReport rep("littlewood-paley", {"check_id", "param", "measured", "bound", "pass"});
    auto row = [&rep](const std::string& id, const std::string& param, double m, double b, bool ok,
                      const std::string& why) {
        rep.add_row({id, param, fmt_num(m), fmt_num(b), fmt_bool(ok)});
        rep.require(ok, why);
    };
    std::mt19937_64 rng(seed);
    const int jmax = g.max_dyadic_index();
    // spectra inside |xi| <= 3/4 2^{jmax+1} are covered by the blocks up to jmax
    const double kmax = 1.5 * std::ldexp(1.0, jmax);

    const double pu = partition_of_unity_error(g, false), puh = partition_of_unity_error(g, true);
    row("partition-of-unity", "inhomogeneous", pu, 1e-10, pu < 1e-10, "partition of unity");
    row("partition-of-unity", "homogeneous", puh, 1e-10, puh < 1e-10, "homogeneous partition of unity");

    const ScalarField u = random_bandlimited(g, rng, kmax, true);
    const ScalarField v = random_bandlimited(g, rng, 0.5 * kmax, true);
    {
        const DyadicDecomposition d = decompose(u, jmax);
        ScalarField r = d.reconstruct();
        r -= u;
        const double e = max_abs(r) / max_abs(u);
        row("reconstruction", "random", e, 1e-10, e < 1e-10, "reconstruction");
        double orth = 0.0;
        for (const auto& [j, bj] : d.blocks)
            for (const auto& [k, bk] : d.blocks) {
                if (std::abs(j - k) < 2) continue;
                orth = std::max(orth, max_abs(dyadic_block(bj, k)));
            }
        orth /= max_abs(u);
        row("near-orthogonality", "|j-j'|>=2", orth, 1e-12, orth < 1e-12, "blocks two apart interact");
        for (double p : {1.0, 2.0, kInf}) {
            double worst = 0.0;
            for (const auto& [j, bj] : d.blocks) worst = std::max(worst, lp_norm(bj, p) / lp_norm(u, p));
            const double bound = 4.0;
            row("block-uniform-bound", "p=" + fmt_num(p), worst, bound, worst <= bound, "block bound");
        }
    }
    {
        // Bernstein: |grad D_j u|_p ~ 2^j |D_j u|_p
        for (double p : {2.0, kInf}) {
            std::vector<double> ratios;
            for (int j = 0; j <= jmax; ++j) {
                const ScalarField b = dyadic_block(u, j, true);
                const auto gr = gradient(b);
                ScalarField mag(g);
                for (std::size_t i = 0; i < mag.size(); ++i)
                    mag.v[i] = std::sqrt(gr[0].v[i] * gr[0].v[i] + gr[1].v[i] * gr[1].v[i] + gr[2].v[i] * gr[2].v[i]);
                ratios.push_back(lp_norm(mag, p) / (std::ldexp(1.0, j) * lp_norm(b, p)));
            }
            const double lo = min_of(ratios), hi = max_of(ratios);
            const double stability = 2.0;
            rep.set("bernstein_lo_p" + fmt_num(p), lo);
            rep.set("bernstein_hi_p" + fmt_num(p), hi);
            row("bernstein", "p=" + fmt_num(p), hi / lo, stability, hi / lo <= stability, "Bernstein scaling");
        }
    }
    {
        const double l2 = lp_norm(u, 2.0);
        const double b = besov_norm(u, 0.0, 2.0, 2.0, jmax, false);
        const double ratio = b / l2;
        const bool ok = ratio >= std::sqrt(0.5) - 1e-12 && ratio <= 1.0 + 1e-12;
        row("b022-vs-l2", "ratio", ratio, 1.0, ok, "B^0_{2,2} not comparable to L2");
    }
    {
        // tilde vs time norm ordering on a random series
        TimeSeries ts;
        const int m = 6;
        for (int i = 0; i <= m; ++i) {
            const double t = static_cast<double>(i) / m;
            ScalarField w = u;
            w *= std::cos(2.0 * t);
            ScalarField w2 = v;
            w2 *= t * t;
            w += w2;
            ts.t.push_back(t);
            ts.u.push_back(std::move(w));
        }
        const int J = jmax;
        const double rho1 = 1.0, r_big = 2.0;
        const double tl = tilde_besov_norm(ts, rho1, 0.5, 2.0, r_big, J, true);
        const double tm = time_besov_norm(ts, rho1, 0.5, 2.0, r_big, J, true);
        row("minkowski", "r>=rho", tl / tm, 1.0, tl <= tm * (1.0 + 1e-12), "tilde norm exceeds time norm for r >= rho");
        const double tl2 = tilde_besov_norm(ts, r_big, 0.5, 2.0, rho1, J, true);
        const double tm2 = time_besov_norm(ts, r_big, 0.5, 2.0, rho1, J, true);
        row("minkowski", "r<=rho", tl2 / tm2, 1.0, tl2 >= tm2 * (1.0 - 1e-12), "tilde norm below time norm for r <= rho");
    }
    {
        // finite-difference vs dyadic Besov norms over a mixed family
        std::vector<ScalarField> family;
        for (int j = 0; j <= jmax; ++j) {
            ScalarField b = dyadic_block(random_bandlimited(g, rng, kmax, true), j, true);
            b *= 1.0 / max_abs(b);
            family.push_back(std::move(b));
        }
        const double h = g.spacing();
        family.push_back(remove_mean(gaussian(g, 3.0 * h)));
        family.push_back(random_bandlimited(g, rng, std::ldexp(1.0, jmax), true));
        const double factor = 4.0;
        const int J = jmax;
        for (double p : {2.0}) {
            std::vector<FdTable> t1, t2;
            for (const auto& f : family) {
                t1.push_back(fd_table(f, p, 1));
                t2.push_back(fd_table(f, p, 2));
            }
            for (double s : {0.3, 0.5, 0.7, 1.0}) {
                const bool second = s >= 1.0;
                std::vector<double> ratios;
                for (std::size_t i = 0; i < family.size(); ++i) {
                    const double fd = fd_besov_from_table(second ? t2[i] : t1[i], s, 2.0);
                    ratios.push_back(fd / besov_norm(family[i], s, p, 2.0, J, true));
                }
                const double spread = max_over_min(ratios);
                rep.set("fd_spread_s" + fmt_num(s), spread);
                row("fd-equivalence", "s=" + fmt_num(s) + (second ? ",order=2" : ",order=1"), spread, factor,
                    spread <= factor, "fd/dyadic ratio not uniformly bounded");
            }
        }
        // translation invariance
        const ScalarField& f = family.back();
        SpectralField s = transform(f);
        const Vec3 a = {3.0 * h, -2.0 * h, h};
        multiply_inplace(s, [&a](double k1, double k2, double k3) {
            return std::polar(1.0, -(k1 * a[0] + k2 * a[1] + k3 * a[2]));
        });
        const double n0 = fd_besov_norm(f, 0.5, 2.0, 2.0, 1), n1 = fd_besov_norm(inverse_transform(s), 0.5, 2.0, 2.0, 1);
        const double e = std::abs(n1 - n0) / n0;
        row("fd-translation", "grid shift", e, 1e-10, e < 1e-10, "fd norm not translation invariant");
    }
    {
        const ScalarField a = random_bandlimited(g, rng, 0.45 * g.nyquist(), true);
        const ScalarField b = random_bandlimited(g, rng, 0.45 * g.nyquist(), true);
        const BonyParts bp = bony_decompose(a, b);
        ScalarField sum = bp.T_uv;
        sum += bp.T_vu;
        sum += bp.R;
        const ScalarField prod = a * b;
        const double e = rel_linf(sum, prod);
        row("bony-reconstruction", "random", e, 1e-8, e < 1e-8 && !bp.aliasing_flag, "Bony decomposition");
    }
    return rep;
}

}  // namespace qgtk
