#include "qgtk/symbols.hpp"

#include <cmath>
#include <random>

#include "qgtk/field_ops.hpp"

namespace qgtk {

double q_symbol(const PhysicalParams& p, double a, double b, double c) {
    const double F2 = p.F * p.F;
    const double xf = a * a + b * b + F2 * c * c;
    if (xf == 0.0) return 0.0;
    const double x2 = a * a + b * b + c * c;
    return x2 / xf * (p.nu * (a * a + b * b) + p.nu_prime * F2 * c * c);
}

double q0_split(const PhysicalParams& p, double a, double b, double c) {
    const double F2 = p.F * p.F;
    const double xf = a * a + b * b + F2 * c * c;
    if (xf == 0.0) return 0.0;
    const double M = p.M(), Mp = p.M_prime();
    const double c2 = c * c;
    return M * (a * a + b * b) + ((1.0 - F2) * M + F2 * Mp) * c2 - (M - Mp) * F2 * (1.0 - F2) * c2 * c2 / xf;
}

double gammaL_symbol(const PhysicalParams& p, double a, double b, double c) {
    return -(p.nu * (a * a + b * b) + p.local_vertical() * c * c);
}

double lambda_symbol(const PhysicalParams& p, double a, double b, double c) {
    const double xf = xiF2(p, a, b, c);
    if (xf == 0.0) return 0.0;
    return -c * c / std::sqrt(xf);
}

double deltaF_inv_symbol(const PhysicalParams& p, double a, double b, double c) {
    const double xf = xiF2(p, a, b, c);
    if (xf == 0.0) return 0.0;
    return -1.0 / xf;
}

ScalarField apply_gamma(const ScalarField& u, const PhysicalParams& p) {
    return apply_symbol(u, [&p](double a, double b, double c) { return -q_symbol(p, a, b, c); });
}

ScalarField apply_gamma_L(const ScalarField& u, const PhysicalParams& p) {
    return apply_symbol(u, [&p](double a, double b, double c) { return gammaL_symbol(p, a, b, c); });
}

ScalarField apply_lambda_spectral(const ScalarField& u, const PhysicalParams& p) {
    return apply_symbol(u, [&p](double a, double b, double c) { return lambda_symbol(p, a, b, c); });
}

ScalarField apply_deltaF_inverse(const ScalarField& u, const PhysicalParams& p) {
    return apply_symbol(u, [&p](double a, double b, double c) { return deltaF_inv_symbol(p, a, b, c); });
}

VerificationReport verify_gamma_decomposition(const PhysicalParams& p, const Grid3& g, std::uint64_t seed,
                                              int n_fields) {
    VerificationReport rep("gamma-decomposition", {"check_id", "case", "measured", "bound", "pass"});
    const double tol = 1e-10;
    const double coeff = p.nonlocal_coeff();

    // pointwise symbol identities
    double err_sym = 0.0, err_q0 = 0.0, qmax = 0.0, nl_max = 0.0;
    const int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) {
                const double k1 = g.wavenumber(a), k2 = g.wavenumber(b), k3 = g.wavenumber(e);
                const double q = q_symbol(p, k1, k2, k3);
                const double lam = lambda_symbol(p, k1, k2, k3);
                const double nl = coeff * lam * lam;
                const double rhs = gammaL_symbol(p, k1, k2, k3) + nl;
                qmax = std::max(qmax, q);
                nl_max = std::max(nl_max, std::abs(nl));
                err_sym = std::max(err_sym, std::abs(-q - rhs));
                err_q0 = std::max(err_q0, std::abs(p.nu0() * q0_split(p, k1, k2, k3) - q));
            }
    err_sym /= qmax;
    err_q0 /= qmax;
    rep.add_row({"symbol-identity", p.describe(), fmt_num(err_sym), fmt_num(tol), fmt_bool(err_sym < tol)});
    rep.add_row({"q0-split", p.describe(), fmt_num(err_q0), fmt_num(tol), fmt_bool(err_q0 < tol)});
    rep.require(err_sym < tol, "symbol identity");
    rep.require(err_q0 < tol, "q0 split");
    const bool degenerate = (p.nu == p.nu_prime) || (p.F == 1.0);
    if (degenerate) {
        rep.add_row({"nonlocal-vanishes", p.describe(), fmt_num(nl_max), fmt_num(0.0), fmt_bool(nl_max == 0.0)});
        rep.require(nl_max == 0.0, "non-local term must vanish for degenerate parameters");
    }

    // field-level identity on random band-limited inputs
    std::mt19937_64 rng(seed);
    double err_field = 0.0;
    for (int i = 0; i < n_fields; ++i) {
        ScalarField u = random_bandlimited(g, rng, 0.6 * g.nyquist());
        ScalarField lhs = apply_gamma(u, p);
        ScalarField rhs = apply_gamma_L(u, p);
        ScalarField ll = apply_lambda_spectral(apply_lambda_spectral(u, p), p);
        rhs += coeff * ll;
        const double e = lp_norm(lhs - rhs, 2.0) / lp_norm(lhs, 2.0);
        err_field = std::max(err_field, e);
    }
    rep.add_row({"field-identity", p.describe(), fmt_num(err_field), fmt_num(tol), fmt_bool(err_field < tol)});
    rep.require(err_field < tol, "field identity");
    rep.set("symbol_error", err_sym);
    rep.set("q0_error", err_q0);
    rep.set("field_error", err_field);
    rep.set("nonlocal_max", nl_max);
    return rep;
}

BiotSavartResult biot_savart(const ScalarField& omega, const PhysicalParams& p) {
    BiotSavartResult r;
    SpectralField s = transform(omega);
    const double m = s.c[0].real();
    if (std::abs(m) > 1e-14 * (1.0 + max_abs(omega))) {
        r.mean_projected = true;
        r.removed_mean = m;
    }
    s.c[0] = 0.0;
    multiply_inplace(s, [&p](double a, double b, double c) { return deltaF_inv_symbol(p, a, b, c); });
    SpectralField d2 = derivative(s, 1);
    d2 *= -1.0;
    r.U[0] = inverse_transform(d2);
    r.U[1] = inverse_transform(derivative(s, 0));
    r.U[2] = ScalarField(omega.grid, 0.0);
    SpectralField d3 = derivative(s, 2);
    d3 *= -p.F;
    r.U[3] = inverse_transform(d3);
    return r;
}

ScalarField reconstruct_vorticity(const std::array<ScalarField, 4>& U, const PhysicalParams& p) {
    SpectralField acc = derivative(transform(U[1]), 0);
    SpectralField t = derivative(transform(U[0]), 1);
    t *= -1.0;
    acc += t;
    SpectralField w = derivative(transform(U[3]), 2);
    w *= -p.F;
    acc += w;
    return inverse_transform(acc);
}

double ellipticity_violation(const PhysicalParams& p, const Grid3& g) {
    double worst = -kInf;
    const int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) {
                const double k1 = g.wavenumber(a), k2 = g.wavenumber(b), k3 = g.wavenumber(e);
                const double x2 = k1 * k1 + k2 * k2 + k3 * k3;
                if (x2 == 0.0) continue;
                const double q = q_symbol(p, k1, k2, k3);
                const double lo = p.nu0() * x2 - q;
                const double hi = q - p.nu_max() * x2;
                worst = std::max(worst, std::max(lo, hi) / x2);
            }
    return worst;
}

}  // namespace qgtk
