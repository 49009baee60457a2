#include "qgtk/interp.hpp"

#include <algorithm>
#include <cmath>

#include "qgtk/fft.hpp"
#include "qgtk/quadrature.hpp"

namespace qgtk {
namespace {

inline double es_kernel(double z, double beta) {
    const double t = 1.0 - z * z;
    return t > 0.0 ? std::exp(beta * (std::sqrt(t) - 1.0)) : 0.0;
}

inline int pmod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

SpectralInterpolant::SpectralInterpolant(const ScalarField& f, Mode mode) : grid_(f.grid) {
    build(transform(f), mode);
}

SpectralInterpolant::SpectralInterpolant(const SpectralField& s, Mode mode) : grid_(s.grid) {
    build(s, mode);
}

void SpectralInterpolant::build(const SpectralField& s, Mode mode) {
    const Grid3& g = grid_;
    const int n = g.n;
    double cmax = 0.0;
    for (const auto& c : s.c) cmax = std::max(cmax, std::abs(c));
    const double thresh = 1e-14 * cmax;
    std::size_t nnz = 0;
    for (const auto& c : s.c)
        if (std::abs(c) > thresh) ++nnz;

    sparse_ = mode == Mode::Sparse || (mode == Mode::Auto && nnz <= static_cast<std::size_t>(kSparseLimit));
    if (sparse_) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int e = 0; e < n; ++e) {
                    const cplx c = s.c[g.index(a, b, e)];
                    if (std::abs(c) <= thresh) continue;
                    k_.push_back({g.wavenumber(a), g.wavenumber(b), g.wavenumber(e)});
                    c_.push_back(c);
                }
        return;
    }

    // fine grid of side 2n, kernel half-width kWidth/2 fine cells
    M_ = 2 * n;
    hf_ = g.L / M_;
    beta_ = 2.30 * kWidth;
    const double alpha = 0.5 * kWidth * hf_;
    auto nodes = gauss_legendre(200, -1.0, 1.0);
    std::vector<double> phihat(n);
    for (int i = 0; i < n; ++i) {
        const double k = g.wavenumber(i);
        double acc = 0.0;
        for (const auto& q : nodes) acc += q.w * es_kernel(q.x, beta_) * std::cos(k * alpha * q.x);
        phihat[i] = alpha * acc;
    }
    std::vector<cplx> buf(static_cast<std::size_t>(M_) * M_ * M_, cplx(0.0, 0.0));
    for (int a = 0; a < n; ++a) {
        const int fa = pmod(g.freq_index(a), M_);
        for (int b = 0; b < n; ++b) {
            const int fb = pmod(g.freq_index(b), M_);
            for (int e = 0; e < n; ++e) {
                const int fe = pmod(g.freq_index(e), M_);
                const double w = phihat[a] * phihat[b] * phihat[e];
                buf[(static_cast<std::size_t>(fa) * M_ + fb) * M_ + fe] = s.c[g.index(a, b, e)] / w;
            }
        }
    }
    fft3d_inplace(buf, M_, +1);
    fine_.resize(buf.size());
    const double vol = hf_ * hf_ * hf_;
    for (std::size_t i = 0; i < buf.size(); ++i) fine_[i] = buf[i].real() * vol;
}

double SpectralInterpolant::eval_sparse(const Vec3& x) const {
    const double half = 0.5 * grid_.L;
    const double y0 = x[0] + half, y1 = x[1] + half, y2 = x[2] + half;
    double acc = 0.0;
    for (std::size_t m = 0; m < c_.size(); ++m) {
        const double th = k_[m][0] * y0 + k_[m][1] * y1 + k_[m][2] * y2;
        acc += c_[m].real() * std::cos(th) - c_[m].imag() * std::sin(th);
    }
    return acc;
}

double SpectralInterpolant::eval_nufft(const Vec3& x) const {
    constexpr int W = kWidth;
    const double half = 0.5 * grid_.L;
    int idx[3][W];
    double wgt[3][W];
    for (int d = 0; d < 3; ++d) {
        const double s = (x[d] + half) / hf_;
        const int m0 = static_cast<int>(std::ceil(s - 0.5 * W));
        for (int t = 0; t < W; ++t) {
            const int m = m0 + t;
            wgt[d][t] = es_kernel((s - m) / (0.5 * W), beta_);
            idx[d][t] = pmod(m, M_);
        }
    }
    double acc = 0.0;
    for (int a = 0; a < W; ++a) {
        const std::size_t ra = static_cast<std::size_t>(idx[0][a]) * M_;
        double acc_b = 0.0;
        for (int b = 0; b < W; ++b) {
            const double* row = &fine_[(ra + idx[1][b]) * M_];
            double acc_e = 0.0;
            for (int e = 0; e < W; ++e) acc_e += row[idx[2][e]] * wgt[2][e];
            acc_b += acc_e * wgt[1][b];
        }
        acc += acc_b * wgt[0][a];
    }
    return acc;
}

double SpectralInterpolant::operator()(const Vec3& x) const {
    return sparse_ ? eval_sparse(x) : eval_nufft(x);
}

std::vector<double> SpectralInterpolant::evaluate(const std::vector<Vec3>& pts) const {
    std::vector<double> out(pts.size());
    const long long np = static_cast<long long>(pts.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < np; ++i) out[i] = (*this)(pts[i]);
    return out;
}

ScalarField compose(const ScalarField& f, const std::vector<Vec3>& pts) {
    SpectralInterpolant it(f);
    ScalarField out(f.grid);
    out.v = it.evaluate(pts);
    return out;
}

}  // namespace qgtk
