#include "qgtk/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace qgtk {
namespace {

// fftw plan creation is not thread safe; execution with new arrays is.
std::mutex g_plan_mutex;
std::map<std::pair<int, int>, fftw_plan> g_plans;

fftw_plan plan_for(int n, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    std::size_t total = static_cast<std::size_t>(n) * n * n;
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    g_plans.emplace(key, p);
    return p;
}

}  // namespace

void fft3d_inplace(std::vector<cplx>& data, int n, int sign) {
    if (data.size() != static_cast<std::size_t>(n) * n * n)
        throw std::invalid_argument("fft buffer size mismatch");
    fftw_plan p = plan_for(n, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

SpectralField transform(const ScalarField& f) {
    SpectralField s(f.grid);
    const std::size_t N = f.size();
    for (std::size_t i = 0; i < N; ++i) s.c[i] = cplx(f.v[i], 0.0);
    fft3d_inplace(s.c, f.grid.n, -1);
    const double inv = 1.0 / static_cast<double>(N);
    for (auto& x : s.c) x *= inv;
    return s;
}

void inverse_transform_into(const SpectralField& s, ScalarField& out) {
    std::vector<cplx> buf = s.c;
    fft3d_inplace(buf, s.grid.n, +1);
    if (out.grid != s.grid || out.v.size() != buf.size()) out = ScalarField(s.grid);
    for (std::size_t i = 0; i < buf.size(); ++i) out.v[i] = buf[i].real();
}

ScalarField inverse_transform(const SpectralField& s) {
    ScalarField out(s.grid);
    inverse_transform_into(s, out);
    return out;
}

}  // namespace qgtk
