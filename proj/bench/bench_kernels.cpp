// Timing of the OpenMP kernels against the serial reference implementations.
// usage: bench_kernels [n] [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "qgtk/field_ops.hpp"
#include "qgtk/interp.hpp"
#include "qgtk/lambda_quad.hpp"
#include "qgtk/reference.hpp"
#include "qgtk/semigroup.hpp"

using namespace qgtk;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void line(const char* name, double par, double ser, double diff) {
    std::printf("%-24s %12.4e %12.4e %8.2fx   max diff %.2e\n", name, par, ser, ser / par, diff);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 32;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    const Grid3 g(n, 32.0);
    const PhysicalParams p(1.0, 2.0, 0.5);
    std::mt19937_64 rng(1);
    const ScalarField f = random_bandlimited(g, rng, 0.3 * g.nyquist());
    const ScalarField h = random_bandlimited(g, rng, 0.3 * g.nyquist());

    std::printf("n = %d, threads = %d, best of %d\n", n, omp_get_max_threads(), repeats);
    std::printf("%-24s %12s %12s %9s\n", "kernel", "parallel s", "serial s", "speedup");

    for (double q : {2.0, 4.0}) {
        double a = 0, b = 0;
        const double tp = best_of(repeats, [&] { a = lp_norm(f, q); });
        const double ts = best_of(repeats, [&] { b = reference::lp_norm(f, q); });
        line(q == 2.0 ? "lp_norm p=2" : "lp_norm p=4", tp, ts, std::abs(a - b) / b);
    }

    {
        ScalarField a, b;
        const double tp = best_of(repeats, [&] { a = apply_semigroup(f, 0.5, p); });
        const double ts = best_of(repeats, [&] { b = reference::apply_semigroup(f, 0.5, p); });
        double d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        line("apply_semigroup", tp, ts, d);
    }

    {
        const SpectralInterpolant I(f);
        std::uniform_real_distribution<double> u(-0.5 * g.L, 0.5 * g.L);
        std::vector<Vec3> pts(static_cast<std::size_t>(n) * n * n / 8);
        for (auto& x : pts) x = {u(rng), u(rng), u(rng)};
        std::vector<double> a, b;
        const double tp = best_of(repeats, [&] { a = I.evaluate(pts); });
        const double ts = best_of(repeats, [&] { b = reference::interpolate_serial(I, pts); });
        double d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        line("interpolant evaluate", tp, ts, d);
    }

    // The serial shell sums are direct per-point sums (trigonometric evaluation at every node), so these
    // rows compare algorithms as well as threading. Their time is scaled from a few points to the full grid.
    QuadSettings q;
    q.inner_correction = false;
    q.outer_correction = false;
    const std::vector<std::size_t> sample = {g.index(n / 2, n / 2, n / 2), g.index(1, n - 2, n / 3),
                                             g.index(n / 4, 3, n - 1)};
    const double scale = static_cast<double>(g.size()) / static_cast<double>(sample.size());
    {
        ScalarField a;
        std::vector<double> b(sample.size());
        const double tp = best_of(repeats, [&] { a = apply_lambda_quadrature(f, p, q); });
        const double ts = best_of(repeats, [&] {
            for (std::size_t k = 0; k < sample.size(); ++k)
                b[k] = reference::lambda_shell_at(f, p, q, g.point(sample[k]));
        });
        double d = 0;
        for (std::size_t k = 0; k < sample.size(); ++k) d = std::max(d, std::abs(a[sample[k]] - b[k]));
        line("lambda shell vs direct", tp, ts * scale, d);
    }
    {
        ScalarField a;
        std::vector<double> b(sample.size());
        const double tp = best_of(repeats, [&] { a = bilinear_M(f, h, p, q); });
        const double ts = best_of(repeats, [&] {
            for (std::size_t k = 0; k < sample.size(); ++k)
                b[k] = reference::M_shell_at(f, h, p, q, g.point(sample[k]));
        });
        double d = 0;
        for (std::size_t k = 0; k < sample.size(); ++k) d = std::max(d, std::abs(a[sample[k]] - b[k]));
        line("M shell vs direct", tp, ts * scale, d);
    }
    return 0;
}
