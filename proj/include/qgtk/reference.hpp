#pragma once

#include <functional>
#include <vector>

#include "qgtk/grid.hpp"
#include "qgtk/interp.hpp"
#include "qgtk/lambda_quad.hpp"
#include "qgtk/params.hpp"

// Serial, unoptimized counterparts of the parallel kernels. Used as test oracles and
// as the baseline in the benchmark.
namespace qgtk::reference {

double lp_norm(const ScalarField& f, double p);
double max_abs(const ScalarField& f);

void multiply_inplace(SpectralField& s, const std::function<double(double, double, double)>& sym);
ScalarField apply_semigroup(const ScalarField& u, double t, const PhysicalParams& p);

// direct sum over every Fourier mode of f (real part), O(n^3) per point
double trig_eval(const SpectralField& s, const Vec3& x);
std::vector<double> trig_eval(const ScalarField& f, const std::vector<Vec3>& pts);

// single-threaded loop over SpectralInterpolant::operator()
std::vector<double> interpolate_serial(const SpectralInterpolant& I, const std::vector<Vec3>& pts);

// shell part of the quadrature Lambda at x: sum over nodes of w (f(x + y) - f(x)), times cK
double lambda_shell_at(const ScalarField& f, const PhysicalParams& p, const QuadSettings& q, const Vec3& x,
                       double cK = 0.0);
// shell part of M(f, g) at x: sum over nodes of w (f(x + y) - f(x)) (g(x + y) - g(x)), times cK
double M_shell_at(const ScalarField& f, const ScalarField& g, const PhysicalParams& p, const QuadSettings& q,
                  const Vec3& x, double cK = 0.0);

}  // namespace qgtk::reference
