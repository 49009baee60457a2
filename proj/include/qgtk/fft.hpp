#pragma once

#include <vector>

#include "qgtk/grid.hpp"

namespace qgtk {

// Forward transform normalized so that f(x_m) = sum_k c_k exp(i xi_k . (x_m + L/2)).
SpectralField transform(const ScalarField& f);
// Real part of the inverse transform.
ScalarField inverse_transform(const SpectralField& s);
void inverse_transform_into(const SpectralField& s, ScalarField& out);

// Unnormalized in-place cubic FFT of side n. sign = -1 forward, +1 backward.
void fft3d_inplace(std::vector<cplx>& data, int n, int sign);

}  // namespace qgtk
