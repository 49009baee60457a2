#pragma once

#include <vector>

#include "qgtk/grid.hpp"

namespace qgtk {

// Off-grid evaluation of the trigonometric interpolant of a periodic field.
// Spectrally sparse fields are summed mode by mode (exact); dense ones go through
// a type-2 nonuniform FFT with an exponential-of-semicircle kernel on a 2x grid.
class SpectralInterpolant {
public:
    enum class Mode { Auto, Sparse, Nufft };

    explicit SpectralInterpolant(const ScalarField& f, Mode mode = Mode::Auto);
    explicit SpectralInterpolant(const SpectralField& s, Mode mode = Mode::Auto);

    double operator()(const Vec3& x) const;
    std::vector<double> evaluate(const std::vector<Vec3>& pts) const;
    bool is_sparse() const { return sparse_; }
    const Grid3& grid() const { return grid_; }

    static constexpr int kSparseLimit = 256;
    static constexpr int kWidth = 10;

private:
    void build(const SpectralField& s, Mode mode);
    double eval_sparse(const Vec3& x) const;
    double eval_nufft(const Vec3& x) const;

    Grid3 grid_;
    bool sparse_ = false;
    // sparse representation: wavenumbers and coefficients (with phase origin at -L/2)
    std::vector<Vec3> k_;
    std::vector<cplx> c_;
    // dense representation
    int M_ = 0;
    double hf_ = 0.0;
    double beta_ = 0.0;
    std::vector<double> fine_;
};

// Evaluate f at the points of a deformed grid: out[i] = f(pts[i]).
ScalarField compose(const ScalarField& f, const std::vector<Vec3>& pts);

}  // namespace qgtk
