#pragma once

#include <map>
#include <vector>

#include "qgtk/field_ops.hpp"
#include "qgtk/grid.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

// radial profiles: chi = 1 on [0, 3/4], 0 beyond 4/3; phi(r) = chi(r/2) - chi(r)
double lp_chi(double r);
double lp_phi(double r);

// Delta_j (j >= 0), Delta_{-1} = chi(D); homogeneous blocks use phi for every j
ScalarField dyadic_block(const ScalarField& u, int j, bool homogeneous = false);
// S_j u = chi(2^{-j} D) u
ScalarField low_cut(const ScalarField& u, int j);

struct DyadicDecomposition {
    Grid3 grid;
    int jmin = -1;
    int jmax = -1;
    bool homogeneous = false;
    std::map<int, ScalarField> blocks;
    ScalarField tail;  // part of u above the last block: u - S_{jmax+1} u
    ScalarField low_cut(int j) const;  // sum of blocks q <= j-1
    ScalarField reconstruct() const;
};

// jmax must satisfy the Nyquist constraint.
DyadicDecomposition decompose(const ScalarField& u, int jmax, bool homogeneous = false);
// smallest homogeneous index whose annulus meets the lattice
int homogeneous_jmin(const Grid3& g);
// index of the last block needed to cover every grid frequency
int covering_index(const Grid3& g);

// max |chi(xi) + sum_l phi(2^-l xi) - 1| over the grid; homogeneous variant over xi != 0
double partition_of_unity_error(const Grid3& g, bool homogeneous = false);

// l^r over j of 2^{js} ||Delta_j u||_p, j in block range up to jmax
double besov_norm(const ScalarField& u, double s, double p, double r, int jmax, bool homogeneous = false);
double besov_from_blocks(const std::vector<double>& block_norms, int jmin, double s, double r);

// time series on a uniform grid t_0 ... t_m
struct TimeSeries {
    std::vector<double> t;
    std::vector<ScalarField> u;
};

// l^r_j of 2^{js} || ||Delta_j u(t)||_p ||_{L^rho_t}
double tilde_besov_norm(const TimeSeries& ts, double rho, double s, double p, double r, int jmax,
                        bool homogeneous = false);
// || ||u(t)||_{B^s_{p,r}} ||_{L^rho_t}
double time_besov_norm(const TimeSeries& ts, double rho, double s, double p, double r, int jmax,
                       bool homogeneous = false);
// trapezoid L^rho norm of samples on a uniform time grid
double time_norm(const std::vector<double>& t, const std::vector<double>& y, double rho);

// displacement-difference table ||Delta^order_y u||_p over log radii x cube directions
struct FdTable {
    int order = 1;
    double p = 2.0;
    std::vector<double> radii;
    std::vector<double> log_weights;  // trapezoid weights in log radius
    std::vector<double> dir_weights;  // solid angle weights (antipodal pairs merged)
    std::vector<std::vector<double>> diff;  // [radius][direction]
};

FdTable fd_table(const ScalarField& u, double p, int order, int n_radii = 24);
double fd_besov_from_table(const FdTable& t, double s, double r);
double fd_besov_norm(const ScalarField& u, double s, double p, double r, int order, int n_radii = 24);

struct BonyParts {
    ScalarField T_uv;
    ScalarField T_vu;
    ScalarField R;
    bool aliasing_flag = false;
};

BonyParts bony_decompose(const ScalarField& u, const ScalarField& v);

VerificationReport verify_littlewood_paley(const Grid3& g, std::uint64_t seed = 1);

}  // namespace qgtk
