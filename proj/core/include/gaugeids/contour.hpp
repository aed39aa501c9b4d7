#pragma once

#include <vector>

#include "gaugeids/block.hpp"

namespace gids {

struct ContourOptions {
    int start_nodes = 64;
    int max_nodes = 4096;
    double rel_tol = 1e-10;
    double accept_tol = 1e-8;  // change still tolerated at max_nodes
};

struct ContourResult {
    cplx value;
    int nodes = 0;
    double last_change = 0.0;
    double min_abs_det = 0.0;  // over the final node set
};

// Circle z = rho + t rho_n e^{i theta} with t = 1 / (8 max((2w - 2)/3, 1)).
double contour_radius(double rho_n, double w);

// (1/2 pi i) contour integral of z^p tr[(H(z) - rho^{2w})^{-1} H'(z)] dz by the
// trapezoid rule, doubling nodes until the relative change drops below rel_tol.
ContourResult contour_power_sum(const BlockFamily& family, double rho, double w, double rho_n, int power,
                                const ContourOptions& opts = {});

// Generalised binomial coefficient p (p-1) ... (p-j+1) / j!.
double binom(double p, int j);

// Table A[l][j] for 1 <= l <= l_max, 0 <= j <= j_max (row 0 unused), with
// ((1 + x)^{2w} - 1)^{-l} = sum_j A[l][j] x^{j - l}.
std::vector<std::vector<double>> a_coefficients(double w, int l_max, int j_max);

// rho^{-2wl} sum_{j <= j_max} A[l][j] ((z - rho)/rho)^{j - l}.
cplx a_series(const std::vector<std::vector<double>>& table, int l, double w, double rho, cplx z);

struct DenominatorCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double D = 0.0;
    int terms = 0;
    double rel_error() const;
};

// 1 / (|xi + phi + theta|^{2w} - |xi + phi|^{2w}) against the geometric series in D,
// where r is the radial chart coordinate of xi. Fails when |D| >= 1.
DenominatorCheck denominator_series_check(const Point& theta, const Point& phi, const Point& xi, double r, double w);

}  // namespace gids
