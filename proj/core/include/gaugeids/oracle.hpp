#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gaugeids/symbol.hpp"

namespace gids {

// Basis (columns) of the Z-span of the rational frequencies; they must span R^d.
Eigen::MatrixXd dual_lattice_basis(const FrequencySet& freqs);

struct FloquetOptions {
    int grid = 64;                // quasi-momentum points per axis
    double truncation = 0.0;      // fiber radius; <= 0 selects 3 lambda_max^{1/(2w)}
};

struct FloquetResult {
    std::vector<double> lambda;
    std::vector<double> N;
    double truncation = 0.0;
    std::size_t max_fiber = 0;   // largest fiber matrix
    std::size_t max_component = 0;
};

// Brute-force IDS of |xi|^{2w} + op(b) for periodic b: average eigenvalue
// counts of the truncated fiber matrices over a midpoint grid of the dual cell.
FloquetResult ids_oracle_floquet(const Symbol& b, const FrequencySet& freqs, double w, const std::vector<double>& lambdas,
                                 const FloquetOptions& opts = {});

}  // namespace gids
