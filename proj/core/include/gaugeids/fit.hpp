#pragma once

#include <utility>
#include <vector>

namespace gids {

// Basis function rho^gamma ln^q rho.
struct FitTerm {
    double gamma = 0.0;
    int q = 0;
};

// Exponents d + (2 - 2w) h + (sum of iota) - j for h <= h_max, j <= j_max and
// every multiset of h homogeneity degrees, times ln^q for q <= q_max.
// Coinciding exponents are merged; (d, 0) comes first.
std::vector<FitTerm> expansion_basis(int d, double w, const std::vector<double>& iotas, int h_max, int j_max, int q_max,
                                     double gamma_min);
// Removes duplicates (within 1e-12) and moves (lead, 0) to the front when present.
std::vector<FitTerm> merge_basis(std::vector<FitTerm> basis, double lead);

struct ExpansionFit {
    std::vector<FitTerm> basis;
    std::vector<double> coeffs;
    std::vector<double> std_errors;
    double residual = 0.0;  // Euclidean norm of the residual vector
    double cond = 0.0;      // after column scaling
    std::pair<double, double> window{0.0, 0.0};
};

// Least squares of N against the basis; refuses ill-conditioned or under-sampled fits.
ExpansionFit fit_expansion(const std::vector<std::pair<double, double>>& samples, std::vector<FitTerm> basis);

}  // namespace gids
