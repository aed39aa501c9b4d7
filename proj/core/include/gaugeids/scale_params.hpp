#pragma once

#include <string>
#include <vector>

namespace gids {

// All tuning constants of the construction in one record. Exponents are
// relative to rho_n; L_j = rho_n^{alpha_j}.
struct ScaleParams {
    int d = 2;
    double w = 1.0;
    double kappa = 0.0;
    double beta = 0.55;
    std::vector<double> alphas{0.75, 0.85};
    double theta_upper = 0.9;  // upper end of the exponent chain
    double sigma = 0.95;
    double C0 = 4.0;
    double R0 = 1.0;
    double rho_n = 8.0;
    int k = 4;
    int k_tilde = 2;
    int M = 1;

    double w_tilde() const { return (w + kappa) / 2.0; }
    double alpha() const { return kappa / beta; }
    // j is 1-based, 1 <= j <= d.
    double L(int j) const;
    double beta_lower_bound() const;

    // Empty string when every invariant holds; otherwise names the violated one.
    std::string validation_error() const;
    void validate() const;
};

// Defaults for ambient dimension d: evenly spread exponents between beta and theta_upper.
ScaleParams default_scale_params(int d, double w = 1.0, double kappa = 0.0);

}  // namespace gids
