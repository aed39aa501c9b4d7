#include "gaugeids/scale_params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaugeids/types.hpp"

namespace gids {

double ScaleParams::L(int j) const {
    if (j < 1 || j > static_cast<int>(alphas.size())) fail_precondition("L_j requested for j = " + std::to_string(j) + " outside 1..d");
    return std::pow(rho_n, alphas[static_cast<std::size_t>(j - 1)]);
}

double ScaleParams::beta_lower_bound() const { return std::max(1.0 - w + kappa / 2.0, 0.5); }

std::string ScaleParams::validation_error() const {
    std::ostringstream msg;
    if (d < 1 || d > kMaxDim) {
        msg << "dimension d = " << d << " outside 1.." << kMaxDim;
        return msg.str();
    }
    if (!(w > 0)) return "w must be positive";
    if (!(kappa >= 0 && kappa < 2 * w)) {
        msg << "order bound violated: need 0 <= kappa < 2w, got kappa = " << kappa << ", w = " << w;
        return msg.str();
    }
    if (static_cast<int>(alphas.size()) != d) {
        msg << "expected " << d << " alpha exponents, got " << alphas.size();
        return msg.str();
    }
    // max{1 - w + kappa/2, 1/2} < beta < alpha_1 < ... < alpha_d < theta_upper < sigma < 1
    std::vector<double> chain;
    chain.push_back(beta_lower_bound());
    chain.push_back(beta);
    chain.insert(chain.end(), alphas.begin(), alphas.end());
    chain.push_back(theta_upper);
    chain.push_back(sigma);
    chain.push_back(1.0);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!(chain[i] < chain[i + 1])) {
            msg << "exponent chain max{1-w+kappa/2, 1/2} < beta < alpha_1 < ... < alpha_d < theta < sigma < 1 violated (beta = "
                << beta << ", alphas =";
            for (double a : alphas) msg << ' ' << a;
            msg << ", theta = " << theta_upper << ", sigma = " << sigma << ")";
            return msg.str();
        }
    }
    if (!(rho_n > 1)) return "rho_n must exceed 1";
    if (!(C0 > 0)) return "C0 must be positive";
    if (k < 1) return "k must be at least 1";
    if (k_tilde < 1) return "k_tilde must be at least 1";
    for (int j = 1; j < d; ++j)
        if (!(L(j) < L(j + 1))) return "L_j must be strictly increasing";
    return {};
}

void ScaleParams::validate() const {
    if (auto e = validation_error(); !e.empty()) fail_config(e);
}

ScaleParams default_scale_params(int d, double w, double kappa) {
    ScaleParams sp;
    sp.d = d;
    sp.w = w;
    sp.kappa = kappa;
    double lo = std::max(sp.beta_lower_bound(), 0.5);
    sp.beta = lo + 0.05;
    sp.theta_upper = 0.9;
    sp.sigma = 0.95;
    sp.alphas.clear();
    double a0 = std::max(0.75, sp.beta + 0.1);
    double span = sp.theta_upper - 0.02 - a0;
    for (int j = 0; j < d; ++j) sp.alphas.push_back(d == 1 ? a0 : a0 + span * j / (d - 1));
    return sp;
}

}  // namespace gids
