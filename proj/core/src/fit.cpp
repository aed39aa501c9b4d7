#include "gaugeids/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "gaugeids/types.hpp"

namespace gids {

std::vector<FitTerm> merge_basis(std::vector<FitTerm> basis, double lead) {
    std::vector<FitTerm> out;
    for (const auto& t : basis) {
        bool dup = false;
        for (const auto& o : out)
            if (o.q == t.q && std::abs(o.gamma - t.gamma) < 1e-12) dup = true;
        if (!dup) out.push_back(t);
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const FitTerm& t) { return t.q == 0 && std::abs(t.gamma - lead) < 1e-12; });
    if (it != out.end()) std::rotate(out.begin(), it, it + 1);
    return out;
}

std::vector<FitTerm> expansion_basis(int d, double w, const std::vector<double>& iotas, int h_max, int j_max, int q_max,
                                     double gamma_min) {
    std::vector<double> exps;
    // Sums of h homogeneity degrees, h = 0..h_max (multisets via nondecreasing index).
    std::function<void(int, int, int, double)> rec = [&](int h, int left, int from, double sum) {
        if (left == 0) {
            for (int j = 0; j <= j_max; ++j) exps.push_back(d + (2.0 - 2.0 * w) * h + sum - j);
            return;
        }
        for (int i = from; i < static_cast<int>(iotas.size()); ++i) rec(h, left - 1, i, sum + iotas[static_cast<std::size_t>(i)]);
    };
    for (int h = 0; h <= h_max; ++h) rec(h, h, 0, 0.0);
    std::sort(exps.begin(), exps.end(), std::greater<>());
    std::vector<FitTerm> basis;
    for (double g : exps) {
        if (g < gamma_min - 1e-12) continue;
        for (int q = 0; q <= q_max; ++q) basis.push_back({g, q});
    }
    return merge_basis(std::move(basis), d);
}

ExpansionFit fit_expansion(const std::vector<std::pair<double, double>>& samples, std::vector<FitTerm> basis) {
    const std::size_t nb = basis.size();
    if (nb == 0) fail_config("empty fit basis");
    if (samples.size() < 3 * nb)
        fail_precondition("fit needs at least " + std::to_string(3 * nb) + " samples, got " + std::to_string(samples.size()));
    const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
    const Eigen::Index k = static_cast<Eigen::Index>(nb);
    Eigen::MatrixXd A(n, k);
    Eigen::VectorXd y(n);
    ExpansionFit fit;
    fit.window = {samples.front().first, samples.front().first};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double rho = samples[static_cast<std::size_t>(i)].first;
        if (!(rho > 0)) fail_precondition("fit samples need rho > 0");
        fit.window.first = std::min(fit.window.first, rho);
        fit.window.second = std::max(fit.window.second, rho);
        y[i] = samples[static_cast<std::size_t>(i)].second;
        for (Eigen::Index j = 0; j < k; ++j)
            A(i, j) = std::pow(rho, basis[static_cast<std::size_t>(j)].gamma) * std::pow(std::log(rho), basis[static_cast<std::size_t>(j)].q);
    }
    Eigen::VectorXd colscale = A.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (!(colscale[j] > 0)) fail_precondition("fit basis function vanishes on the window");
        A.col(j) /= colscale[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    fit.cond = sv[0] / sv[sv.size() - 1];
    if (!(fit.cond <= 1e12)) fail_precondition("fit basis is ill-conditioned on the window (cond " + std::to_string(fit.cond) + ")");
    const Eigen::VectorXd c = svd.solve(y);
    const Eigen::VectorXd r = y - A * c;
    fit.residual = r.norm();
    const double dof = static_cast<double>(n - k);
    const double sigma2 = r.squaredNorm() / dof;
    // (A^T A)^{-1} = V S^{-2} V^T
    const Eigen::MatrixXd Vm = svd.matrixV();
    const Eigen::VectorXd inv_s2 = sv.array().square().inverse();
    fit.basis = std::move(basis);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double var = sigma2 * (Vm.row(j).array().square() * inv_s2.transpose().array()).sum();
        fit.coeffs.push_back(c[j] / colscale[j]);
        fit.std_errors.push_back(std::sqrt(var) / colscale[j]);
    }
    return fit;
}

}  // namespace gids
