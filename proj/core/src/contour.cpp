#include "gaugeids/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

namespace gids {

double contour_radius(double rho_n, double w) { return rho_n / (8.0 * std::max((2.0 * w - 2.0) / 3.0, 1.0)); }

ContourResult contour_power_sum(const BlockFamily& family, double rho, double w, double rho_n, int power,
                                const ContourOptions& opts) {
    const double R = contour_radius(rho_n, w);
    const double level = std::pow(rho, 2.0 * w);
    const int n = family.size();
    double min_det = std::numeric_limits<double>::infinity();

    // Sum of f(z_k) R e^{i theta_k} over nodes theta_k = 2 pi (k + offset) / N.
    auto partial = [&](int nodes, int stride, int first) {
        cplx acc{0.0, 0.0};
        for (int k = first; k < nodes; k += stride) {
            const double th = 2.0 * std::numbers::pi * k / nodes;
            const cplx e = std::polar(1.0, th);
            const cplx z = rho + R * e;
            Eigen::MatrixXcd F = family.at(z) - level * Eigen::MatrixXcd::Identity(n, n);
            Eigen::PartialPivLU<Eigen::MatrixXcd> lu(F);
            min_det = std::min(min_det, std::abs(lu.determinant()));
            const cplx tr = lu.solve(family.derivative(z)).trace();
            acc += std::pow(z, power) * tr * R * e;
        }
        return acc;
    };

    int nodes = opts.start_nodes;
    cplx sum = partial(nodes, 1, 0);
    cplx value = sum / static_cast<double>(nodes);
    ContourResult res;
    while (true) {
        const int next = nodes * 2;
        sum += partial(next, 2, 1);
        const cplx refined = sum / static_cast<double>(next);
        const double change = std::abs(refined - value) / std::max(std::abs(refined), 1e-300);
        nodes = next;
        value = refined;
        res.last_change = change;
        if (change < opts.rel_tol) break;
        if (nodes >= opts.max_nodes) {
            if (change > opts.accept_tol)
                fail_convergence("contour quadrature did not converge (relative change " + std::to_string(change) + ")");
            break;
        }
    }
    // Every refinement keeps the earlier nodes, so min_det already covers the final node set.
    res.value = value;
    res.nodes = nodes;
    res.min_abs_det = min_det;
    return res;
}

double binom(double p, int j) {
    double out = 1.0;
    for (int k = 0; k < j; ++k) out *= (p - k) / (k + 1);
    return out;
}

std::vector<std::vector<double>> a_coefficients(double w, int l_max, int j_max) {
    const double two_w = 2.0 * w;
    // inner[q] = binom(2w, q + 1), q >= 1.
    std::vector<double> inner(static_cast<std::size_t>(j_max + 1), 0.0);
    for (int q = 1; q <= j_max; ++q) inner[static_cast<std::size_t>(q)] = binom(two_w, q + 1);
    // powers[p][j] = [x^j] inner(x)^p
    std::vector<std::vector<double>> powers(static_cast<std::size_t>(j_max + 1),
                                            std::vector<double>(static_cast<std::size_t>(j_max + 1), 0.0));
    powers[0][0] = 1.0;
    for (int p = 1; p <= j_max; ++p)
        for (int j = p; j <= j_max; ++j) {
            double acc = 0.0;
            for (int q = 1; q <= j - (p - 1); ++q)
                acc += inner[static_cast<std::size_t>(q)] * powers[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(j - q)];
            powers[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] = acc;
        }

    std::vector<std::vector<double>> A(static_cast<std::size_t>(l_max + 1), std::vector<double>(static_cast<std::size_t>(j_max + 1), 0.0));
    for (int l = 1; l <= l_max; ++l) {
        const double lead = std::pow(two_w, -l);
        A[static_cast<std::size_t>(l)][0] = lead;
        for (int j = 1; j <= j_max; ++j) {
            double acc = 0.0;
            for (int p = 1; p <= j; ++p)
                acc += std::pow(two_w, -p) * binom(-l, p) * powers[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
            A[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = lead * acc;
        }
    }
    return A;
}

cplx a_series(const std::vector<std::vector<double>>& table, int l, double w, double rho, cplx z) {
    const cplx x = (z - rho) / rho;
    const auto& row = table.at(static_cast<std::size_t>(l));
    // Horner in x, then shift by x^{-l}.
    cplx acc{0.0, 0.0};
    for (auto it = row.rbegin(); it != row.rend(); ++it) acc = acc * x + *it;
    return std::pow(rho, -2.0 * w * l) * acc * std::pow(x, -l);
}

double DenominatorCheck::rel_error() const { return std::abs(rhs - lhs) / std::max(std::abs(lhs), 1e-300); }

DenominatorCheck denominator_series_check(const Point& theta, const Point& phi, const Point& xi, double r, double w) {
    DenominatorCheck out;
    out.lhs = 1.0 / free_difference(Point(xi + phi), theta, w);
    const double N = (xi + phi).squaredNorm() - r * r;
    const double T = 2.0 * xi.dot(theta) + 2.0 * phi.dot(theta) + theta.squaredNorm();

    // D = (1/w) sum_{j >= 2} binom(w, j) r^{2 - 2j} sum_{k < j} binom(j, k) N^k T^{j-k-1};
    // the inner sum is ((N + T)^j - N^j) / T, evaluated by the recursion S_j = (N + T) S_{j-1} + N^{j-1}.
    double D = 0.0;
    double S = 1.0;        // S_1
    double Npow = 1.0;     // N^{j-1}
    double scale = 1.0;    // r^{2-2j}
    const double inv_r2 = 1.0 / (r * r);
    for (int j = 2; j < 400; ++j) {
        Npow *= N;
        S = (N + T) * S + Npow;
        scale *= inv_r2;
        const double b = binom(w, j);
        if (b == 0.0) break;
        const double term = b * scale * S;
        D += term;
        if (std::abs(term) < 1e-18 * std::max(std::abs(D), 1e-300) && j > 4) break;
    }
    D /= w;
    out.D = D;
    if (!(std::abs(D) < 1.0)) fail_precondition("denominator series diverges: |D| = " + std::to_string(std::abs(D)));

    double geo = 0.0, pw = 1.0;
    int a = 0;
    while (true) {
        geo += pw;
        ++a;
        pw *= -D;
        if (std::abs(pw) < 1e-14 || a > 10000) break;
    }
    out.terms = a;
    out.rhs = std::pow(r, 2.0 - 2.0 * w) / (w * T) * geo;
    return out;
}

}  // namespace gids
