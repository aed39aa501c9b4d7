#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gaugeids/block.hpp"

namespace gids::testing {

// Random Hermitian block family in d = 3 along a ray orthogonal to V = span(e1).
// Diagonal offsets are distinct integer shifts along e1 sharing one perpendicular
// part; P1 is positive semi-definite so the branches stay monotone.
struct RandomBlockCase {
    int size = 1;
    double w = 1.0;
    double rho_n = 100.0;
    double rho = 150.0;
    std::vector<Point> offsets;
    Point dir;
    Eigen::MatrixXcd p0, p1;

    LinearBlockFamily family() const { return LinearBlockFamily(w, offsets, dir, p0, p1, rho); }
};

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

inline RandomBlockCase random_block(std::mt19937_64& rng, int size, double w, double rho_n = 100.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RandomBlockCase c;
    c.size = size;
    c.w = w;
    c.rho_n = rho_n;
    c.rho = rho_n * (1.0 + 3.0 * u(rng));
    const double angle = 2.0 * M_PI * u(rng);
    c.dir = Point(3);
    c.dir << 0.0, std::cos(angle), std::sin(angle);
    Point side(3);
    side << 0.0, -std::sin(angle), std::cos(angle);
    const double along = 6.0 * (u(rng) - 0.5);
    const double across = 4.0 * (u(rng) - 0.5);
    std::vector<int> shifts;
    for (int s = -6; s <= 6; ++s) shifts.push_back(s);
    std::shuffle(shifts.begin(), shifts.end(), rng);
    for (int i = 0; i < size; ++i) {
        Point p(3);
        p << static_cast<double>(shifts[static_cast<std::size_t>(i)]), 0.0, 0.0;
        c.offsets.push_back(p + along * c.dir + across * side);
    }
    // Coupling strength a few percent of d(lambda)/d(rho) near rho.
    const double slope = 2.0 * w * std::pow(c.rho, 2.0 * w - 1.0);
    c.p0 = 0.05 * slope * random_hermitian(rng, size) / std::max(1, size);
    const Eigen::MatrixXcd a = random_hermitian(rng, size);
    c.p1 = 0.05 * (a * a.adjoint()) / std::max(1.0, (a * a.adjoint()).cwiseAbs().maxCoeff()) *
           std::pow(c.rho, 2.0 * w - 1.0);
    return c;
}

}  // namespace gids::testing
