#pragma once

#include <cstdint>
#include <vector>

#include "gaugeids/symbol.hpp"

namespace gids {

struct Amplitude {
    Point at;
    cplx value;
};

// op(b) e_nu = sum_theta b(theta, nu) e_{nu + theta}; zero amplitudes omitted.
std::vector<Amplitude> apply_to_exponential(const Symbol& b, const Point& nu);

Symbol add(const Symbol& b, const Symbol& g);
Symbol subtract(const Symbol& b, const Symbol& g);
Symbol scale(const Symbol& b, cplx c);

// Coefficients of the composition op(b) op(g). Order adds.
Symbol product(const Symbol& b, const Symbol& g);
// i(b o g - g o b) in the finite-difference form; order a + g - 1.
Symbol commutator(const Symbol& b, const Symbol& g);
// Coefficient at (phi, xi) becomes b(phi, xi + theta) - b(phi, xi).
Symbol nabla(const Symbol& b, const Point& theta);

struct NormGrid {
    double beta = 0.55;
    double rho_n = 8.0;
    int radii = 64;
    int max_order = 3;
};

// Grid estimate of sum_theta <theta>^l sup_xi <xi>^{(|s| - alpha) beta} |D^s b(theta, xi)|,
// maximised over multi-indices with |s| <= s. Any finite grid gives a lower bound.
double symbol_norm(const Symbol& b, double alpha, double l, int s, const NormGrid& grid = {});

// max |b(theta, xi) - conj(b(-theta, xi + theta))| over random xi in the ball of the given radius.
double check_symmetry(const Symbol& b, int samples, std::uint64_t seed, double radius);

}  // namespace gids
