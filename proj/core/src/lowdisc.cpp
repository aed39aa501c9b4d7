#include "gaugeids/lowdisc.hpp"

#include <cmath>
#include <random>

namespace gids {

KroneckerSequence::KroneckerSequence(int dim, std::uint64_t seed) {
    // Unique positive root of x^{dim+1} = x + 1.
    double g = 2.0;
    for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (dim + 1));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int j = 0; j < dim; ++j) {
        alpha_.push_back(std::fmod(std::pow(1.0 / g, j + 1), 1.0));
        shift_.push_back(unif(rng));
    }
}

void KroneckerSequence::fill(std::uint64_t n, double* out) const {
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
        // Reduce n * alpha in long double to keep the fractional part accurate for large n.
        const long double v = static_cast<long double>(shift_[j]) + static_cast<long double>(n) * alpha_[j];
        out[j] = static_cast<double>(v - std::floor(v));
    }
}

std::vector<double> KroneckerSequence::at(std::uint64_t n) const {
    std::vector<double> u(alpha_.size());
    fill(n, u.data());
    return u;
}

}  // namespace gids
