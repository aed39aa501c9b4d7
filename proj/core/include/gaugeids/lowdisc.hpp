#pragma once

#include <cstdint>
#include <vector>

namespace gids {

// Additive recurrence u_n = frac(shift + n alpha) with alpha from the
// generalised golden ratio, randomised by a Cranley-Patterson shift.
class KroneckerSequence {
public:
    KroneckerSequence(int dim, std::uint64_t seed);
    int dim() const { return static_cast<int>(alpha_.size()); }
    // Point n in [0, 1)^dim.
    std::vector<double> at(std::uint64_t n) const;
    void fill(std::uint64_t n, double* out) const;

private:
    std::vector<double> alpha_;
    std::vector<double> shift_;
};

}  // namespace gids
