#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "gaugeids/types.hpp"

namespace gids::detail {

// Spatial hash for deduplicating points up to an absolute tolerance.
class PointIndex {
public:
    explicit PointIndex(int d, double tol = 1e-8) : d_(d), tol_(tol), cell_(64.0 * tol) {}

    // Index of a stored point within tol of p, or -1.
    long find(const Point& p) const {
        long hit = -1;
        visit(0, key_of(p), [&](std::size_t k) {
            auto it = cells_.find(k);
            if (it == cells_.end() || hit >= 0) return;
            for (std::size_t idx : it->second)
                if ((points_[idx] - p).cwiseAbs().maxCoeff() <= tol_) {
                    hit = static_cast<long>(idx);
                    return;
                }
        });
        return hit;
    }

    // Returns (index, inserted).
    std::pair<std::size_t, bool> insert(const Point& p) {
        long f = find(p);
        if (f >= 0) return {static_cast<std::size_t>(f), false};
        std::size_t idx = points_.size();
        points_.push_back(p);
        cells_[hash(key_of(p))].push_back(idx);
        return {idx, true};
    }

    std::size_t size() const { return points_.size(); }

private:
    using Key = std::vector<long long>;

    Key key_of(const Point& p) const {
        Key k(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) k[static_cast<std::size_t>(i)] = std::llround(std::floor(p[i] / cell_));
        return k;
    }

    static std::size_t hash(const Key& k) {
        std::size_t h = 1469598103934665603ull;
        for (long long v : k) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

    template <class F>
    void visit(int axis, Key k, F&& f) const {
        if (axis == d_) {
            f(hash(k));
            return;
        }
        for (int off = -1; off <= 1; ++off) {
            Key kk = k;
            kk[static_cast<std::size_t>(axis)] += off;
            visit(axis + 1, kk, f);
        }
    }

    int d_;
    double tol_;
    double cell_;
    std::vector<Point> points_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> cells_;
};

}  // namespace gids::detail
