#pragma once

#include <cmath>
#include <initializer_list>
#include <algorithm>
#include <string>
#include <vector>

#include "gaugeids/frequency.hpp"
#include "gaugeids/scale_params.hpp"
#include "gaugeids/symbol.hpp"

namespace gids::testing {

inline Point pt(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p[i++] = x;
    return p;
}

inline Frequency freq(std::initializer_list<long long> v) {
    std::vector<Rational> q;
    for (long long x : v) q.emplace_back(x);
    return Frequency::from_rationals(q);
}

// {0, +-e_i for every listed axis} in dimension d.
inline FrequencySet axis_frequencies(int d, std::initializer_list<int> axes) {
    std::vector<Frequency> out;
    std::vector<Rational> zero(static_cast<std::size_t>(d), Rational(0));
    out.push_back(Frequency::from_rationals(zero));
    for (int a : axes) {
        for (int s : {1, -1}) {
            std::vector<Rational> q(zero);
            q[static_cast<std::size_t>(a)] = s;
            out.push_back(Frequency::from_rationals(q));
        }
    }
    return FrequencySet(d, out);
}

// {0, +-e_1, ..., +-e_d}.
inline FrequencySet all_axes(int d) {
    FrequencySet out(d);
    std::vector<Rational> zero(static_cast<std::size_t>(d), Rational(0));
    out.insert(Frequency::from_rationals(zero));
    for (int a = 0; a < d; ++a) {
        for (int s : {1, -1}) {
            std::vector<Rational> q(zero);
            q[static_cast<std::size_t>(a)] = s;
            out.insert(Frequency::from_rationals(q));
        }
    }
    return out;
}

// Constant coefficients `amp` on +-e_axis for every listed axis: sum of 2 amp cos(x_axis).
inline OperatorSpec cosine_spec(int d, double w, std::initializer_list<int> axes, double amp, double C0 = 0.0) {
    OperatorSpec spec;
    spec.d = d;
    spec.w = w;
    spec.C0 = C0;
    spec.frequencies = all_axes(d);
    RadialTermSpec term;
    term.iota = 0.0;
    for (int a : axes) {
        for (int s : {1, -1}) {
            Point e = Point::Zero(d);
            e[a] = s;
            term.coeffs.push_back({e, {}, cplx(amp, 0.0)});
        }
    }
    spec.terms.push_back(term);
    return spec;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace gids::testing
