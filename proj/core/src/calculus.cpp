#include "gaugeids/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gids {

namespace {

Point ball_sample(std::mt19937_64& rng, int d, double radius) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = normal(rng);
    double n = p.norm();
    if (n == 0.0) return Point::Zero(d);
    return p * (radius * std::pow(unit(rng), 1.0 / d) / n);
}

double binom_int(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Central finite difference of order s along the multi-index.
cplx central_difference(const Coeff& f, const Point& xi, const std::vector<int>& multi, double h) {
    const int d = static_cast<int>(xi.size());
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    cplx total = 0.0;
    while (true) {
        Point p = xi;
        double c = 1.0;
        for (int i = 0; i < d; ++i) {
            int n = multi[static_cast<std::size_t>(i)], ki = k[static_cast<std::size_t>(i)];
            c *= ((ki % 2) ? -1.0 : 1.0) * binom_int(n, ki);
            p[i] += (0.5 * n - ki) * h;
        }
        total += c * f->eval(p);
        int i = 0;
        for (; i < d; ++i) {
            auto& ki = k[static_cast<std::size_t>(i)];
            if (ki < multi[static_cast<std::size_t>(i)]) {
                ++ki;
                break;
            }
            ki = 0;
        }
        if (i == d) break;
    }
    int order = 0;
    for (int m : multi) order += m;
    return total / std::pow(h, order);
}

void multi_indices(int d, int max_order, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == d) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int m : cur) used += m;
    for (int m = 0; m + used <= max_order; ++m) {
        cur.push_back(m);
        multi_indices(d, max_order, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Amplitude> apply_to_exponential(const Symbol& b, const Point& nu) {
    std::vector<Amplitude> out;
    for (const auto& t : b.terms()) {
        cplx v = t.coeff->eval(nu);
        if (v != 0.0) out.push_back({Point(nu + t.theta), v});
    }
    return out;
}

Symbol add(const Symbol& b, const Symbol& g) {
    std::vector<Term> terms(b.terms().begin(), b.terms().end());
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return Symbol(b.dim(), std::move(terms), std::max(b.order(), g.order()), b.self_adjoint() && g.self_adjoint());
}

Symbol scale(const Symbol& b, cplx c) {
    std::vector<Term> terms;
    for (const auto& t : b.terms()) terms.push_back({t.theta, scaled(t.coeff, c)});
    return Symbol(b.dim(), std::move(terms), b.order(), b.self_adjoint() && c.imag() == 0.0);
}

Symbol subtract(const Symbol& b, const Symbol& g) { return add(b, scale(g, -1.0)); }

Symbol product(const Symbol& b, const Symbol& g) {
    std::vector<Term> terms;
    for (const auto& tb : b.terms())
        for (const auto& tg : g.terms())
            terms.push_back({Point(tb.theta + tg.theta), multiply(shifted(tb.coeff, tg.theta), tg.coeff)});
    return Symbol(b.dim(), std::move(terms), b.order() + g.order(), false);
}

Symbol commutator(const Symbol& b, const Symbol& g) {
    const cplx i(0.0, 1.0);
    std::vector<Term> terms;
    for (const auto& tb : b.terms())
        for (const auto& tg : g.terms()) {
            // chi = theta + phi: (nabla_phi b)(theta) g(phi) - b(theta) (nabla_theta g)(phi)
            Coeff first = multiply(difference(tb.coeff, tg.theta), tg.coeff);
            Coeff second = multiply(tb.coeff, difference(tg.coeff, tb.theta));
            terms.push_back({Point(tb.theta + tg.theta), linear_combination({{i, first}, {-i, second}})});
        }
    return Symbol(b.dim(), std::move(terms), b.order() + g.order() - 1.0, b.self_adjoint() && g.self_adjoint());
}

Symbol nabla(const Symbol& b, const Point& theta) {
    std::vector<Term> terms;
    for (const auto& t : b.terms()) terms.push_back({t.theta, difference(t.coeff, theta)});
    return Symbol(b.dim(), std::move(terms), b.order(), false);
}

double symbol_norm(const Symbol& b, double alpha, double l, int s, const NormGrid& grid) {
    if (s < 0 || s > grid.max_order)
        fail_precondition("derivative order " + std::to_string(s) + " exceeds supported maximum " + std::to_string(grid.max_order));
    const int d = b.dim();
    std::vector<Point> dirs;
    for (int i = 0; i < d; ++i) {
        Point e = Point::Zero(d);
        e[i] = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    Point diag = Point::Ones(d) / std::sqrt(static_cast<double>(d));
    dirs.push_back(diag);
    dirs.push_back(-diag);

    std::vector<std::vector<int>> multis;
    std::vector<int> cur;
    multi_indices(d, s, cur, multis);

    const double r_max = 32.0 * grid.rho_n;
    double total = 0.0;
    for (const auto& t : b.terms()) {
        double sup = 0.0;
        for (int k = 0; k < grid.radii; ++k) {
            double r = grid.radii == 1 ? 1.0 : std::exp(std::log(r_max) * k / (grid.radii - 1));
            for (const auto& dir : dirs) {
                Point xi = r * dir;
                double bracket = std::sqrt(1.0 + xi.squaredNorm());
                double h = 1e-4 * bracket;
                for (const auto& m : multis) {
                    int order = 0;
                    for (int v : m) order += v;
                    cplx val = order == 0 ? t.coeff->eval(xi) : central_difference(t.coeff, xi, m, h);
                    sup = std::max(sup, std::pow(bracket, (order - alpha) * grid.beta) * std::abs(val));
                }
            }
        }
        total += std::pow(1.0 + t.theta.squaredNorm(), l / 2.0) * sup;
    }
    return total;
}

double check_symmetry(const Symbol& b, int samples, std::uint64_t seed, double radius) {
    std::mt19937_64 rng(seed);
    std::vector<Point> thetas = b.frequencies();
    for (const auto& t : b.terms())
        if (!b.find(Point(-t.theta))) thetas.push_back(-t.theta);
    double defect = 0.0;
    for (int k = 0; k < samples; ++k) {
        Point xi = ball_sample(rng, b.dim(), radius);
        for (const auto& th : thetas) {
            cplx lhs = b.coeff(th, xi);
            cplx rhs = std::conj(b.coeff(Point(-th), Point(xi + th)));
            defect = std::max(defect, std::abs(lhs - rhs));
        }
    }
    return defect;
}

}  // namespace gids
