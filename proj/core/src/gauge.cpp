#include "gaugeids/gauge.hpp"

#include <cmath>
#include <map>
#include <random>

#include "gaugeids/calculus.hpp"

namespace gids {

namespace {

double norm_of(const std::vector<Amplitude>& amps) {
    // Amplitudes at coinciding points are merged before taking the l2 norm.
    std::vector<Amplitude> merged;
    for (const auto& a : amps) {
        bool found = false;
        for (auto& m : merged)
            if (same_point(m.at, a.at)) {
                m.value += a.value;
                found = true;
                break;
            }
        if (!found) merged.push_back(a);
    }
    double s = 0.0;
    for (const auto& m : merged) s += std::norm(m.value);
    return std::sqrt(s);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double chi_tilde(const Point& theta, const Point& xi, const CutoffFamily& cf, double w) {
    if (theta.isZero(0.0)) return 0.0;
    double m = cf.value(CutoffKind::natural, theta, xi);
    if (m == 0.0) return 0.0;
    return m / free_difference(xi, theta, w);
}

Symbol solve_commutator_equation(const Symbol& a, const CutoffFamily& cf, double w) {
    const cplx i(0.0, 1.0);
    std::vector<Term> terms;
    for (const auto& t : a.terms()) {
        if (t.theta.isZero(0.0)) continue;
        Coeff q = divide_by_free_difference(scaled(t.coeff, i), t.theta, w);
        terms.push_back({t.theta, weighted(q, cf.weight(CutoffKind::natural, t.theta))});
    }
    return Symbol(a.dim(), std::move(terms), 0.0, a.self_adjoint());
}

Symbol multiple_commutator(const Symbol& a, const std::vector<const Symbol*>& psis) {
    Symbol cur = a;
    for (const Symbol* p : psis) cur = commutator(cur, *p);
    return cur;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts <= 0 || total < parts) return out;
    if (parts == 1) return {{total}};
    for (int first = 1; first <= total - parts + 1; ++first)
        for (auto& rest : compositions(total - first, parts - 1)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

std::vector<Point> shell_probes(int d, double rho_n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> radius(rho_n / 3.0, 8.0 * rho_n);
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < count) {
        Point p(d);
        for (int i = 0; i < d; ++i) p[i] = normal(rng);
        double n = p.norm();
        if (n == 0.0) continue;
        out.push_back(p * (radius(rng) / n));
    }
    return out;
}

double commutator_residual(const Symbol& psi, const Symbol& a, const CutoffFamily& cf, double w,
                           const std::vector<Point>& probes) {
    Symbol h0 = free_symbol(a.dim(), w);
    Symbol natural = cut(a, cf, CutoffKind::natural);
    Symbol lhs = add(commutator(h0, psi), natural);
    double worst = 0.0;
    for (const auto& nu : probes) {
        double num = norm_of(apply_to_exponential(lhs, nu));
        double den = norm_of(apply_to_exponential(natural, nu));
        worst = std::max(worst, den > 0 ? num / den : num);
    }
    return worst;
}

GaugeResult gauge_recursion(const Symbol& b, const CutoffFamily& cf, double w, int k_tilde, const GaugeOptions& opts) {
    if (k_tilde < 1) fail_precondition("k_tilde must be at least 1");
    if (!b.self_adjoint()) fail_precondition("gauge recursion requires a self-adjoint symbol");
    const int d = b.dim();
    Symbol h0 = free_symbol(d, w);
    auto probes = shell_probes(d, cf.rho_n(), opts.probes, opts.seed);

    GaugeResult gr;
    gr.y = Symbol(d);
    for (int l = 1; l <= k_tilde; ++l) {
        Symbol bl(d), tl(d);
        if (l == 1) {
            bl = b;
        } else {
            for (int j = 1; j <= l - 1; ++j)
                for (const auto& comp : compositions(l - 1, j)) {
                    std::vector<const Symbol*> ps;
                    for (int k : comp) ps.push_back(&gr.psi[static_cast<std::size_t>(k - 1)]);
                    bl = add(bl, scale(multiple_commutator(b, ps), 1.0 / factorial(j)));
                }
            for (int j = 2; j <= l; ++j)
                for (const auto& comp : compositions(l, j)) {
                    std::vector<const Symbol*> ps;
                    for (int k : comp) ps.push_back(&gr.psi[static_cast<std::size_t>(k - 1)]);
                    tl = add(tl, scale(multiple_commutator(h0, ps), 1.0 / factorial(j)));
                }
        }
        bl = bl.with_self_adjoint(true);
        tl = tl.with_self_adjoint(true);
        Symbol rhs = add(bl, tl);
        Symbol psi = solve_commutator_equation(rhs, cf, w);
        gr.residuals.push_back(commutator_residual(psi, rhs, cf, w, probes));
        gr.psi.push_back(psi);
        gr.b_terms.push_back(bl);
        gr.t_terms.push_back(tl);
        gr.y = add(gr.y, rhs);
    }
    gr.y = gr.y.with_order(b.order()).with_self_adjoint(true);
    gr.w = cut(gr.y, cf, CutoffKind::non_natural);
    return gr;
}

double w_support_check(const GaugeResult& gr, const std::vector<SupportSample>& samples) {
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(gr.w.coeff(s.theta, s.xi)));
    return worst;
}

}  // namespace gids
