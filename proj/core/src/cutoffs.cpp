#include "gaugeids/cutoffs.hpp"

#include <cmath>

#include "gaugeids/calculus.hpp"

namespace gids {

namespace {

double glue(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }

class CutoffWeight final : public Weight {
public:
    CutoffWeight(CutoffFamily cf, CutoffKind kind, Point theta) : cf_(cf), kind_(kind), theta_(std::move(theta)) {}
    double at(const Point& xi) const override { return cf_.value(kind_, theta_, xi); }

private:
    CutoffFamily cf_;
    CutoffKind kind_;
    Point theta_;
};

}  // namespace

double smooth_step(double z) {
    constexpr double hi = 21.0 / 20.0;
    if (z <= 1.0) return 1.0;
    if (z >= hi) return 0.0;
    double t = (z - 1.0) / (hi - 1.0);
    double a = glue(1.0 - t), b = glue(t);
    return a / (a + b);
}

double CutoffFamily::e(const Point& theta, const Point& xi) const {
    double s = (2.0 * xi + theta).norm();
    return smooth_step(std::abs(2.0 * s / rho_n_ - 15.0) / 13.0);
}

double CutoffFamily::ell_gt(const Point& theta, const Point& xi) const {
    double s = (2.0 * xi + theta).norm();
    return 1.0 - smooth_step((2.0 * s / rho_n_ - 15.0) / 13.0);
}

double CutoffFamily::ell_lt(const Point& theta, const Point& xi) const {
    double s = (2.0 * xi + theta).norm();
    return 1.0 - smooth_step((15.0 - 2.0 * s / rho_n_) / 13.0);
}

double CutoffFamily::zeta(const Point& theta, const Point& xi) const {
    double n = theta.norm();
    if (n == 0.0) return 1.0;
    double proj = std::abs(theta.dot(xi + 0.5 * theta));
    return smooth_step(proj / (std::pow(rho_n_, beta_) * n));
}

double CutoffFamily::value(CutoffKind kind, const Point& theta, const Point& xi) const {
    bool zero = theta.isZero(0.0);
    switch (kind) {
    case CutoffKind::natural: return zero ? 0.0 : e(theta, xi) * phi(theta, xi);
    case CutoffKind::flat: return zero ? 0.0 : e(theta, xi) * zeta(theta, xi);
    case CutoffKind::large_energy: return zero ? 0.0 : ell_gt(theta, xi);
    case CutoffKind::small_energy: return zero ? 0.0 : ell_lt(theta, xi);
    case CutoffKind::non_natural: return zero ? 1.0 : 1.0 - e(theta, xi) * phi(theta, xi);
    }
    return 0.0;
}

WeightPtr CutoffFamily::weight(CutoffKind kind, const Point& theta) const {
    return std::make_shared<CutoffWeight>(*this, kind, theta);
}

Symbol SymbolSplit::sum() const { return add(add(add(add(o, down), flat), natural), le); }

Symbol cut(const Symbol& b, const CutoffFamily& cf, CutoffKind kind) {
    std::vector<Term> terms;
    for (const auto& t : b.terms()) {
        if (t.theta.isZero(0.0)) {
            if (kind == CutoffKind::non_natural) terms.push_back(t);
            continue;
        }
        terms.push_back({t.theta, weighted(t.coeff, cf.weight(kind, t.theta))});
    }
    return Symbol(b.dim(), std::move(terms), b.order(), b.self_adjoint());
}

SymbolSplit partition_symbol(const Symbol& b, const CutoffFamily& cf) {
    SymbolSplit s;
    std::vector<Term> zero;
    if (const Term* t = b.find(Point::Zero(b.dim()))) zero.push_back(*t);
    s.o = Symbol(b.dim(), std::move(zero), b.order(), b.self_adjoint());
    s.down = cut(b, cf, CutoffKind::small_energy);
    s.flat = cut(b, cf, CutoffKind::flat);
    s.natural = cut(b, cf, CutoffKind::natural);
    s.le = cut(b, cf, CutoffKind::large_energy);
    return s;
}

}  // namespace gids
