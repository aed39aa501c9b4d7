#include "gaugeids/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gaugeids/calculus.hpp"

namespace gids {

namespace {

double glue(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }

cplx log1p_c(cplx u) {
    if (std::abs(u) < 1e-3) {
        cplx term = u, sum = 0.0;
        for (int k = 1; k <= 8; ++k) {
            sum += (k % 2 == 1 ? 1.0 : -1.0) * term / static_cast<double>(k);
            term *= u;
        }
        return sum;
    }
    return std::log(1.0 + u);
}

cplx expm1_c(cplx v) {
    if (std::abs(v) < 1e-3) {
        cplx term = v, sum = 0.0;
        double fact = 1.0;
        for (int k = 1; k <= 8; ++k) {
            fact *= k;
            sum += term / fact;
            term *= v;
        }
        return sum;
    }
    return std::exp(v) - 1.0;
}

double monomial(const Point& dir, const std::vector<int>& tau) {
    double m = 1.0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        for (int p = 0; p < tau[i]; ++p) m *= dir[static_cast<Eigen::Index>(i)];
    return m;
}

cplx monomial(const CPoint& dir, const std::vector<int>& tau) {
    cplx m = 1.0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        for (int p = 0; p < tau[i]; ++p) m *= dir[static_cast<Eigen::Index>(i)];
    return m;
}

class ConstantNode final : public CoeffNode {
public:
    explicit ConstantNode(cplx c) : c_(c) {}
    cplx eval(const Point&) const override { return c_; }
    cplx eval_ray(const RayArg&) const override { return c_; }
    bool is_constant() const override { return true; }
    cplx constant_value() const override { return c_; }

private:
    cplx c_;
};

class RadialNode final : public CoeffNode {
public:
    RadialNode(std::vector<RadialLayer> layers, double C0) : layers_(std::move(layers)), C0_(C0) {}

    cplx eval(const Point& xi) const override {
        double r = xi.norm();
        Point dir = r > 0 ? Point(xi / r) : Point(Point::Zero(xi.size()));
        cplx sum = 0.0;
        for (const auto& layer : layers_) {
            double wgt = radial_weight(layer.iota, r, C0_);
            if (wgt == 0.0) continue;
            cplx s = 0.0;
            for (const auto& e : layer.entries) s += e.value * monomial(dir, e.tau);
            sum += wgt * s;
        }
        return sum;
    }

    cplx eval_ray(const RayArg& arg) const override {
        double r_real = arg.real_point().norm();
        cplx rc = std::sqrt(arg.modulus_sq());
        CPoint dir = arg.complex_point();
        if (std::abs(rc) > 0) dir /= rc;
        cplx sum = 0.0;
        for (const auto& layer : layers_) {
            cplx wgt = 1.0;
            if (layer.iota != 0.0) {
                double step = radial_step(r_real, C0_);
                if (step == 0.0) continue;
                wgt = step * std::pow(rc, layer.iota);
            }
            cplx s = 0.0;
            for (const auto& e : layer.entries) s += e.value * monomial(dir, e.tau);
            sum += wgt * s;
        }
        return sum;
    }

private:
    std::vector<RadialLayer> layers_;
    double C0_;
};

class FreeNode final : public CoeffNode {
public:
    explicit FreeNode(double w) : w_(w) {}
    cplx eval(const Point& xi) const override { return std::pow(xi.squaredNorm(), w_); }
    cplx eval_ray(const RayArg& arg) const override {
        return w_ == 1.0 ? arg.modulus_sq() : std::pow(arg.modulus_sq(), w_);
    }
    double w() const { return w_; }

private:
    double w_;
};

class FreeDifferenceNode final : public CoeffNode {
public:
    FreeDifferenceNode(double w, Point theta) : w_(w), theta_(std::move(theta)) {}
    cplx eval(const Point& xi) const override { return free_difference(xi, theta_, w_); }
    cplx eval_ray(const RayArg& arg) const override { return free_difference(arg, theta_, w_); }

private:
    double w_;
    Point theta_;
};

class ShiftNode final : public CoeffNode {
public:
    ShiftNode(Coeff child, Point s) : child_(std::move(child)), s_(std::move(s)) {}
    cplx eval(const Point& xi) const override { return child_->eval(xi + s_); }
    cplx eval_ray(const RayArg& arg) const override { return child_->eval_ray(arg.shifted(s_)); }
    const Coeff& child() const { return child_; }
    const Point& shift() const { return s_; }

private:
    Coeff child_;
    Point s_;
};

class SumNode final : public CoeffNode {
public:
    SumNode(std::vector<std::pair<cplx, Coeff>> parts, cplx c0) : parts_(std::move(parts)), c0_(c0) {}
    cplx eval(const Point& xi) const override {
        cplx s = c0_;
        for (const auto& [c, n] : parts_) s += c * n->eval(xi);
        return s;
    }
    cplx eval_ray(const RayArg& arg) const override {
        cplx s = c0_;
        for (const auto& [c, n] : parts_) s += c * n->eval_ray(arg);
        return s;
    }

private:
    std::vector<std::pair<cplx, Coeff>> parts_;
    cplx c0_;
};

class ProductNode final : public CoeffNode {
public:
    explicit ProductNode(std::vector<Coeff> factors) : factors_(std::move(factors)) {}
    cplx eval(const Point& xi) const override {
        cplx p = 1.0;
        for (const auto& f : factors_) {
            p *= f->eval(xi);
            if (p == 0.0) break;
        }
        return p;
    }
    cplx eval_ray(const RayArg& arg) const override {
        cplx p = 1.0;
        for (const auto& f : factors_) {
            p *= f->eval_ray(arg);
            if (p == 0.0) break;
        }
        return p;
    }
    const std::vector<Coeff>& factors() const { return factors_; }

private:
    std::vector<Coeff> factors_;
};

class WeightNode final : public CoeffNode {
public:
    WeightNode(Coeff child, WeightPtr weight) : child_(std::move(child)), weight_(std::move(weight)) {}
    cplx eval(const Point& xi) const override {
        double m = weight_->at(xi);
        return m == 0.0 ? cplx(0.0) : m * child_->eval(xi);
    }
    cplx eval_ray(const RayArg& arg) const override {
        double m = weight_->at(arg.real_point());
        return m == 0.0 ? cplx(0.0) : m * child_->eval_ray(arg);
    }

private:
    Coeff child_;
    WeightPtr weight_;
};

class QuotientNode final : public CoeffNode {
public:
    QuotientNode(Coeff child, Point theta, double w) : child_(std::move(child)), theta_(std::move(theta)), w_(w) {}
    cplx eval(const Point& xi) const override { return child_->eval(xi) / free_difference(xi, theta_, w_); }
    cplx eval_ray(const RayArg& arg) const override { return child_->eval_ray(arg) / free_difference(arg, theta_, w_); }

private:
    Coeff child_;
    Point theta_;
    double w_;
};

}  // namespace

double radial_step(double r, double C0) {
    double lo = C0 / 2.0;
    if (r <= lo) return 0.0;
    if (r >= C0) return 1.0;
    double t = (r - lo) / (C0 - lo);
    double a = glue(t), b = glue(1.0 - t);
    return a / (a + b);
}

double radial_cutoff(double r, double C0) { return radial_step(r, C0) * r; }

double radial_weight(double iota, double r, double C0) {
    if (iota == 0.0) return 1.0;
    double step = radial_step(r, C0);
    return step == 0.0 ? 0.0 : step * std::pow(r, iota);
}

double free_difference(const Point& xi, const Point& theta, double w) {
    double n2 = xi.squaredNorm();
    double t = 2.0 * xi.dot(theta) + theta.squaredNorm();
    if (w == 1.0) return t;
    if (n2 == 0.0) return std::pow(theta.squaredNorm(), w);
    double u = t / n2;
    if (u <= -1.0) return std::pow(std::max(n2 + t, 0.0), w) - std::pow(n2, w);
    return std::pow(n2, w) * std::expm1(w * std::log1p(u));
}

cplx free_difference(const RayArg& arg, const Point& theta, double w) {
    cplx q = arg.modulus_sq();
    cplx t = 2.0 * (arg.base.dot(theta) + arg.z * arg.dir.dot(theta)) + theta.squaredNorm();
    if (w == 1.0) return t;
    if (q == 0.0) return std::pow(cplx(theta.squaredNorm()), w);
    return std::pow(q, w) * expm1_c(w * log1p_c(t / q));
}

Coeff make_constant(cplx c) {
    if (std::abs(c) < kPruneTolerance) return nullptr;
    return std::make_shared<ConstantNode>(c);
}

Coeff make_radial(std::vector<RadialLayer> layers, double C0) {
    // Drop zero entries; collapse to a constant when only iota = 0, tau = 0 remains.
    std::vector<RadialLayer> kept;
    cplx constant = 0.0;
    bool only_constant = true;
    for (auto& layer : layers) {
        RadialLayer out{layer.iota, {}};
        for (auto& e : layer.entries) {
            if (e.value == 0.0) continue;
            bool flat = std::all_of(e.tau.begin(), e.tau.end(), [](int t) { return t == 0; });
            if (layer.iota == 0.0 && flat)
                constant += e.value;
            else
                only_constant = false;
            out.entries.push_back(e);
        }
        if (!out.entries.empty()) kept.push_back(std::move(out));
    }
    if (kept.empty()) return nullptr;
    if (only_constant) return make_constant(constant);
    return std::make_shared<RadialNode>(std::move(kept), C0);
}

Coeff make_free(double w) { return std::make_shared<FreeNode>(w); }

Coeff make_free_difference(double w, const Point& theta) {
    if (theta.isZero(0.0)) return nullptr;
    return std::make_shared<FreeDifferenceNode>(w, theta);
}

Coeff shifted(const Coeff& node, const Point& s) {
    if (!node || node->is_constant() || s.isZero(0.0)) return node;
    if (auto sh = std::dynamic_pointer_cast<const ShiftNode>(node)) {
        Point total = sh->shift() + s;
        if (total.isZero(0.0)) return sh->child();
        return std::make_shared<ShiftNode>(sh->child(), total);
    }
    return std::make_shared<ShiftNode>(node, s);
}

Coeff difference(const Coeff& node, const Point& s) {
    if (!node || node->is_constant() || s.isZero(0.0)) return nullptr;
    if (auto f = std::dynamic_pointer_cast<const FreeNode>(node)) return make_free_difference(f->w(), s);
    if (auto sh = std::dynamic_pointer_cast<const ShiftNode>(node)) {
        if (auto f = std::dynamic_pointer_cast<const FreeNode>(sh->child()))
            return shifted(make_free_difference(f->w(), s), sh->shift());
    }
    return linear_combination({{1.0, shifted(node, s)}, {-1.0, node}});
}

Coeff linear_combination(const std::vector<std::pair<cplx, Coeff>>& parts) {
    std::vector<std::pair<cplx, Coeff>> kept;
    cplx c0 = 0.0;
    for (const auto& [c, n] : parts) {
        if (!n || c == 0.0) continue;
        if (n->is_constant())
            c0 += c * n->constant_value();
        else
            kept.emplace_back(c, n);
    }
    if (kept.empty()) return make_constant(c0);
    if (kept.size() == 1 && kept[0].first == 1.0 && std::abs(c0) < kPruneTolerance) return kept[0].second;
    if (std::abs(c0) < kPruneTolerance) c0 = 0.0;
    return std::make_shared<SumNode>(std::move(kept), c0);
}

Coeff multiply(const Coeff& a, const Coeff& b) {
    if (!a || !b) return nullptr;
    if (a->is_constant() && b->is_constant()) return make_constant(a->constant_value() * b->constant_value());
    if (a->is_constant()) return scaled(b, a->constant_value());
    if (b->is_constant()) return scaled(a, b->constant_value());
    std::vector<Coeff> factors;
    for (const auto& x : {a, b}) {
        if (auto p = std::dynamic_pointer_cast<const ProductNode>(x))
            factors.insert(factors.end(), p->factors().begin(), p->factors().end());
        else
            factors.push_back(x);
    }
    return std::make_shared<ProductNode>(std::move(factors));
}

Coeff scaled(const Coeff& a, cplx c) {
    if (!a || c == 0.0) return nullptr;
    if (c == 1.0) return a;
    if (a->is_constant()) return make_constant(c * a->constant_value());
    return linear_combination({{c, a}});
}

Coeff weighted(const Coeff& a, WeightPtr weight) {
    if (!a) return nullptr;
    return std::make_shared<WeightNode>(a, std::move(weight));
}

Coeff divide_by_free_difference(const Coeff& a, const Point& theta, double w) {
    if (!a) return nullptr;
    return std::make_shared<QuotientNode>(a, theta, w);
}

Symbol::Symbol(int d, std::vector<Term> terms, double order, bool self_adjoint)
    : d_(d), order_(order), self_adjoint_(self_adjoint) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare_points(a.theta, b.theta) < 0; });
    for (auto& t : terms) {
        if (!t.coeff) continue;
        if (!terms_.empty() && same_point(terms_.back().theta, t.theta)) {
            terms_.back().coeff = linear_combination({{1.0, terms_.back().coeff}, {1.0, t.coeff}});
            if (!terms_.back().coeff) terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
}

Symbol Symbol::with_order(double order) const {
    Symbol s = *this;
    s.order_ = order;
    return s;
}

Symbol Symbol::with_self_adjoint(bool flag) const {
    Symbol s = *this;
    s.self_adjoint_ = flag;
    return s;
}

const Term* Symbol::find(const Point& theta) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), theta,
                               [](const Term& t, const Point& p) { return compare_points(t.theta, p) < 0; });
    if (it != terms_.end() && same_point(it->theta, theta)) return &*it;
    return nullptr;
}

std::vector<Point> Symbol::frequencies() const {
    std::vector<Point> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.theta);
    return out;
}

cplx Symbol::coeff(const Point& theta, const Point& xi) const {
    const Term* t = find(theta);
    return t ? t->coeff->eval(xi) : cplx(0.0);
}

cplx Symbol::coeff_ray(const Point& theta, const RayArg& arg) const {
    const Term* t = find(theta);
    return t ? t->coeff->eval_ray(arg) : cplx(0.0);
}

double default_C0(const FrequencySet& freqs) {
    double m = 0.0;
    for (const auto& f : freqs.elements()) m = std::max(m, f.coords.norm());
    return m > 0 ? 4.0 * m : 4.0;
}

Symbol build_symbol(const OperatorSpec& spec) {
    if (spec.frequencies.dim() != spec.d) fail_config("frequency set dimension differs from d");
    if (auto e = spec.frequencies.validation_error(); !e.empty()) fail_config(e);
    if (!(spec.kappa >= 0 && spec.kappa < 2 * spec.w)) fail_config("order bound 0 <= kappa < 2w violated");
    double C0 = spec.C0 > 0 ? spec.C0 : default_C0(spec.frequencies);

    // theta index -> iota -> entries
    std::map<std::size_t, std::map<double, std::vector<RadialEntry>>> grouped;
    for (const auto& term : spec.terms) {
        if (term.iota > spec.kappa + 1e-12)
            fail_config("radial term exponent iota = " + std::to_string(term.iota) + " exceeds kappa = " + std::to_string(spec.kappa));
        for (const auto& c : term.coeffs) {
            if (c.theta.size() != spec.d) fail_config("coefficient frequency has wrong dimension");
            auto idx = spec.frequencies.find(c.theta);
            if (!idx) fail_config("coefficient frequency is not in the declared frequency set");
            std::vector<int> tau = c.tau.empty() ? std::vector<int>(static_cast<std::size_t>(spec.d), 0) : c.tau;
            if (static_cast<int>(tau.size()) != spec.d) fail_config("multi-index tau must have d entries");
            for (int t : tau)
                if (t < 0) fail_config("multi-index tau must be non-negative");
            grouped[*idx][term.iota].push_back({tau, c.value});
        }
    }

    std::vector<Term> terms;
    for (auto& [idx, layers_by_iota] : grouped) {
        std::vector<RadialLayer> layers;
        for (auto& [iota, entries] : layers_by_iota) layers.push_back({iota, std::move(entries)});
        Coeff node = make_radial(std::move(layers), C0);
        if (node) terms.push_back({spec.frequencies.elements()[idx].coords, node});
    }
    Symbol b(spec.d, std::move(terms), spec.kappa, spec.self_adjoint);
    if (spec.self_adjoint) {
        double defect = check_symmetry(b, 200, 0x5EED, 8.0 * C0);
        if (defect > 1e-12)
            fail_config("coefficients violate the self-adjointness symmetry (defect " + std::to_string(defect) + ")");
    }
    return b;
}

Symbol free_symbol(int d, double w) { return Symbol(d, {Term{Point::Zero(d), make_free(w)}}, 2.0 * w, true); }

}  // namespace gids
