#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gaugeids/frequency.hpp"
#include "gaugeids/types.hpp"

namespace gids {

// Argument on the complexified ray base + z * dir. Real evaluation is the
// special case dir = 0. Cut-off weights only ever see the real point.
struct RayArg {
    Point base;
    Point dir;
    cplx z{0.0, 0.0};

    Point real_point() const { return base + z.real() * dir; }
    CPoint complex_point() const { return base.cast<cplx>() + z * dir.cast<cplx>(); }
    // Analytic continuation of |base + z dir|^2.
    cplx modulus_sq() const { return base.squaredNorm() + 2.0 * z * base.dot(dir) + z * z * dir.squaredNorm(); }
    RayArg shifted(const Point& s) const { return {Point(base + s), dir, z}; }
};

// Immutable expression node for a Fourier coefficient xi -> b(theta, xi).
class CoeffNode {
public:
    virtual ~CoeffNode() = default;
    virtual cplx eval(const Point& xi) const = 0;
    virtual cplx eval_ray(const RayArg& arg) const = 0;
    virtual bool is_constant() const { return false; }
    virtual cplx constant_value() const { return {0.0, 0.0}; }
};

// nullptr stands for the identically zero coefficient.
using Coeff = std::shared_ptr<const CoeffNode>;

// Real-valued multiplier such as a product of cut-offs.
class Weight {
public:
    virtual ~Weight() = default;
    virtual double at(const Point& xi) const = 0;
};
using WeightPtr = std::shared_ptr<const Weight>;

inline constexpr double kPruneTolerance = 1e-14;

// Smooth glue from 0 (r <= C0/2) to 1 (r >= C0) built from exp(-1/t).
double radial_step(double r, double C0);
// chi(r) = r for r >= C0, 0 for r <= C0/2.
double radial_cutoff(double r, double C0);
// Weight multiplying the radial term of homogeneity iota.
double radial_weight(double iota, double r, double C0);

// |xi + theta|^{2w} - |xi|^{2w} without cancellation of the leading terms.
double free_difference(const Point& xi, const Point& theta, double w);
cplx free_difference(const RayArg& arg, const Point& theta, double w);

struct RadialEntry {
    std::vector<int> tau;  // multi-index in N_0^d
    cplx value;
};
struct RadialLayer {
    double iota = 0.0;
    std::vector<RadialEntry> entries;
};

Coeff make_constant(cplx c);
Coeff make_radial(std::vector<RadialLayer> layers, double C0);
Coeff make_free(double w);
Coeff make_free_difference(double w, const Point& theta);
Coeff shifted(const Coeff& node, const Point& s);
// node(xi + s) - node(xi); exact zero for constants.
Coeff difference(const Coeff& node, const Point& s);
Coeff linear_combination(const std::vector<std::pair<cplx, Coeff>>& parts);
Coeff multiply(const Coeff& a, const Coeff& b);
Coeff scaled(const Coeff& a, cplx c);
Coeff weighted(const Coeff& a, WeightPtr weight);
// a(xi) / (|xi + theta|^{2w} - |xi|^{2w}); the caller guarantees the quotient
// is only evaluated where the denominator is nonzero (e.g. under a weight).
Coeff divide_by_free_difference(const Coeff& a, const Point& theta, double w);

struct Term {
    Point theta;
    Coeff coeff;
};

class Symbol {
public:
    explicit Symbol(int d = 1) : d_(d) {}
    // Duplicate frequencies are merged by summation; zero coefficients dropped.
    Symbol(int d, std::vector<Term> terms, double order = 0.0, bool self_adjoint = false);

    int dim() const { return d_; }
    double order() const { return order_; }
    bool self_adjoint() const { return self_adjoint_; }
    Symbol with_order(double order) const;
    Symbol with_self_adjoint(bool flag) const;

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    const Term* find(const Point& theta) const;
    std::vector<Point> frequencies() const;

    cplx coeff(const Point& theta, const Point& xi) const;
    cplx coeff_ray(const Point& theta, const RayArg& arg) const;

private:
    int d_;
    std::vector<Term> terms_;
    double order_ = 0.0;
    bool self_adjoint_ = false;
};

struct RadialCoeffSpec {
    Point theta;
    std::vector<int> tau;
    cplx value;
};
struct RadialTermSpec {
    double iota = 0.0;
    std::vector<RadialCoeffSpec> coeffs;
};
struct OperatorSpec {
    int d = 1;
    double w = 1.0;
    double kappa = 0.0;
    double C0 = 0.0;  // <= 0 selects the default 4 max|theta|
    FrequencySet frequencies;
    std::vector<RadialTermSpec> terms;
    bool self_adjoint = true;
};

double default_C0(const FrequencySet& freqs);

// Radial-classical symbol of the perturbation; order kappa.
Symbol build_symbol(const OperatorSpec& spec);
// The symbol |xi|^{2w} of the unperturbed operator.
Symbol free_symbol(int d, double w);

}  // namespace gids
