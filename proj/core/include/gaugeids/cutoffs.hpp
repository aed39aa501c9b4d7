#pragma once

#include "gaugeids/scale_params.hpp"
#include "gaugeids/symbol.hpp"

namespace gids {

// C-infinity step: 1 on (-inf, 1], 0 on [21/20, inf), strictly decreasing between.
double smooth_step(double z);

enum class CutoffKind {
    natural,       // e * phi
    flat,          // e * zeta
    large_energy,  // l^>
    small_energy,  // l^<
    non_natural,   // 1 - e * phi
};

class CutoffFamily {
public:
    explicit CutoffFamily(const ScaleParams& sp) : rho_n_(sp.rho_n), beta_(sp.beta), C0_(sp.C0) {}
    CutoffFamily(double rho_n, double beta, double C0) : rho_n_(rho_n), beta_(beta), C0_(C0) {}

    double rho_n() const { return rho_n_; }
    double beta() const { return beta_; }

    double e(const Point& theta, const Point& xi) const;
    double ell_gt(const Point& theta, const Point& xi) const;
    double ell_lt(const Point& theta, const Point& xi) const;
    double zeta(const Point& theta, const Point& xi) const;
    double phi(const Point& theta, const Point& xi) const { return 1.0 - zeta(theta, xi); }
    double chi(double r) const { return radial_cutoff(r, C0_); }

    // Value of the given product of cut-offs; theta = 0 gives 0 for natural and
    // flat (those parts only run over nonzero frequencies).
    double value(CutoffKind kind, const Point& theta, const Point& xi) const;
    WeightPtr weight(CutoffKind kind, const Point& theta) const;

private:
    double rho_n_;
    double beta_;
    double C0_;
};

struct SymbolSplit {
    Symbol o, down, flat, natural, le;
    Symbol sum() const;
};

// Multiplies every nonzero-frequency coefficient by the selected cut-off.
Symbol cut(const Symbol& b, const CutoffFamily& cf, CutoffKind kind);
SymbolSplit partition_symbol(const Symbol& b, const CutoffFamily& cf);

}  // namespace gids
