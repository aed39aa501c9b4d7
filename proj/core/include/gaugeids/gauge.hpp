#pragma once

#include <cstdint>
#include <vector>

#include "gaugeids/cutoffs.hpp"
#include "gaugeids/symbol.hpp"

namespace gids {

// e * phi / (|xi + theta|^{2w} - |xi|^{2w}); zero for theta = 0 and off the support.
double chi_tilde(const Point& theta, const Point& xi, const CutoffFamily& cf, double w);

// Psi with coefficients i a(theta, xi) chi_tilde(theta, xi), so that ad(H_0; Psi) + a^natural = 0.
Symbol solve_commutator_equation(const Symbol& a, const CutoffFamily& cf, double w);

// ad(A; Psi_1, ..., Psi_N) = i[ad(A; Psi_1, ..., Psi_{N-1}), Psi_N].
Symbol multiple_commutator(const Symbol& a, const std::vector<const Symbol*>& psis);

// All ordered tuples of positive integers summing to total with the given length.
std::vector<std::vector<int>> compositions(int total, int parts);

struct GaugeOptions {
    int probes = 50;
    std::uint64_t seed = 0x6A06E;
};

struct GaugeResult {
    std::vector<Symbol> psi;      // Psi_1 .. Psi_k
    std::vector<Symbol> b_terms;  // B_1 .. B_k
    std::vector<Symbol> t_terms;  // T_1 .. T_k; T_1 is zero
    Symbol y;
    Symbol w;
    std::vector<double> residuals;  // per level, max relative defect over probes
};

// Relative defect ||(ad(H_0; psi) + a^natural) e_nu|| / ||a^natural e_nu||, maximised over probes.
double commutator_residual(const Symbol& psi, const Symbol& a, const CutoffFamily& cf, double w,
                           const std::vector<Point>& probes);
// Random probes in the shell rho_n/3 <= |nu| <= 8 rho_n.
std::vector<Point> shell_probes(int d, double rho_n, int count, std::uint64_t seed);

GaugeResult gauge_recursion(const Symbol& b, const CutoffFamily& cf, double w, int k_tilde,
                            const GaugeOptions& opts = {});

struct SupportSample {
    Point theta;
    Point xi;
};
// max |w(theta, xi)| over samples the caller has selected as violating configurations.
double w_support_check(const GaugeResult& gr, const std::vector<SupportSample>& samples);

}  // namespace gids
