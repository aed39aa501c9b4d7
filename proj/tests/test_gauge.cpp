#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gaugeids/calculus.hpp"
#include "gaugeids/cutoffs.hpp"
#include "gaugeids/gauge.hpp"
#include "support.hpp"

using namespace gids;
using gids::testing::pt;

namespace {

ScaleParams toy_params(double rho_n = 200.0) {
    ScaleParams sp = default_scale_params(2);
    sp.rho_n = rho_n;
    sp.C0 = 4.0;
    sp.k_tilde = 2;
    return sp;
}

Symbol toy_symbol(double amp = 1.0) { return build_symbol(gids::testing::cosine_spec(2, 1.0, {0}, amp, 4.0)); }

}  // namespace

TEST(SmoothStep, PlateausAndMonotoneGlue) {
    EXPECT_EQ(smooth_step(0.5), 1.0);
    EXPECT_EQ(smooth_step(2.0), 0.0);
    EXPECT_EQ(smooth_step(1.0), 1.0);
    EXPECT_EQ(smooth_step(1.05), 0.0);
    const double mid = smooth_step(1.025);
    EXPECT_GT(mid, 0.0);
    EXPECT_LT(mid, 1.0);
    EXPECT_GT(smooth_step(1.01), smooth_step(1.04));
    for (double z = 1.0; z < 1.05; z += 0.001) EXPECT_GE(smooth_step(z), smooth_step(z + 0.001));
}

TEST(Partition, ZeroFrequencyOnlySymbolStaysInTheMeanPart) {
    const CutoffFamily cf(toy_params());
    const Symbol b(2, {Term{pt({0, 0}), make_constant(3.0)}}, 0.0, true);
    const SymbolSplit s = partition_symbol(b, cf);
    EXPECT_EQ(s.o.size(), 1u);
    EXPECT_TRUE(s.down.is_zero());
    EXPECT_TRUE(s.flat.is_zero());
    EXPECT_TRUE(s.natural.is_zero());
    EXPECT_TRUE(s.le.is_zero());
}

TEST(Partition, PartsSumToTheSymbol) {
    const ScaleParams sp = toy_params(20.0);
    const CutoffFamily cf(sp);
    const Symbol b = build_symbol(gids::testing::cosine_spec(2, 1.0, {0, 1}, 0.3, 4.0));
    const Symbol total = partition_symbol(b, cf).sum();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-400.0, 400.0);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(b.size()) - 1);
    for (int i = 0; i < 100; ++i) {
        const Point xi = pt({u(rng), u(rng)});
        const Point theta = b.terms()[static_cast<std::size_t>(pick(rng))].theta;
        EXPECT_NEAR(std::abs(total.coeff(theta, xi) - b.coeff(theta, xi)), 0.0, 1e-14);
    }
}

TEST(Partition, NonResonantShellPointIsNatural) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const SymbolSplit s = partition_symbol(toy_symbol(0.5), cf);
    const Point theta = pt({1, 0});
    // |xi + theta/2| = 4 rho_n with the projection on theta far above 2 rho_n^beta.
    const Point mid = 4.0 * sp.rho_n * pt({std::cos(0.3), std::sin(0.3)});
    const Point xi = mid - 0.5 * theta;
    ASSERT_GT(std::abs(theta.dot(mid)), 2.0 * std::pow(sp.rho_n, sp.beta));
    EXPECT_NEAR(std::abs(s.natural.coeff(theta, xi) - 0.5), 0.0, 1e-15);
    EXPECT_EQ(s.flat.coeff(theta, xi), cplx(0.0, 0.0));
}

TEST(ChiTilde, VanishesAtZeroAndOffTheShell) {
    const CutoffFamily cf(toy_params());
    EXPECT_EQ(chi_tilde(pt({0, 0}), pt({500, 0}), cf, 1.0), 0.0);
    EXPECT_EQ(chi_tilde(pt({1, 0}), pt({50, 0}), cf, 1.0), 0.0);
    EXPECT_EQ(chi_tilde(pt({1, 0}), pt({5000, 0}), cf, 1.0), 0.0);
}

TEST(ChiTilde, QuadraticCaseInvertsTheLinearDifference) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const Point theta = pt({1, 0});
    for (double angle : {0.0, 0.4, 1.0, 2.5}) {
        const Point xi = 3.0 * sp.rho_n * pt({std::cos(angle), std::sin(angle)});
        if (cf.value(CutoffKind::natural, theta, xi) != 1.0) continue;
        EXPECT_NEAR(chi_tilde(theta, xi, cf, 1.0), 1.0 / (2.0 * xi.dot(theta) + 1.0), 1e-15);
    }
}

TEST(CommutatorEquation, ZeroInputGivesZero) {
    const CutoffFamily cf(toy_params());
    EXPECT_TRUE(solve_commutator_equation(Symbol(2), cf, 1.0).is_zero());
}

TEST(CommutatorEquation, SingleFrequencyClosedForm) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const Point theta = pt({1, 0});
    const Symbol a(2, {Term{theta, make_constant(cplx(0.7, 0.2))}});
    const Symbol psi = solve_commutator_equation(a, cf, 1.0);
    for (const auto& xi : shell_probes(2, sp.rho_n, 40, 17)) {
        const double m = cf.value(CutoffKind::natural, theta, xi);
        const cplx want = cplx(0.0, 1.0) * cplx(0.7, 0.2) * m / (2.0 * xi.dot(theta) + 1.0);
        EXPECT_NEAR(std::abs(psi.coeff(theta, xi) - want), 0.0, 1e-15);
    }
}

TEST(CommutatorEquation, ResidualOnProbeExponentials) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    for (double w : {1.0, 1.5}) {
        const Symbol a = toy_symbol();
        const Symbol psi = solve_commutator_equation(a, cf, w);
        EXPECT_LT(commutator_residual(psi, a, cf, w, shell_probes(2, sp.rho_n, 50, 5)), 1e-8) << w;
    }
}

TEST(Compositions, CountsMatchBinomials) {
    EXPECT_EQ(compositions(4, 2).size(), 3u);
    EXPECT_EQ(compositions(5, 3).size(), 6u);
    EXPECT_TRUE(compositions(2, 3).empty());
    for (const auto& c : compositions(6, 3)) {
        int s = 0;
        for (int v : c) s += v;
        EXPECT_EQ(s, 6);
    }
}

TEST(GaugeRecursion, ZeroSymbolStaysZero) {
    const CutoffFamily cf(toy_params());
    const GaugeResult gr = gauge_recursion(Symbol(2).with_self_adjoint(true), cf, 1.0, 3);
    ASSERT_EQ(gr.psi.size(), 3u);
    for (std::size_t l = 0; l < 3; ++l) {
        EXPECT_TRUE(gr.psi[l].is_zero());
        EXPECT_TRUE(gr.b_terms[l].is_zero());
        EXPECT_TRUE(gr.t_terms[l].is_zero());
        EXPECT_EQ(gr.residuals[l], 0.0);
    }
    EXPECT_TRUE(gr.y.is_zero());
    EXPECT_TRUE(gr.w.is_zero());
}

TEST(GaugeRecursion, OneStepKeepsTheSymbol) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const Symbol b = toy_symbol();
    const GaugeResult gr = gauge_recursion(b, cf, 1.0, 1);
    const Symbol expect_w = subtract(b, cut(b, cf, CutoffKind::natural));
    for (const auto& xi : shell_probes(2, sp.rho_n, 30, 8))
        for (const auto& t : b.terms()) {
            EXPECT_NEAR(std::abs(gr.y.coeff(t.theta, xi) - b.coeff(t.theta, xi)), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(gr.w.coeff(t.theta, xi) - expect_w.coeff(t.theta, xi)), 0.0, 1e-15);
        }
}

TEST(GaugeRecursion, SecondLevelTermsFollowFromTheFirstEquation) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const Symbol b = toy_symbol();
    const GaugeResult gr = gauge_recursion(b, cf, 1.0, 2);
    const Symbol& psi1 = gr.psi[0];
    const Symbol b2 = commutator(b, psi1);
    const Symbol t2_alt = scale(commutator(cut(b, cf, CutoffKind::natural), psi1), -0.5);
    for (const auto& xi : shell_probes(2, sp.rho_n, 40, 9)) {
        for (const auto& t : gr.b_terms[1].terms())
            EXPECT_NEAR(std::abs(gr.b_terms[1].coeff(t.theta, xi) - b2.coeff(t.theta, xi)), 0.0, 1e-14);
        for (const auto& t : gr.t_terms[1].terms()) {
            const cplx lhs = gr.t_terms[1].coeff(t.theta, xi), rhs = t2_alt.coeff(t.theta, xi);
            EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST(GaugeRecursion, ResidualsSmallForTheToy) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const GaugeResult gr = gauge_recursion(toy_symbol(), cf, 1.0, 3);
    for (double r : gr.residuals) EXPECT_LT(r, 1e-8);
    for (const auto& bl : gr.b_terms) EXPECT_LT(check_symmetry(bl, 64, 3, 8.0 * sp.rho_n), 1e-12);
}

TEST(GaugeRecursion, RejectsBadInput) {
    const CutoffFamily cf(toy_params());
    EXPECT_THROW(gauge_recursion(toy_symbol(), cf, 1.0, 0), Error);
    EXPECT_THROW(gauge_recursion(toy_symbol().with_self_adjoint(false), cf, 1.0, 2), Error);
}

TEST(GaugeSupport, PerturbationVanishesOffItsFrequenciesAndOutsideTheSlab) {
    const ScaleParams sp = toy_params();
    const CutoffFamily cf(sp);
    const GaugeResult gr = gauge_recursion(toy_symbol(), cf, 1.0, 2);
    const double L1 = sp.L(1);
    std::vector<SupportSample> off_freq, off_slab;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int i = 0; i < 100; ++i) {
        const Point xi = 3.0 * sp.rho_n * pt({std::cos(angle(rng)), std::sin(angle(rng))});
        off_freq.push_back({pt({0, 1}), xi});
        off_freq.push_back({pt({3, 0}), xi});
        for (const auto& t : gr.w.terms()) {
            if (t.theta.isZero(0.0)) continue;
            const double proj = std::abs(xi.dot(t.theta)) / t.theta.norm();
            if (proj > L1 + t.theta.norm()) off_slab.push_back({t.theta, xi});
        }
    }
    ASSERT_FALSE(off_slab.empty());
    EXPECT_EQ(w_support_check(gr, off_freq), 0.0);
    EXPECT_LT(w_support_check(gr, off_slab), 1e-10);
}
