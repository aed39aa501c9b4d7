#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gaugeids/block.hpp"
#include "gaugeids/cutoffs.hpp"
#include "gaugeids/gauge.hpp"
#include "gaugeids/geometry.hpp"

namespace gids {

// pi^{d/2} / Gamma(d/2 + 1)
double unit_ball_volume(int d);
// (2 pi)^{-d} omega_d lambda^{d/(2w)}
double free_ids(double lambda, int d, double w);

struct VolumeOptions {
    std::uint64_t nodes = 1u << 14;
    std::uint64_t seed = 0x1D05;
    double tau_half_width = 0.0;  // <= 0 selects L_d
};

struct RegionVolume {
    int space = -1;
    int K = 0;
    double value = 0.0;       // vol A+ - vol A-, all components of Xi(V)
    double half_value = 0.0;  // same with the first half of the nodes
    double excluded = 0.0;    // error budget from components without a minimal chart
    std::uint64_t nodes = 0;
    std::uint64_t active = 0;  // nodes whose seed lies in Xi(V)
    double error() const;
};

enum class IdsMethod { gauge_volume, floquet_oracle, free_closed_form };
std::string to_string(IdsMethod m);

struct IdsPoint {
    double lambda = 0.0;
    double N = 0.0;
    IdsMethod method = IdsMethod::gauge_volume;
    double err_estimate = 0.0;
};

// Perturbation, gauge transform and resonance geometry for one operator.
class GaugeModel {
public:
    GaugeModel(const Symbol& b, const ScaleParams& sp, const GaugeOptions& gopts = {});

    const ScaleParams& params() const { return sp_; }
    const CutoffFamily& cutoffs() const { return cf_; }
    const GaugeResult& gauge() const { return gauge_; }
    const Symbol& perturbation() const { return gauge_.w; }
    const ResonanceGeometry& geometry() const { return *geometry_; }

    // Membership in the union of classes meeting the shell 5 rho_n / 6 <= |eta| <= 5 rho_n.
    bool in_A(const Point& xi) const;
    // Eigenvalue of rank t(xi) inside A, |xi|^{2w} outside.
    double g(const Point& xi) const;
    Block block_at(const Point& xi) const;

    RegionVolume volume_A_pm(int space, double rho, const VolumeOptions& opts = {}) const;
    IdsPoint ids(double lambda, const VolumeOptions& opts = {}) const;

private:
    ScaleParams sp_;
    CutoffFamily cf_;
    GaugeResult gauge_;
    std::unique_ptr<ResonanceGeometry> geometry_;
};

// Frequencies carrying a nonzero coefficient, together with 0.
FrequencySet symbol_support(const Symbol& b);

}  // namespace gids
