#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaugeids/fit.hpp"
#include "gaugeids/gauge.hpp"
#include "gaugeids/ids.hpp"
#include "gaugeids/oracle.hpp"
#include "gaugeids/symbol.hpp"

namespace gids::app {

enum class Engine { gauge, oracle, both, free };

struct IdsSection {
    std::vector<double> lambdas;
    Engine engine = Engine::gauge;
    VolumeOptions volume;
    FloquetOptions oracle;
};

struct FitSection {
    double rho_min = 0.0, rho_max = 0.0;  // 0 selects [rho_n, 4 rho_n]
    int samples = 60;
    std::vector<FitTerm> basis;            // empty selects the automatic basis
    int h_max = 1, j_max = 2, q_max = 1;
    double gamma_min = -1.0;
    Engine source = Engine::oracle;
    std::string csv;  // ids CSV to fit instead of computing samples
};

struct RegionsSection {
    int samples = 10000;
    std::uint64_t seed = 0x5EED;
    double shell_lo = 2.0 / 3.0, shell_hi = 6.0;  // units of rho_n
};

struct SymbolsSection {
    double norm_alpha = 0.0;
    double norm_l = 0.0;
    int norm_s = 2;
    int radii = 64;
};

struct Tolerances {
    double residual = 1e-8;
    bool condition_a = true;
};

struct RunConfig {
    OperatorSpec op;
    ScaleParams scale;
    IdsSection ids;
    FitSection fit;
    GaugeOptions gauge;
    RegionsSection regions;
    SymbolsSection symbols;
    Tolerances tol;
};

// Throws Error(config) with line/column for syntax errors and names offending keys.
// The scale chain is not validated here; commands call ScaleParams::validate.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace gids::app
