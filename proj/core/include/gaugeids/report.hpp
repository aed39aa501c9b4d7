#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaugeids/fit.hpp"
#include "gaugeids/ids.hpp"

namespace gids {

struct IdsRow {
    IdsPoint point;
    std::optional<double> discrepancy;  // against a reference engine, when one ran
};

// Header lambda,N,method,err_estimate[,discrepancy]; values printed with 17 significant digits.
std::string ids_csv(const std::vector<IdsRow>& rows);
// {"basis": [[gamma, q], ...], "coeffs": [...], "std_errors": [...], "residual", "cond", "window"}
std::string fit_json(const ExpansionFit& fit);

}  // namespace gids
