#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace gids::app {

struct CommandOutput {
    int exit_code = 0;
    std::string text;
};

// (rho, N) pairs from an ids CSV, keeping rows of the given method; rho = lambda^{1/(2w)}.
std::vector<std::pair<double, double>> read_ids_csv(const std::string& text, double w, IdsMethod method);

CommandOutput cmd_validate(const RunConfig& cfg);
CommandOutput cmd_symbols(const RunConfig& cfg);
CommandOutput cmd_gauge(const RunConfig& cfg);
CommandOutput cmd_regions(const RunConfig& cfg);
CommandOutput cmd_ids(const RunConfig& cfg);
CommandOutput cmd_fit(const RunConfig& cfg);

}  // namespace gids::app
