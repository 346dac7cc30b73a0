#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/states.hpp"

// Plain-text key-value run configuration shared by the CLI subcommands.
// Recognized keys:
//   kind = vacuum | coherent | cat
//   modes = 1 | 2
//   alpha_re = a, b, ...      alpha_im = a, b, ...
//   parity = +1 | -1
//   grid.min, grid.max, grid.points
//   prior = gaussian | custom:<path>
//   tol.<name> = <value>     (tolerance overrides, e.g. tol.norm)
//   seed = <int>
// Unknown keys are rejected.

namespace tomokit {

struct RunConfig {
    std::string kind = "vacuum";
    int modes = 1;
    std::vector<double> alpha_re;
    std::vector<double> alpha_im;
    int parity = +1;
    double grid_min = -8.0;
    double grid_max = 8.0;
    int grid_points = 129;
    std::string prior = "gaussian";
    std::map<std::string, double> tolerances;
    unsigned long seed = 42;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_entries(
        const std::vector<std::pair<std::string, std::string>>& entries);

    std::vector<cdouble> alphas() const;
    Grid1D axis() const { return Grid1D(grid_min, grid_max, grid_points); }
    double tolerance(const std::string& name, double fallback) const;

    // Builds the configured state; "vacuum" maps to coherent with all
    // alphas zero.
    CoherentState coherent() const;
    CatState cat() const;
};

} // namespace tomokit
