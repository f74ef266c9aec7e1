#pragma once

#include <map>
#include <string>
#include <vector>

#include "tempcorr/io.hpp"

namespace tempcorr {

// Data behind the named study figures (fig2..fig7), evaluated from the
// closed forms with each figure's canonical parameters as defaults.
// Overrides may replace lambda/r/theta/delta/p/mu where the figure uses
// them. points controls the grid resolution of the sweep axis.
Table figure_table(const std::string& name,
                   const std::map<std::string, double>& overrides = {},
                   int points = 200);

std::vector<std::string> figure_names();

}  // namespace tempcorr
