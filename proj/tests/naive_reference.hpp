#pragma once

// Deliberately naive re-implementation of the scoring pipeline, kept apart
// from the library so the two can disagree. Everything is a plain double loop
// and the line traversal is done by exact integer geometry instead of an
// incremental error term.

#include <txplace/grid.hpp>
#include <txplace/propagation.hpp>

#include <vector>

namespace naive {

struct Scores {
    std::vector<txplace::Placement> candidates;  // raster order
    std::vector<double> power;
    std::vector<double> coverage;
};

struct Optima {
    txplace::Placement power_opt, cov_opt, balanced_opt;
    double power_val = 0.0;
    double cov_val = 0.0;
    double balanced_d = 0.0;
};

// All grid cells whose closed unit box meets the closed segment between the
// two cell centers.
std::vector<txplace::Placement> supercover_exact(txplace::Placement a, txplace::Placement b);

int wall_count_exact(const txplace::BuildingMap& map, txplace::Placement a, txplace::Placement b);

double radio_value(const txplace::BuildingMap& map, txplace::Placement tx, int y, int x,
                   const txplace::PropagationParams& p, bool walls);

Scores exhaustive_scores(const txplace::BuildingMap& map, int margin,
                         const txplace::PropagationParams& p, bool walls);

Optima optima_of(const Scores& s);

}  // namespace naive
