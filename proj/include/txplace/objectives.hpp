#pragma once

#include <txplace/grid.hpp>
#include <txplace/propagation.hpp>
#include <txplace/types.hpp>

#include <cmath>
#include <stdexcept>

namespace txplace {

struct ObjectivePair {
    double avg_power = 0.0;     // mean pixel value over the region, [0, 255]
    double avg_coverage = 0.0;  // covered fraction of the region, [0, 1]
};

struct PercentPair {
    double pwr_pct = 0.0;
    double cov_pct = 0.0;
};

// Mean radio-map value over the region members, accumulated in raster order so
// the result is identical no matter how callers parallelize around it.
inline double avg_power(const RadioMap& rm, const FeasibleRegion& region) {
    if (region.empty()) throw std::invalid_argument("avg_power: empty feasible region");
    double sum = 0.0;
    for (const Placement& p : region.members) sum += rm.values(p.y, p.x);
    return sum / static_cast<double>(region.size());
}

// Fraction of region members whose value is strictly positive, i.e. strictly
// above the floor of the dBm band.
inline double avg_coverage(const RadioMap& rm, const FeasibleRegion& region) {
    if (region.empty()) throw std::invalid_argument("avg_coverage: empty feasible region");
    std::int64_t covered = 0;
    for (const Placement& p : region.members)
        if (rm.values(p.y, p.x) > 0.0) ++covered;
    return static_cast<double>(covered) / static_cast<double>(region.size());
}

inline ObjectivePair objective_pair(const RadioMap& rm, const FeasibleRegion& region) {
    return {avg_power(rm, region), avg_coverage(rm, region)};
}

inline double percent_of(double value, double optimum) {
    if (!(optimum > 0.0))
        throw std::domain_error("percent_of: degenerate map, optimum " + std::to_string(optimum) +
                                " is not positive");
    return 100.0 * value / optimum;
}

inline double instance_l2(double cov_pct, double pwr_pct) {
    double dc = 100.0 - cov_pct;
    double dp = 100.0 - pwr_pct;
    return std::sqrt(dc * dc + dp * dp);
}

// Distance of the mean point from (100, 100). This is not the mean of the
// per-instance distances; the two disagree whenever instances are imbalanced.
inline double dataset_l2(double mean_cov_pct, double mean_pwr_pct) {
    return instance_l2(mean_cov_pct, mean_pwr_pct);
}

inline double coord_error(Placement a, Placement b) {
    double dy = static_cast<double>(a.y - b.y);
    double dx = static_cast<double>(a.x - b.x);
    return std::sqrt(dy * dy + dx * dx);
}

}  // namespace txplace
