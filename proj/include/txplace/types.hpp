#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace txplace {

// Row-major so that raster iteration (y outer, x inner) walks memory linearly.
using GridReal = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using GridByte = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using GridWord = Eigen::Array<std::uint16_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ScoreVec = Eigen::ArrayXd;

/// Pixel position on a grid, (y, x) with y the row index.
struct Placement {
    int y = 0;
    int x = 0;

    friend bool operator==(const Placement& a, const Placement& b) = default;
};

/// Raster (y-major) ordering, the tie-break order used throughout.
inline bool raster_less(const Placement& a, const Placement& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

inline std::int64_t raster_index(const Placement& p, int width) {
    return static_cast<std::int64_t>(p.y) * width + p.x;
}

}  // namespace txplace
