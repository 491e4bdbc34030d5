#pragma once

#include <txplace/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace txplace {

/// Binary occupancy grid describing the environment geometry.
/// Cells are 0 (free) or 1 (occupied); grids smaller than 4x4 are rejected.
struct BuildingMap {
    GridByte cells;  // 0 = free, 1 = occupied
    std::string id;

    BuildingMap() = default;
    BuildingMap(GridByte cells_, std::string id_);

    int width() const { return static_cast<int>(cells.cols()); }
    int height() const { return static_cast<int>(cells.rows()); }

    bool in_bounds(int y, int x) const {
        return y >= 0 && y < height() && x >= 0 && x < width();
    }
    bool occupied(int y, int x) const { return cells(y, x) != 0; }
    bool is_free(int y, int x) const { return cells(y, x) == 0; }
};

/// The free pixels inside the central window (margin excluded on all sides),
/// raster-ordered. Objectives are averaged over this set and transmitter
/// candidates are drawn from it.
struct FeasibleRegion {
    int margin = 0;
    std::vector<Placement> members;  // strictly increasing in raster order

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }

    /// Index of p in members, or -1 if absent. O(log n); members are sorted.
    std::ptrdiff_t index_of(const Placement& p) const;
    bool contains(const Placement& p) const { return index_of(p) >= 0; }

    friend bool operator==(const FeasibleRegion& a, const FeasibleRegion& b) = default;
};

FeasibleRegion feasible_region(const BuildingMap& map, int margin);

struct BlockSizeRange {
    int lo = 2;
    int hi = 6;
};

/// Deterministic synthetic map: axis-aligned rectangular blocks are placed
/// until the occupied fraction reaches `density` or the placement budget
/// runs out. Identical (seed, dims, density, range) give bit-identical maps
/// on every platform.
BuildingMap generate_building_map(std::uint64_t seed, int width, int height, double density,
                                  BlockSizeRange block_size = {});

}  // namespace txplace
