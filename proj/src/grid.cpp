#include <txplace/grid.hpp>

#include <txplace/detail/rng.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace txplace {

BuildingMap::BuildingMap(GridByte cells_, std::string id_)
    : cells(std::move(cells_)), id(std::move(id_)) {
    if (width() < 4 || height() < 4)
        throw std::invalid_argument("building map must be at least 4x4, got " +
                                    std::to_string(width()) + "x" + std::to_string(height()));
    for (int y = 0; y < height(); ++y)
        for (int x = 0; x < width(); ++x)
            if (cells(y, x) > 1)
                throw std::invalid_argument("building map cells must be 0 (free) or 1 (occupied)");
}

std::ptrdiff_t FeasibleRegion::index_of(const Placement& p) const {
    auto it = std::lower_bound(members.begin(), members.end(), p,
                               [](const Placement& a, const Placement& b) { return raster_less(a, b); });
    if (it == members.end() || !(*it == p)) return -1;
    return it - members.begin();
}

FeasibleRegion feasible_region(const BuildingMap& map, int margin) {
    if (margin < 0) throw std::invalid_argument("margin must be non-negative");
    if (2 * margin >= std::min(map.width(), map.height()))
        throw std::invalid_argument("margin " + std::to_string(margin) + " leaves no central window on a " +
                                    std::to_string(map.width()) + "x" + std::to_string(map.height()) + " map");
    FeasibleRegion region;
    region.margin = margin;
    for (int y = margin; y < map.height() - margin; ++y)
        for (int x = margin; x < map.width() - margin; ++x)
            if (map.is_free(y, x)) region.members.push_back({y, x});
    return region;
}

BuildingMap generate_building_map(std::uint64_t seed, int width, int height, double density,
                                  BlockSizeRange block_size) {
    if (width < 4 || height < 4) throw std::invalid_argument("map dimensions must be at least 4x4");
    if (density < 0.0 || density >= 1.0) throw std::invalid_argument("density must lie in [0, 1)");
    if (block_size.lo < 1 || block_size.hi < block_size.lo)
        throw std::invalid_argument("invalid block size range");

    GridByte cells = GridByte::Zero(height, width);
    std::mt19937_64 rng(seed);

    const std::int64_t total = static_cast<std::int64_t>(width) * height;
    const std::int64_t target = static_cast<std::int64_t>(density * static_cast<double>(total));
    std::int64_t occupied = 0;

    // Budget caps degenerate parameter combinations; typical densities finish
    // long before it is reached.
    const int max_b = std::min({block_size.hi, width, height});
    const int min_b = std::min(block_size.lo, max_b);
    std::int64_t budget = 16 * total / (static_cast<std::int64_t>(min_b) * min_b) + 64;

    while (occupied < target && budget-- > 0) {
        int bh = static_cast<int>(detail::uniform_int(rng, min_b, max_b));
        int bw = static_cast<int>(detail::uniform_int(rng, min_b, max_b));
        int y0 = static_cast<int>(detail::uniform_int(rng, 0, height - bh));
        int x0 = static_cast<int>(detail::uniform_int(rng, 0, width - bw));
        for (int y = y0; y < y0 + bh; ++y) {
            for (int x = x0; x < x0 + bw; ++x) {
                if (cells(y, x) == 0) {
                    cells(y, x) = 1;
                    ++occupied;
                }
            }
        }
    }
    return BuildingMap(std::move(cells), "gen-" + std::to_string(seed));
}

}  // namespace txplace
