#include <doctest.h>

#include <txplace/grid.hpp>

#include "helpers.hpp"

#include <stdexcept>
#include <vector>

using namespace txplace;

TEST_CASE("building map validates dimensions and cell values") {
    CHECK_THROWS_AS(BuildingMap(free_grid(3, 8), "x"), std::invalid_argument);
    CHECK_THROWS_AS(BuildingMap(free_grid(8, 3), "x"), std::invalid_argument);
    GridByte bad = free_grid(4, 4);
    bad(1, 2) = 7;
    CHECK_THROWS_AS(BuildingMap(std::move(bad), "x"), std::invalid_argument);

    BuildingMap ok = free_map(4, 5, "ok");
    CHECK(ok.width() == 5);
    CHECK(ok.height() == 4);
    CHECK(ok.is_free(0, 0));
    CHECK(ok.in_bounds(3, 4));
    CHECK(!ok.in_bounds(4, 0));
    CHECK(!ok.in_bounds(0, -1));
}

TEST_CASE("feasible region covers the central window in raster order") {
    FeasibleRegion fr = feasible_region(free_map(8, 8), 3);
    CHECK(fr.margin == 3);
    CHECK(fr.members == std::vector<Placement>{{3, 3}, {3, 4}, {4, 3}, {4, 4}});
    CHECK(fr.size() == 4);
    CHECK(fr.contains({4, 4}));
    CHECK(!fr.contains({2, 3}));
    CHECK(fr.index_of({4, 3}) == 2);
    CHECK(fr.index_of({0, 0}) == -1);
}

TEST_CASE("feasible region drops occupied pixels") {
    GridByte g = free_grid(8, 8);
    g(3, 4) = 1;
    FeasibleRegion fr = feasible_region(BuildingMap(std::move(g), "m"), 3);
    CHECK(fr.members == std::vector<Placement>{{3, 3}, {4, 3}, {4, 4}});
}

TEST_CASE("all-occupied window gives an empty region") {
    GridByte g = free_grid(8, 8);
    for (int y = 2; y < 6; ++y)
        for (int x = 2; x < 6; ++x) g(y, x) = 1;
    CHECK(feasible_region(BuildingMap(std::move(g), "m"), 2).empty());
}

TEST_CASE("256x256 all-free map with margin 53 has 22500 candidates") {
    CHECK(feasible_region(free_map(256, 256, "big"), 53).size() == 22500);
}

TEST_CASE("all-free window size is (w-2m)(h-2m)") {
    CHECK(feasible_region(free_map(32, 32), 8).size() == 16 * 16);
    CHECK(feasible_region(free_map(24, 16), 4).size() == 16 * 8);
}

TEST_CASE("margin validation") {
    BuildingMap map = free_map(8, 8);
    CHECK_THROWS_AS(feasible_region(map, -1), std::invalid_argument);
    CHECK_THROWS_AS(feasible_region(map, 4), std::invalid_argument);
    CHECK(feasible_region(map, 0).size() == 64);
}

TEST_CASE("feasible region is idempotent and duplicate-free") {
    BuildingMap map = generate_building_map(9, 16, 16, 0.3);
    FeasibleRegion a = feasible_region(map, 4);
    FeasibleRegion b = feasible_region(map, 4);
    CHECK(a == b);
    for (std::size_t i = 1; i < a.members.size(); ++i)
        CHECK(raster_less(a.members[i - 1], a.members[i]));
}

TEST_CASE("map generation is deterministic in the seed") {
    BuildingMap a = generate_building_map(7, 32, 32, 0.3);
    BuildingMap b = generate_building_map(7, 32, 32, 0.3);
    BuildingMap c = generate_building_map(8, 32, 32, 0.3);
    CHECK((a.cells == b.cells).all());
    CHECK(!(a.cells == c.cells).all());
}

TEST_CASE("zero density generates an all-free map") {
    BuildingMap m = generate_building_map(1, 32, 32, 0.0);
    CHECK((m.cells == 0).all());
}

TEST_CASE("generation hits roughly the requested density") {
    BuildingMap m = generate_building_map(3, 64, 64, 0.25);
    double occupied = static_cast<double>((m.cells != 0).count()) / (64.0 * 64.0);
    CHECK(occupied >= 0.25);
    CHECK(occupied <= 0.40);
}

TEST_CASE("generation parameter validation") {
    CHECK_THROWS_AS(generate_building_map(1, 3, 8, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(generate_building_map(1, 8, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(generate_building_map(1, 8, 8, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(generate_building_map(1, 8, 8, 0.1, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(generate_building_map(1, 8, 8, 0.1, {5, 4}), std::invalid_argument);
}
