#include <doctest.h>

#include <txplace/objectives.hpp>
#include <txplace/propagation.hpp>

#include "helpers.hpp"

#include <cmath>
#include <stdexcept>

using namespace txplace;

namespace {

RadioMap constant_map(int h, int w, double v) {
    RadioMap rm;
    rm.tx = {0, 0};
    rm.values = GridReal::Constant(h, w, v);
    return rm;
}

}  // namespace

TEST_CASE("average power over the feasible region") {
    BuildingMap map = free_map(8, 8);
    FeasibleRegion fr = feasible_region(map, 3);
    REQUIRE(fr.size() == 4);

    CHECK(avg_power(constant_map(8, 8, 42.0), fr) == 42.0);

    RadioMap rm = constant_map(8, 8, 0.0);
    rm.values(3, 3) = 0.0;
    rm.values(3, 4) = 10.0;
    rm.values(4, 3) = 20.0;
    rm.values(4, 4) = 30.0;
    CHECK(avg_power(rm, fr) == 15.0);
}

TEST_CASE("average power rejects an empty region") {
    GridByte g = free_grid(8, 8);
    g(3, 3) = g(3, 4) = g(4, 3) = g(4, 4) = 1;
    BuildingMap map(std::move(g), "blocked");
    FeasibleRegion fr = feasible_region(map, 3);
    REQUIRE(fr.empty());
    CHECK_THROWS_AS(avg_power(constant_map(8, 8, 1.0), fr), std::invalid_argument);
}

TEST_CASE("coverage fraction counts strictly positive pixels") {
    BuildingMap map = free_map(8, 8);
    FeasibleRegion fr = feasible_region(map, 3);

    CHECK(avg_coverage(constant_map(8, 8, 5.0), fr) == 1.0);
    CHECK(avg_coverage(constant_map(8, 8, 0.0), fr) == 0.0);

    RadioMap rm = constant_map(8, 8, 0.0);
    rm.values(3, 3) = 1.0;
    rm.values(4, 4) = 1.0;
    CHECK(avg_coverage(rm, fr) == 0.5);
}

TEST_CASE("percent of optimum") {
    CHECK(percent_of(950.0, 1000.0) == 95.0);
    CHECK(percent_of(190.0, 200.0) == 95.0);
    CHECK(percent_of(123.456, 123.456) == 100.0);
    CHECK_THROWS_AS(percent_of(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(percent_of(1.0, -3.0), std::domain_error);
}

TEST_CASE("instance distance to the ideal corner") {
    CHECK(instance_l2(100.0, 100.0) == 0.0);
    CHECK(instance_l2(97.0, 97.0) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));
    CHECK(instance_l2(100.0, 94.0) == 6.0);
    CHECK(instance_l2(94.0, 100.0) == 6.0);
}

TEST_CASE("dataset distance uses the mean operating point") {
    CHECK(dataset_l2(97.84, 98.55) == doctest::Approx(2.60).epsilon(0.005));
    CHECK(dataset_l2(94.50, 100.0) == doctest::Approx(5.50).epsilon(0.005));
    CHECK(dataset_l2(100.0, 100.0) == 0.0);
}

TEST_CASE("coordinate error is the Euclidean pixel distance") {
    CHECK(coord_error({0, 0}, {3, 4}) == 5.0);
    CHECK(coord_error({3, 4}, {0, 0}) == 5.0);
    CHECK(coord_error({7, 2}, {7, 2}) == 0.0);
}

TEST_CASE("objective pair bundles both aggregates") {
    BuildingMap map = free_map(8, 8);
    FeasibleRegion fr = feasible_region(map, 3);
    RadioMap rm = constant_map(8, 8, 0.0);
    rm.values(3, 3) = 8.0;
    rm.values(4, 4) = 4.0;
    ObjectivePair pair = objective_pair(rm, fr);
    CHECK(pair.avg_power == 3.0);
    CHECK(pair.avg_coverage == 0.5);
}
