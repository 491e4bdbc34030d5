#pragma once

#include <txplace/grid.hpp>
#include <txplace/oracle.hpp>
#include <txplace/propagation.hpp>
#include <txplace/types.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace txplace {

// ---------------------------------------------------------------------------
// PGM (P5, binary)
// ---------------------------------------------------------------------------

struct PgmImage {
    int width = 0;
    int height = 0;
    int maxval = 255;
    GridWord samples;  // 16-bit samples are stored big-endian on disk
};

PgmImage read_pgm(const std::string& path);
void write_pgm8(const GridByte& samples, const std::string& path);
void write_pgm16(const GridWord& samples, const std::string& path);

void write_building_map(const BuildingMap& map, const std::string& path);
BuildingMap read_building_map(const std::string& path, std::string id);

// Rounds half-up to 8-bit for inspection; the pipeline itself exchanges the
// real-valued maps.
void write_radio_map_pgm(const RadioMap& rm, const std::string& path);

// ---------------------------------------------------------------------------
// Score maps: raw little-endian f64 stream + structured-text sidecar
// ---------------------------------------------------------------------------

void write_score_map(const NormalizedScoreMap& nsm, const std::string& path);
NormalizedScoreMap read_score_map(const std::string& path,
                                  std::shared_ptr<const FeasibleRegion> region);

// ---------------------------------------------------------------------------
// Ground truth and manifests
// ---------------------------------------------------------------------------

struct GroundTruthRecord {
    std::string map_id;
    int margin = 0;
    std::int64_t region_size = 0;
    std::string evaluator;  // config fingerprint of the model that produced the labels
    DualOptimum optima;
};

void write_ground_truth(const GroundTruthRecord& gt, const std::string& path);
GroundTruthRecord read_ground_truth(const std::string& path);

struct ScenarioRecord {
    std::string id;
    std::string map_path;
    std::string power_scores = "-";
    std::string coverage_scores = "-";
    std::string ground_truth = "-";
    std::string split = "-";  // train | val | test | -
};

struct Manifest {
    std::vector<ScenarioRecord> scenarios;  // sorted by id, ids unique
};

// Paths inside a manifest are relative to the manifest's directory.
void write_manifest(const Manifest& m, const std::string& path);
Manifest read_manifest(const std::string& path);

struct SplitFractions {
    double train = 0.8;
    double val = 0.1;
    double test = 0.1;
};

void make_splits(Manifest& m, std::uint64_t seed, SplitFractions fractions = {});

// ---------------------------------------------------------------------------
// External predictions
// ---------------------------------------------------------------------------

struct Prediction {
    ScoreVec values;    // one score per region member, raster order
    int bit_depth = 0;  // 8 or 16 for PGM inputs, 64 for raw-float score maps
};

// Accepts either a full-grid PGM (masked to the region) or a raw-float score
// map produced by write_score_map.
Prediction read_prediction(const std::string& path, const FeasibleRegion& region, int width,
                           int height);

}  // namespace txplace
