#pragma once

#include <txplace/grid.hpp>
#include <txplace/ledger.hpp>
#include <txplace/types.hpp>

#include <memory>
#include <string>
#include <vector>

namespace txplace {

/// Parameters of the reference propagation models. The pixel band maps
/// [floor_dbm, ceil_dbm] onto pixel values [0, 255].
struct PropagationParams {
    double tx_power_dbm = 23.0;
    double floor_dbm = -84.0;
    double ceil_dbm = -24.0;
    double pathloss_exponent = 3.0;
    double ref_loss_db = 40.0;   // loss at one pixel of distance
    double wall_loss_db = 15.0;  // per occupied pixel crossed

    void validate() const;
};

/// Per-pixel received-signal grid in pixel units [0, 255], induced by one
/// transmitter placement.
struct RadioMap {
    GridReal values;
    Placement tx;

    int width() const { return static_cast<int>(values.cols()); }
    int height() const { return static_cast<int>(values.rows()); }
};

/// Binary grid marking pixels whose received power exceeds the band floor.
struct CoverageMap {
    GridByte bits;
    Placement tx;

    int width() const { return static_cast<int>(bits.cols()); }
    int height() const { return static_cast<int>(bits.rows()); }
};

// ---------------------------------------------------------------------------
// Pixel <-> dBm conversion
// ---------------------------------------------------------------------------

/// Pixel value p in [0, 255] to received power: (ceil-floor)*p/255 + floor.
/// Defaults give 60*p/255 - 84. Out-of-range p is rejected.
double pixel_to_dbm(double p, double floor_dbm = -84.0, double ceil_dbm = -24.0);

/// Inverse of pixel_to_dbm, clamped to [0, 255] outside the band.
double dbm_to_pixel(double v, double floor_dbm = -84.0, double ceil_dbm = -24.0);

// ---------------------------------------------------------------------------
// Supercover traversal
// ---------------------------------------------------------------------------

/// Every cell the ideal segment a->b touches (closed cells, so corner grazes
/// include both side neighbors), in traversal order starting at a.
std::vector<Placement> supercover_cells(Placement a, Placement b);

/// Occupied cells strictly between a and b along the segment (the endpoints'
/// own cells never count).
int wall_crossings(const BuildingMap& map, Placement a, Placement b);

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

/// The propagation-evaluator contract. Implementations must be pure: the
/// same (map, tx) always yields the same RadioMap, and concurrent calls on
/// one BuildingMap are safe.
class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual RadioMap evaluate(const BuildingMap& map, Placement tx) const = 0;
    virtual std::string name() const = 0;
};

/// Log-distance pathloss on an unobstructed medium; distance clamped to one
/// pixel so the transmitter pixel carries the peak value.
class FreeSpaceEvaluator : public Evaluator {
public:
    explicit FreeSpaceEvaluator(PropagationParams params);
    RadioMap evaluate(const BuildingMap& map, Placement tx) const override;
    std::string name() const override { return "free_space"; }

private:
    PropagationParams params_;
};

/// FreeSpaceEvaluator plus a fixed per-wall penalty for every occupied pixel
/// the transmitter->pixel segment crosses (supercover count).
class WallCountEvaluator : public Evaluator {
public:
    explicit WallCountEvaluator(PropagationParams params);
    RadioMap evaluate(const BuildingMap& map, Placement tx) const override;
    std::string name() const override { return "wall_count"; }

private:
    PropagationParams params_;
};

/// Serves radio maps previously exported as 8-bit PGM, one file per
/// placement: <dir>/<map-id>_<y>_<x>.pgm. Stands in for an external
/// predictor whose outputs were materialized to disk.
class FileBackedEvaluator : public Evaluator {
public:
    explicit FileBackedEvaluator(std::string directory);
    RadioMap evaluate(const BuildingMap& map, Placement tx) const override;
    std::string name() const override;

private:
    std::string directory_;
};

/// Model selector: "free_space" | "wall_count" | "file:<path>".
std::unique_ptr<Evaluator> make_evaluator(const std::string& model, const PropagationParams& params);

/// One-shot convenience over make_evaluator.
RadioMap evaluate(const BuildingMap& map, Placement tx, const PropagationParams& params,
                  const std::string& model);

/// Evaluates every tx in order. Records |txs| calls and ceil(|txs|/batch_size)
/// batches in the ledger when one is supplied. Results are bit-identical to
/// the sequential run for any thread count.
std::vector<RadioMap> evaluate_batch(const BuildingMap& map, const std::vector<Placement>& txs,
                                     const Evaluator& evaluator, EvalLedger* ledger = nullptr,
                                     int batch_size = 64, int threads = 1);

/// Bit 1 exactly where the radio map value is strictly positive, i.e. the
/// received power strictly exceeds the band floor.
CoverageMap coverage_map(const RadioMap& rm);

}  // namespace txplace
