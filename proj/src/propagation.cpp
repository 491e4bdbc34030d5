#include <txplace/propagation.hpp>

#include <txplace/dataset_io.hpp>
#include <txplace/detail/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace txplace {

void PropagationParams::validate() const {
    if (!(floor_dbm < ceil_dbm)) throw std::invalid_argument("floor_dbm must be below ceil_dbm");
    if (!(pathloss_exponent > 0.0)) throw std::invalid_argument("pathloss_exponent must be positive");
    if (wall_loss_db < 0.0) throw std::invalid_argument("wall_loss_db must be non-negative");
}

double pixel_to_dbm(double p, double floor_dbm, double ceil_dbm) {
    if (!(p >= 0.0 && p <= 255.0))
        throw std::invalid_argument("pixel value " + std::to_string(p) + " outside [0, 255]");
    return (ceil_dbm - floor_dbm) * p / 255.0 + floor_dbm;
}

double dbm_to_pixel(double v, double floor_dbm, double ceil_dbm) {
    double p = (v - floor_dbm) * 255.0 / (ceil_dbm - floor_dbm);
    return std::clamp(p, 0.0, 255.0);
}

// ---------------------------------------------------------------------------
// Supercover traversal
// ---------------------------------------------------------------------------

std::vector<Placement> supercover_cells(Placement a, Placement b) {
    std::vector<Placement> cells;
    int y = a.y, x = a.x;
    int dy = b.y - a.y, dx = b.x - a.x;
    int ystep = 1, xstep = 1;
    if (dy < 0) {
        ystep = -1;
        dy = -dy;
    }
    if (dx < 0) {
        xstep = -1;
        dx = -dx;
    }
    cells.reserve(static_cast<std::size_t>(dx) + dy + 1);
    cells.push_back({y, x});

    const int ddy = 2 * dy, ddx = 2 * dx;
    if (ddx >= ddy) {
        int errorprev = dx, error = dx;
        for (int i = 0; i < dx; ++i) {
            x += xstep;
            error += ddy;
            if (error > ddx) {
                y += ystep;
                error -= ddx;
                if (error + errorprev < ddx) {
                    cells.push_back({y - ystep, x});
                } else if (error + errorprev > ddx) {
                    cells.push_back({y, x - xstep});
                } else {  // exact corner crossing: both side cells are grazed
                    cells.push_back({y - ystep, x});
                    cells.push_back({y, x - xstep});
                }
            }
            cells.push_back({y, x});
            errorprev = error;
        }
    } else {
        int errorprev = dy, error = dy;
        for (int i = 0; i < dy; ++i) {
            y += ystep;
            error += ddx;
            if (error > ddy) {
                x += xstep;
                error -= ddy;
                if (error + errorprev < ddy) {
                    cells.push_back({y, x - xstep});
                } else if (error + errorprev > ddy) {
                    cells.push_back({y - ystep, x});
                } else {
                    cells.push_back({y, x - xstep});
                    cells.push_back({y - ystep, x});
                }
            }
            cells.push_back({y, x});
            errorprev = error;
        }
    }
    return cells;
}

int wall_crossings(const BuildingMap& map, Placement a, Placement b) {
    int count = 0;
    for (const Placement& c : supercover_cells(a, b)) {
        if (c == a || c == b) continue;
        if (map.occupied(c.y, c.x)) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

namespace {

void require_valid_tx(const BuildingMap& map, Placement tx) {
    if (!map.in_bounds(tx.y, tx.x))
        throw std::invalid_argument("transmitter (" + std::to_string(tx.y) + "," + std::to_string(tx.x) +
                                    ") outside map bounds");
    if (map.occupied(tx.y, tx.x))
        throw std::invalid_argument("transmitter (" + std::to_string(tx.y) + "," + std::to_string(tx.x) +
                                    ") placed on an occupied pixel");
}

// Scalar per-pixel loop; no reductions, so parallel callers see bit-identical
// values in every slot.
RadioMap reference_radio_map(const BuildingMap& map, Placement tx, const PropagationParams& params,
                             bool with_walls) {
    require_valid_tx(map, tx);
    RadioMap rm;
    rm.tx = tx;
    rm.values.resize(map.height(), map.width());
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            double dy = static_cast<double>(y - tx.y);
            double dx = static_cast<double>(x - tx.x);
            double dist = std::sqrt(dy * dy + dx * dx);
            if (dist < 1.0) dist = 1.0;  // keeps the peak at the transmitter pixel
            double dbm = params.tx_power_dbm - params.ref_loss_db -
                         10.0 * params.pathloss_exponent * std::log10(dist);
            if (with_walls)
                dbm -= params.wall_loss_db * static_cast<double>(wall_crossings(map, tx, {y, x}));
            rm.values(y, x) = dbm_to_pixel(dbm, params.floor_dbm, params.ceil_dbm);
        }
    }
    return rm;
}

}  // namespace

FreeSpaceEvaluator::FreeSpaceEvaluator(PropagationParams params) : params_(params) {
    params_.validate();
}

RadioMap FreeSpaceEvaluator::evaluate(const BuildingMap& map, Placement tx) const {
    return reference_radio_map(map, tx, params_, /*with_walls=*/false);
}

WallCountEvaluator::WallCountEvaluator(PropagationParams params) : params_(params) {
    params_.validate();
}

RadioMap WallCountEvaluator::evaluate(const BuildingMap& map, Placement tx) const {
    return reference_radio_map(map, tx, params_, /*with_walls=*/true);
}

FileBackedEvaluator::FileBackedEvaluator(std::string directory) : directory_(std::move(directory)) {}

std::string FileBackedEvaluator::name() const {
    return "file:" + directory_;
}

RadioMap FileBackedEvaluator::evaluate(const BuildingMap& map, Placement tx) const {
    require_valid_tx(map, tx);
    std::string path = directory_ + "/" + map.id + "_" + std::to_string(tx.y) + "_" +
                       std::to_string(tx.x) + ".pgm";
    PgmImage img = read_pgm(path);
    if (img.width != map.width() || img.height != map.height())
        throw std::runtime_error("radio map " + path + " is " + std::to_string(img.width) + "x" +
                                 std::to_string(img.height) + ", expected " + std::to_string(map.width()) +
                                 "x" + std::to_string(map.height()));
    RadioMap rm;
    rm.tx = tx;
    rm.values = img.samples.cast<double>();
    if (img.maxval != 255) rm.values *= 255.0 / static_cast<double>(img.maxval);
    return rm;
}

std::unique_ptr<Evaluator> make_evaluator(const std::string& model, const PropagationParams& params) {
    if (model == "free_space") return std::make_unique<FreeSpaceEvaluator>(params);
    if (model == "wall_count") return std::make_unique<WallCountEvaluator>(params);
    if (model.rfind("file:", 0) == 0) return std::make_unique<FileBackedEvaluator>(model.substr(5));
    throw std::invalid_argument("unknown propagation model '" + model +
                                "' (expected free_space, wall_count, or file:<path>)");
}

RadioMap evaluate(const BuildingMap& map, Placement tx, const PropagationParams& params,
                  const std::string& model) {
    return make_evaluator(model, params)->evaluate(map, tx);
}

std::vector<RadioMap> evaluate_batch(const BuildingMap& map, const std::vector<Placement>& txs,
                                     const Evaluator& evaluator, EvalLedger* ledger, int batch_size,
                                     int threads) {
    if (batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");
    for (std::size_t i = 0; i < txs.size(); ++i) {
        try {
            require_valid_tx(map, txs[i]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("batch index " + std::to_string(i) + ": " + e.what());
        }
    }
    std::vector<RadioMap> out(txs.size());
    detail::parallel_for(txs.size(), threads,
                         [&](std::size_t i) { out[i] = evaluator.evaluate(map, txs[i]); });
    if (ledger) {
        std::int64_t n = static_cast<std::int64_t>(txs.size());
        ledger->record_evaluation(n, (n + batch_size - 1) / batch_size);
    }
    return out;
}

CoverageMap coverage_map(const RadioMap& rm) {
    CoverageMap cm;
    cm.tx = rm.tx;
    cm.bits = (rm.values > 0.0).cast<std::uint8_t>();
    return cm;
}

}  // namespace txplace
