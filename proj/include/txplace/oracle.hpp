#pragma once

#include <txplace/grid.hpp>
#include <txplace/ledger.hpp>
#include <txplace/objectives.hpp>
#include <txplace/propagation.hpp>
#include <txplace/types.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace txplace {

enum class Objective { power, coverage };

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

// Objective landscape over the feasible candidates. values[i] belongs to
// region->members[i]; min_val/max_val are kept as metadata so normalized
// copies stay invertible.
struct ScoreMap {
    Objective objective = Objective::power;
    std::shared_ptr<const FeasibleRegion> region;
    ScoreVec values;
    double min_val = 0.0;
    double max_val = 0.0;
};

struct NormalizedScoreMap {
    Objective objective = Objective::power;
    std::shared_ptr<const FeasibleRegion> region;
    ScoreVec values;  // in [0, 1]; all zeros when max_val == min_val
    double min_val = 0.0;
    double max_val = 0.0;
};

struct DualOptimum {
    Placement power_opt;
    double power_opt_value = 0.0;  // pixel units
    Placement cov_opt;
    double cov_opt_value = 0.0;  // fraction
    Placement balanced_opt;
    double balanced_d = 0.0;
    double balanced_cov_pct = 0.0;
    double balanced_pwr_pct = 0.0;
    double cov_pct_at_power_opt = 0.0;
    double pwr_pct_at_cov_opt = 0.0;
};

struct EvaluatorConfig {
    std::string model = "wall_count";
    PropagationParams params;
    int batch_size = 64;
    int threads = 1;

    std::unique_ptr<Evaluator> make() const { return make_evaluator(model, params); }
};

std::pair<ScoreMap, ScoreMap> exhaustive_score_maps(const BuildingMap& map,
                                                    std::shared_ptr<const FeasibleRegion> region,
                                                    const EvaluatorConfig& config,
                                                    EvalLedger* ledger = nullptr);

DualOptimum dual_optima(const ScoreMap& pwr, const ScoreMap& cov);

NormalizedScoreMap normalize(const ScoreMap& sm);
ScoreMap denormalize(const NormalizedScoreMap& nsm);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample (n-1) normalization; 0 when n < 2
};

MeanStd mean_std(const std::vector<double>& xs);

struct BoundsReport {
    std::int64_t count = 0;
    MeanStd cov_pct_at_power_opt;
    MeanStd pwr_pct_at_cov_opt;
    MeanStd balanced_cov_pct;  // stds on the balanced percents are an extra this
    MeanStd balanced_pwr_pct;  // artifact reports beyond the mean-only summary
    MeanStd optima_distance;   // pixels between power_opt and cov_opt
    double balanced_dbar = 0.0;           // dataset_l2 of the balanced mean percents
    double dbar_at_power_opt = 0.0;       // dataset_l2 of (mean cov% at power_opt, 100)
    double dbar_at_cov_opt = 0.0;         // dataset_l2 of (100, mean pwr% at cov_opt)
};

BoundsReport bounds_report(const std::vector<DualOptimum>& corpus);

std::string render_bounds_csv(const BoundsReport& r);
std::string render_bounds_table(const BoundsReport& r);

}  // namespace txplace
