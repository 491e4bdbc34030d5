#pragma once

#include <txplace/dataset_io.hpp>
#include <txplace/grid.hpp>
#include <txplace/ledger.hpp>
#include <txplace/oracle.hpp>
#include <txplace/selection.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace txplace {

struct GenOptions {
    std::uint64_t seed = 1;
    int count = 20;
    int width = 32;
    int height = 32;
    double density = 0.25;
    std::string out_dir;
};

Manifest cmd_gen(const GenOptions& opt);

struct LabelOptions {
    std::string manifest_path;
    int margin = 8;
    EvaluatorConfig evaluator;
    std::uint64_t split_seed = 42;
    int threads = 1;
};

struct LabelSummary {
    std::int64_t labeled = 0;
    std::int64_t skipped = 0;
    std::int64_t evaluator_calls = 0;
    std::int64_t batches = 0;
    double seconds = 0.0;  // wall time, reported on stdout only
};

LabelSummary cmd_label(const LabelOptions& opt);

struct EvalOptions {
    std::string manifest_path;
    std::string strategy = "topk_power";  // topk_power|topk_coverage|minimax|union|samples
    std::string select = "best_l2";
    std::vector<std::int64_t> params;  // K, M, or N values; <= 0 means the full region
    std::uint64_t seed = 1;            // sampler seed
    std::string source = "oracle";     // oracle | file:<dir> with external predictions
    EvaluatorConfig evaluator;
    std::string split = "test";  // train | val | test | all
    std::string out_dir;
    int threads = 1;
    int jitter_radius = 0;
};

struct ResultRow {
    std::string strategy;
    std::string select;
    std::int64_t param = 0;  // the requested K/M/N; 0 stands for the full region
    std::int64_t scenarios = 0;
    MeanStd pwr_pct;
    MeanStd cov_pct;
    double dbar = 0.0;  // dataset_l2 of the mean percents
    MeanStd err_pwr;
    MeanStd err_cov;
    std::optional<MeanStd> overlap_pct;  // union pooling only
    double mean_evals = 0.0;
    double mean_batches = 0.0;
    double mean_speedup = 0.0;  // mean of per-scenario |region| / evals_used
    double mean_seconds = 0.0;  // stdout only, never serialized
};

struct ScenarioRow {
    std::string scenario;
    std::int64_t param_requested = 0;
    std::int64_t param_effective = 0;
    SelectionOutcome outcome;
    std::int64_t region_size = 0;
    double speedup = 0.0;
    std::optional<double> overlap_pct;
};

struct EvalSummary {
    std::vector<ResultRow> rows;
    std::vector<ScenarioRow> scenario_rows;
    std::string summary_csv;
    std::string scenarios_csv;
};

EvalSummary cmd_eval(const EvalOptions& opt);

struct ReportOptions {
    std::string results_dir;
    std::string manifest_path;  // enables the bounds summary and scatter export
    std::string scenario_id;    // enables the scatter CSV for that scenario
    std::string out_dir;        // defaults to results_dir
};

struct ReportSummary {
    int tables = 0;
    std::optional<BoundsReport> bounds;
    std::int64_t scatter_rows = 0;  // candidates + markers, excluding the header
    std::string report_path;
};

ReportSummary cmd_report(const ReportOptions& opt);

std::string render_results_table(const std::string& title, const std::vector<ResultRow>& rows);

}  // namespace txplace
