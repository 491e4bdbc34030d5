#include <txplace/bench.hpp>

#include <txplace/detail/format.hpp>
#include <txplace/detail/parallel.hpp>
#include <txplace/detail/rng.hpp>
#include <txplace/objectives.hpp>
#include <txplace/propagation.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace txplace {

namespace {

using detail::real17;

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

std::string scenario_id_string(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06d", index);
    return buf;
}

std::string fingerprint(const EvaluatorConfig& cfg) {
    const PropagationParams& p = cfg.params;
    return "model=" + cfg.model + " tx_power=" + real17(p.tx_power_dbm) + " floor=" +
           real17(p.floor_dbm) + " ceil=" + real17(p.ceil_dbm) + " exponent=" +
           real17(p.pathloss_exponent) + " ref_loss=" + real17(p.ref_loss_db) + " wall_loss=" +
           real17(p.wall_loss_db) + " batch_size=" + std::to_string(cfg.batch_size);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

Manifest cmd_gen(const GenOptions& opt) {
    if (opt.count < 0) throw std::invalid_argument("cmd_gen: count must be non-negative");
    if (opt.out_dir.empty()) throw std::invalid_argument("cmd_gen: output directory required");
    fs::path dir(opt.out_dir);
    fs::create_directories(dir / "maps");
    Manifest m;
    for (int i = 0; i < opt.count; ++i) {
        std::string id = scenario_id_string(i);
        BuildingMap map = generate_building_map(detail::mix_seed(opt.seed, static_cast<std::uint64_t>(i)),
                                                opt.width, opt.height, opt.density);
        map.id = id;
        std::string rel = "maps/" + id + ".pgm";
        write_building_map(map, (dir / rel).string());
        ScenarioRecord rec;
        rec.id = id;
        rec.map_path = rel;
        m.scenarios.push_back(std::move(rec));
    }
    write_manifest(m, (dir / "manifest.txt").string());
    return m;
}

// ---------------------------------------------------------------------------
// label
// ---------------------------------------------------------------------------

LabelSummary cmd_label(const LabelOptions& opt) {
    double t0 = now_seconds();
    fs::path dir = fs::path(opt.manifest_path).parent_path();
    Manifest m = read_manifest(opt.manifest_path);
    fs::create_directories(dir / "scores");
    fs::create_directories(dir / "labels");

    struct Slot {
        bool labeled = false;
        std::string skip_reason;
        std::string pwr_path, cov_path, gt_path;
        std::int64_t calls = 0;
        std::int64_t batches = 0;
    };
    std::vector<Slot> slots(m.scenarios.size());

    EvaluatorConfig inner = opt.evaluator;
    if (opt.threads > 1) inner.threads = 1;  // scenario-level parallelism instead

    detail::parallel_for(m.scenarios.size(), opt.threads, [&](std::size_t i) {
        const ScenarioRecord& rec = m.scenarios[i];
        Slot& slot = slots[i];
        BuildingMap map = read_building_map((dir / rec.map_path).string(), rec.id);
        FeasibleRegion fr;
        try {
            fr = feasible_region(map, opt.margin);
        } catch (const std::invalid_argument& e) {
            slot.skip_reason = e.what();
            return;
        }
        if (fr.empty()) {
            slot.skip_reason = "empty feasible region";
            return;
        }
        auto region = std::make_shared<const FeasibleRegion>(std::move(fr));
        EvalLedger local;
        auto [pwr, cov] = exhaustive_score_maps(map, region, inner, &local);
        DualOptimum optima;
        try {
            optima = dual_optima(pwr, cov);
        } catch (const std::domain_error& e) {
            slot.skip_reason = e.what();
            return;
        }
        slot.pwr_path = "scores/" + rec.id + ".power.f64";
        slot.cov_path = "scores/" + rec.id + ".coverage.f64";
        slot.gt_path = "labels/" + rec.id + ".gt.txt";
        write_score_map(normalize(pwr), (dir / slot.pwr_path).string());
        write_score_map(normalize(cov), (dir / slot.cov_path).string());
        GroundTruthRecord gt;
        gt.map_id = rec.id;
        gt.margin = opt.margin;
        gt.region_size = static_cast<std::int64_t>(region->size());
        gt.evaluator = fingerprint(opt.evaluator);
        gt.optima = optima;
        write_ground_truth(gt, (dir / slot.gt_path).string());
        slot.calls = local.evaluator_calls();
        slot.batches = local.batches();
        slot.labeled = true;
    });

    LabelSummary summary;
    std::string skips = "txplace-skips v1\n";
    Manifest labeled_only;
    for (std::size_t i = 0; i < m.scenarios.size(); ++i) {
        ScenarioRecord& rec = m.scenarios[i];
        const Slot& slot = slots[i];
        if (!slot.labeled) {
            ++summary.skipped;
            skips += rec.id + "\t" + slot.skip_reason + "\n";
            rec.power_scores = rec.coverage_scores = rec.ground_truth = rec.split = "-";
            continue;
        }
        ++summary.labeled;
        summary.evaluator_calls += slot.calls;
        summary.batches += slot.batches;
        rec.power_scores = slot.pwr_path;
        rec.coverage_scores = slot.cov_path;
        rec.ground_truth = slot.gt_path;
        labeled_only.scenarios.push_back(rec);
    }
    if (!labeled_only.scenarios.empty()) {
        make_splits(labeled_only, opt.split_seed);
        std::map<std::string, std::string> tag;
        for (const ScenarioRecord& rec : labeled_only.scenarios) tag[rec.id] = rec.split;
        for (ScenarioRecord& rec : m.scenarios)
            if (auto it = tag.find(rec.id); it != tag.end()) rec.split = it->second;
    }
    write_manifest(m, opt.manifest_path);
    write_text(dir / "skipped.txt", skips);
    write_text(dir / "ledger.txt", "txplace-ledger v1\nevaluator_calls " +
                                       std::to_string(summary.evaluator_calls) + "\nbatches " +
                                       std::to_string(summary.batches) + "\n");
    summary.seconds = now_seconds() - t0;
    return summary;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

namespace {

enum class StrategyKind { topk_power, topk_coverage, minimax, union_pooling, samples };

StrategyKind strategy_from_string(const std::string& s) {
    if (s == "topk_power") return StrategyKind::topk_power;
    if (s == "topk_coverage") return StrategyKind::topk_coverage;
    if (s == "minimax") return StrategyKind::minimax;
    if (s == "union") return StrategyKind::union_pooling;
    if (s == "samples") return StrategyKind::samples;
    throw std::invalid_argument("unknown strategy '" + s +
                                "' (expected topk_power, topk_coverage, minimax, union, samples)");
}

bool needs_power_scores(StrategyKind k) {
    return k != StrategyKind::topk_coverage;
}

bool needs_coverage_scores(StrategyKind k) {
    return k != StrategyKind::topk_power;
}

// Candidate scores per objective, either the dataset's stored oracle maps or
// externally produced predictions.
ScoreVec load_scores(const std::string& source, const fs::path& dataset_dir,
                     const ScenarioRecord& rec, Objective objective,
                     const std::shared_ptr<const FeasibleRegion>& region, const BuildingMap& map) {
    if (source == "oracle") {
        const std::string& rel =
            objective == Objective::power ? rec.power_scores : rec.coverage_scores;
        NormalizedScoreMap nsm = read_score_map((dataset_dir / rel).string(), region);
        if (nsm.objective != objective)
            throw std::runtime_error("score map " + rel + " holds the wrong objective");
        return nsm.values;
    }
    if (source.rfind("file:", 0) == 0) {
        fs::path pred_dir = source.substr(5);
        std::string base = rec.id + "." + to_string(objective);
        for (const char* ext : {".pgm", ".f64"}) {
            fs::path candidate = pred_dir / (base + ext);
            if (fs::exists(candidate))
                return read_prediction(candidate.string(), *region, map.width(), map.height()).values;
        }
        throw std::runtime_error("no prediction file " + (pred_dir / base).string() +
                                 ".{pgm,f64} for scenario " + rec.id);
    }
    throw std::invalid_argument("unknown score source '" + source +
                                "' (expected oracle or file:<dir>)");
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? real17(*v) : "-";
}

}  // namespace

EvalSummary cmd_eval(const EvalOptions& opt) {
    StrategyKind kind = strategy_from_string(opt.strategy);
    SelectStrategy strategy = select_strategy_from_string(opt.select);
    if (opt.out_dir.empty()) throw std::invalid_argument("cmd_eval: output directory required");
    if (opt.split != "train" && opt.split != "val" && opt.split != "test" && opt.split != "all")
        throw std::invalid_argument("cmd_eval: bad split '" + opt.split + "'");

    fs::path dataset_dir = fs::path(opt.manifest_path).parent_path();
    Manifest m = read_manifest(opt.manifest_path);
    std::vector<ScenarioRecord> picked;
    for (const ScenarioRecord& rec : m.scenarios) {
        bool wanted = opt.split == "all" ? rec.split != "-" : rec.split == opt.split;
        if (!wanted) continue;
        if (rec.ground_truth == "-")
            throw std::runtime_error("scenario " + rec.id + " has no ground truth; run label first");
        picked.push_back(rec);
    }
    if (picked.empty())
        throw std::runtime_error("cmd_eval: no labeled scenarios in split '" + opt.split + "'");

    std::vector<std::int64_t> params = opt.params;
    if (params.empty()) params.push_back(0);

    struct Cell {
        ScenarioRow row;
        double seconds = 0.0;
    };
    std::vector<std::vector<Cell>> grid(picked.size());

    detail::parallel_for(picked.size(), opt.threads, [&](std::size_t si) {
        const ScenarioRecord& rec = picked[si];
        BuildingMap map = read_building_map((dataset_dir / rec.map_path).string(), rec.id);
        GroundTruthRecord gt = read_ground_truth((dataset_dir / rec.ground_truth).string());
        auto region = std::make_shared<const FeasibleRegion>(feasible_region(map, gt.margin));
        if (static_cast<std::int64_t>(region->size()) != gt.region_size)
            throw std::runtime_error("scenario " + rec.id + ": ground truth was computed over " +
                                     std::to_string(gt.region_size) + " candidates, map yields " +
                                     std::to_string(region->size()));
        EvaluatorConfig config = opt.evaluator;
        if (opt.threads > 1) config.threads = 1;

        ScoreVec pwr_scores, cov_scores;
        if (needs_power_scores(kind))
            pwr_scores = load_scores(opt.source, dataset_dir, rec, Objective::power, region, map);
        if (needs_coverage_scores(kind))
            cov_scores = load_scores(opt.source, dataset_dir, rec, Objective::coverage, region, map);

        ScoreVec sample_weights;
        if (kind == StrategyKind::samples) sample_weights = ((pwr_scores + cov_scores) / 2.0).eval();
        std::uint64_t sampler_seed = detail::mix_seed(opt.seed, detail::fnv1a(rec.id));

        grid[si].resize(params.size());
        for (std::size_t pi = 0; pi < params.size(); ++pi) {
            std::int64_t requested = params[pi];
            std::int64_t size = static_cast<std::int64_t>(region->size());
            std::int64_t effective = (requested <= 0 || requested > size) ? size : requested;

            double t0 = now_seconds();
            CandidatePool pool;
            std::optional<double> overlap;
            switch (kind) {
                case StrategyKind::topk_power:
                    pool = topk(pwr_scores, *region, effective, Provenance::topk_power);
                    break;
                case StrategyKind::topk_coverage:
                    pool = topk(cov_scores, *region, effective, Provenance::topk_coverage);
                    break;
                case StrategyKind::minimax:
                    pool = minimax_pool(pwr_scores, cov_scores, *region, effective);
                    break;
                case StrategyKind::union_pooling: {
                    UnionResult ur = union_pool(pwr_scores, cov_scores, *region, effective);
                    pool = std::move(ur.pool);
                    overlap = ur.overlap_pct;
                    break;
                }
                case StrategyKind::samples:
                    pool = sample_pool(*region, sample_weights, sampler_seed, effective,
                                       {opt.jitter_radius});
                    break;
            }
            SelectionOutcome outcome =
                select(pool, map, *region, config, strategy, gt.optima, nullptr);

            Cell& cell = grid[si][pi];
            cell.seconds = now_seconds() - t0;
            cell.row.scenario = rec.id;
            cell.row.param_requested = requested;
            cell.row.param_effective = effective;
            cell.row.outcome = outcome;
            cell.row.region_size = size;
            cell.row.speedup = static_cast<double>(size) / static_cast<double>(outcome.evals_used);
            cell.row.overlap_pct = overlap;
        }
    });

    EvalSummary summary;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        std::vector<double> pwr, cov, err_p, err_c, ovl, evals, batches, speedups;
        double seconds = 0.0;
        for (std::size_t si = 0; si < picked.size(); ++si) {
            const Cell& cell = grid[si][pi];
            summary.scenario_rows.push_back(cell.row);
            pwr.push_back(cell.row.outcome.pwr_pct);
            cov.push_back(cell.row.outcome.cov_pct);
            err_p.push_back(cell.row.outcome.err_pwr);
            err_c.push_back(cell.row.outcome.err_cov);
            evals.push_back(static_cast<double>(cell.row.outcome.evals_used));
            batches.push_back(static_cast<double>(cell.row.outcome.batches_used));
            speedups.push_back(cell.row.speedup);
            if (cell.row.overlap_pct) ovl.push_back(*cell.row.overlap_pct);
            seconds += cell.seconds;
        }
        ResultRow row;
        row.strategy = opt.strategy;
        row.select = opt.select;
        row.param = params[pi];
        row.scenarios = static_cast<std::int64_t>(picked.size());
        row.pwr_pct = mean_std(pwr);
        row.cov_pct = mean_std(cov);
        row.dbar = dataset_l2(row.cov_pct.mean, row.pwr_pct.mean);
        row.err_pwr = mean_std(err_p);
        row.err_cov = mean_std(err_c);
        if (!ovl.empty()) row.overlap_pct = mean_std(ovl);
        row.mean_evals = mean_std(evals).mean;
        row.mean_batches = mean_std(batches).mean;
        row.mean_speedup = mean_std(speedups).mean;
        row.mean_seconds = seconds / static_cast<double>(picked.size());
        summary.rows.push_back(std::move(row));
    }

    fs::path outd(opt.out_dir);
    fs::create_directories(outd);
    std::string stem = "eval_" + opt.strategy + "_" + opt.select;

    std::string sc = "strategy,select,param,scenarios,pwr_pct_mean,pwr_pct_std,cov_pct_mean,"
                     "cov_pct_std,dbar,err_pwr_mean,err_pwr_std,err_cov_mean,err_cov_std,"
                     "overlap_mean,overlap_std,mean_evals,mean_batches,mean_speedup\n";
    for (const ResultRow& r : summary.rows) {
        sc += r.strategy + "," + r.select + "," + std::to_string(r.param) + "," +
              std::to_string(r.scenarios) + "," + real17(r.pwr_pct.mean) + "," +
              real17(r.pwr_pct.std) + "," + real17(r.cov_pct.mean) + "," + real17(r.cov_pct.std) +
              "," + real17(r.dbar) + "," + real17(r.err_pwr.mean) + "," + real17(r.err_pwr.std) +
              "," + real17(r.err_cov.mean) + "," + real17(r.err_cov.std) + "," +
              (r.overlap_pct ? real17(r.overlap_pct->mean) : "-") + "," +
              (r.overlap_pct ? real17(r.overlap_pct->std) : "-") + "," + real17(r.mean_evals) +
              "," + real17(r.mean_batches) + "," + real17(r.mean_speedup) + "\n";
    }
    summary.summary_csv = (outd / (stem + "_summary.csv")).string();
    write_text(summary.summary_csv, sc);

    std::string xc = "scenario,strategy,select,param_requested,param_effective,chosen_y,chosen_x,"
                     "pwr_pct,cov_pct,d_n,err_pwr,err_cov,evals_used,batches_used,region_size,"
                     "speedup,overlap_pct\n";
    for (const ScenarioRow& r : summary.scenario_rows) {
        xc += r.scenario + "," + opt.strategy + "," + opt.select + "," +
              std::to_string(r.param_requested) + "," + std::to_string(r.param_effective) + "," +
              std::to_string(r.outcome.chosen.y) + "," + std::to_string(r.outcome.chosen.x) + "," +
              real17(r.outcome.pwr_pct) + "," + real17(r.outcome.cov_pct) + "," +
              real17(r.outcome.d_n) + "," + real17(r.outcome.err_pwr) + "," +
              real17(r.outcome.err_cov) + "," + std::to_string(r.outcome.evals_used) + "," +
              std::to_string(r.outcome.batches_used) + "," + std::to_string(r.region_size) + "," +
              real17(r.speedup) + "," + opt_cell(r.overlap_pct) + "\n";
    }
    summary.scenarios_csv = (outd / (stem + "_scenarios.csv")).string();
    write_text(summary.scenarios_csv, xc);
    return summary;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

namespace {

std::string pm_cell(const MeanStd& ms) {
    return detail::real2(ms.mean) + " +- " + detail::real2(ms.std);
}

double parse_cell(const std::string& cell, const std::string& path) {
    if (cell.empty() || cell == "-")
        throw std::runtime_error(path + ": unexpected empty numeric cell");
    return detail::parse_real(cell);
}

std::vector<ResultRow> parse_summary_csv(const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("strategy,", 0) != 0)
        throw std::runtime_error(path + ": missing results header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> c = split_csv_line(line);
        if (c.size() != 18)
            throw std::runtime_error(path + ": expected 18 columns, got " + std::to_string(c.size()));
        ResultRow r;
        r.strategy = c[0];
        r.select = c[1];
        r.param = detail::parse_int(c[2]);
        r.scenarios = detail::parse_int(c[3]);
        r.pwr_pct = {parse_cell(c[4], path), parse_cell(c[5], path)};
        r.cov_pct = {parse_cell(c[6], path), parse_cell(c[7], path)};
        r.dbar = parse_cell(c[8], path);
        r.err_pwr = {parse_cell(c[9], path), parse_cell(c[10], path)};
        r.err_cov = {parse_cell(c[11], path), parse_cell(c[12], path)};
        if (c[13] != "-") r.overlap_pct = MeanStd{parse_cell(c[13], path), parse_cell(c[14], path)};
        r.mean_evals = parse_cell(c[15], path);
        r.mean_batches = parse_cell(c[16], path);
        r.mean_speedup = parse_cell(c[17], path);
        r.mean_seconds = 0.0;  // not serialized; render as "-"
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

std::string render_results_table(const std::string& title, const std::vector<ResultRow>& rows) {
    char buf[256];
    std::string s = title + "\n";
    std::snprintf(buf, sizeof buf, "%-6s %-5s %-16s %-16s %7s %-15s %-15s %-16s %10s %9s %8s\n",
                  "Param", "Scen", "Pwr%", "Cov%", "dbar", "ErrPwr", "ErrCov", "Overlap%", "Evals",
                  "Speedup", "Time");
    s += buf;
    for (const ResultRow& r : rows) {
        std::string param = r.param <= 0 ? "full" : std::to_string(r.param);
        std::string time_cell =
            r.mean_seconds > 0.0 ? detail::real2(r.mean_seconds * 1000.0) + "ms" : "-";
        std::snprintf(buf, sizeof buf, "%-6s %-5s %-16s %-16s %7s %-15s %-15s %-16s %10s %9s %8s\n",
                      param.c_str(), std::to_string(r.scenarios).c_str(), pm_cell(r.pwr_pct).c_str(),
                      pm_cell(r.cov_pct).c_str(), detail::real2(r.dbar).c_str(),
                      pm_cell(r.err_pwr).c_str(), pm_cell(r.err_cov).c_str(),
                      r.overlap_pct ? pm_cell(*r.overlap_pct).c_str() : "-",
                      detail::real2(r.mean_evals).c_str(), detail::real2(r.mean_speedup).c_str(),
                      time_cell.c_str());
        s += buf;
    }
    return s;
}

ReportSummary cmd_report(const ReportOptions& opt) {
    ReportSummary rs;
    fs::path results(opt.results_dir);
    fs::path outd = opt.out_dir.empty() ? results : fs::path(opt.out_dir);
    fs::create_directories(outd);

    std::vector<std::string> summaries, scenario_files;
    if (!opt.results_dir.empty() && fs::exists(results)) {
        for (const auto& entry : fs::directory_iterator(results)) {
            std::string name = entry.path().filename().string();
            if (name.rfind("eval_", 0) != 0) continue;
            if (name.size() > 12 && name.compare(name.size() - 12, 12, "_summary.csv") == 0)
                summaries.push_back(entry.path().string());
            if (name.size() > 14 && name.compare(name.size() - 14, 14, "_scenarios.csv") == 0)
                scenario_files.push_back(entry.path().string());
        }
    }
    std::sort(summaries.begin(), summaries.end());
    std::sort(scenario_files.begin(), scenario_files.end());

    std::string report;
    for (const std::string& path : summaries) {
        std::vector<ResultRow> rows = parse_summary_csv(path);
        for (const ResultRow& r : rows) {
            double recomputed = dataset_l2(r.cov_pct.mean, r.pwr_pct.mean);
            if (std::abs(recomputed - r.dbar) > 1e-9)
                throw std::runtime_error(path + ": dbar column " + real17(r.dbar) +
                                         " does not match its mean percents (" +
                                         real17(recomputed) + ")");
        }
        report += render_results_table(fs::path(path).filename().string(), rows);
        report += "\n";
        ++rs.tables;
    }

    if (!opt.manifest_path.empty()) {
        fs::path dataset_dir = fs::path(opt.manifest_path).parent_path();
        Manifest m = read_manifest(opt.manifest_path);
        std::vector<DualOptimum> optima;
        std::map<std::string, GroundTruthRecord> gts;
        for (const ScenarioRecord& rec : m.scenarios) {
            if (rec.ground_truth == "-") continue;
            GroundTruthRecord gt = read_ground_truth((dataset_dir / rec.ground_truth).string());
            optima.push_back(gt.optima);
            gts.emplace(rec.id, std::move(gt));
        }
        if (!optima.empty()) {
            rs.bounds = bounds_report(optima);
            write_text(outd / "bounds.csv", render_bounds_csv(*rs.bounds));
            report += render_bounds_table(*rs.bounds);
            report += "\n";
        }

        if (!opt.scenario_id.empty()) {
            auto it = gts.find(opt.scenario_id);
            if (it == gts.end())
                throw std::runtime_error("cmd_report: scenario " + opt.scenario_id +
                                         " has no ground truth");
            const GroundTruthRecord& gt = it->second;
            const ScenarioRecord* rec = nullptr;
            for (const ScenarioRecord& r : m.scenarios)
                if (r.id == opt.scenario_id) rec = &r;
            BuildingMap map = read_building_map((dataset_dir / rec->map_path).string(), rec->id);
            auto region = std::make_shared<const FeasibleRegion>(feasible_region(map, gt.margin));
            ScoreMap pwr = denormalize(read_score_map((dataset_dir / rec->power_scores).string(), region));
            ScoreMap cov = denormalize(read_score_map((dataset_dir / rec->coverage_scores).string(), region));

            std::string csv = "kind,label,y,x,cov_pct,pwr_pct\n";
            for (std::size_t i = 0; i < region->size(); ++i) {
                const Placement& p = region->members[i];
                double c = percent_of(cov.values(static_cast<Eigen::Index>(i)), gt.optima.cov_opt_value);
                double w = percent_of(pwr.values(static_cast<Eigen::Index>(i)), gt.optima.power_opt_value);
                csv += "candidate,-," + std::to_string(p.y) + "," + std::to_string(p.x) + "," +
                       real17(c) + "," + real17(w) + "\n";
                ++rs.scatter_rows;
            }
            for (const std::string& path : scenario_files) {
                std::istringstream in(read_text(path));
                std::string line;
                if (!std::getline(in, line) || line.rfind("scenario,", 0) != 0)
                    throw std::runtime_error(path + ": missing scenarios header");
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    std::vector<std::string> c = split_csv_line(line);
                    if (c.size() != 17)
                        throw std::runtime_error(path + ": expected 17 columns, got " +
                                                 std::to_string(c.size()));
                    if (c[0] != opt.scenario_id) continue;
                    csv += "marker," + c[1] + ":" + c[2] + ":" + c[4] + "," + c[5] + "," + c[6] +
                           "," + c[8] + "," + c[7] + "\n";
                    ++rs.scatter_rows;
                }
            }
            write_text(outd / ("scatter_" + opt.scenario_id + ".csv"), csv);
        }
    }

    rs.report_path = (outd / "report.txt").string();
    write_text(rs.report_path, report);
    return rs;
}

}  // namespace txplace
