#include <doctest.h>

#include <txplace/bench.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

using namespace txplace;
namespace fs = std::filesystem;

namespace {

GenOptions tiny_gen(const fs::path& dir, int count = 6) {
    GenOptions g;
    g.seed = 5;
    g.count = count;
    g.width = 16;
    g.height = 16;
    g.density = 0.25;
    g.out_dir = dir.string();
    return g;
}

LabelOptions tiny_label(const fs::path& dir, int margin = 5) {
    LabelOptions l;
    l.manifest_path = (dir / "manifest.txt").string();
    l.margin = margin;
    return l;
}

std::map<std::string, GroundTruthRecord> truths(const fs::path& dir) {
    Manifest m = read_manifest((dir / "manifest.txt").string());
    std::map<std::string, GroundTruthRecord> out;
    for (const ScenarioRecord& rec : m.scenarios)
        if (rec.ground_truth != "-")
            out[rec.id] = read_ground_truth((dir / rec.ground_truth).string());
    return out;
}

}  // namespace

TEST_CASE("gen writes a deterministic corpus") {
    fs::path a = fresh_dir("ut_gen_a");
    fs::path b = fresh_dir("ut_gen_b");

    Manifest ma = cmd_gen(tiny_gen(a));
    Manifest mb = cmd_gen(tiny_gen(b));
    REQUIRE(ma.scenarios.size() == 6);
    CHECK(ma.scenarios.front().id == "000000");
    CHECK(ma.scenarios.back().id == "000005");
    CHECK(fs::exists(a / "maps" / "000003.pgm"));
    CHECK(tree_bytes(a) == tree_bytes(b));

    BuildingMap map = read_building_map((a / "maps" / "000000.pgm").string(), "000000");
    CHECK(map.width() == 16);
    CHECK(map.height() == 16);

    fs::path c = fresh_dir("ut_gen_c");
    GenOptions empty = tiny_gen(c, 0);
    Manifest mc = cmd_gen(empty);
    CHECK(mc.scenarios.empty());
    CHECK(file_bytes(c / "manifest.txt") == "txplace-manifest v1\n");
}

TEST_CASE("label produces scores, truths, splits, and an honest ledger") {
    fs::path dir = fresh_dir("ut_label");
    GenOptions g = tiny_gen(dir, 1);
    g.width = 8;
    g.height = 8;
    g.density = 0.0;
    cmd_gen(g);

    LabelOptions l = tiny_label(dir, 3);
    LabelSummary s = cmd_label(l);
    CHECK(s.labeled == 1);
    CHECK(s.skipped == 0);
    CHECK(s.evaluator_calls == 4);  // the 2x2 central window of an open 8x8 map
    CHECK(s.batches == 1);

    Manifest m = read_manifest(l.manifest_path);
    REQUIRE(m.scenarios.size() == 1);
    CHECK(m.scenarios[0].power_scores == "scores/000000.power.f64");
    CHECK(m.scenarios[0].coverage_scores == "scores/000000.coverage.f64");
    CHECK(m.scenarios[0].ground_truth == "labels/000000.gt.txt");
    CHECK(m.scenarios[0].split == "test");  // 1 scenario: floors put it past both boundaries

    GroundTruthRecord gt = read_ground_truth((dir / "labels/000000.gt.txt").string());
    CHECK(gt.map_id == "000000");
    CHECK(gt.margin == 3);
    CHECK(gt.region_size == 4);
    CHECK(gt.evaluator.find("model=wall_count") == 0);
    CHECK(gt.evaluator.find("batch_size=64") != std::string::npos);

    CHECK(file_bytes(dir / "ledger.txt") ==
          "txplace-ledger v1\nevaluator_calls 4\nbatches 1\n");
    CHECK(file_bytes(dir / "skipped.txt") == "txplace-skips v1\n");

    auto before = tree_bytes(dir);
    cmd_label(l);  // relabeling must be byte-for-byte idempotent
    CHECK(tree_bytes(dir) == before);
}

TEST_CASE("label is byte-identical across thread counts") {
    fs::path a = fresh_dir("ut_label_t1");
    fs::path b = fresh_dir("ut_label_t4");
    cmd_gen(tiny_gen(a));
    cmd_gen(tiny_gen(b));

    LabelOptions la = tiny_label(a);
    la.threads = 1;
    LabelOptions lb = tiny_label(b);
    lb.threads = 4;
    LabelSummary sa = cmd_label(la);
    LabelSummary sb = cmd_label(lb);
    CHECK(sa.labeled == sb.labeled);
    CHECK(sa.evaluator_calls == sb.evaluator_calls);
    CHECK(tree_bytes(a) == tree_bytes(b));
}

TEST_CASE("label skips scenarios it cannot pose") {
    fs::path dir = fresh_dir("ut_label_skip");
    GenOptions g = tiny_gen(dir, 2);
    g.width = 8;
    g.height = 8;
    cmd_gen(g);

    LabelOptions l = tiny_label(dir, 16);  // margin swallows the whole 8x8 grid
    LabelSummary s = cmd_label(l);
    CHECK(s.labeled == 0);
    CHECK(s.skipped == 2);
    CHECK(s.evaluator_calls == 0);

    Manifest m = read_manifest(l.manifest_path);
    for (const ScenarioRecord& rec : m.scenarios) {
        CHECK(rec.ground_truth == "-");
        CHECK(rec.split == "-");
    }
    std::string skips = file_bytes(dir / "skipped.txt");
    CHECK(skips.find("000000\t") != std::string::npos);
    CHECK(skips.find("000001\t") != std::string::npos);

    EvalOptions e;
    e.manifest_path = l.manifest_path;
    e.split = "all";
    e.out_dir = (dir / "results").string();
    CHECK_THROWS_WITH_AS(cmd_eval(e), doctest::Contains("no labeled scenarios"),
                         std::runtime_error);
}

TEST_CASE("full-region evaluation reproduces the exhaustive optima") {
    fs::path dir = fresh_dir("ut_eval_full");
    cmd_gen(tiny_gen(dir));
    cmd_label(tiny_label(dir));
    auto gts = truths(dir);
    REQUIRE(!gts.empty());

    EvalOptions e;
    e.manifest_path = (dir / "manifest.txt").string();
    e.split = "all";
    e.out_dir = (dir / "results").string();

    SUBCASE("top-K power, selecting for power") {
        e.strategy = "topk_power";
        e.select = "best_power";
        EvalSummary s = cmd_eval(e);
        REQUIRE(s.rows.size() == 1);
        CHECK(s.rows[0].param == 0);
        CHECK(s.rows[0].scenarios == static_cast<std::int64_t>(gts.size()));
        CHECK(s.rows[0].pwr_pct.mean == doctest::Approx(100.0).epsilon(1e-12));
        CHECK(s.rows[0].err_pwr.mean == 0.0);
        for (const ScenarioRow& r : s.scenario_rows) {
            CHECK(r.outcome.chosen == gts.at(r.scenario).optima.power_opt);
            CHECK(r.param_effective == r.region_size);
            CHECK(r.speedup == 1.0);
        }
        CHECK(fs::exists(fs::path(e.out_dir) / "eval_topk_power_best_power_summary.csv"));
    }

    SUBCASE("union of everything, selecting for balance") {
        e.strategy = "union";
        e.select = "best_l2";
        EvalSummary s = cmd_eval(e);
        REQUIRE(s.rows.size() == 1);
        REQUIRE(s.rows[0].overlap_pct.has_value());
        CHECK(s.rows[0].overlap_pct->mean == 100.0);
        for (const ScenarioRow& r : s.scenario_rows) {
            const GroundTruthRecord& gt = gts.at(r.scenario);
            CHECK(r.outcome.chosen == gt.optima.balanced_opt);
            CHECK(r.outcome.d_n == gt.optima.balanced_d);
            CHECK(r.outcome.evals_used == gt.region_size);
        }
    }
}

TEST_CASE("requested pool sizes are clamped per scenario") {
    fs::path dir = fresh_dir("ut_eval_clamp");
    cmd_gen(tiny_gen(dir));
    cmd_label(tiny_label(dir));

    EvalOptions e;
    e.manifest_path = (dir / "manifest.txt").string();
    e.strategy = "topk_power";
    e.select = "best_power";
    e.params = {3, 100000};
    e.split = "all";
    e.out_dir = (dir / "results").string();

    EvalSummary s = cmd_eval(e);
    REQUIRE(s.rows.size() == 2);
    CHECK(s.rows[0].param == 3);
    CHECK(s.rows[1].param == 100000);
    for (const ScenarioRow& r : s.scenario_rows) {
        if (r.param_requested == 3) {
            CHECK(r.param_effective == std::min<std::int64_t>(3, r.region_size));
            CHECK(r.outcome.evals_used == r.param_effective);
        } else {
            CHECK(r.param_effective == r.region_size);
            CHECK(r.outcome.evals_used == r.region_size);
        }
        CHECK(r.outcome.batches_used == (r.outcome.evals_used + 63) / 64);
    }
}

TEST_CASE("sampled evaluation is reproducible for a fixed seed") {
    fs::path dir = fresh_dir("ut_eval_samples");
    cmd_gen(tiny_gen(dir));
    cmd_label(tiny_label(dir));

    EvalOptions e;
    e.manifest_path = (dir / "manifest.txt").string();
    e.strategy = "samples";
    e.select = "best_l2";
    e.params = {4};
    e.seed = 9;
    e.split = "all";

    e.out_dir = (dir / "r1").string();
    cmd_eval(e);
    e.out_dir = (dir / "r2").string();
    cmd_eval(e);
    CHECK(tree_bytes(dir / "r1") == tree_bytes(dir / "r2"));

    EvalSummary s = cmd_eval(e);
    for (const ScenarioRow& r : s.scenario_rows) CHECK(r.outcome.evals_used <= 4);
}

TEST_CASE("evaluation refuses unlabeled scenarios named by the split") {
    fs::path dir = fresh_dir("ut_eval_nogt");
    write_pgm8(free_grid(8, 8), (dir / "m.pgm").string());
    Manifest m;
    m.scenarios.push_back({"solo", "m.pgm", "-", "-", "-", "test"});
    std::string manifest_path = (dir / "manifest.txt").string();
    write_manifest(m, manifest_path);

    EvalOptions e;
    e.manifest_path = manifest_path;
    e.out_dir = (dir / "results").string();
    CHECK_THROWS_WITH_AS(cmd_eval(e), doctest::Contains("no ground truth"), std::runtime_error);

    EvalOptions bad = e;
    bad.split = "holdout";
    CHECK_THROWS_AS(cmd_eval(bad), std::invalid_argument);
}

TEST_CASE("report renders tables, bounds, and a scatter export") {
    fs::path dir = fresh_dir("ut_report");
    cmd_gen(tiny_gen(dir));
    cmd_label(tiny_label(dir));
    auto gts = truths(dir);
    REQUIRE(!gts.empty());
    const std::string id = gts.begin()->first;

    EvalOptions e;
    e.manifest_path = (dir / "manifest.txt").string();
    e.split = "all";
    e.out_dir = (dir / "results").string();
    e.strategy = "topk_power";
    e.select = "best_power";
    e.params = {1, 0};
    cmd_eval(e);
    e.strategy = "union";
    e.select = "best_l2";
    e.params = {2};
    cmd_eval(e);

    ReportOptions r;
    r.results_dir = e.out_dir;
    r.manifest_path = e.manifest_path;
    r.scenario_id = id;
    ReportSummary rs = cmd_report(r);

    CHECK(rs.tables == 2);
    REQUIRE(rs.bounds.has_value());
    CHECK(rs.bounds->count == static_cast<std::int64_t>(gts.size()));
    CHECK(fs::exists(fs::path(e.out_dir) / "bounds.csv"));

    // Candidates: one per region member. Markers: two topk_power params plus
    // one union param.
    CHECK(rs.scatter_rows == gts.at(id).region_size + 3);
    std::string scatter = file_bytes(fs::path(e.out_dir) / ("scatter_" + id + ".csv"));
    CHECK(scatter.find("kind,label,y,x,cov_pct,pwr_pct\n") == 0);
    CHECK(scatter.find("marker,topk_power:best_power:1,") != std::string::npos);
    CHECK(scatter.find("marker,union:best_l2:") != std::string::npos);

    std::string report = file_bytes(rs.report_path);
    CHECK(report.find("eval_topk_power_best_power_summary.csv") != std::string::npos);
    CHECK(report.find("eval_union_best_l2_summary.csv") != std::string::npos);
    CHECK(report.find("Objective bounds over") != std::string::npos);
}

TEST_CASE("report on an empty results directory still writes the file") {
    fs::path dir = fresh_dir("ut_report_empty");
    fs::create_directories(dir / "results");
    ReportOptions r;
    r.results_dir = (dir / "results").string();
    ReportSummary rs = cmd_report(r);
    CHECK(rs.tables == 0);
    CHECK(!rs.bounds.has_value());
    CHECK(rs.scatter_rows == 0);
    CHECK(fs::exists(rs.report_path));
}

TEST_CASE("report rejects a results file whose dbar is inconsistent") {
    fs::path dir = fresh_dir("ut_report_tamper");
    fs::create_directories(dir);
    std::ofstream out(dir / "eval_topk_power_best_l2_summary.csv");
    out << "strategy,select,param,scenarios,pwr_pct_mean,pwr_pct_std,cov_pct_mean,cov_pct_std,"
           "dbar,err_pwr_mean,err_pwr_std,err_cov_mean,err_cov_std,overlap_mean,overlap_std,"
           "mean_evals,mean_batches,mean_speedup\n";
    out << "topk_power,best_l2,1,2,95,0,95,0,3.0,0,0,0,0,-,-,4,1,9\n";
    out.close();

    ReportOptions r;
    r.results_dir = dir.string();
    CHECK_THROWS_WITH_AS(cmd_report(r), doctest::Contains("does not match"), std::runtime_error);
}

TEST_CASE("results table formatting") {
    ResultRow row;
    row.strategy = "minimax";
    row.select = "best_l2";
    row.param = 0;
    row.scenarios = 5;
    row.pwr_pct = {97.5, 1.25};
    row.cov_pct = {98.0, 0.5};
    row.dbar = dataset_l2(98.0, 97.5);
    row.mean_evals = 36.0;
    row.mean_speedup = 1.0;

    std::string table = render_results_table("demo", {row});
    CHECK(table.find("demo\n") == 0);
    CHECK(table.find("Param") != std::string::npos);
    CHECK(table.find("full") != std::string::npos);   // param 0 means the whole region
    CHECK(table.find(" - ") != std::string::npos);    // overlap and time are absent
    CHECK(table.find("97.50 +- 1.25") != std::string::npos);
}
