#include <CLI11.hpp>

#include <txplace/bench.hpp>

#include <cstdio>
#include <exception>
#include <string>

namespace {

struct CommonFlags {
    std::uint64_t seed = 1;
    std::string model = "wall_count";
    int batch_size = 64;
    int threads = 1;
    txplace::PropagationParams params;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_model) {
    cmd->add_option("--seed", f.seed, "Deterministic seed");
    if (with_model) {
        cmd->add_option("--model", f.model,
                        "Propagation model: free_space | wall_count | file:<dir>");
        cmd->add_option("--batch-size", f.batch_size, "Evaluator batch size")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--tx-power", f.params.tx_power_dbm, "Transmit power in dBm");
        cmd->add_option("--floor", f.params.floor_dbm, "dBm mapped to pixel 0");
        cmd->add_option("--ceil", f.params.ceil_dbm, "dBm mapped to pixel 255");
        cmd->add_option("--exponent", f.params.pathloss_exponent, "Path-loss exponent");
        cmd->add_option("--ref-loss", f.params.ref_loss_db, "Loss at unit distance in dB");
        cmd->add_option("--wall-loss", f.params.wall_loss_db, "Per-wall penalty in dB");
    }
}

txplace::EvaluatorConfig evaluator_config(const CommonFlags& f) {
    txplace::EvaluatorConfig cfg;
    cfg.model = f.model;
    cfg.params = f.params;
    cfg.batch_size = f.batch_size;
    cfg.threads = f.threads;
    return cfg;
}

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transmitter placement dataset and benchmark tool"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a corpus of building maps");
    txplace::GenOptions gen_opt;
    CommonFlags gen_flags;
    add_common(gen, gen_flags, false);
    gen->add_option("--count", gen_opt.count, "Number of maps")->check(CLI::NonNegativeNumber);
    gen->add_option("--width", gen_opt.width, "Map width in pixels");
    gen->add_option("--height", gen_opt.height, "Map height in pixels");
    gen->add_option("--density", gen_opt.density, "Target occupied fraction");
    gen->add_option("--out", gen_opt.out_dir, "Output dataset directory")->required();

    // label
    auto* label = app.add_subcommand("label", "Exhaustively label a corpus with ground truth");
    txplace::LabelOptions label_opt;
    CommonFlags label_flags;
    add_common(label, label_flags, true);
    label->add_option("--manifest", label_opt.manifest_path, "Path to manifest.txt")->required();
    label->add_option("--margin", label_opt.margin, "Feasible-region margin in pixels")
        ->check(CLI::NonNegativeNumber);
    label->add_option("--split-seed", label_opt.split_seed, "Seed for the train/val/test split");

    // eval
    auto* eval = app.add_subcommand("eval", "Run a selection strategy over a labeled corpus");
    txplace::EvalOptions eval_opt;
    CommonFlags eval_flags;
    add_common(eval, eval_flags, true);
    std::vector<std::int64_t> ks, ms, ns;
    eval->add_option("--manifest", eval_opt.manifest_path, "Path to manifest.txt")->required();
    eval->add_option("--strategy", eval_opt.strategy,
                     "topk_power | topk_coverage | minimax | union | samples")
        ->required();
    eval->add_option("--select", eval_opt.select, "best_power | best_coverage | best_l2");
    eval->add_option("--k", ks, "Shortlist size(s) for topk/minimax; 0 = full region");
    eval->add_option("--m", ms, "Per-objective pool size(s) for union; 0 = full region");
    eval->add_option("--n", ns, "Sample count(s) for samples; 0 = full region");
    eval->add_option("--source", eval_opt.source, "Candidate scores: oracle | file:<dir>");
    eval->add_option("--split", eval_opt.split, "train | val | test | all");
    eval->add_option("--jitter-radius", eval_opt.jitter_radius,
                     "Sampler jitter radius; 0 = from region extent");
    eval->add_option("--out", eval_opt.out_dir, "Results directory")->required();

    // report
    auto* report = app.add_subcommand("report", "Render tables, bounds, and scatter exports");
    txplace::ReportOptions report_opt;
    report->add_option("--results", report_opt.results_dir, "Directory with eval CSVs");
    report->add_option("--manifest", report_opt.manifest_path,
                       "Manifest for the bounds summary and scatter export");
    report->add_option("--scenario", report_opt.scenario_id, "Scenario id for the scatter CSV");
    report->add_option("--out", report_opt.out_dir, "Report directory (defaults to --results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            gen_opt.seed = gen_flags.seed;
            txplace::Manifest m = txplace::cmd_gen(gen_opt);
            std::printf("generated %zu map(s) under %s\n", m.scenarios.size(),
                        gen_opt.out_dir.c_str());
        } else if (label->parsed()) {
            label_opt.evaluator = evaluator_config(label_flags);
            label_opt.threads = label_flags.threads;
            txplace::LabelSummary s = txplace::cmd_label(label_opt);
            std::printf("labeled %lld scenario(s), skipped %lld\n",
                        static_cast<long long>(s.labeled), static_cast<long long>(s.skipped));
            std::printf("evaluator calls %lld in %lld batch(es), %.3fs\n",
                        static_cast<long long>(s.evaluator_calls),
                        static_cast<long long>(s.batches), s.seconds);
        } else if (eval->parsed()) {
            eval_opt.evaluator = evaluator_config(eval_flags);
            eval_opt.threads = eval_flags.threads;
            eval_opt.seed = eval_flags.seed;
            const char* expected = nullptr;
            if (eval_opt.strategy == "union") {
                eval_opt.params = ms;
                expected = "--m";
                if (!ks.empty() || !ns.empty())
                    throw std::invalid_argument("strategy union takes --m, not --k/--n");
            } else if (eval_opt.strategy == "samples") {
                eval_opt.params = ns;
                expected = "--n";
                if (!ks.empty() || !ms.empty())
                    throw std::invalid_argument("strategy samples takes --n, not --k/--m");
            } else {
                eval_opt.params = ks;
                expected = "--k";
                if (!ms.empty() || !ns.empty())
                    throw std::invalid_argument("strategy " + eval_opt.strategy +
                                                " takes --k, not --m/--n");
            }
            (void)expected;
            txplace::EvalSummary s = txplace::cmd_eval(eval_opt);
            std::fputs(txplace::render_results_table(
                           "strategy " + eval_opt.strategy + " / " + eval_opt.select +
                               " over split " + eval_opt.split,
                           s.rows)
                           .c_str(),
                       stdout);
            std::printf("wrote %s\nwrote %s\n", s.summary_csv.c_str(), s.scenarios_csv.c_str());
        } else if (report->parsed()) {
            txplace::ReportSummary s = txplace::cmd_report(report_opt);
            std::printf("wrote %s (%d table(s)%s)\n", s.report_path.c_str(), s.tables,
                        s.bounds ? ", bounds summary" : "");
            if (s.scatter_rows > 0)
                std::printf("scatter rows: %lld\n", static_cast<long long>(s.scatter_rows));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", one_line(e.what()).c_str());
        return 1;
    }
    return 0;
}
