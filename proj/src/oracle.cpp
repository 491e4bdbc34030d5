#include <txplace/oracle.hpp>

#include <txplace/detail/format.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace txplace {

std::string to_string(Objective o) {
    return o == Objective::power ? "power" : "coverage";
}

Objective objective_from_string(const std::string& s) {
    if (s == "power") return Objective::power;
    if (s == "coverage") return Objective::coverage;
    throw std::invalid_argument("unknown objective '" + s + "'");
}

namespace {

void set_min_max(ScoreMap& sm) {
    sm.min_val = sm.values(0);
    sm.max_val = sm.values(0);
    for (Eigen::Index i = 1; i < sm.values.size(); ++i) {
        sm.min_val = std::min(sm.min_val, sm.values(i));
        sm.max_val = std::max(sm.max_val, sm.values(i));
    }
}

}  // namespace

std::pair<ScoreMap, ScoreMap> exhaustive_score_maps(const BuildingMap& map,
                                                    std::shared_ptr<const FeasibleRegion> region,
                                                    const EvaluatorConfig& config,
                                                    EvalLedger* ledger) {
    if (!region || region->empty())
        throw std::invalid_argument("exhaustive_score_maps: empty feasible region");

    ScoreMap pwr{Objective::power, region, ScoreVec(region->size()), 0.0, 0.0};
    ScoreMap cov{Objective::coverage, region, ScoreVec(region->size()), 0.0, 0.0};

    auto evaluator = config.make();
    const auto& members = region->members;
    // Chunked by batch_size so the ledger counts the same batch sequence a
    // batched evaluator backend would see.
    for (std::size_t base = 0; base < members.size(); base += static_cast<std::size_t>(config.batch_size)) {
        std::size_t len = std::min(members.size() - base, static_cast<std::size_t>(config.batch_size));
        std::vector<Placement> chunk(members.begin() + base, members.begin() + base + len);
        std::vector<RadioMap> rms;
        try {
            rms = evaluate_batch(map, chunk, *evaluator, ledger, config.batch_size, config.threads);
        } catch (const std::exception& e) {
            throw std::runtime_error("exhaustive_score_maps: map " + map.id + ": " + e.what());
        }
        for (std::size_t j = 0; j < len; ++j) {
            pwr.values(static_cast<Eigen::Index>(base + j)) = avg_power(rms[j], *region);
            cov.values(static_cast<Eigen::Index>(base + j)) = avg_coverage(rms[j], *region);
        }
    }
    set_min_max(pwr);
    set_min_max(cov);
    return {std::move(pwr), std::move(cov)};
}

DualOptimum dual_optima(const ScoreMap& pwr, const ScoreMap& cov) {
    if (!pwr.region || !cov.region || !(*pwr.region == *cov.region))
        throw std::invalid_argument("dual_optima: score maps disagree on the feasible region");
    const FeasibleRegion& region = *pwr.region;
    if (region.empty()) throw std::invalid_argument("dual_optima: empty feasible region");
    const Eigen::Index n = static_cast<Eigen::Index>(region.size());
    if (pwr.values.size() != n || cov.values.size() != n)
        throw std::invalid_argument("dual_optima: score length does not match region size");

    DualOptimum out;

    Eigen::Index best_p = 0;
    for (Eigen::Index i = 1; i < n; ++i)
        if (pwr.values(i) > pwr.values(best_p)) best_p = i;

    // Coverage ties fall back to the higher-power candidate, then raster order.
    Eigen::Index best_c = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        if (cov.values(i) > cov.values(best_c) ||
            (cov.values(i) == cov.values(best_c) && pwr.values(i) > pwr.values(best_c)))
            best_c = i;
    }

    out.power_opt = region.members[static_cast<std::size_t>(best_p)];
    out.power_opt_value = pwr.values(best_p);
    out.cov_opt = region.members[static_cast<std::size_t>(best_c)];
    out.cov_opt_value = cov.values(best_c);

    Eigen::Index best_b = 0;
    double best_d = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double c_pct = percent_of(cov.values(i), out.cov_opt_value);
        double p_pct = percent_of(pwr.values(i), out.power_opt_value);
        double d = instance_l2(c_pct, p_pct);
        if (i == 0 || d < best_d) {
            best_b = i;
            best_d = d;
        }
    }
    out.balanced_opt = region.members[static_cast<std::size_t>(best_b)];
    out.balanced_d = best_d;
    out.balanced_cov_pct = percent_of(cov.values(best_b), out.cov_opt_value);
    out.balanced_pwr_pct = percent_of(pwr.values(best_b), out.power_opt_value);
    out.cov_pct_at_power_opt = percent_of(cov.values(best_p), out.cov_opt_value);
    out.pwr_pct_at_cov_opt = percent_of(pwr.values(best_c), out.power_opt_value);
    return out;
}

NormalizedScoreMap normalize(const ScoreMap& sm) {
    NormalizedScoreMap out{sm.objective, sm.region, ScoreVec(sm.values.size()), sm.min_val, sm.max_val};
    const double span = sm.max_val - sm.min_val;
    if (span > 0.0) {
        for (Eigen::Index i = 0; i < sm.values.size(); ++i)
            out.values(i) = (sm.values(i) - sm.min_val) / span;
    } else {
        out.values.setZero();
    }
    return out;
}

ScoreMap denormalize(const NormalizedScoreMap& nsm) {
    ScoreMap out{nsm.objective, nsm.region, ScoreVec(nsm.values.size()), nsm.min_val, nsm.max_val};
    const double span = nsm.max_val - nsm.min_val;
    for (Eigen::Index i = 0; i < nsm.values.size(); ++i)
        out.values(i) = nsm.values(i) * span + nsm.min_val;
    return out;
}

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd ms;
    if (xs.empty()) return ms;
    double sum = 0.0;
    for (double x : xs) sum += x;
    ms.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return ms;
    double acc = 0.0;
    for (double x : xs) acc += (x - ms.mean) * (x - ms.mean);
    ms.std = std::sqrt(acc / static_cast<double>(xs.size() - 1));
    return ms;
}

BoundsReport bounds_report(const std::vector<DualOptimum>& corpus) {
    if (corpus.empty()) throw std::invalid_argument("bounds_report: empty corpus");
    std::vector<double> cov_at_p, pwr_at_c, bal_cov, bal_pwr, dist;
    cov_at_p.reserve(corpus.size());
    pwr_at_c.reserve(corpus.size());
    bal_cov.reserve(corpus.size());
    bal_pwr.reserve(corpus.size());
    dist.reserve(corpus.size());
    for (const DualOptimum& d : corpus) {
        cov_at_p.push_back(d.cov_pct_at_power_opt);
        pwr_at_c.push_back(d.pwr_pct_at_cov_opt);
        bal_cov.push_back(d.balanced_cov_pct);
        bal_pwr.push_back(d.balanced_pwr_pct);
        dist.push_back(coord_error(d.power_opt, d.cov_opt));
    }
    BoundsReport r;
    r.count = static_cast<std::int64_t>(corpus.size());
    r.cov_pct_at_power_opt = mean_std(cov_at_p);
    r.pwr_pct_at_cov_opt = mean_std(pwr_at_c);
    r.balanced_cov_pct = mean_std(bal_cov);
    r.balanced_pwr_pct = mean_std(bal_pwr);
    r.optima_distance = mean_std(dist);
    r.balanced_dbar = dataset_l2(r.balanced_cov_pct.mean, r.balanced_pwr_pct.mean);
    r.dbar_at_power_opt = dataset_l2(r.cov_pct_at_power_opt.mean, 100.0);
    r.dbar_at_cov_opt = dataset_l2(100.0, r.pwr_pct_at_cov_opt.mean);
    return r;
}

std::string render_bounds_csv(const BoundsReport& r) {
    using detail::real17;
    std::string s = "placement,cov_pct_mean,cov_pct_std,pwr_pct_mean,pwr_pct_std,dbar\n";
    s += "power_opt," + real17(r.cov_pct_at_power_opt.mean) + "," + real17(r.cov_pct_at_power_opt.std) +
         ",100,0," + real17(r.dbar_at_power_opt) + "\n";
    s += "cov_opt,100,0," + real17(r.pwr_pct_at_cov_opt.mean) + "," + real17(r.pwr_pct_at_cov_opt.std) +
         "," + real17(r.dbar_at_cov_opt) + "\n";
    s += "balanced," + real17(r.balanced_cov_pct.mean) + "," + real17(r.balanced_cov_pct.std) + "," +
         real17(r.balanced_pwr_pct.mean) + "," + real17(r.balanced_pwr_pct.std) + "," +
         real17(r.balanced_dbar) + "\n";
    s += "optima_distance_px," + real17(r.optima_distance.mean) + "," + real17(r.optima_distance.std) +
         ",-,-,-\n";
    return s;
}

std::string render_bounds_table(const BoundsReport& r) {
    using detail::real2;
    auto pm = [](const MeanStd& ms) { return detail::real2(ms.mean) + " +- " + detail::real2(ms.std); };
    char buf[160];
    std::string s;
    s += "Objective bounds over " + std::to_string(r.count) + " scenario(s)\n";
    std::snprintf(buf, sizeof buf, "%-14s %-18s %-18s %8s\n", "Placement", "Cov%", "Pwr%", "dbar");
    s += buf;
    std::snprintf(buf, sizeof buf, "%-14s %-18s %-18s %8s\n", "power_opt",
                  pm(r.cov_pct_at_power_opt).c_str(), "100.00", real2(r.dbar_at_power_opt).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf, "%-14s %-18s %-18s %8s\n", "cov_opt", "100.00",
                  pm(r.pwr_pct_at_cov_opt).c_str(), real2(r.dbar_at_cov_opt).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf, "%-14s %-18s %-18s %8s\n", "balanced", pm(r.balanced_cov_pct).c_str(),
                  pm(r.balanced_pwr_pct).c_str(), real2(r.balanced_dbar).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf, "%-14s %s px\n", "optima dist", pm(r.optima_distance).c_str());
    s += buf;
    return s;
}

}  // namespace txplace
