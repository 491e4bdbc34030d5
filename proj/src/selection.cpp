#include <txplace/selection.hpp>

#include <txplace/detail/rng.hpp>
#include <txplace/objectives.hpp>
#include <txplace/propagation.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace txplace {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::topk_power: return "topk_power";
        case Provenance::topk_coverage: return "topk_coverage";
        case Provenance::minimax: return "minimax";
        case Provenance::union_pooling: return "union";
        case Provenance::samples: return "samples";
        case Provenance::custom: return "custom";
    }
    return "custom";
}

std::string to_string(SelectStrategy s) {
    switch (s) {
        case SelectStrategy::best_power: return "best_power";
        case SelectStrategy::best_coverage: return "best_coverage";
        case SelectStrategy::best_l2: return "best_l2";
    }
    return "best_l2";
}

SelectStrategy select_strategy_from_string(const std::string& s) {
    if (s == "best_power") return SelectStrategy::best_power;
    if (s == "best_coverage") return SelectStrategy::best_coverage;
    if (s == "best_l2") return SelectStrategy::best_l2;
    throw std::invalid_argument("unknown selection strategy '" + s + "'");
}

namespace {

void check_values(const ScoreVec& values, const FeasibleRegion& region, const char* who) {
    if (region.empty()) throw std::invalid_argument(std::string(who) + ": empty feasible region");
    if (values.size() != static_cast<Eigen::Index>(region.size()))
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(values.size()) +
                                    " values for " + std::to_string(region.size()) +
                                    " region members");
}

void check_k(std::int64_t k, const FeasibleRegion& region, const char* who) {
    if (k < 1 || k > static_cast<std::int64_t>(region.size()))
        throw std::invalid_argument(std::string(who) + ": count " + std::to_string(k) +
                                    " outside [1, " + std::to_string(region.size()) + "]");
}

// Region indices ordered by descending value, ties raster-first. Region
// members are already raster-sorted, so the index is the tiebreak.
std::vector<std::size_t> descending_order(const ScoreVec& values) {
    std::vector<std::size_t> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values(static_cast<Eigen::Index>(a)) > values(static_cast<Eigen::Index>(b));
    });
    return order;
}

}  // namespace

Placement argmax_placement(const ScoreVec& values, const FeasibleRegion& region) {
    check_values(values, region, "argmax_placement");
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < values.size(); ++i)
        if (values(i) > values(best)) best = i;
    return region.members[static_cast<std::size_t>(best)];
}

CandidatePool topk(const ScoreVec& values, const FeasibleRegion& region, std::int64_t k,
                   Provenance provenance) {
    check_values(values, region, "topk");
    check_k(k, region, "topk");
    std::vector<std::size_t> order = descending_order(values);
    CandidatePool pool;
    pool.provenance = provenance;
    pool.param = k;
    pool.placements.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i)
        pool.placements.push_back(region.members[order[static_cast<std::size_t>(i)]]);
    return pool;
}

CandidatePool topk(const ScoreMap& sm, std::int64_t k) {
    if (!sm.region) throw std::invalid_argument("topk: score map has no region");
    return topk(sm.values, *sm.region, k,
                sm.objective == Objective::power ? Provenance::topk_power
                                                 : Provenance::topk_coverage);
}

std::vector<RankPair> dual_ranks(const ScoreVec& pwr, const ScoreVec& cov,
                                 const FeasibleRegion& region) {
    check_values(pwr, region, "dual_ranks");
    check_values(cov, region, "dual_ranks");
    std::vector<RankPair> ranks(region.size());
    std::vector<std::size_t> by_pwr = descending_order(pwr);
    std::vector<std::size_t> by_cov = descending_order(cov);
    for (std::size_t pos = 0; pos < by_pwr.size(); ++pos) {
        ranks[by_pwr[pos]].r_pwr = static_cast<std::int64_t>(pos) + 1;
        ranks[by_cov[pos]].r_cov = static_cast<std::int64_t>(pos) + 1;
    }
    for (RankPair& r : ranks) r.r_max = std::max(r.r_pwr, r.r_cov);
    return ranks;
}

CandidatePool minimax_pool(const ScoreVec& pwr, const ScoreVec& cov, const FeasibleRegion& region,
                           std::int64_t k) {
    check_k(k, region, "minimax_pool");
    std::vector<RankPair> ranks = dual_ranks(pwr, cov, region);
    std::vector<std::size_t> order(region.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ranks[a].r_max < ranks[b].r_max; });
    CandidatePool pool;
    pool.provenance = Provenance::minimax;
    pool.param = k;
    pool.placements.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i)
        pool.placements.push_back(region.members[order[static_cast<std::size_t>(i)]]);
    return pool;
}

CandidatePool minimax_pool(const ScoreMap& pwr, const ScoreMap& cov, std::int64_t k) {
    if (!pwr.region || !cov.region || !(*pwr.region == *cov.region))
        throw std::invalid_argument("minimax_pool: score maps disagree on the feasible region");
    return minimax_pool(pwr.values, cov.values, *pwr.region, k);
}

UnionResult union_pool(const ScoreVec& pwr, const ScoreVec& cov, const FeasibleRegion& region,
                       std::int64_t m) {
    CandidatePool top_pwr = topk(pwr, region, m, Provenance::topk_power);
    CandidatePool top_cov = topk(cov, region, m, Provenance::topk_coverage);
    UnionResult res;
    res.pool.provenance = Provenance::union_pooling;
    res.pool.param = m;
    res.pool.placements = top_pwr.placements;
    std::set<Placement, decltype(&raster_less)> seen(&raster_less);
    for (const Placement& p : top_pwr.placements) seen.insert(p);
    for (const Placement& p : top_cov.placements)
        if (seen.insert(p).second) res.pool.placements.push_back(p);
    res.overlap_pct = static_cast<double>(2 * m - static_cast<std::int64_t>(res.pool.placements.size())) /
                      static_cast<double>(m) * 100.0;
    return res;
}

UnionResult union_pool(const ScoreMap& pwr, const ScoreMap& cov, std::int64_t m) {
    if (!pwr.region || !cov.region || !(*pwr.region == *cov.region))
        throw std::invalid_argument("union_pool: score maps disagree on the feasible region");
    return union_pool(pwr.values, cov.values, *pwr.region, m);
}

CandidatePool sample_pool(const FeasibleRegion& region, const ScoreVec& center_weights,
                          std::uint64_t seed, std::int64_t n, JitterParams jitter) {
    check_values(center_weights, region, "sample_pool");
    if (n < 1) throw std::invalid_argument("sample_pool: N must be at least 1");

    int min_y = region.members.front().y, max_y = min_y;
    int min_x = region.members.front().x, max_x = min_x;
    for (const Placement& p : region.members) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
    }
    int radius = jitter.radius;
    if (radius <= 0) radius = std::max(1, (std::max(max_y - min_y, max_x - min_x) + 1) / 4);

    CandidatePool pool;
    pool.provenance = Provenance::samples;
    pool.param = n;

    const Placement center = argmax_placement(center_weights, region);
    const std::int64_t want = std::min<std::int64_t>(n, static_cast<std::int64_t>(region.size()));
    pool.shortfall = static_cast<std::int64_t>(region.size()) < n;

    std::mt19937_64 rng(seed);
    std::set<Placement, decltype(&raster_less)> taken(&raster_less);
    auto accept = [&](Placement p) {
        if (!region.contains(p) || !taken.insert(p).second) return false;
        pool.placements.push_back(p);
        return true;
    };

    accept(center);
    int rejections = 0;
    while (static_cast<std::int64_t>(pool.placements.size()) < want) {
        // Sum of two uniforms keeps draws concentrated near the center while
        // reaching the whole [-radius, radius] square.
        int dy = (detail::uniform_int(rng, -radius, radius) + detail::uniform_int(rng, -radius, radius)) / 2;
        int dx = (detail::uniform_int(rng, -radius, radius) + detail::uniform_int(rng, -radius, radius)) / 2;
        if (accept({center.y + dy, center.x + dx})) {
            rejections = 0;
            continue;
        }
        if (++rejections >= 64) {
            // The neighborhood is exhausted; fall back to the raster-first
            // member not yet taken so the draw sequence still terminates.
            for (const Placement& p : region.members) {
                if (accept(p)) break;
            }
            rejections = 0;
        }
    }
    return pool;
}

SelectionOutcome select(const CandidatePool& pool, const BuildingMap& map,
                        const FeasibleRegion& region, const EvaluatorConfig& config,
                        SelectStrategy strategy, const DualOptimum& reference, EvalLedger* ledger) {
    if (pool.placements.empty()) throw std::invalid_argument("select: empty candidate pool");
    if (!(reference.power_opt_value > 0.0) || !(reference.cov_opt_value > 0.0))
        throw std::invalid_argument("select: reference optimum values must be positive");

    auto evaluator = config.make();
    std::vector<RadioMap> rms;
    try {
        rms = evaluate_batch(map, pool.placements, *evaluator, ledger, config.batch_size,
                             config.threads);
    } catch (const std::exception& e) {
        throw std::runtime_error("select: " + std::string(e.what()));
    }

    struct Scored {
        Placement p;
        PercentPair pct;
        double d_n;
    };
    std::vector<Scored> scored(pool.placements.size());
    for (std::size_t i = 0; i < pool.placements.size(); ++i) {
        ObjectivePair obj = objective_pair(rms[i], region);
        PercentPair pct{percent_of(obj.avg_power, reference.power_opt_value),
                        percent_of(obj.avg_coverage, reference.cov_opt_value)};
        scored[i] = {pool.placements[i], pct, instance_l2(pct.cov_pct, pct.pwr_pct)};
    }
    // Raster-sorted reduction keeps ties deterministic whatever order the
    // pool listed its members in.
    std::sort(scored.begin(), scored.end(),
              [](const Scored& a, const Scored& b) { return raster_less(a.p, b.p); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < scored.size(); ++i) {
        switch (strategy) {
            case SelectStrategy::best_power:
                if (scored[i].pct.pwr_pct > scored[best].pct.pwr_pct) best = i;
                break;
            case SelectStrategy::best_coverage:
                if (scored[i].pct.cov_pct > scored[best].pct.cov_pct) best = i;
                break;
            case SelectStrategy::best_l2:
                if (scored[i].d_n < scored[best].d_n) best = i;
                break;
        }
    }

    SelectionOutcome out;
    out.chosen = scored[best].p;
    out.pwr_pct = scored[best].pct.pwr_pct;
    out.cov_pct = scored[best].pct.cov_pct;
    out.d_n = scored[best].d_n;
    out.err_pwr = coord_error(out.chosen, reference.power_opt);
    out.err_cov = coord_error(out.chosen, reference.cov_opt);
    out.evals_used = static_cast<std::int64_t>(pool.placements.size());
    out.batches_used = (out.evals_used + config.batch_size - 1) / config.batch_size;
    return out;
}

}  // namespace txplace
