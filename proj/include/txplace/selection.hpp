#pragma once

#include <txplace/grid.hpp>
#include <txplace/ledger.hpp>
#include <txplace/oracle.hpp>
#include <txplace/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace txplace {

enum class Provenance { topk_power, topk_coverage, minimax, union_pooling, samples, custom };

std::string to_string(Provenance p);

struct CandidatePool {
    std::vector<Placement> placements;  // duplicate-free, all inside the region
    Provenance provenance = Provenance::custom;
    std::int64_t param = 0;   // the K, M, or N that produced the pool
    bool shortfall = false;   // sampler could not reach N distinct members
};

struct RankPair {
    std::int64_t r_pwr = 0;  // 1 = best
    std::int64_t r_cov = 0;
    std::int64_t r_max = 0;  // max(r_pwr, r_cov)
};

enum class SelectStrategy { best_power, best_coverage, best_l2 };

std::string to_string(SelectStrategy s);
SelectStrategy select_strategy_from_string(const std::string& s);

struct SelectionOutcome {
    Placement chosen;
    double pwr_pct = 0.0;
    double cov_pct = 0.0;
    double d_n = 0.0;
    double err_pwr = 0.0;  // pixels to the reference power optimum
    double err_cov = 0.0;  // pixels to the reference coverage optimum
    std::int64_t evals_used = 0;
    std::int64_t batches_used = 0;
};

Placement argmax_placement(const ScoreVec& values, const FeasibleRegion& region);

CandidatePool topk(const ScoreVec& values, const FeasibleRegion& region, std::int64_t k,
                   Provenance provenance = Provenance::custom);
CandidatePool topk(const ScoreMap& sm, std::int64_t k);

// Per-member rank under each objective: descending by value, ties raster-first,
// so every rank in 1..|region| is used exactly once.
std::vector<RankPair> dual_ranks(const ScoreVec& pwr, const ScoreVec& cov,
                                 const FeasibleRegion& region);

CandidatePool minimax_pool(const ScoreVec& pwr, const ScoreVec& cov, const FeasibleRegion& region,
                           std::int64_t k);
CandidatePool minimax_pool(const ScoreMap& pwr, const ScoreMap& cov, std::int64_t k);

struct UnionResult {
    CandidatePool pool;
    double overlap_pct = 0.0;  // (2M - |union|) / M * 100
};

UnionResult union_pool(const ScoreVec& pwr, const ScoreVec& cov, const FeasibleRegion& region,
                       std::int64_t m);
UnionResult union_pool(const ScoreMap& pwr, const ScoreMap& cov, std::int64_t m);

struct JitterParams {
    int radius = 0;  // 0 picks a radius from the region extent
};

// Stochastic stand-in for drawing candidate placements from a generative
// model: seeded integer jitter around the weighted argmax, with rejection of
// infeasible or repeated draws. Pools are nested, the N-pool is a prefix of
// every larger pool for the same seed.
CandidatePool sample_pool(const FeasibleRegion& region, const ScoreVec& center_weights,
                          std::uint64_t seed, std::int64_t n, JitterParams jitter = {});

SelectionOutcome select(const CandidatePool& pool, const BuildingMap& map,
                        const FeasibleRegion& region, const EvaluatorConfig& config,
                        SelectStrategy strategy, const DualOptimum& reference,
                        EvalLedger* ledger = nullptr);

}  // namespace txplace
