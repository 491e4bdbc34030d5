#pragma once

#include <cstdint>
#include <mutex>

namespace txplace {

/// Accounting of evaluator usage: how many radio-map evaluations and how many
/// batches a run consumed, with wall time split into the pool-generation and
/// evaluation phases. Counts are deterministic; times are measured.
class EvalLedger {
public:
    void record_evaluation(std::int64_t calls, std::int64_t batches) {
        std::lock_guard<std::mutex> lock(mutex_);
        evaluator_calls_ += calls;
        batches_ += batches;
    }
    void add_pool_seconds(double s) {
        std::lock_guard<std::mutex> lock(mutex_);
        pool_seconds_ += s;
    }
    void add_eval_seconds(double s) {
        std::lock_guard<std::mutex> lock(mutex_);
        eval_seconds_ += s;
    }
    void merge(const EvalLedger& other) {
        std::lock_guard<std::mutex> lock(mutex_);
        evaluator_calls_ += other.evaluator_calls();
        batches_ += other.batches();
        pool_seconds_ += other.pool_seconds();
        eval_seconds_ += other.eval_seconds();
    }

    std::int64_t evaluator_calls() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return evaluator_calls_;
    }
    std::int64_t batches() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return batches_;
    }
    double pool_seconds() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return pool_seconds_;
    }
    double eval_seconds() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return eval_seconds_;
    }
    double wall_seconds() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return pool_seconds_ + eval_seconds_;
    }

private:
    mutable std::mutex mutex_;
    std::int64_t evaluator_calls_ = 0;
    std::int64_t batches_ = 0;
    double pool_seconds_ = 0.0;
    double eval_seconds_ = 0.0;
};

}  // namespace txplace
