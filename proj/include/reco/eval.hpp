#ifndef RECO_EVAL_HPP_
#define RECO_EVAL_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "reco/corpus.hpp"
#include "reco/recommender.hpp"
#include "reco/similarity.hpp"

namespace reco {

/// 100 * |top-n ∩ relevant| / min(n, |recommended|); 0 for an empty list.
double precision_at_n(std::span<const ItemId> recommended, const std::set<ItemId> &relevant, std::size_t n);

/// 100 * |top-n ∩ relevant| / |relevant|; nullopt when nothing is relevant.
std::optional<double> recall_at_n(std::span<const ItemId> recommended, const std::set<ItemId> &relevant,
                                  std::size_t n);

struct ExperimentConfig {
    double train_fraction = 0.8;
    std::size_t top_n = 5;
    std::uint64_t seed = 7;
    std::vector<Mode> modes{std::begin(kAllModes), std::end(kAllModes)};
    bool with_rules = true;
    bool without_rules = true;
    /// Items the test user rated at or above this are the hidden targets.
    double relevance_threshold = 7.0;
    /// k, minsup, minconf, exclusion threshold; mode/top_n/use_rules are
    /// overwritten per row. Synthetic baskets are small and spread over
    /// many items, so the support floor sits far below the 40% default.
    RecommenderConfig recommender{.minsup_pct = 1.0, .minconf_pct = 30.0};
};

struct EvalRow {
    Mode mode = Mode::simple;
    bool rules_enabled = false;
    double precision = 0.0; // macro average, percent
    double recall = 0.0;    // macro average, percent
    std::size_t n = 0;
    std::size_t num_test_users = 0;
    std::size_t evaluated_users = 0;
    std::size_t skipped_users = 0;

    friend bool operator==(const EvalRow &, const EvalRow &) = default;
};

struct EvalReport {
    std::size_t train_users = 0;
    std::size_t test_users = 0;
    std::vector<EvalRow> rows;

    friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

/// The query profile of a test user: everything except the relevant items,
/// which are removed from both ratings and transactions.
Profile held_out_profile(const Dataset &dataset, const UserId &user, const std::set<ItemId> &hidden);

std::set<ItemId> relevant_items(const Dataset &dataset, const UserId &user, double threshold);

/// Split users, then for each test user hide the relevant items, query the
/// training population with the rest, and score the top-N. One row per
/// (mode, rules) pair. Throws ExperimentError when the test split is empty.
EvalReport run_experiment(const Dataset &dataset, const ExperimentConfig &config);

/// Aligned text table, one row per (mode, rules) pair.
void write_report(std::ostream &out, const EvalReport &report);

} // namespace reco

#endif // RECO_EVAL_HPP_
