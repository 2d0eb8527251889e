#ifndef RECO_RECOMMENDER_HPP_
#define RECO_RECOMMENDER_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"
#include "reco/implicit_vsm.hpp"
#include "reco/rule_miner.hpp"
#include "reco/sequence_index.hpp"
#include "reco/similarity.hpp"

namespace reco {

enum class Source { neighbor, rule, popularity };

std::string_view to_string(Source source);

struct Recommendation {
    ItemId item;
    double score = 0.0;
    Source source = Source::neighbor;
    /// Neighbor user id, the triggering rule ("P2=>P1"), or "cold-start".
    std::string explain;

    friend bool operator==(const Recommendation &, const Recommendation &) = default;
};

struct RecommenderConfig {
    std::size_t k_neighbors = 5;
    std::size_t top_n = 5;
    Mode mode = Mode::simple;
    double minsup_pct = 40.0;
    double minconf_pct = 60.0;
    /// Neighbor ratings below this never become candidates.
    double exclusion_threshold = 7.0;
    bool use_rules = true;

    /// Throws ConfigError.
    void validate() const;
};

/// Read-only model over a training set: per-mode user vectors, the IIF
/// table, the precedence index and the frequent itemsets of the training
/// transactions. Safe to share between threads once constructed.
class Recommender {
public:
    explicit Recommender(Dataset train, double minsup_pct = 40.0);

    const Dataset &train() const noexcept { return train_; }
    const IifTable &iif() const noexcept { return iif_; }
    const PrecedenceIndex &precedence() const noexcept { return precedence_; }
    std::span<const FrequentItemset> frequents() const noexcept { return frequents_; }

    UserVector vectorize(const Profile &profile, Mode mode) const;

    /// Neighbor candidates (one per neighbor, each passing the sequence
    /// filter), then rule expansion of those candidates. Neighbor-sourced
    /// items rank ahead of rule-sourced ones; within each group by score
    /// (similarity * rating, or confidence * parent score), ties by item id.
    ///
    /// Throws NoProfileError when the target's vector is all zero.
    std::vector<Recommendation> recommend(const Profile &target, const RecommenderConfig &config) const;
    std::vector<Recommendation> recommend(const UserId &target, const RecommenderConfig &config) const;

    /// Cold-start popularity ranking.
    std::vector<Recommendation> recommend_new_user(const RecommenderConfig &config) const;

private:
    const std::vector<UserVector> &population(Mode mode) const;

    Dataset train_;
    IifTable iif_;
    PrecedenceIndex precedence_;
    double minsup_pct_;
    std::vector<FrequentItemset> frequents_;
    std::array<std::vector<UserVector>, 4> vectors_;
};

std::vector<Recommendation> recommend(const Dataset &train, const UserId &target, const RecommenderConfig &config);
std::vector<Recommendation> recommend(const Dataset &train, const Profile &target, const RecommenderConfig &config);
std::vector<Recommendation> recommend_new_user(const Dataset &train, const RecommenderConfig &config);

} // namespace reco

#endif // RECO_RECOMMENDER_HPP_
