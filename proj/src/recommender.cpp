#include "reco/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "reco/errors.hpp"

namespace reco {

std::string_view to_string(Source source) {
    switch (source) {
    case Source::neighbor: return "neighbor";
    case Source::rule: return "rule";
    case Source::popularity: return "popularity";
    }
    return "unknown";
}

void RecommenderConfig::validate() const {
    if (k_neighbors < 1) {
        throw ConfigError("k_neighbors must be >= 1");
    }
    if (top_n < 1) {
        throw ConfigError("top_n must be >= 1");
    }
    if (!(minsup_pct > 0.0 && minsup_pct <= 100.0)) {
        throw ConfigError("minsup must lie in (0, 100]");
    }
    if (!(minconf_pct > 0.0 && minconf_pct <= 100.0)) {
        throw ConfigError("minconf must lie in (0, 100]");
    }
    if (!(exclusion_threshold >= kMinRating && exclusion_threshold <= kMaxRating)) {
        throw ConfigError("exclusion threshold must lie in [0, 10]");
    }
}

namespace {

std::size_t slot(Mode mode) { return static_cast<std::size_t>(mode); }

// Best score per item; ties keep the first explanation seen.
void offer(std::map<ItemId, Recommendation> &pool, Recommendation rec) {
    auto [it, inserted] = pool.try_emplace(rec.item, rec);
    if (!inserted && rec.score > it->second.score) {
        it->second = std::move(rec);
    }
}

std::vector<Recommendation> ranked(const std::map<ItemId, Recommendation> &pool) {
    std::vector<Recommendation> out;
    for (const auto &[item, rec] : pool) {
        out.push_back(rec);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Recommendation &a, const Recommendation &b) { return a.score > b.score; });
    return out;
}

} // namespace

Recommender::Recommender(Dataset train, double minsup_pct)
    : train_(std::move(train)), minsup_pct_(minsup_pct) {
    if (!train_.users().empty()) {
        iif_ = build_iif(train_);
    }
    precedence_ = build_precedence_index(train_);
    frequents_ = fp_growth(train_.transactions(), minsup_pct_);
    for (Mode mode : kAllModes) {
        auto &vs = vectors_[slot(mode)];
        for (const auto &u : train_.users()) {
            vs.push_back(vectorize(profile_of(train_, u), mode));
        }
    }
}

const std::vector<UserVector> &Recommender::population(Mode mode) const { return vectors_[slot(mode)]; }

UserVector Recommender::vectorize(const Profile &profile, Mode mode) const {
    return mode == Mode::implicit ? implicit_vector(profile, iif_) : explicit_vector(profile, mode);
}

std::vector<Recommendation> Recommender::recommend(const UserId &target, const RecommenderConfig &config) const {
    return recommend(profile_of(train_, target), config);
}

std::vector<Recommendation> Recommender::recommend(const Profile &target, const RecommenderConfig &config) const {
    config.validate();

    std::set<ItemId> history;
    for (const auto &[item, n] : target.purchase_counts) {
        if (n > 0) {
            history.insert(item);
        }
    }
    std::set<ItemId> seen = history;
    for (const auto &[item, r] : target.ratings) {
        seen.insert(item);
    }

    const auto query = vectorize(target, config.mode);
    if (std::all_of(query.weights.begin(), query.weights.end(), [](const auto &w) { return w.second == 0.0; })) {
        throw NoProfileError(fmt::format("user {} has no profile in {} mode", target.user, to_string(config.mode)));
    }
    const auto neighbors = rank_neighbors(query, population(config.mode), config.k_neighbors);

    // Neighbor phase: each neighbor contributes its best-rated unseen item
    // that clears the threshold and was ever bought after the target's
    // history; failing items fall through to the neighbor's next best.
    std::map<ItemId, Recommendation> from_neighbors;
    for (const auto &nb : neighbors.entries) {
        if (nb.similarity <= 0.0) {
            continue;
        }
        std::vector<std::pair<ItemId, double>> rated(train_.ratings_of(nb.user).begin(),
                                                     train_.ratings_of(nb.user).end());
        std::stable_sort(rated.begin(), rated.end(),
                         [](const auto &a, const auto &b) { return a.second > b.second; });
        for (const auto &[item, rating] : rated) {
            if (rating < config.exclusion_threshold) {
                break;
            }
            if (seen.count(item) || !bought_after(precedence_, item, history)) {
                continue;
            }
            offer(from_neighbors, {item, nb.similarity * rating, Source::neighbor, nb.user});
            break;
        }
    }

    std::map<ItemId, Recommendation> from_rules;
    if (config.use_rules && !from_neighbors.empty()) {
        std::vector<FrequentItemset> local;
        std::span<const FrequentItemset> frequents = frequents_;
        if (config.minsup_pct != minsup_pct_) {
            local = fp_growth(train_.transactions(), config.minsup_pct);
            frequents = local;
        }
        for (const auto &[parent, parent_rec] : from_neighbors) {
            for (const auto &rule : generate_rules(frequents, config.minconf_pct, parent)) {
                const std::string why =
                    format_itemset(rule.antecedent) + "=>" + format_itemset(rule.consequent);
                for (const auto &item : rule.consequent) {
                    if (seen.count(item) || from_neighbors.count(item) ||
                        !bought_after(precedence_, item, history)) {
                        continue;
                    }
                    offer(from_rules,
                          {item, rule.confidence_pct / 100.0 * parent_rec.score, Source::rule, why});
                }
            }
        }
    }

    auto out = ranked(from_neighbors);
    for (auto &rec : ranked(from_rules)) {
        out.push_back(std::move(rec));
    }
    if (out.size() > config.top_n) {
        out.resize(config.top_n);
    }
    return out;
}

std::vector<Recommendation> Recommender::recommend_new_user(const RecommenderConfig &config) const {
    config.validate();
    std::vector<Recommendation> out;
    if (train_.users().empty()) {
        return out;
    }
    for (const auto &[item, score] : new_user_scores(train_)) {
        if (out.size() == config.top_n) {
            break;
        }
        out.push_back({item, score, Source::popularity, "cold-start"});
    }
    return out;
}

std::vector<Recommendation> recommend(const Dataset &train, const UserId &target, const RecommenderConfig &config) {
    return Recommender(train, config.minsup_pct).recommend(target, config);
}

std::vector<Recommendation> recommend(const Dataset &train, const Profile &target, const RecommenderConfig &config) {
    return Recommender(train, config.minsup_pct).recommend(target, config);
}

std::vector<Recommendation> recommend_new_user(const Dataset &train, const RecommenderConfig &config) {
    return Recommender(train, config.minsup_pct).recommend_new_user(config);
}

} // namespace reco
