#include "reco/eval.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "reco/errors.hpp"

namespace reco {

namespace {

std::size_t hits(std::span<const ItemId> recommended, const std::set<ItemId> &relevant, std::size_t n) {
    const auto top = recommended.first(std::min(n, recommended.size()));
    return static_cast<std::size_t>(
        std::count_if(top.begin(), top.end(), [&](const ItemId &i) { return relevant.count(i) > 0; }));
}

} // namespace

double precision_at_n(std::span<const ItemId> recommended, const std::set<ItemId> &relevant, std::size_t n) {
    const std::size_t denom = std::min(n, recommended.size());
    if (denom == 0) {
        return 0.0;
    }
    return 100.0 * static_cast<double>(hits(recommended, relevant, n)) / static_cast<double>(denom);
}

std::optional<double> recall_at_n(std::span<const ItemId> recommended, const std::set<ItemId> &relevant,
                                  std::size_t n) {
    if (relevant.empty()) {
        return std::nullopt;
    }
    return 100.0 * static_cast<double>(hits(recommended, relevant, n)) / static_cast<double>(relevant.size());
}

std::set<ItemId> relevant_items(const Dataset &dataset, const UserId &user, double threshold) {
    std::set<ItemId> out;
    for (const auto &[item, value] : dataset.ratings_of(user)) {
        if (value >= threshold) {
            out.insert(item);
        }
    }
    return out;
}

Profile held_out_profile(const Dataset &dataset, const UserId &user, const std::set<ItemId> &hidden) {
    Profile p{user, {}, {}, {}};
    for (const auto &[item, value] : dataset.ratings_of(user)) {
        if (!hidden.count(item)) {
            p.ratings.emplace(item, value);
        }
    }
    for (const auto &t : dataset.transactions_of(user)) {
        Transaction kept{t.tid, t.user, t.seq, {}};
        for (const auto &item : t.items) {
            if (!hidden.count(item)) {
                kept.items.push_back(item);
                ++p.purchase_counts[item];
            }
        }
        if (!kept.items.empty()) {
            p.transactions.push_back(std::move(kept));
        }
    }
    return p;
}

EvalReport run_experiment(const Dataset &dataset, const ExperimentConfig &config) {
    if (config.top_n < 1) {
        throw ConfigError("N must be >= 1");
    }
    auto split = split_users(dataset, config.train_fraction, config.seed);
    if (split.test.users().empty()) {
        throw ExperimentError("test split is empty");
    }

    EvalReport report;
    report.train_users = split.train.users().size();
    report.test_users = split.test.users().size();

    const Recommender model(std::move(split.train), config.recommender.minsup_pct);

    std::vector<bool> rule_settings;
    if (config.without_rules) {
        rule_settings.push_back(false);
    }
    if (config.with_rules) {
        rule_settings.push_back(true);
    }

    for (Mode mode : config.modes) {
        for (bool rules : rule_settings) {
            RecommenderConfig rc = config.recommender;
            rc.mode = mode;
            rc.top_n = config.top_n;
            rc.use_rules = rules;

            EvalRow row{mode, rules, 0.0, 0.0, config.top_n, report.test_users, 0, 0};
            double precision_sum = 0.0;
            double recall_sum = 0.0;
            for (const auto &user : split.test.users()) {
                const auto relevant = relevant_items(split.test, user, config.relevance_threshold);
                if (relevant.empty()) {
                    ++row.skipped_users;
                    continue;
                }
                std::vector<Recommendation> recs;
                try {
                    recs = model.recommend(held_out_profile(split.test, user, relevant), rc);
                } catch (const NoProfileError &) {
                    ++row.skipped_users;
                    continue;
                }
                std::vector<ItemId> items;
                for (const auto &r : recs) {
                    items.push_back(r.item);
                }
                precision_sum += precision_at_n(items, relevant, config.top_n);
                recall_sum += *recall_at_n(items, relevant, config.top_n);
                ++row.evaluated_users;
            }
            if (row.evaluated_users > 0) {
                row.precision = precision_sum / static_cast<double>(row.evaluated_users);
                row.recall = recall_sum / static_cast<double>(row.evaluated_users);
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

void write_report(std::ostream &out, const EvalReport &report) {
    out << fmt::format("train users: {}  test users: {}\n", report.train_users, report.test_users);
    out << fmt::format("{:<10} {:<6} {:>10} {:>10} {:>4} {:>10} {:>8}\n", "mode", "rules", "precision",
                       "recall", "N", "evaluated", "skipped");
    for (const auto &row : report.rows) {
        out << fmt::format("{:<10} {:<6} {:>9.2f}% {:>9.2f}% {:>4} {:>10} {:>8}\n", to_string(row.mode),
                           row.rules_enabled ? "on" : "off", row.precision, row.recall, row.n,
                           row.evaluated_users, row.skipped_users);
    }
}

} // namespace reco
