#include "reco/rule_miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "reco/errors.hpp"

namespace reco {

namespace {

bool canonical_less(const ItemSet &a, const ItemSet &b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

bool contains_all(const std::vector<ItemId> &haystack, const ItemSet &needles) {
    return std::all_of(needles.begin(), needles.end(), [&](const ItemId &n) {
        return std::find(haystack.begin(), haystack.end(), n) != haystack.end();
    });
}

// Items are dense ranks: rank 0 is the most frequent item.
class FpTree {
public:
    struct Path {
        std::vector<int> ranks; // ascending rank order
        std::size_t weight;
    };

    FpTree(std::size_t num_ranks, const std::vector<Path> &paths) : heads_(num_ranks) {
        nodes_.push_back({-1, 0, -1, {}});
        for (const auto &p : paths) {
            insert(p);
        }
    }

    /// Emits every frequent itemset that extends `suffix`.
    template <class Emit>
    void mine(std::vector<int> &suffix, std::size_t min_count, Emit &emit) const {
        for (int rank = static_cast<int>(heads_.size()) - 1; rank >= 0; --rank) {
            std::size_t support = 0;
            for (int n : heads_[rank]) {
                support += nodes_[n].count;
            }
            if (support < min_count || support == 0) {
                continue;
            }
            suffix.push_back(rank);
            emit(suffix, support);

            // Conditional pattern base: prefix paths of every `rank` node,
            // restricted to ranks that stay frequent within the base.
            std::vector<Path> base;
            std::vector<std::size_t> local(rank, 0);
            for (int n : heads_[rank]) {
                Path p{{}, nodes_[n].count};
                for (int up = nodes_[n].parent; up > 0; up = nodes_[up].parent) {
                    p.ranks.push_back(nodes_[up].rank);
                    local[nodes_[up].rank] += p.weight;
                }
                std::reverse(p.ranks.begin(), p.ranks.end());
                if (!p.ranks.empty()) {
                    base.push_back(std::move(p));
                }
            }
            for (auto &p : base) {
                std::erase_if(p.ranks, [&](int r) { return local[r] < min_count; });
            }
            std::erase_if(base, [](const Path &p) { return p.ranks.empty(); });
            if (!base.empty()) {
                FpTree(static_cast<std::size_t>(rank), base).mine(suffix, min_count, emit);
            }
            suffix.pop_back();
        }
    }

private:
    struct Node {
        int rank;
        std::size_t count;
        int parent;
        std::map<int, int> children;
    };

    void insert(const Path &p) {
        int at = 0;
        for (int r : p.ranks) {
            auto it = nodes_[at].children.find(r);
            int child;
            if (it == nodes_[at].children.end()) {
                child = static_cast<int>(nodes_.size());
                nodes_.push_back({r, 0, at, {}});
                nodes_[at].children.emplace(r, child);
                heads_[r].push_back(child);
            } else {
                child = it->second;
            }
            nodes_[child].count += p.weight;
            at = child;
        }
    }

    std::vector<Node> nodes_;
    std::vector<std::vector<int>> heads_; // header table: node indices per rank
};

} // namespace

ItemSet make_itemset(std::vector<ItemId> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

SupportCount itemset_support(std::span<const Transaction> transactions, const ItemSet &itemset) {
    if (itemset.empty()) {
        throw RangeError("itemset must be non-empty");
    }
    SupportCount out;
    for (const auto &t : transactions) {
        if (contains_all(t.items, itemset)) {
            ++out.count;
        }
    }
    if (!transactions.empty()) {
        out.pct = 100.0 * static_cast<double>(out.count) / static_cast<double>(transactions.size());
    }
    return out;
}

std::size_t min_support_count(std::size_t transaction_count, double minsup_pct) {
    const double raw = minsup_pct * static_cast<double>(transaction_count) / 100.0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

std::vector<FrequentItemset> fp_growth(std::span<const Transaction> transactions, double minsup_pct) {
    if (!(minsup_pct > 0.0 && minsup_pct <= 100.0)) {
        throw RangeError("minsup must lie in (0, 100]");
    }
    std::vector<FrequentItemset> out;
    if (transactions.empty()) {
        return out;
    }
    const std::size_t total = transactions.size();
    const std::size_t min_count = min_support_count(total, minsup_pct);

    std::map<ItemId, std::size_t> freq;
    for (const auto &t : transactions) {
        for (const auto &item : make_itemset(t.items)) {
            ++freq[item];
        }
    }
    std::vector<std::pair<ItemId, std::size_t>> order;
    for (const auto &[item, n] : freq) {
        if (n >= min_count) {
            order.emplace_back(item, n);
        }
    }
    // Descending frequency; std::map iteration already gives ascending id.
    std::stable_sort(order.begin(), order.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
    std::unordered_map<ItemId, int> rank_of;
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank_of.emplace(order[r].first, static_cast<int>(r));
    }

    std::vector<FpTree::Path> paths;
    for (const auto &t : transactions) {
        FpTree::Path p{{}, 1};
        for (const auto &item : t.items) {
            if (const auto it = rank_of.find(item); it != rank_of.end()) {
                p.ranks.push_back(it->second);
            }
        }
        std::sort(p.ranks.begin(), p.ranks.end());
        p.ranks.erase(std::unique(p.ranks.begin(), p.ranks.end()), p.ranks.end());
        if (!p.ranks.empty()) {
            paths.push_back(std::move(p));
        }
    }

    FpTree tree(order.size(), paths);
    std::vector<int> suffix;
    auto emit = [&](const std::vector<int> &ranks, std::size_t support) {
        std::vector<ItemId> items;
        for (int r : ranks) {
            items.push_back(order[r].first);
        }
        out.push_back({make_itemset(std::move(items)), support,
                       100.0 * static_cast<double>(support) / static_cast<double>(total)});
    };
    tree.mine(suffix, min_count, emit);

    std::sort(out.begin(), out.end(), [](const FrequentItemset &a, const FrequentItemset &b) {
        return canonical_less(a.itemset, b.itemset);
    });
    return out;
}

std::vector<AssociationRule> generate_rules(std::span<const FrequentItemset> frequents, double minconf_pct,
                                            const std::optional<ItemId> &antecedent_filter) {
    if (!(minconf_pct > 0.0 && minconf_pct <= 100.0)) {
        throw RangeError("minconf must lie in (0, 100]");
    }
    std::map<ItemSet, std::size_t> counts;
    for (const auto &f : frequents) {
        counts.emplace(f.itemset, f.support_count);
    }

    std::vector<AssociationRule> rules;
    for (const auto &f : frequents) {
        const std::size_t m = f.itemset.size();
        if (m < 2 || m >= 32) {
            continue;
        }
        for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
            AssociationRule rule;
            for (std::size_t i = 0; i < m; ++i) {
                (mask & (1u << i) ? rule.antecedent : rule.consequent).push_back(f.itemset[i]);
            }
            if (antecedent_filter &&
                !std::binary_search(rule.antecedent.begin(), rule.antecedent.end(), *antecedent_filter)) {
                continue;
            }
            const auto it = counts.find(rule.antecedent);
            if (it == counts.end() || it->second == 0) {
                continue;
            }
            rule.antecedent_count = it->second;
            rule.union_count = f.support_count;
            if (100.0 * static_cast<double>(rule.union_count) <
                minconf_pct * static_cast<double>(rule.antecedent_count) - 1e-9) {
                continue;
            }
            rule.support_pct = f.support_pct;
            rule.confidence_pct =
                100.0 * static_cast<double>(rule.union_count) / static_cast<double>(rule.antecedent_count);
            rules.push_back(std::move(rule));
        }
    }
    std::sort(rules.begin(), rules.end(), [](const AssociationRule &a, const AssociationRule &b) {
        if (a.antecedent != b.antecedent) {
            return canonical_less(a.antecedent, b.antecedent);
        }
        return canonical_less(a.consequent, b.consequent);
    });
    return rules;
}

std::string format_percent(double pct) {
    auto text = fmt::format("{:.2f}", pct);
    while (text.back() == '0') {
        text.pop_back();
    }
    if (text.back() == '.') {
        text.pop_back();
    }
    return text;
}

std::string format_itemset(const ItemSet &items) {
    return fmt::format("{}", fmt::join(items, ";"));
}

std::string format_rule(const AssociationRule &rule) {
    return fmt::format("{} => {}, support={}%, confidence={}%", format_itemset(rule.antecedent),
                       format_itemset(rule.consequent), format_percent(rule.support_pct),
                       format_percent(rule.confidence_pct));
}

} // namespace reco
