#ifndef RECO_RULE_MINER_HPP_
#define RECO_RULE_MINER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reco/corpus.hpp"

namespace reco {

/// Sorted ascending, no duplicates.
using ItemSet = std::vector<ItemId>;

ItemSet make_itemset(std::vector<ItemId> items);

struct SupportCount {
    std::size_t count = 0;
    std::optional<double> pct; // empty when there are no transactions
};

struct FrequentItemset {
    ItemSet itemset;
    std::size_t support_count = 0;
    double support_pct = 0.0;

    friend bool operator==(const FrequentItemset &, const FrequentItemset &) = default;
};

struct AssociationRule {
    ItemSet antecedent;
    ItemSet consequent;
    std::size_t antecedent_count = 0;
    std::size_t union_count = 0;
    double support_pct = 0.0;
    double confidence_pct = 0.0;
};

/// Transactions containing every item of `itemset`.
SupportCount itemset_support(std::span<const Transaction> transactions, const ItemSet &itemset);

/// Smallest count whose support percentage reaches `minsup_pct`.
std::size_t min_support_count(std::size_t transaction_count, double minsup_pct);

/// All itemsets with support >= minsup_pct, mined with an FP-tree whose
/// header order is descending support, then ascending item id. Output is
/// ordered by itemset size, then lexicographically. Throws RangeError
/// unless 0 < minsup_pct <= 100.
std::vector<FrequentItemset> fp_growth(std::span<const Transaction> transactions, double minsup_pct);

/// Rules X => Y (any consequent size) with confidence >= minconf_pct.
/// With `antecedent_filter`, only rules whose X contains that item.
std::vector<AssociationRule> generate_rules(std::span<const FrequentItemset> frequents, double minconf_pct,
                                            const std::optional<ItemId> &antecedent_filter = std::nullopt);

/// "40", "66.67": two decimals at most, trailing zeros trimmed.
std::string format_percent(double pct);
std::string format_itemset(const ItemSet &items);
/// "X1;X2 => Y1, support=40%, confidence=100%"
std::string format_rule(const AssociationRule &rule);

} // namespace reco

#endif // RECO_RULE_MINER_HPP_
