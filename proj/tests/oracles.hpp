#ifndef RECO_TESTS_ORACLES_HPP_
#define RECO_TESTS_ORACLES_HPP_

// Brute-force reference computations. None of these call into the code
// paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reco/corpus.hpp"

namespace oracle {

using reco::Dataset;
using reco::ItemId;
using reco::Transaction;

/// Every itemset over the item universe with support >= minsup_pct,
/// found by scanning all 2^m subsets.
inline std::map<std::vector<ItemId>, std::size_t> powerset_frequents(const std::vector<Transaction> &transactions,
                                                                     double minsup_pct) {
    std::map<std::vector<ItemId>, std::size_t> out;
    if (transactions.empty()) {
        return out;
    }
    std::set<ItemId> universe_set;
    for (const auto &t : transactions) universe_set.insert(t.items.begin(), t.items.end());
    const std::vector<ItemId> universe(universe_set.begin(), universe_set.end());
    const std::size_t m = universe.size();
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<ItemId> subset;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (1u << i)) subset.push_back(universe[i]);
        }
        std::size_t count = 0;
        for (const auto &t : transactions) {
            bool all = true;
            for (const auto &item : subset) {
                if (std::find(t.items.begin(), t.items.end(), item) == t.items.end()) {
                    all = false;
                    break;
                }
            }
            count += all ? 1 : 0;
        }
        // support% >= minsup%  <=>  100 * count >= minsup * |T|
        if (count > 0 && 100.0 * count + 1e-9 >= minsup_pct * static_cast<double>(transactions.size())) {
            out.emplace(subset, count);
        }
    }
    return out;
}

/// Level-wise Apriori with candidate generation by joining (k-1)-sets.
inline std::map<std::vector<ItemId>, std::size_t> apriori(const std::vector<Transaction> &transactions,
                                                          double minsup_pct) {
    std::map<std::vector<ItemId>, std::size_t> out;
    if (transactions.empty()) return out;
    const double need = minsup_pct * static_cast<double>(transactions.size()) / 100.0;
    auto count_of = [&](const std::vector<ItemId> &set) {
        std::size_t c = 0;
        for (const auto &t : transactions) {
            std::set<ItemId> items(t.items.begin(), t.items.end());
            c += std::includes(items.begin(), items.end(), set.begin(), set.end()) ? 1 : 0;
        }
        return c;
    };
    std::set<std::vector<ItemId>> level;
    for (const auto &t : transactions)
        for (const auto &i : t.items) level.insert({i});
    while (!level.empty()) {
        std::set<std::vector<ItemId>> kept;
        for (const auto &cand : level) {
            const auto c = count_of(cand);
            if (c > 0 && static_cast<double>(c) + 1e-9 >= need) {
                out.emplace(cand, c);
                kept.insert(cand);
            }
        }
        std::set<std::vector<ItemId>> next;
        for (const auto &a : kept) {
            for (const auto &b : kept) {
                if (!std::equal(a.begin(), a.end() - 1, b.begin()) || a.back() >= b.back()) continue;
                auto joined = a;
                joined.push_back(b.back());
                next.insert(joined);
            }
        }
        level = std::move(next);
    }
    return out;
}

/// O(n^2) enumeration over each user's purchase events.
inline std::map<std::pair<ItemId, ItemId>, std::size_t> precedence_pairs(const Dataset &d) {
    std::map<std::pair<ItemId, ItemId>, std::size_t> out;
    for (const auto &a : d.transactions()) {
        for (const auto &b : d.transactions()) {
            if (a.user != b.user || !(a.seq < b.seq)) continue;
            for (const auto &x : a.items)
                for (const auto &y : b.items) ++out[{x, y}];
        }
    }
    return out;
}

/// Dense cosine on the target's nonzero coordinates.
inline double restricted_cosine(const std::map<ItemId, double> &target, const std::map<ItemId, double> &other) {
    std::vector<double> a, b;
    for (const auto &[item, w] : target) {
        if (w == 0.0) continue;
        a.push_back(w);
        const auto it = other.find(item);
        b.push_back(it == other.end() ? 0.0 : it->second);
    }
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (nb == 0.0) return 0.0;
    return dot / std::sqrt(na * nb);
}

/// Items with at least one purchaser, by purchaser count desc then id.
inline std::vector<ItemId> popularity_order(const Dataset &d) {
    std::map<ItemId, std::set<std::string>> buyers;
    for (const auto &t : d.transactions())
        for (const auto &i : t.items) buyers[i].insert(t.user);
    std::vector<std::pair<ItemId, std::size_t>> v;
    for (const auto &[i, us] : buyers) v.emplace_back(i, us.size());
    std::sort(v.begin(), v.end(), [](const auto &x, const auto &y) {
        return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    std::vector<ItemId> out;
    for (const auto &p : v) out.push_back(p.first);
    return out;
}

} // namespace oracle

#endif // RECO_TESTS_ORACLES_HPP_
