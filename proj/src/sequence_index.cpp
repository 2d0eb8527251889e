#include "reco/sequence_index.hpp"

#include <ostream>

namespace reco {

std::size_t PrecedenceIndex::count(const ItemId &earlier, const ItemId &later) const {
    const auto it = counts_.find({earlier, later});
    return it == counts_.end() ? 0 : it->second;
}

void accumulate_precedence(std::span<const Transaction> stream,
                           std::map<PrecedenceIndex::Pair, std::size_t> &counts) {
    // Every item bought in an earlier transaction pairs with every item of
    // the current one, once per earlier purchase event.
    std::map<ItemId, std::size_t> earlier_events;
    for (const auto &t : stream) {
        for (const auto &later : t.items) {
            for (const auto &[earlier, n] : earlier_events) {
                counts[{earlier, later}] += n;
            }
        }
        for (const auto &item : t.items) {
            ++earlier_events[item];
        }
    }
}

PrecedenceIndex build_precedence_index(const Dataset &dataset) {
    std::map<PrecedenceIndex::Pair, std::size_t> counts;
    for (const auto &user : dataset.users()) {
        accumulate_precedence(dataset.transactions_of(user), counts);
    }
    return PrecedenceIndex(std::move(counts));
}

bool bought_after(const PrecedenceIndex &index, const ItemId &candidate, const std::set<ItemId> &history) {
    if (history.empty()) {
        return true;
    }
    for (const auto &h : history) {
        if (index.count(h, candidate) > 0) {
            return true;
        }
    }
    return false;
}

void write_index(std::ostream &out, const PrecedenceIndex &index) {
    for (const auto &[pair, n] : index.counts()) {
        out << pair.first << ',' << pair.second << ',' << n << '\n';
    }
}

} // namespace reco
