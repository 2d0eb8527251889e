#ifndef RECO_SEQUENCE_INDEX_HPP_
#define RECO_SEQUENCE_INDEX_HPP_

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <utility>

#include "reco/corpus.hpp"

namespace reco {

/// Purchase-precedence relation: counts[(a, b)] is the number of times,
/// summed over users, that an event buying `a` was followed anywhere later
/// in the same user's stream by an event buying `b`. Items in one
/// transaction are simultaneous and never pair with each other.
class PrecedenceIndex {
public:
    using Pair = std::pair<ItemId, ItemId>;

    PrecedenceIndex() = default;
    explicit PrecedenceIndex(std::map<Pair, std::size_t> counts) : counts_(std::move(counts)) {}

    const std::map<Pair, std::size_t> &counts() const noexcept { return counts_; }
    std::size_t count(const ItemId &earlier, const ItemId &later) const;
    bool empty() const noexcept { return counts_.empty(); }

    friend bool operator==(const PrecedenceIndex &, const PrecedenceIndex &) = default;

private:
    std::map<Pair, std::size_t> counts_;
};

PrecedenceIndex build_precedence_index(const Dataset &dataset);

/// Adds one user's stream (ascending seq) to a count map.
void accumulate_precedence(std::span<const Transaction> stream,
                           std::map<PrecedenceIndex::Pair, std::size_t> &counts);

/// True iff some item of `history` was ever followed by `candidate`.
/// An empty history imposes no constraint.
bool bought_after(const PrecedenceIndex &index, const ItemId &candidate, const std::set<ItemId> &history);

/// Lines "earlier,later,count" in lexicographic pair order.
void write_index(std::ostream &out, const PrecedenceIndex &index);

} // namespace reco

#endif // RECO_SEQUENCE_INDEX_HPP_
