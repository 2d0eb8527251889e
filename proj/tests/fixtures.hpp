#ifndef RECO_TESTS_FIXTURES_HPP_
#define RECO_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "reco/corpus.hpp"

namespace fixtures {

using reco::Dataset;
using reco::RatingRecord;
using reco::Transaction;

// Five single-basket customers, TID 100..500.
inline std::vector<Transaction> basket_transactions() {
    return {
        {"100", "C100", 1, {"P1", "P2"}},
        {"200", "C200", 1, {"P1", "P2", "P4"}},
        {"300", "C300", 1, {"P1", "P4"}},
        {"400", "C400", 1, {"P5", "P4"}},
        {"500", "C500", 1, {"P1", "P5"}},
    };
}

inline Dataset baskets() { return Dataset::from_records(basket_transactions(), {}); }

// Three users over P1..P5. U3 rated P1..P3 as 4,5,6; U1 and U2 as in the
// restricted-cosine worked example. U2 bought P5 after P3.
inline Dataset cosine_scenario() {
    std::vector<RatingRecord> ratings = {
        {"U1", "P1", 5}, {"U1", "P2", 6}, {"U1", "P4", 7}, {"U1", "P5", 8},
        {"U2", "P1", 5}, {"U2", "P2", 6}, {"U2", "P3", 6}, {"U2", "P4", 2}, {"U2", "P5", 9},
        {"U3", "P1", 4}, {"U3", "P2", 5}, {"U3", "P3", 6},
    };
    std::vector<Transaction> transactions = {
        {"t1", "U1", 1, {"P1", "P2"}}, {"t2", "U1", 2, {"P4"}}, {"t3", "U1", 3, {"P5"}},
        {"t4", "U2", 1, {"P1", "P2"}}, {"t5", "U2", 2, {"P3"}}, {"t6", "U2", 3, {"P5"}},
        {"t7", "U2", 4, {"P4"}},
        {"t8", "U3", 1, {"P1"}},       {"t9", "U3", 2, {"P2"}}, {"t10", "U3", 3, {"P3"}},
    };
    return Dataset::from_records(std::move(transactions), std::move(ratings));
}

// R1 bought Physics-1..4 in order and liked them; R2 owns Physics-3 and -4.
inline Dataset physics() {
    std::vector<RatingRecord> ratings = {
        {"R1", "Physics-1", 9}, {"R1", "Physics-2", 9}, {"R1", "Physics-3", 9}, {"R1", "Physics-4", 9},
        {"R2", "Physics-3", 9}, {"R2", "Physics-4", 9},
    };
    std::vector<Transaction> transactions = {
        {"a1", "R1", 1, {"Physics-1"}}, {"a2", "R1", 2, {"Physics-2"}},
        {"a3", "R1", 3, {"Physics-3"}}, {"a4", "R1", 4, {"Physics-4"}},
        {"b1", "R2", 1, {"Physics-3"}}, {"b2", "R2", 2, {"Physics-4"}},
    };
    return Dataset::from_records(std::move(transactions), std::move(ratings));
}

/// Small random dataset: users U0.., items I0.., integer ratings.
struct RandomShape {
    int users = 5;
    int items = 6;
    int max_transactions = 4;
    int max_basket = 3;
    double rating_density = 0.6;
};

inline Dataset random_dataset(std::uint32_t seed, RandomShape shape = {}) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick_item(0, shape.items - 1);
    std::uniform_int_distribution<int> n_tx(0, shape.max_transactions);
    std::uniform_int_distribution<int> basket(1, shape.max_basket);
    std::uniform_int_distribution<int> rating(0, 10);
    std::bernoulli_distribution rated(shape.rating_density);

    std::vector<std::string> users, items;
    for (int u = 0; u < shape.users; ++u) users.push_back("U" + std::to_string(u));
    for (int i = 0; i < shape.items; ++i) items.push_back("I" + std::to_string(i));

    std::vector<Transaction> transactions;
    std::vector<RatingRecord> ratings;
    int tid = 0;
    for (const auto &u : users) {
        const int count = n_tx(rng);
        for (int s = 0; s < count; ++s) {
            Transaction t{"T" + std::to_string(tid++), u, s * 3 + 1, {}};
            const int size = basket(rng);
            for (int k = 0; k < size; ++k) {
                const auto &item = items[pick_item(rng)];
                if (std::find(t.items.begin(), t.items.end(), item) == t.items.end()) {
                    t.items.push_back(item);
                }
            }
            transactions.push_back(std::move(t));
        }
        for (const auto &i : items) {
            if (rated(rng)) {
                ratings.push_back({u, i, static_cast<double>(rating(rng))});
            }
        }
    }
    return Dataset(users, items, std::move(transactions), std::move(ratings));
}

} // namespace fixtures

#endif // RECO_TESTS_FIXTURES_HPP_
