#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "reco/errors.hpp"
#include "reco/implicit_vsm.hpp"

using namespace reco;

namespace {

// Nine users; item A bought by five of them, B by two, C by all nine.
Dataset nine_users() {
    std::vector<Transaction> tx;
    for (int u = 0; u < 9; ++u) {
        const std::string user = "U" + std::to_string(u);
        std::vector<ItemId> items{"C"};
        if (u < 5) items.push_back("A");
        if (u < 2) items.push_back("B");
        tx.push_back({"t" + std::to_string(u), user, 1, items});
    }
    // U0 bought A twice more.
    tx.push_back({"x1", "U0", 2, {"A"}});
    tx.push_back({"x2", "U0", 3, {"A"}});
    return Dataset({"U0", "U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8"}, {"A", "B", "C", "D"}, tx, {});
}

} // namespace

TEST_CASE("build_iif") {
    const auto table = build_iif(nine_users());
    CHECK(table.total_users() == 9);
    CHECK(*table.iif("A") == doctest::Approx(std::log(2.0)));
    CHECK(*table.iif("A") == doctest::Approx(0.6931).epsilon(1e-4));
    CHECK(*table.iif("C") == doctest::Approx(0.1054).epsilon(1e-3));
    CHECK(*table.iif("B") > *table.iif("A"));
    CHECK_FALSE(table.iif("D").has_value());
    CHECK_THROWS_AS(build_iif(Dataset{}), EmptyDatasetError);
}

TEST_CASE("IIF is positive and strictly decreasing in purchaser count") {
    for (std::size_t users = 1; users <= 30; ++users) {
        double previous = INFINITY;
        std::map<ItemId, std::size_t> purchasers;
        for (std::size_t k = 1; k <= users; ++k) purchasers["I" + std::to_string(k)] = k;
        const IifTable table(users, purchasers);
        for (std::size_t k = 1; k <= users; ++k) {
            const double w = *table.iif("I" + std::to_string(k));
            CHECK(w > 0.0);
            CHECK(w < previous);
            previous = w;
        }
    }
}

TEST_CASE("implicit_vector") {
    const auto d = nine_users();
    const auto table = build_iif(d);
    const auto v = implicit_vector(d, table, "U0");
    CHECK(v.mode == Mode::implicit);
    CHECK(v.weights.at("A") == doctest::Approx(3 * std::log(2.0)));
    CHECK(v.weights.at("A") == doctest::Approx(2.0794).epsilon(1e-4));
    CHECK(v.weights.count("D") == 0);
    CHECK_THROWS_AS(implicit_vector(d, table, "ghost"), NotFoundError);

    const Dataset with_idle({"idle", "U0"}, {"A"}, {{"t", "U0", 1, {"A"}}}, {});
    CHECK(implicit_vector(with_idle, build_iif(with_idle), "idle").weights.empty());
}

TEST_CASE("implicit_vector matches a count-then-multiply recount") {
    for (std::uint32_t seed = 0; seed < 50; ++seed) {
        const auto d = fixtures::random_dataset(seed, {.users = 4, .items = 6});
        const auto table = build_iif(d);
        // Pass 1: purchaser sets and per-user counts straight from the rows.
        std::map<ItemId, std::set<UserId>> buyers;
        std::map<UserId, std::map<ItemId, int>> counts;
        for (const auto &t : d.transactions()) {
            for (const auto &i : t.items) {
                buyers[i].insert(t.user);
                ++counts[t.user][i];
            }
        }
        // Pass 2: multiply.
        const double total = static_cast<double>(d.users().size());
        for (const auto &u : d.users()) {
            const auto v = implicit_vector(d, table, u);
            CHECK(v.weights.size() == counts[u].size());
            for (const auto &[item, n] : counts[u]) {
                const double expected = n * std::log((1.0 + total) / static_cast<double>(buyers[item].size()));
                CHECK(v.weights.at(item) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("new_user_scores") {
    const auto scores = new_user_scores(nine_users());
    REQUIRE(scores.size() == 3);
    CHECK(scores[0].first == "C");
    CHECK(scores[1].first == "A");
    CHECK(scores[1].second == doctest::Approx(std::log(5.0 / 10.0)));
    CHECK(scores[2].first == "B");
    CHECK(scores[2].second == doctest::Approx(-1.609).epsilon(1e-3));
    for (const auto &[item, s] : scores) CHECK(s < 0.0);

    SUBCASE("equal purchaser counts fall back to item id") {
        const auto d = Dataset::from_records({{"1", "U1", 1, {"Z", "M"}}, {"2", "U2", 1, {"A"}}, {"3", "U2", 2, {"M"}}}, {});
        // M: 2 buyers; A, Z: one each.
        const auto s = new_user_scores(d);
        REQUIRE(s.size() == 3);
        CHECK(s[0].first == "M");
        CHECK(s[1].first == "A");
        CHECK(s[2].first == "Z");
    }
    SUBCASE("no purchases") {
        CHECK(new_user_scores(Dataset::from_records({}, {{"U", "A", 5}})).empty());
        CHECK(new_user_scores(Dataset{}).empty());
    }
}

TEST_CASE("new_user_scores order equals the purchaser-count order") {
    for (std::uint32_t seed = 0; seed < 100; ++seed) {
        const auto d = fixtures::random_dataset(seed, {.users = 8, .items = 10, .max_transactions = 3});
        std::vector<ItemId> got;
        for (const auto &[item, s] : new_user_scores(d)) got.push_back(item);
        CHECK(got == oracle::popularity_order(d));
    }
}
