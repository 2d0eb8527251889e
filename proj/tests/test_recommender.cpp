#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "reco/errors.hpp"
#include "reco/recommender.hpp"

using namespace reco;

namespace {

std::vector<ItemId> items_of(const std::vector<Recommendation> &recs) {
    std::vector<ItemId> out;
    for (const auto &r : recs) out.push_back(r.item);
    return out;
}

bool contains(const std::vector<Recommendation> &recs, const ItemId &item) {
    return std::any_of(recs.begin(), recs.end(), [&](const auto &r) { return r.item == item; });
}

} // namespace

TEST_CASE("cosine scenario: P5 in, P4 out") {
    const Recommender model(fixtures::cosine_scenario());
    RecommenderConfig config;
    config.use_rules = false;
    const auto recs = model.recommend("U3", config);
    CHECK(contains(recs, "P5"));
    CHECK_FALSE(contains(recs, "P4"));
    REQUIRE_FALSE(recs.empty());
    CHECK(recs[0].item == "P5");
    CHECK(recs[0].source == Source::neighbor);
    CHECK(recs[0].explain == "U2");
    CHECK(recs[0].score == doctest::Approx(0.9951 * 9).epsilon(1e-3));

    config.use_rules = true;
    CHECK_FALSE(contains(model.recommend("U3", config), "P4"));
}

TEST_CASE("physics scenario: earlier volumes are filtered") {
    const Recommender model(fixtures::physics());
    for (Mode mode : {Mode::simple, Mode::method1, Mode::method2, Mode::implicit}) {
        RecommenderConfig config;
        config.mode = mode;
        CHECK(model.recommend("R2", config).empty());
    }
}

TEST_CASE("a neighbor's next item is used when the best one fails the filter") {
    // N rates Old above New; T already owns Mid, which was only ever
    // followed by New.
    const auto d = Dataset::from_records(
        {{"1", "N", 1, {"Old"}}, {"2", "N", 2, {"Mid"}}, {"3", "N", 3, {"New"}}, {"4", "T", 1, {"Mid"}}},
        {{"N", "Mid", 8}, {"N", "Old", 10}, {"N", "New", 9}, {"T", "Mid", 8}});
    RecommenderConfig config;
    config.use_rules = false;
    const auto recs = Recommender(d).recommend("T", config);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].item == "New");
}

TEST_CASE("rule expansion on the five-basket fixture") {
    auto ratings = std::vector<RatingRecord>{{"T", "P5", 8}, {"C400", "P5", 9}, {"C400", "P2", 9}};
    const auto d = Dataset::from_records(fixtures::basket_transactions(), ratings);
    RecommenderConfig config;
    config.minsup_pct = 20;
    config.minconf_pct = 50;
    config.top_n = 10;
    const Recommender model(d, config.minsup_pct);

    const auto recs = model.recommend("T", config);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].item == "P2");
    CHECK(recs[0].source == Source::neighbor);
    CHECK(recs[0].explain == "C400");
    for (std::size_t i = 1; i < recs.size(); ++i) {
        CHECK(recs[i].source == Source::rule);
        CHECK(recs[i].score <= recs[0].score);
    }
    CHECK(recs[1].item == "P1");
    CHECK(recs[1].score == doctest::Approx(9.0)); // confidence 100% of 1.0 * 9
    CHECK(recs[2].item == "P4");
    CHECK(recs[2].score == doctest::Approx(4.5));

    config.use_rules = false;
    CHECK(items_of(model.recommend("T", config)) == std::vector<ItemId>{"P2"});

    SUBCASE("a different minsup re-mines") {
        config.use_rules = true;
        config.minsup_pct = 40;
        config.minconf_pct = 100;
        const auto strict = model.recommend("T", config);
        CHECK(items_of(strict) == std::vector<ItemId>{"P2", "P1"});
        CHECK(strict[1].explain == "P2=>P1");
    }
    SUBCASE("top_n truncates rule items first") {
        config.use_rules = true;
        config.top_n = 1;
        CHECK(items_of(model.recommend("T", config)) == std::vector<ItemId>{"P2"});
    }
}

TEST_CASE("recommendation invariants on random data") {
    for (std::uint32_t seed = 0; seed < 40; ++seed) {
        const auto d = fixtures::random_dataset(seed, {.users = 7, .items = 8, .max_transactions = 4});
        const Recommender model(d, 20);
        for (Mode mode : kAllModes) {
            for (const auto &u : d.users()) {
                RecommenderConfig config;
                config.mode = mode;
                config.minsup_pct = 20;
                config.minconf_pct = 30;
                config.top_n = 4;
                config.k_neighbors = 3;
                std::vector<Recommendation> on, off;
                try {
                    on = model.recommend(u, config);
                } catch (const NoProfileError &) {
                    config.use_rules = false;
                    CHECK_THROWS_AS(model.recommend(u, config), NoProfileError);
                    continue;
                }
                config.use_rules = false;
                off = model.recommend(u, config);

                CHECK(on.size() <= config.top_n);
                CHECK(on == model.recommend(u, RecommenderConfig{config.k_neighbors, 4, mode, 20, 30, 7, true}));
                // Rules only append after the neighbor items.
                REQUIRE(off.size() <= on.size());
                CHECK(std::equal(off.begin(), off.end(), on.begin()));

                const auto profile = profile_of(d, u);
                std::set<ItemId> history;
                for (const auto &[item, n] : profile.purchase_counts) history.insert(item);
                std::set<ItemId> unique;
                for (const auto &r : on) {
                    CHECK(profile.ratings.count(r.item) == 0);
                    CHECK(history.count(r.item) == 0);
                    CHECK(bought_after(model.precedence(), r.item, history));
                    CHECK(unique.insert(r.item).second);
                }
                for (std::size_t i = 1; i < on.size(); ++i) {
                    if (on[i].source == on[i - 1].source) CHECK(on[i].score <= on[i - 1].score);
                    else CHECK(on[i].source == Source::rule);
                }
            }
        }
    }
}

TEST_CASE("new users get the popularity ranking") {
    for (std::uint32_t seed = 0; seed < 30; ++seed) {
        const auto d = fixtures::random_dataset(seed, {.users = 6, .items = 9});
        RecommenderConfig config;
        config.top_n = 4;
        const auto recs = recommend_new_user(d, config);
        auto expected = oracle::popularity_order(d);
        if (expected.size() > 4) expected.resize(4);
        CHECK(items_of(recs) == expected);
        for (const auto &r : recs) {
            CHECK(r.source == Source::popularity);
            CHECK(r.explain == "cold-start");
        }
    }
    CHECK(Recommender(Dataset{}).recommend_new_user({}).empty());
}

TEST_CASE("config validation and unknown users") {
    const Recommender model(fixtures::cosine_scenario());
    RecommenderConfig config;
    config.k_neighbors = 0;
    CHECK_THROWS_AS(model.recommend("U3", config), ConfigError);
    config = {};
    config.top_n = 0;
    CHECK_THROWS_AS(model.recommend("U3", config), ConfigError);
    config = {};
    config.minconf_pct = 0;
    CHECK_THROWS_AS(model.recommend("U3", config), ConfigError);
    config = {};
    config.exclusion_threshold = 11;
    CHECK_THROWS_AS(model.recommend("U3", config), ConfigError);
    CHECK_THROWS_AS(model.recommend("ghost", RecommenderConfig{}), NotFoundError);
}

TEST_CASE("free functions match the model") {
    const auto d = fixtures::cosine_scenario();
    RecommenderConfig config;
    CHECK(recommend(d, "U3", config) == Recommender(d).recommend("U3", config));
    CHECK(recommend(d, profile_of(d, "U3"), config) == Recommender(d).recommend("U3", config));
}
