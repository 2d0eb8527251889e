#include "reco/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include <fmt/format.h>

#include "random.hpp"
#include "reco/errors.hpp"

namespace reco {

namespace {

constexpr std::string_view kTransactionHeader = "tid,user,seq,items";
constexpr std::string_view kRatingHeader = "user,item,value";

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <class T>
bool parse_number(std::string_view text, T &out) {
    if (text.empty()) {
        return false;
    }
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

void check_rating(const RatingRecord &r) {
    if (!(r.value >= kMinRating && r.value <= kMaxRating)) {
        throw RangeError(fmt::format("rating {} for ({}, {}) outside [0, 10]",
                                     format_real(r.value), r.user, r.item));
    }
}

// Reads lines after the header; `on_row` gets (line number, text).
template <class F>
void for_each_row(std::istream &in, std::string_view header, F on_row) {
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!saw_header) {
            if (line != header) {
                throw ParseError(line_no, fmt::format("expected header '{}'", header));
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        on_row(line_no, std::string_view(line));
    }
}

} // namespace

Dataset::Dataset(std::vector<UserId> users, std::vector<ItemId> items,
                 std::vector<Transaction> transactions, std::vector<RatingRecord> ratings)
    : users_(std::move(users)), items_(std::move(items)),
      transactions_(std::move(transactions)), ratings_(std::move(ratings)) {
    std::sort(users_.begin(), users_.end());
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(users_.begin(), users_.end()) != users_.end()) {
        throw IntegrityError("duplicate user id");
    }
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
        throw IntegrityError("duplicate item id");
    }
    const auto empty = [](const std::string &s) { return s.empty(); };
    if (std::any_of(users_.begin(), users_.end(), empty) ||
        std::any_of(items_.begin(), items_.end(), empty)) {
        throw IntegrityError("empty user or item id");
    }

    std::stable_sort(transactions_.begin(), transactions_.end(),
                     [](const Transaction &a, const Transaction &b) {
                         return std::tie(a.user, a.seq) < std::tie(b.user, b.seq);
                     });
    std::sort(ratings_.begin(), ratings_.end(), [](const RatingRecord &a, const RatingRecord &b) {
        return std::tie(a.user, a.item) < std::tie(b.user, b.item);
    });

    for (std::size_t i = 0; i < transactions_.size(); ++i) {
        const auto &t = transactions_[i];
        if (!has_user(t.user)) {
            throw IntegrityError(fmt::format("transaction {} references unknown user {}", t.tid, t.user));
        }
        if (t.items.empty()) {
            throw IntegrityError(fmt::format("transaction {} has no items", t.tid));
        }
        std::set<ItemId> seen;
        for (const auto &item : t.items) {
            if (!has_item(item)) {
                throw IntegrityError(fmt::format("transaction {} references unknown item {}", t.tid, item));
            }
            if (!seen.insert(item).second) {
                throw IntegrityError(fmt::format("transaction {} repeats item {}", t.tid, item));
            }
        }
        if (i > 0 && transactions_[i - 1].user == t.user && transactions_[i - 1].seq == t.seq) {
            throw IntegrityError(fmt::format("user {} has two transactions with seq {}", t.user, t.seq));
        }
    }
    for (std::size_t i = 0; i < ratings_.size(); ++i) {
        const auto &r = ratings_[i];
        if (!has_user(r.user) || !has_item(r.item)) {
            throw IntegrityError(fmt::format("rating ({}, {}) references unknown user or item", r.user, r.item));
        }
        check_rating(r);
        if (i > 0 && ratings_[i - 1].user == r.user && ratings_[i - 1].item == r.item) {
            throw IntegrityError(fmt::format("duplicate rating for ({}, {})", r.user, r.item));
        }
    }
    build_index();
}

Dataset Dataset::from_records(std::vector<Transaction> transactions, std::vector<RatingRecord> ratings) {
    std::set<UserId> users;
    std::set<ItemId> items;
    for (const auto &t : transactions) {
        users.insert(t.user);
        items.insert(t.items.begin(), t.items.end());
    }
    for (const auto &r : ratings) {
        users.insert(r.user);
        items.insert(r.item);
    }
    return Dataset({users.begin(), users.end()}, {items.begin(), items.end()},
                   std::move(transactions), std::move(ratings));
}

Dataset Dataset::merge(const Dataset &a, const Dataset &b) {
    std::set<UserId> users(a.users_.begin(), a.users_.end());
    users.insert(b.users_.begin(), b.users_.end());
    std::set<ItemId> items(a.items_.begin(), a.items_.end());
    items.insert(b.items_.begin(), b.items_.end());
    auto transactions = a.transactions_;
    transactions.insert(transactions.end(), b.transactions_.begin(), b.transactions_.end());
    auto ratings = a.ratings_;
    ratings.insert(ratings.end(), b.ratings_.begin(), b.ratings_.end());
    return Dataset({users.begin(), users.end()}, {items.begin(), items.end()},
                   std::move(transactions), std::move(ratings));
}

void Dataset::build_index() {
    for (const auto &u : users_) {
        index_.emplace(u, UserIndex{});
    }
    for (std::size_t i = 0; i < transactions_.size(); ++i) {
        auto &entry = index_.at(transactions_[i].user);
        if (entry.tx_count == 0) {
            entry.first_tx = i;
        }
        ++entry.tx_count;
        for (const auto &item : transactions_[i].items) {
            ++entry.counts[item];
        }
    }
    for (const auto &r : ratings_) {
        index_.at(r.user).ratings.emplace(r.item, r.value);
    }
}

bool Dataset::has_user(const UserId &user) const {
    return std::binary_search(users_.begin(), users_.end(), user);
}

bool Dataset::has_item(const ItemId &item) const {
    return std::binary_search(items_.begin(), items_.end(), item);
}

std::span<const Transaction> Dataset::transactions_of(const UserId &user) const {
    const auto it = index_.find(user);
    if (it == index_.end() || it->second.tx_count == 0) {
        return {};
    }
    return std::span<const Transaction>(transactions_).subspan(it->second.first_tx, it->second.tx_count);
}

const std::map<ItemId, double> &Dataset::ratings_of(const UserId &user) const {
    static const std::map<ItemId, double> none;
    const auto it = index_.find(user);
    return it == index_.end() ? none : it->second.ratings;
}

const std::map<ItemId, int> &Dataset::purchase_counts(const UserId &user) const {
    static const std::map<ItemId, int> none;
    const auto it = index_.find(user);
    return it == index_.end() ? none : it->second.counts;
}

// ---------------------------------------------------------------------------
// CSV

Dataset read_transactions(std::istream &in) {
    std::vector<Transaction> rows;
    std::set<std::pair<UserId, std::int64_t>> keys;
    for_each_row(in, kTransactionHeader, [&](std::size_t line_no, std::string_view line) {
        const auto fields = split(line, ',');
        if (fields.size() != 4) {
            throw ParseError(line_no, fmt::format("expected 4 fields, found {}", fields.size()));
        }
        Transaction t;
        t.tid = std::string(fields[0]);
        t.user = std::string(fields[1]);
        if (t.tid.empty() || t.user.empty()) {
            throw ParseError(line_no, "empty tid or user");
        }
        if (!parse_number(fields[2], t.seq)) {
            throw ParseError(line_no, fmt::format("bad seq '{}'", fields[2]));
        }
        std::set<std::string_view> seen;
        for (const auto item : split(fields[3], ';')) {
            if (item.empty()) {
                throw ParseError(line_no, "empty item id");
            }
            if (!seen.insert(item).second) {
                throw ParseError(line_no, fmt::format("item '{}' repeated in one transaction", item));
            }
            t.items.emplace_back(item);
        }
        if (!keys.emplace(t.user, t.seq).second) {
            throw IntegrityError(fmt::format("line {}: user {} already has a transaction with seq {}",
                                             line_no, t.user, t.seq));
        }
        rows.push_back(std::move(t));
    });
    return Dataset::from_records(std::move(rows), {});
}

Dataset read_ratings(std::istream &in) {
    std::vector<RatingRecord> rows;
    std::set<std::pair<UserId, ItemId>> keys;
    for_each_row(in, kRatingHeader, [&](std::size_t line_no, std::string_view line) {
        const auto fields = split(line, ',');
        if (fields.size() != 3) {
            throw ParseError(line_no, fmt::format("expected 3 fields, found {}", fields.size()));
        }
        RatingRecord r{std::string(fields[0]), std::string(fields[1]), 0.0};
        if (r.user.empty() || r.item.empty()) {
            throw ParseError(line_no, "empty user or item");
        }
        if (!parse_number(fields[2], r.value)) {
            throw ParseError(line_no, fmt::format("bad rating value '{}'", fields[2]));
        }
        if (!(r.value >= kMinRating && r.value <= kMaxRating)) {
            throw RangeError(fmt::format("line {}: rating {} outside [0, 10]", line_no, fields[2]));
        }
        if (!keys.emplace(r.user, r.item).second) {
            throw IntegrityError(fmt::format("line {}: duplicate rating for ({}, {})", line_no, r.user, r.item));
        }
        rows.push_back(std::move(r));
    });
    return Dataset::from_records({}, std::move(rows));
}

namespace {

std::ifstream open_input(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(fmt::format("cannot open {}", path.string()));
    }
    return in;
}

} // namespace

Dataset load_transactions(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_transactions(in);
}

Dataset load_ratings(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_ratings(in);
}

Dataset load_dataset(const std::filesystem::path &transactions, const std::filesystem::path &ratings) {
    Dataset tx = transactions.empty() ? Dataset{} : load_transactions(transactions);
    Dataset rt = ratings.empty() ? Dataset{} : load_ratings(ratings);
    return Dataset::merge(tx, rt);
}

std::string format_real(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_transactions(std::ostream &out, const Dataset &dataset) {
    out << kTransactionHeader << '\n';
    for (const auto &t : dataset.transactions()) {
        out << t.tid << ',' << t.user << ',' << t.seq << ',';
        for (std::size_t i = 0; i < t.items.size(); ++i) {
            out << (i ? ";" : "") << t.items[i];
        }
        out << '\n';
    }
}

void write_ratings(std::ostream &out, const Dataset &dataset) {
    out << kRatingHeader << '\n';
    for (const auto &r : dataset.ratings()) {
        out << r.user << ',' << r.item << ',' << format_real(r.value) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Synthetic data

namespace {

void validate(const SyntheticConfig &c) {
    const auto range_ok = [](IntRange r, int lo) { return r.min >= lo && r.max >= r.min; };
    if (c.num_classes < 1) {
        throw ConfigError("num_classes must be >= 1");
    }
    if (c.num_items < c.num_classes || c.num_items % c.num_classes != 0) {
        throw ConfigError("num_items must split evenly into num_classes blocks");
    }
    if (c.users_per_class < 0) {
        throw ConfigError("users_per_class must be >= 0");
    }
    if (!range_ok(c.ratings_per_user, 0) || c.ratings_per_user.max > c.num_items) {
        throw ConfigError("ratings_per_user must be a range within [0, num_items]");
    }
    if (!range_ok(c.transactions_per_user, 0)) {
        throw ConfigError("transactions_per_user must be a non-negative range");
    }
    if (!range_ok(c.items_per_transaction, 1) || c.items_per_transaction.max > c.num_items) {
        throw ConfigError("items_per_transaction must be a range within [1, num_items]");
    }
    if (!(c.class_affinity > 0.0 && c.class_affinity <= 1.0)) {
        throw ConfigError("class_affinity must lie in (0, 1]");
    }
    if (!(c.noise_rating_spread >= 0.0) || !std::isfinite(c.noise_rating_spread)) {
        throw ConfigError("noise_rating_spread must be finite and >= 0");
    }
}

int digits(int n) {
    int d = 1;
    while (n >= 10) {
        n /= 10;
        ++d;
    }
    return d;
}

constexpr double kInClassCenter = 8.0;
constexpr double kOutOfClassCenter = 3.0;

} // namespace

int synthetic_class_of(const UserId &user, const SyntheticConfig &config) {
    int index = 0;
    if (user.size() < 2 || user[0] != 'U' || !parse_number(std::string_view(user).substr(1), index)) {
        return -1;
    }
    if (config.users_per_class <= 0 || index < 1 || index > config.num_classes * config.users_per_class) {
        return -1;
    }
    return (index - 1) / config.users_per_class;
}

Dataset generate_synthetic(const SyntheticConfig &config) {
    validate(config);
    detail::Rng rng(config.rng_seed);

    const int block = config.num_items / config.num_classes;
    const int num_users = config.num_classes * config.users_per_class;
    const int item_width = digits(config.num_items);
    const int user_width = digits(std::max(num_users, 1));

    std::vector<ItemId> items;
    for (int i = 0; i < config.num_items; ++i) {
        items.push_back(fmt::format("I{:0{}}", i + 1, item_width));
    }

    // In-class with probability class_affinity, else uniform outside the block.
    const auto draw_item = [&](int cls, bool &in_class) {
        in_class = config.num_classes == 1 || rng.bernoulli(config.class_affinity);
        if (in_class) {
            return cls * block + rng.between(0, block - 1);
        }
        const int other = rng.between(0, config.num_items - block - 1);
        return other < cls * block ? other : other + block;
    };

    std::vector<UserId> users;
    std::vector<Transaction> transactions;
    std::vector<RatingRecord> ratings;
    int tid = 0;
    for (int u = 0; u < num_users; ++u) {
        const int cls = u / config.users_per_class;
        const UserId user = fmt::format("U{:0{}}", u + 1, user_width);
        users.push_back(user);

        const int n_ratings = rng.between(config.ratings_per_user.min, config.ratings_per_user.max);
        std::set<int> rated;
        while (static_cast<int>(rated.size()) < n_ratings) {
            bool in_class = false;
            int item = draw_item(cls, in_class);
            // A saturated draw falls back to the nearest unrated item.
            while (rated.count(item)) {
                item = (item + 1) % config.num_items;
                in_class = item / block == cls;
            }
            rated.insert(item);
            const double center = in_class ? kInClassCenter : kOutOfClassCenter;
            const double noise = (2.0 * rng.unit() - 1.0) * config.noise_rating_spread;
            const double value = std::clamp(std::round(center + noise), kMinRating, kMaxRating);
            ratings.push_back({user, items[item], value});
        }

        const int n_tx = rng.between(config.transactions_per_user.min, config.transactions_per_user.max);
        for (int s = 0; s < n_tx; ++s) {
            const int size = rng.between(config.items_per_transaction.min, config.items_per_transaction.max);
            std::vector<int> picked;
            while (static_cast<int>(picked.size()) < size) {
                bool in_class = false;
                const int item = draw_item(cls, in_class);
                if (std::find(picked.begin(), picked.end(), item) == picked.end()) {
                    picked.push_back(item);
                }
            }
            Transaction t{fmt::format("T{}", ++tid), user, s + 1, {}};
            for (int item : picked) {
                t.items.push_back(items[item]);
            }
            transactions.push_back(std::move(t));
        }
    }
    return Dataset(std::move(users), std::move(items), std::move(transactions), std::move(ratings));
}

// ---------------------------------------------------------------------------
// Splitting

Dataset select_users(const Dataset &dataset, std::span<const UserId> users) {
    std::vector<UserId> kept(users.begin(), users.end());
    std::sort(kept.begin(), kept.end());
    const auto keep = [&](const UserId &u) { return std::binary_search(kept.begin(), kept.end(), u); };
    std::vector<Transaction> transactions;
    for (const auto &t : dataset.transactions()) {
        if (keep(t.user)) {
            transactions.push_back(t);
        }
    }
    std::vector<RatingRecord> ratings;
    for (const auto &r : dataset.ratings()) {
        if (keep(r.user)) {
            ratings.push_back(r);
        }
    }
    return Dataset(std::move(kept), dataset.items(), std::move(transactions), std::move(ratings));
}

UserSplit split_users(const Dataset &dataset, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw RangeError("train_fraction must lie in (0, 1)");
    }
    std::vector<UserId> order = dataset.users();
    detail::Rng rng(seed);
    rng.shuffle(std::span<UserId>(order));

    const double raw = (1.0 - train_fraction) * static_cast<double>(order.size());
    const auto test_count = static_cast<std::size_t>(std::floor(raw + 1e-9));
    const std::span<const UserId> all(order);
    return {select_users(dataset, all.subspan(test_count)), select_users(dataset, all.first(test_count))};
}

} // namespace reco
