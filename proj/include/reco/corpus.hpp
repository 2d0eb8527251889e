#ifndef RECO_CORPUS_HPP_
#define RECO_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace reco {

using UserId = std::string;
using ItemId = std::string;

/// Ratings live on a real [0, 10] scale; a 0-1 style 0.5 is stored as 5.
inline constexpr double kMinRating = 0.0;
inline constexpr double kMaxRating = 10.0;

struct Transaction {
    std::string tid;
    UserId user;
    std::int64_t seq = 0;      // purchase-event order within one user
    std::vector<ItemId> items; // simultaneous; order kept only for display

    friend bool operator==(const Transaction &, const Transaction &) = default;
};

struct RatingRecord {
    UserId user;
    ItemId item;
    double value = 0.0;

    friend bool operator==(const RatingRecord &, const RatingRecord &) = default;
};

/// Immutable collection of users, items, transactions and ratings.
///
/// Users and items are kept sorted by id, transactions sorted by
/// (user, seq) and ratings by (user, item), so two datasets holding the
/// same records compare equal regardless of input order. Construction
/// validates every invariant and throws IntegrityError / RangeError.
class Dataset {
public:
    Dataset() = default;

    /// Explicit universe: every record must reference a listed user/item.
    Dataset(std::vector<UserId> users, std::vector<ItemId> items,
            std::vector<Transaction> transactions, std::vector<RatingRecord> ratings);

    /// Users and items are derived from the records themselves.
    static Dataset from_records(std::vector<Transaction> transactions,
                                std::vector<RatingRecord> ratings);

    /// Union of two fragments (e.g. a transaction file and a rating file).
    static Dataset merge(const Dataset &a, const Dataset &b);

    const std::vector<UserId> &users() const noexcept { return users_; }
    const std::vector<ItemId> &items() const noexcept { return items_; }
    const std::vector<Transaction> &transactions() const noexcept { return transactions_; }
    const std::vector<RatingRecord> &ratings() const noexcept { return ratings_; }

    bool has_user(const UserId &user) const;
    bool has_item(const ItemId &item) const;

    /// One user's transactions in ascending seq order (empty if none).
    std::span<const Transaction> transactions_of(const UserId &user) const;
    const std::map<ItemId, double> &ratings_of(const UserId &user) const;
    /// n(u,i): purchase occurrences of each item across the user's transactions.
    const std::map<ItemId, int> &purchase_counts(const UserId &user) const;

    friend bool operator==(const Dataset &a, const Dataset &b) {
        return a.users_ == b.users_ && a.items_ == b.items_ &&
               a.transactions_ == b.transactions_ && a.ratings_ == b.ratings_;
    }

private:
    struct UserIndex {
        std::size_t first_tx = 0;
        std::size_t tx_count = 0;
        std::map<ItemId, double> ratings;
        std::map<ItemId, int> counts;
    };

    void build_index();

    std::vector<UserId> users_;
    std::vector<ItemId> items_;
    std::vector<Transaction> transactions_;
    std::vector<RatingRecord> ratings_;
    std::map<UserId, UserIndex> index_;
};

// CSV formats (UTF-8, LF):
//   transactions: header "tid,user,seq,items", items separated by ';'
//   ratings:      header "user,item,value"

Dataset read_transactions(std::istream &in);
Dataset read_ratings(std::istream &in);
Dataset load_transactions(const std::filesystem::path &path);
Dataset load_ratings(const std::filesystem::path &path);
/// Either path may be empty, in which case that fragment is skipped.
Dataset load_dataset(const std::filesystem::path &transactions,
                     const std::filesystem::path &ratings);

void write_transactions(std::ostream &out, const Dataset &dataset);
void write_ratings(std::ostream &out, const Dataset &dataset);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

struct IntRange {
    int min = 0;
    int max = 0;
};

struct SyntheticConfig {
    int num_classes = 4;
    int num_items = 60;
    int users_per_class = 25;
    IntRange ratings_per_user{16, 22};
    IntRange transactions_per_user{3, 6};
    IntRange items_per_transaction{1, 3};
    /// Probability that a rating or purchase targets the user's class block.
    double class_affinity = 0.9;
    /// Half-width of the uniform noise added to the class rating centers.
    double noise_rating_spread = 3.0;
    std::uint64_t rng_seed = 42;
};

/// Planted-class dataset: class c users favour item block c. In-class
/// ratings centre at 8, out-of-class at 3; all ratings are integers.
Dataset generate_synthetic(const SyntheticConfig &config);

/// Class index of a synthetic user id, or -1 if the id is not synthetic.
int synthetic_class_of(const UserId &user, const SyntheticConfig &config);

struct UserSplit {
    Dataset train;
    Dataset test;
};

/// Partition users into train/test. The test split takes
/// floor((1 - train_fraction) * |users|) users chosen by a seeded shuffle.
UserSplit split_users(const Dataset &dataset, double train_fraction, std::uint64_t seed);

/// Restrict a dataset to the given users (and all items).
Dataset select_users(const Dataset &dataset, std::span<const UserId> users);

} // namespace reco

#endif // RECO_CORPUS_HPP_
