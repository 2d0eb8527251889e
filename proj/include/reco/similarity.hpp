#ifndef RECO_SIMILARITY_HPP_
#define RECO_SIMILARITY_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"

namespace reco {

/// How a user's profile is turned into a vector.
///   simple   weight = rating
///   method1  weight = rating * n(u,i) / sum_I n(u,I)
///   method2  weight = rating * n(u,i) / max_I n(u,I)
///   implicit weight = n(u,i) * iif(i)        (see implicit_vsm.hpp)
enum class Mode { simple, method1, method2, implicit };

inline constexpr Mode kAllModes[] = {Mode::implicit, Mode::simple, Mode::method1, Mode::method2};

std::string_view to_string(Mode mode);
/// Accepts the CLI names `simple|method1|method2|implicit`; throws ConfigError.
Mode parse_mode(std::string_view name);

struct UserVector {
    UserId user;
    std::map<ItemId, double> weights;
    Mode mode = Mode::simple;
};

struct Neighbor {
    UserId user;
    double similarity = 0.0;

    friend bool operator==(const Neighbor &, const Neighbor &) = default;
};

/// Sorted by similarity descending, ties by ascending user id.
struct NeighborList {
    UserId target;
    std::vector<Neighbor> entries;
};

/// A query profile that need not belong to any dataset.
struct Profile {
    UserId user;
    std::map<ItemId, double> ratings;
    std::map<ItemId, int> purchase_counts;
    std::vector<Transaction> transactions; // ascending seq
};

Profile profile_of(const Dataset &dataset, const UserId &user);

/// Mean squared difference over co-rated items; 0 means identical.
/// Throws NoOverlapError when the two vectors share no item.
double msd(const UserVector &target, const UserVector &other);

/// Cosine between `target` and `other` restricted to the items where the
/// target's weight is nonzero. Items `other` lacks count as 0. Returns 0
/// when the restricted `other` has zero norm; throws NoProfileError when
/// the target has no nonzero weight.
double cosine_restricted(const UserVector &target, const UserVector &other);

/// Vector for the explicit modes (simple, method1, method2) of a profile.
UserVector explicit_vector(const Profile &profile, Mode mode);

/// Vector of a dataset user in any mode. Throws NotFoundError.
UserVector user_vector(const Dataset &dataset, const UserId &user, Mode mode);

/// Top-k of `population` by cosine_restricted against `target`; the
/// target's own id is skipped.
NeighborList rank_neighbors(const UserVector &target, std::span<const UserVector> population,
                            std::size_t k);

/// Top-k neighbors of a dataset user. Throws NoProfileError when the
/// target's vector is all zero.
NeighborList nearest_neighbors(const Dataset &dataset, const UserId &target, std::size_t k, Mode mode);

} // namespace reco

#endif // RECO_SIMILARITY_HPP_
