#ifndef RECO_IMPLICIT_VSM_HPP_
#define RECO_IMPLICIT_VSM_HPP_

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "reco/corpus.hpp"
#include "reco/similarity.hpp"

namespace reco {

/// Inverse item frequency over the purchasers of each item:
/// iif(i) = ln((1 + U) / U_i). Items nobody bought have no entry.
class IifTable {
public:
    IifTable() = default;
    IifTable(std::size_t total_users, std::map<ItemId, std::size_t> purchasers);

    std::size_t total_users() const noexcept { return total_users_; }
    const std::map<ItemId, std::size_t> &purchasers() const noexcept { return purchasers_; }
    std::optional<double> iif(const ItemId &item) const;

private:
    std::size_t total_users_ = 0;
    std::map<ItemId, std::size_t> purchasers_;
    std::map<ItemId, double> iif_;
};

/// Throws EmptyDatasetError when the dataset has no users.
IifTable build_iif(const Dataset &dataset);

/// Coordinates n(u,i) * iif(i) for every purchased item with a defined iif.
UserVector implicit_vector(const Profile &profile, const IifTable &iif);
/// Throws NotFoundError for an unknown user.
UserVector implicit_vector(const Dataset &dataset, const IifTable &iif, const UserId &user);

/// Cold-start ranking: score(i) = ln(U_i / (1 + U)), always negative and
/// increasing in U_i. Sorted descending, ties by ascending item id.
std::vector<std::pair<ItemId, double>> new_user_scores(const Dataset &dataset);

} // namespace reco

#endif // RECO_IMPLICIT_VSM_HPP_
