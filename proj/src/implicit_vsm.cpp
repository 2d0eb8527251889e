#include "reco/implicit_vsm.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "reco/errors.hpp"

namespace reco {

IifTable::IifTable(std::size_t total_users, std::map<ItemId, std::size_t> purchasers)
    : total_users_(total_users), purchasers_(std::move(purchasers)) {
    for (auto it = purchasers_.begin(); it != purchasers_.end();) {
        if (it->second == 0) {
            it = purchasers_.erase(it);
            continue;
        }
        if (it->second > total_users_) {
            throw IntegrityError(fmt::format("item {} has more purchasers than users", it->first));
        }
        iif_.emplace(it->first, std::log((1.0 + static_cast<double>(total_users_)) /
                                         static_cast<double>(it->second)));
        ++it;
    }
}

std::optional<double> IifTable::iif(const ItemId &item) const {
    const auto it = iif_.find(item);
    if (it == iif_.end()) {
        return std::nullopt;
    }
    return it->second;
}

IifTable build_iif(const Dataset &dataset) {
    if (dataset.users().empty()) {
        throw EmptyDatasetError("cannot build IIF over an empty user set");
    }
    std::map<ItemId, std::size_t> purchasers;
    for (const auto &u : dataset.users()) {
        for (const auto &[item, n] : dataset.purchase_counts(u)) {
            if (n > 0) {
                ++purchasers[item];
            }
        }
    }
    return IifTable(dataset.users().size(), std::move(purchasers));
}

UserVector implicit_vector(const Profile &profile, const IifTable &iif) {
    UserVector v{profile.user, {}, Mode::implicit};
    for (const auto &[item, n] : profile.purchase_counts) {
        if (const auto w = iif.iif(item); w && n > 0) {
            v.weights.emplace(item, n * *w);
        }
    }
    return v;
}

UserVector implicit_vector(const Dataset &dataset, const IifTable &iif, const UserId &user) {
    if (!dataset.has_user(user)) {
        throw NotFoundError(fmt::format("unknown user {}", user));
    }
    return implicit_vector(Profile{user, {}, dataset.purchase_counts(user), {}}, iif);
}

std::vector<std::pair<ItemId, double>> new_user_scores(const Dataset &dataset) {
    std::vector<std::pair<ItemId, double>> scores;
    if (dataset.users().empty()) {
        return scores;
    }
    const auto table = build_iif(dataset);
    const double denom = 1.0 + static_cast<double>(table.total_users());
    for (const auto &[item, count] : table.purchasers()) {
        scores.emplace_back(item, std::log(static_cast<double>(count) / denom));
    }
    std::stable_sort(scores.begin(), scores.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
    return scores;
}

} // namespace reco
