#include "reco/similarity.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "reco/errors.hpp"
#include "reco/implicit_vsm.hpp"

namespace reco {

std::string_view to_string(Mode mode) {
    switch (mode) {
    case Mode::simple: return "simple";
    case Mode::method1: return "method1";
    case Mode::method2: return "method2";
    case Mode::implicit: return "implicit";
    }
    return "unknown";
}

Mode parse_mode(std::string_view name) {
    for (Mode m : kAllModes) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ConfigError(fmt::format("unknown mode '{}' (expected simple|method1|method2|implicit)", name));
}

Profile profile_of(const Dataset &dataset, const UserId &user) {
    if (!dataset.has_user(user)) {
        throw NotFoundError(fmt::format("unknown user {}", user));
    }
    const auto txs = dataset.transactions_of(user);
    return {user, dataset.ratings_of(user), dataset.purchase_counts(user), {txs.begin(), txs.end()}};
}

double msd(const UserVector &target, const UserVector &other) {
    double sum = 0.0;
    std::size_t shared = 0;
    for (const auto &[item, w] : target.weights) {
        const auto it = other.weights.find(item);
        if (it != other.weights.end()) {
            const double d = w - it->second;
            sum += d * d;
            ++shared;
        }
    }
    if (shared == 0) {
        throw NoOverlapError(fmt::format("{} and {} share no rated item", target.user, other.user));
    }
    return sum / static_cast<double>(shared);
}

double cosine_restricted(const UserVector &target, const UserVector &other) {
    double dot = 0.0;
    double target_sq = 0.0;
    double other_sq = 0.0;
    for (const auto &[item, w] : target.weights) {
        if (w == 0.0) {
            continue;
        }
        target_sq += w * w;
        const auto it = other.weights.find(item);
        if (it != other.weights.end()) {
            dot += w * it->second;
            other_sq += it->second * it->second;
        }
    }
    if (target_sq == 0.0) {
        throw NoProfileError(fmt::format("user {} has no rated items", target.user));
    }
    if (other_sq == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(target_sq) * std::sqrt(other_sq));
}

UserVector explicit_vector(const Profile &profile, Mode mode) {
    UserVector v{profile.user, {}, mode};
    if (mode == Mode::implicit) {
        throw ConfigError("implicit vectors need an IifTable; use implicit_vector");
    }
    if (mode == Mode::simple) {
        v.weights = profile.ratings;
        return v;
    }

    double norm = 0.0;
    for (const auto &[item, n] : profile.purchase_counts) {
        norm = mode == Mode::method1 ? norm + n : std::max(norm, static_cast<double>(n));
    }
    for (const auto &[item, rating] : profile.ratings) {
        const auto it = profile.purchase_counts.find(item);
        const double n = it == profile.purchase_counts.end() ? 0.0 : it->second;
        v.weights.emplace(item, norm > 0.0 ? rating * n / norm : 0.0);
    }
    return v;
}

UserVector user_vector(const Dataset &dataset, const UserId &user, Mode mode) {
    if (mode == Mode::implicit) {
        return implicit_vector(dataset, build_iif(dataset), user);
    }
    return explicit_vector(profile_of(dataset, user), mode);
}

NeighborList rank_neighbors(const UserVector &target, std::span<const UserVector> population, std::size_t k) {
    NeighborList out{target.user, {}};
    for (const auto &other : population) {
        if (other.user == target.user) {
            continue;
        }
        out.entries.push_back({other.user, cosine_restricted(target, other)});
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const Neighbor &a, const Neighbor &b) {
        if (a.similarity != b.similarity) {
            return a.similarity > b.similarity;
        }
        return a.user < b.user;
    });
    if (out.entries.size() > k) {
        out.entries.resize(k);
    }
    return out;
}

NeighborList nearest_neighbors(const Dataset &dataset, const UserId &target, std::size_t k, Mode mode) {
    if (k < 1) {
        throw ConfigError("k must be >= 1");
    }
    std::vector<UserVector> population;
    population.reserve(dataset.users().size());
    if (mode == Mode::implicit) {
        const auto iif = build_iif(dataset);
        for (const auto &u : dataset.users()) {
            population.push_back(implicit_vector(dataset, iif, u));
        }
    } else {
        for (const auto &u : dataset.users()) {
            population.push_back(explicit_vector(profile_of(dataset, u), mode));
        }
    }
    const auto self = std::find_if(population.begin(), population.end(),
                                   [&](const UserVector &v) { return v.user == target; });
    if (self == population.end()) {
        throw NotFoundError(fmt::format("unknown user {}", target));
    }
    return rank_neighbors(*self, population, k);
}

} // namespace reco
