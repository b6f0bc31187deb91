#include "turretlab/held_karp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "turretlab/errors.hpp"

namespace turretlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

HeldKarpResult held_karp_open_path(const std::vector<std::vector<double>>& dist) {
    const int n = static_cast<int>(dist.size()) - 1;
    if (n <= 0) return {{}, 0.0};
    if (n > 24) throw InstanceTooLarge("held_karp_open_path: too many points");

    const std::size_t masks = std::size_t{1} << n;
    std::vector<double> dp(masks * n, kInf);
    std::vector<std::uint8_t> parent(masks * n, 0xFF);

    for (int j = 0; j < n; ++j) {
        dp[(std::size_t{1} << j) * n + j] = dist[0][j + 1];
    }
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            double cur = dp[std::size_t{mask} * n + j];
            if (cur == kInf) continue;
            std::uint32_t rest = ~mask & (masks - 1);
            for (std::uint32_t m = rest; m; m &= m - 1) {
                int k = std::countr_zero(m);
                std::uint32_t next = mask | (1u << k);
                double cand = cur + dist[j + 1][k + 1];
                double& slot = dp[std::size_t{next} * n + k];
                if (cand < slot) {
                    slot = cand;
                    parent[std::size_t{next} * n + k] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    const std::uint32_t full = static_cast<std::uint32_t>(masks - 1);
    int best_end = 0;
    double best = kInf;
    for (int j = 0; j < n; ++j) {
        double c = dp[std::size_t{full} * n + j];
        if (c < best) {
            best = c;
            best_end = j;
        }
    }

    std::vector<int> order(n);
    std::uint32_t mask = full;
    int j = best_end;
    for (int pos = n - 1; pos >= 0; --pos) {
        order[pos] = j;
        std::uint8_t p = parent[std::size_t{mask} * n + j];
        mask &= ~(1u << j);
        j = p;
    }
    return {std::move(order), best};
}

HeldKarpResult held_karp_tour(const std::vector<std::vector<double>>& dist) {
    const int n = static_cast<int>(dist.size());
    if (n <= 1) return {{0}, 0.0};
    if (n > 25) throw InstanceTooLarge("held_karp_tour: too many nodes");

    // Open-path DP over nodes 1..n-1 from node 0, then close the cycle.
    const int m = n - 1;
    const std::size_t masks = std::size_t{1} << m;
    std::vector<double> dp(masks * m, kInf);
    std::vector<std::uint8_t> parent(masks * m, 0xFF);

    for (int j = 0; j < m; ++j) {
        dp[(std::size_t{1} << j) * m + j] = dist[0][j + 1];
    }
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
        for (int j = 0; j < m; ++j) {
            if (!(mask & (1u << j))) continue;
            double cur = dp[std::size_t{mask} * m + j];
            if (cur == kInf) continue;
            std::uint32_t rest = ~mask & (masks - 1);
            for (std::uint32_t mm = rest; mm; mm &= mm - 1) {
                int k = std::countr_zero(mm);
                std::uint32_t next = mask | (1u << k);
                double cand = cur + dist[j + 1][k + 1];
                double& slot = dp[std::size_t{next} * m + k];
                if (cand < slot) {
                    slot = cand;
                    parent[std::size_t{next} * m + k] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    const std::uint32_t full = static_cast<std::uint32_t>(masks - 1);
    int best_end = 0;
    double best = kInf;
    for (int j = 0; j < m; ++j) {
        double c = dp[std::size_t{full} * m + j] + dist[j + 1][0];
        if (c < best) {
            best = c;
            best_end = j;
        }
    }

    std::vector<int> order(n);
    order[0] = 0;
    std::uint32_t mask = full;
    int j = best_end;
    for (int pos = m; pos >= 1; --pos) {
        order[pos] = j + 1;
        std::uint8_t p = parent[std::size_t{mask} * m + j];
        mask &= ~(1u << j);
        j = p;
    }
    return {std::move(order), best};
}

}  // namespace turretlab
