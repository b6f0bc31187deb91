#pragma once

#include <vector>

namespace turretlab {

struct HeldKarpResult {
    std::vector<int> order;  ///< visit order over nodes 1..n, as 0-based point ids
    double total = 0.0;
};

/// Exact shortest open path over a (n+1)x(n+1) distance matrix whose node 0
/// is the fixed start; no return leg. Bitmask dynamic programming, so n is
/// capped by memory at about 22 points (callers enforce their own limits).
HeldKarpResult held_karp_open_path(const std::vector<std::vector<double>>& dist);

/// Exact closed tour over an n x n distance matrix, anchored at node 0.
/// Returns the full node cycle order (without repeating node 0 at the end).
HeldKarpResult held_karp_tour(const std::vector<std::vector<double>>& dist);

}  // namespace turretlab
