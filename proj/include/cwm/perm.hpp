#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace cwm {

// Permutations are stored as 0-based image vectors: p[i] is the image of i.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool is_permutation(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= (int)p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

inline Perm perm_inverse(const Perm& p) {
    Perm inv(p.size());
    for (int i = 0; i < (int)p.size(); ++i) inv[p[i]] = i;
    return inv;
}

// (a o b)(x) = a(b(x))
inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (int i = 0; i < (int)b.size(); ++i) r[i] = a[b[i]];
    return r;
}

inline std::vector<std::vector<int>> perm_cycles(const Perm& p) {
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < (int)p.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            cyc.push_back(j);
            j = p[j];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

inline int perm_cycle_count(const Perm& p) {
    int count = 0;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < (int)p.size(); ++i) {
        if (seen[i]) continue;
        ++count;
        for (int j = i; !seen[j]; j = p[j]) seen[j] = 1;
    }
    return count;
}

inline int perm_fixed_points(const Perm& p) {
    int count = 0;
    for (int i = 0; i < (int)p.size(); ++i)
        if (p[i] == i) ++count;
    return count;
}

// Builds a permutation from disjoint cycles given in one-line cycle notation,
// e.g. perm_from_cycles(3, {{0,1}}) is the transposition (0 1) on 3 points.
inline Perm perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Perm p = perm_identity(n);
    for (const auto& cyc : cycles)
        for (size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
    return p;
}

} // namespace cwm
