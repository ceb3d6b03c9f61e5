#pragma once

#include <algorithm>
#include <vector>

#include "cwm/bubble.hpp"
#include "cwm/emap.hpp"
#include "cwm/errors.hpp"

namespace cwm {

// Boundary graph of a ciliated map. Pairs are the ciliated vertices, labeled by
// increasing cilium half-edge label; the bubble is returned in the frame where
// the induced pairing is the identity (pair x = white x = black x).
struct BoundaryResult {
    Bubble bubble;
    Pairing pairing; // always identity in the returned labels
    std::vector<int> cilium_of_pair;
};

inline BoundaryResult boundary(const Emap& m) {
    std::vector<int> cils;
    for (int h = 0; h < m.H(); ++h)
        if (m.cil[h]) cils.push_back(h);
    if (cils.empty()) throw PreconditionError("boundary needs at least one cilium");
    std::sort(cils.begin(), cils.end());
    std::vector<int> pair_of(m.H(), -1);
    for (int x = 0; x < (int)cils.size(); ++x) pair_of[cils[x]] = x;

    int p = (int)cils.size();
    Bubble b;
    b.D = m.D;
    b.V = p;
    b.tau.assign(m.D, Perm(p, -1));

    // Walk the faces of each color; consecutive cilia along a face cycle give
    // tau_i: step 1 and 2 of the extraction collapsed into one pass. Cilia on a
    // cycle by themselves yield tau_i(x) = x, which is step 3 (missing colors
    // added inside the pair).
    for (int i = 1; i <= m.D; ++i) {
        for (const auto& cyc : detail::face_cycles(m, detail::keep_color(m, i))) {
            std::vector<int> on_cycle;
            for (int h : cyc)
                if (m.cil[h]) on_cycle.push_back(pair_of[h]);
            for (int k = 0; k < (int)on_cycle.size(); ++k)
                b.tau[i - 1][on_cycle[k]] = on_cycle[(k + 1) % on_cycle.size()];
        }
        internal_check(is_permutation(b.tau[i - 1]), "boundary extraction left a color undefined");
    }
    if (!bubble_connected(b)) throw DisconnectedError("boundary graph is disconnected");
    return BoundaryResult{std::move(b), Pairing{perm_identity(p)}, std::move(cils)};
}

} // namespace cwm
