#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cwm/errors.hpp"
#include "cwm/perm.hpp"

namespace cwm {

// A pairing of a bubble's vertices: white vertex a is paired with black tau0(a).
struct Pairing {
    Perm tau0;

    friend bool operator==(const Pairing& a, const Pairing& b) { return a.tau0 == b.tau0; }
    friend bool operator<(const Pairing& a, const Pairing& b) { return a.tau0 < b.tau0; }
};

// A bubble: closed connected D-colored bipartite graph on V white and V black
// vertices, encoded by D permutations. An edge of color i (1-based in all
// user-facing text, index i-1 here) joins white vertex a to black tau[i-1][a].
struct Bubble {
    int D = 0;
    int V = 0;
    std::vector<Perm> tau;

    friend bool operator==(const Bubble& a, const Bubble& b) {
        return a.D == b.D && a.V == b.V && a.tau == b.tau;
    }
};

inline bool bubble_connected(const Bubble& b) {
    if (b.V <= 0) return false;
    // Union whites 0..V-1 with blacks V..2V-1 along every colored edge.
    std::vector<int> parent(2 * b.V);
    for (int i = 0; i < 2 * b.V; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& t : b.tau)
        for (int a = 0; a < b.V; ++a) parent[find(a)] = find(b.V + t[a]);
    int root = 0;
    while (parent[root] != root) root = parent[root];
    for (int i = 0; i < 2 * b.V; ++i)
        if (find(i) != root) return false;
    return true;
}

inline void validate_bubble(const Bubble& b) {
    if (b.D < 2) throw PreconditionError("bubble needs D >= 2 colors");
    if (b.V < 1) throw PreconditionError("bubble needs V >= 1");
    if ((int)b.tau.size() != b.D) throw PreconditionError("bubble needs D permutations");
    for (int i = 0; i < b.D; ++i) {
        if ((int)b.tau[i].size() != b.V || !is_permutation(b.tau[i]))
            throw NotBijectiveError(i + 1);
    }
    if (!bubble_connected(b)) throw DisconnectedError("bubble is disconnected");
}

inline void validate_pairing(const Bubble& b, const Pairing& om) {
    if ((int)om.tau0.size() != b.V || !is_permutation(om.tau0))
        throw PreconditionError("pairing must be a bijection of the bubble's vertices");
}

// Relabels black vertices so that the pairing becomes the identity:
// nu[i] = tau0^{-1} o tau[i]. All downstream constructions (maps, Walsh maps)
// work in this frame and address vertices by pair label.
inline std::vector<Perm> pair_frame(const Bubble& b, const Pairing& om) {
    Perm inv = perm_inverse(om.tau0);
    std::vector<Perm> nu(b.D);
    for (int i = 0; i < b.D; ++i) nu[i] = perm_compose(inv, b.tau[i]);
    return nu;
}

inline Bubble bubble_in_pair_frame(const Bubble& b, const Pairing& om) {
    return Bubble{b.D, b.V, pair_frame(b, om)};
}

// Colors incident to pair a but not internal to it: { i : nu_i(a) != a }, as a bitmask
// with color i on bit i-1.
inline std::vector<uint16_t> attachment_color_sets(const std::vector<Perm>& nu) {
    int V = (int)nu[0].size();
    std::vector<uint16_t> sets(V, 0);
    for (int i = 0; i < (int)nu.size(); ++i)
        for (int a = 0; a < V; ++a)
            if (nu[i][a] != a) sets[a] |= uint16_t(1u << i);
    return sets;
}

// Bubble isomorphisms are pairs (pw, pb) of vertex relabelings with
// pb(tau_i(a)) = tau'_i(pw(a)) for all colors. Used for boundary-reconstruction
// checks; brute force over pw, intended for V <= 6.
inline bool bubbles_isomorphic(const Bubble& a, const Bubble& b) {
    if (a.D != b.D || a.V != b.V) return false;
    Perm pw = perm_identity(a.V);
    do {
        // pb is forced by color 1, then checked on the others.
        Perm pb = perm_compose(perm_compose(b.tau[0], pw), perm_inverse(a.tau[0]));
        bool ok = true;
        for (int i = 1; i < a.D && ok; ++i)
            for (int x = 0; x < a.V && ok; ++x)
                if (pb[a.tau[i][x]] != b.tau[i][pw[x]]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(pw.begin(), pw.end()));
    return false;
}

// All automorphisms of a bubble, as (pw, pb) pairs.
inline std::vector<std::pair<Perm, Perm>> bubble_automorphisms(const Bubble& b) {
    std::vector<std::pair<Perm, Perm>> autos;
    Perm pw = perm_identity(b.V);
    do {
        Perm pb = perm_compose(perm_compose(b.tau[0], pw), perm_inverse(b.tau[0]));
        bool ok = true;
        for (int i = 1; i < b.D && ok; ++i)
            for (int x = 0; x < b.V && ok; ++x)
                if (pb[b.tau[i][x]] != b.tau[i][pw[x]]) ok = false;
        if (ok) autos.emplace_back(pw, pb);
    } while (std::next_permutation(pw.begin(), pw.end()));
    return autos;
}

// Pair-label symmetries of (B, Omega): permutations s with s o nu_i = nu_i o s
// for every color. These are the relabelings under which M(B, Omega) must be
// invariant.
inline std::vector<Perm> pairing_symmetries(const Bubble& b, const Pairing& om) {
    auto nu = pair_frame(b, om);
    std::vector<Perm> syms;
    Perm s = perm_identity(b.V);
    do {
        bool ok = true;
        for (const auto& n : nu) {
            for (int x = 0; x < b.V && ok; ++x)
                if (s[n[x]] != n[s[x]]) ok = false;
            if (!ok) break;
        }
        if (ok) syms.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    return syms;
}

// Melonicity: a bubble is melonic iff it reduces to the 2-vertex bubble by
// repeatedly removing a white/black pair joined by exactly D-1 parallel edges,
// reconnecting the remaining color. Returns the dipole pairing when melonic.
inline std::pair<bool, std::optional<Pairing>> is_melonic(const Bubble& b) {
    std::vector<Perm> tau = b.tau;
    std::vector<char> live_w(b.V, 1), live_b(b.V, 1);
    Perm tau0(b.V, -1);
    int remaining = b.V;

    while (remaining > 1) {
        int white = -1, black = -1, free_color = -1;
        for (int a = 0; a < b.V && white < 0; ++a) {
            if (!live_w[a]) continue;
            // count colors joining a to each live black; a dipole partner gets D-1
            for (int cand = 0; cand < b.V; ++cand) {
                if (!live_b[cand]) continue;
                int shared = 0, other = -1;
                for (int i = 0; i < b.D; ++i) {
                    if (tau[i][a] == cand) ++shared;
                    else other = i;
                }
                if (shared == b.D - 1) {
                    white = a;
                    black = cand;
                    free_color = other;
                    break;
                }
            }
        }
        if (white < 0) return {false, std::nullopt};

        tau0[white] = black;
        // Reconnect the free color: the live white pointing at `black` now
        // points where `white` pointed.
        int target = tau[free_color][white];
        for (int a = 0; a < b.V; ++a) {
            if (live_w[a] && a != white && tau[free_color][a] == black) {
                tau[free_color][a] = target;
                break;
            }
        }
        live_w[white] = 0;
        live_b[black] = 0;
        --remaining;
    }
    int last_w = -1, last_b = -1;
    for (int a = 0; a < b.V; ++a) {
        if (live_w[a]) last_w = a;
        if (live_b[a]) last_b = a;
    }
    tau0[last_w] = last_b;
    return {true, Pairing{tau0}};
}

// Melonic grammar step: insert a new pair on the color-i edge leaving white
// vertex a, joined by D-1 parallel edges of the other colors.
inline Bubble insert_dipole(const Bubble& b, int color1 /*1-based*/, int white_a /*1-based*/) {
    int i = color1 - 1, a = white_a - 1;
    Bubble r{b.D, b.V + 1, b.tau};
    int nw = b.V; // new white and black both get label V
    for (int c = 0; c < b.D; ++c) r.tau[c].push_back(nw);
    int old_target = r.tau[i][a];
    r.tau[i][a] = nw;
    r.tau[i][nw] = old_target;
    return r;
}

} // namespace cwm
