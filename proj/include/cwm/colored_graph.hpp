#pragma once

#include <vector>

#include "cwm/bubble.hpp"
#include "cwm/errors.hpp"
#include "cwm/perm.hpp"

namespace cwm {

// A (D+1)-colored graph: `copies` labeled copies of a bubble glued by color-0
// edges. Slots are 0-based here (1-based in all text formats); copy k occupies
// slots [k*V, (k+1)*V). mu[y] = x means an edge of color 0 joins the black
// vertex of slot y to the white vertex of slot x; mu[y] = -1 marks a free
// black slot. Black slots carry the bubble's own black labels; pairings are
// applied by conjugation where needed, never stored here.
struct ColoredGraph {
    Bubble bubble;
    int copies = 1;
    std::vector<int> mu;

    int slots() const { return copies * bubble.V; }
    int block_base(int slot) const { return slot - slot % bubble.V; }
    bool closed() const {
        for (int v : mu)
            if (v < 0) return false;
        return true;
    }
    int free_count() const {
        int p = 0;
        for (int v : mu)
            if (v < 0) ++p;
        return p;
    }
    std::vector<int> free_black_slots() const {
        std::vector<int> r;
        for (int y = 0; y < slots(); ++y)
            if (mu[y] < 0) r.push_back(y);
        return r;
    }
    std::vector<int> free_white_slots() const {
        std::vector<char> hit(slots(), 0);
        for (int v : mu)
            if (v >= 0) hit[v] = 1;
        std::vector<int> r;
        for (int x = 0; x < slots(); ++x)
            if (!hit[x]) r.push_back(x);
        return r;
    }

    // black endpoint slot of the color-i edge (0-based color index) at white slot x
    int black_end(int color_idx, int x) const {
        return block_base(x) + bubble.tau[color_idx][x % bubble.V];
    }
};

inline bool graph_connected(const ColoredGraph& g) {
    // bubbles are connected, so only the copies need joining via mu
    std::vector<int> parent(g.copies);
    for (int i = 0; i < g.copies; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int V = g.bubble.V;
    for (int y = 0; y < g.slots(); ++y)
        if (g.mu[y] >= 0) parent[find(y / V)] = find(g.mu[y] / V);
    int root = find(0);
    for (int i = 0; i < g.copies; ++i)
        if (find(i) != root) return false;
    return true;
}

inline void validate_graph(const ColoredGraph& g) {
    validate_bubble(g.bubble);
    if (g.copies < 1) throw PreconditionError("graph needs b >= 1 bubble copies");
    if ((int)g.mu.size() != g.slots()) throw PreconditionError("mu must cover all slots");
    std::vector<char> hit(g.slots(), 0);
    int def = 0;
    for (int v : g.mu) {
        if (v < -1 || v >= g.slots()) throw PreconditionError("mu image out of range");
        if (v >= 0) {
            if (hit[v]) throw PreconditionError("mu is not injective");
            hit[v] = 1;
            ++def;
        }
    }
    if (!graph_connected(g)) throw DisconnectedError("colored graph is disconnected");
}

// Faces of a colored graph. Slot sequences alternate white and black slots;
// black slot y is stored as slots()+y so both kinds fit in one int sequence.
struct FaceSet {
    std::vector<std::vector<std::vector<int>>> closed; // [color][face][entries]
    std::vector<std::vector<std::vector<int>>> broken; // [color][chain][entries]

    int count_closed(int color_idx) const { return (int)closed[color_idx].size(); }
    int total_closed() const {
        int f = 0;
        for (const auto& c : closed) f += (int)c.size();
        return f;
    }
};

inline FaceSet graph_faces(const ColoredGraph& g) {
    int n = g.slots();
    FaceSet fs;
    fs.closed.resize(g.bubble.D);
    fs.broken.resize(g.bubble.D);
    for (int i = 0; i < g.bubble.D; ++i) {
        std::vector<char> done(n, 0); // white slot handled in some face of color i
        // broken chains start at free whites
        for (int x : g.free_white_slots()) {
            std::vector<int> chain;
            int w = x;
            while (true) {
                chain.push_back(w);
                done[w] = 1;
                int y = g.black_end(i, w);
                chain.push_back(n + y);
                if (g.mu[y] < 0) break;
                w = g.mu[y];
            }
            fs.broken[i].push_back(std::move(chain));
        }
        // remaining color-i incidences close into cycles
        for (int x = 0; x < n; ++x) {
            if (done[x]) continue;
            std::vector<int> cyc;
            int w = x;
            do {
                cyc.push_back(w);
                done[w] = 1;
                int y = g.black_end(i, w);
                cyc.push_back(n + y);
                w = g.mu[y];
                internal_check(w >= 0, "closed face walk hit a free slot");
            } while (w != x);
            fs.closed[i].push_back(std::move(cyc));
        }
    }
    return fs;
}

inline int graph_face_count(const ColoredGraph& g) { return graph_faces(g).total_closed(); }

// Reduced degree omega(G) = D + (D-1)(p-1)b - F(G), zero exactly on melonic graphs.
inline int melonic_degree(const ColoredGraph& g) {
    if (!g.closed()) throw OpenGraphError();
    int D = g.bubble.D, p = g.bubble.V;
    return D + (D - 1) * (p - 1) * g.copies - graph_face_count(g);
}

// Generic melonic reduction on a Delta-colored graph given as Delta white->black
// permutations: repeatedly remove a pair joined by exactly Delta-1 parallel edges.
inline bool melonic_reduction(std::vector<Perm> tau) {
    int Delta = (int)tau.size();
    int n = (int)tau[0].size();
    std::vector<char> live_w(n, 1), live_b(n, 1);
    int remaining = n;
    while (remaining > 1) {
        int white = -1, black = -1, free_color = -1;
        for (int a = 0; a < n && white < 0; ++a) {
            if (!live_w[a]) continue;
            for (int cand = 0; cand < n; ++cand) {
                if (!live_b[cand]) continue;
                int shared = 0, other = -1;
                for (int i = 0; i < Delta; ++i) {
                    if (tau[i][a] == cand) ++shared;
                    else other = i;
                }
                if (shared == Delta - 1) {
                    white = a;
                    black = cand;
                    free_color = other;
                    break;
                }
            }
        }
        if (white < 0) return false;
        int target = tau[free_color][white];
        for (int a = 0; a < n; ++a) {
            if (live_w[a] && a != white && tau[free_color][a] == black) {
                tau[free_color][a] = target;
                break;
            }
        }
        live_w[white] = 0;
        live_b[black] = 0;
        --remaining;
    }
    return true;
}

// Melonicity of a closed (D+1)-colored graph (the grammar membership test
// behind omega == 0).
inline bool graph_is_melonic(const ColoredGraph& g) {
    if (!g.closed()) throw OpenGraphError();
    int n = g.slots(), V = g.bubble.V;
    std::vector<Perm> full(g.bubble.D + 1, Perm(n));
    // color 0 as a white->black map is mu^{-1}
    for (int y = 0; y < n; ++y) full[0][g.mu[y]] = y;
    for (int i = 0; i < g.bubble.D; ++i)
        for (int x = 0; x < n; ++x) full[i + 1][x] = g.block_base(x) + g.bubble.tau[i][x % V];
    return melonic_reduction(full);
}

} // namespace cwm
