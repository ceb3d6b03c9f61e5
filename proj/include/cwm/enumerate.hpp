#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <thread>
#include <vector>

#include "cwm/colored_graph.hpp"
#include "cwm/emap.hpp"
#include "cwm/errors.hpp"
#include "cwm/walsh.hpp"

namespace cwm {

inline int gluing_slot_cap() { return 10; }

// All total gluings of `copies` labeled bubble copies: every permutation mu on
// the slot set, in lexicographic order, disconnected ones included and flagged.
inline void for_each_gluing(const Bubble& b, int copies,
                            const std::function<void(const ColoredGraph&, bool)>& fn) {
    validate_bubble(b);
    int n = copies * b.V;
    if (n > gluing_slot_cap())
        throw CapExceededError("gluing enumeration capped at " +
                               std::to_string(gluing_slot_cap()) + " slots");
    ColoredGraph g{b, copies, perm_identity(n)};
    do {
        fn(g, graph_connected(g));
    } while (std::next_permutation(g.mu.begin(), g.mu.end()));
}

// Open gluings too: every partial injection, free black slots marked -1.
inline void for_each_partial_gluing(const Bubble& b, int copies,
                                    const std::function<void(const ColoredGraph&, bool)>& fn) {
    validate_bubble(b);
    int n = copies * b.V;
    if (n > gluing_slot_cap())
        throw CapExceededError("gluing enumeration capped at " +
                               std::to_string(gluing_slot_cap()) + " slots");
    ColoredGraph g{b, copies, std::vector<int>(n, -1)};
    for (unsigned long defined = 0; defined < (1ul << n); ++defined) {
        std::vector<int> blacks, whites;
        for (int y = 0; y < n; ++y)
            if ((defined >> y) & 1) blacks.push_back(y);
        // images drawn from white subsets of the same size, all injections
        std::vector<int> image(blacks.size());
        std::function<void(int, unsigned long)> rec = [&](int k, unsigned long used) {
            if (k == (int)blacks.size()) {
                std::fill(g.mu.begin(), g.mu.end(), -1);
                for (int j = 0; j < (int)blacks.size(); ++j) g.mu[blacks[j]] = image[j];
                fn(g, graph_connected(g));
                return;
            }
            for (int x = 0; x < n; ++x) {
                if ((used >> x) & 1) continue;
                image[k] = x;
                rec(k + 1, used | (1ul << x));
            }
        };
        rec(0, 0);
    }
}

struct MaxFacesResult {
    int max_faces = -1;
    std::vector<std::vector<int>> argmax; // the mu vectors attaining it
    long long connected_count = 0;
};

enum class GluingClass { All, ProjectedTrees };

// Exact maximum of the face count over connected closed gluings, optionally
// restricted to gluings whose projected Walsh map (for the given pairing) is a
// tree. The permutation space is split lexicographically by the first image;
// block results merge associatively, so thread count never changes the answer.
inline MaxFacesResult max_faces(const Bubble& b, const Pairing& om, int copies,
                                GluingClass cls = GluingClass::All, int threads = 0) {
    validate_bubble(b);
    validate_pairing(b, om);
    int n = copies * b.V;
    if (n > gluing_slot_cap())
        throw CapExceededError("gluing enumeration capped at " +
                               std::to_string(gluing_slot_cap()) + " slots");
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    threads = std::max(1, std::min(threads, n));

    Perm t0_block(n); // blockwise tau0, for the projected-tree test
    for (int y = 0; y < n; ++y) t0_block[y] = (y / b.V) * b.V + om.tau0[y % b.V];

    auto run_block = [&](int first_image, MaxFacesResult& out) {
        ColoredGraph g{b, copies, perm_identity(n)};
        std::vector<int>& mu = g.mu;
        // permutations with mu[0] = first_image, lexicographic on the tail
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != first_image) rest.push_back(v);
        do {
            mu[0] = first_image;
            std::copy(rest.begin(), rest.end(), mu.begin() + 1);
            if (!graph_connected(g)) continue;
            ++out.connected_count;
            if (cls == GluingClass::ProjectedTrees) {
                // P(W) is a tree iff mu_pairs = mu o tau0 has exactly
                // n - copies + 1 cycles
                Perm mu_pairs(n);
                for (int y = 0; y < n; ++y) mu_pairs[y] = mu[t0_block[y]];
                if (perm_cycle_count(mu_pairs) != n - copies + 1) continue;
            }
            int f = graph_face_count(g);
            if (f > out.max_faces) {
                out.max_faces = f;
                out.argmax.clear();
            }
            if (f == out.max_faces) out.argmax.push_back(mu);
        } while (std::next_permutation(rest.begin(), rest.end()));
    };

    std::vector<MaxFacesResult> partial(n);
    if (threads == 1 || n == 1) {
        for (int v = 0; v < n; ++v) run_block(v, partial[v]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next_block{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int v = next_block++; v < n; v = next_block++) run_block(v, partial[v]);
            });
        for (auto& th : pool) th.join();
    }
    MaxFacesResult total;
    for (const auto& p : partial) {
        total.connected_count += p.connected_count;
        if (p.max_faces > total.max_faces) {
            total.max_faces = p.max_faces;
            total.argmax.clear();
        }
        if (p.max_faces == total.max_faces)
            total.argmax.insert(total.argmax.end(), p.argmax.begin(), p.argmax.end());
    }
    return total;
}

// ---- exhaustive map enumeration ------------------------------------------

// All connected edge-colored maps with up to max_edges edges, deduplicated by
// canonical form; then all ways of adding up to max_cilia cilia (at most one
// per vertex), deduplicated again. Deterministic order.
inline std::vector<Emap> enumerate_maps(int D, int max_edges, int max_cilia) {
    if (D > 8 || max_edges > 5) throw CapExceededError("map enumeration caps: D <= 8, E <= 5");

    std::vector<Emap> level;
    {
        Emap base;
        base.D = D;
        base.isolated = 1;
        level.push_back(base);
    }
    std::vector<Emap> closed = level; // E = 0 included
    std::set<std::vector<int>> seen;
    seen.insert(canon_trace(level[0]));

    auto corners = [](const Emap& m) {
        std::vector<int> cs;
        for (int h = 0; h < m.H(); ++h) cs.push_back(h);
        return cs;
    };

    for (int e = 1; e <= max_edges; ++e) {
        std::vector<Emap> next_level;
        std::set<std::vector<int>> level_seen;
        for (const Emap& m : level) {
            for (int color = 1; color <= D; ++color) {
                ColorSet cs = single_color(color);
                auto grown = [&](Emap nm) {
                    auto tr = canon_trace(nm);
                    if (level_seen.insert(tr).second) {
                        next_level.push_back(std::move(nm));
                        if (seen.insert(tr).second) closed.push_back(next_level.back());
                    }
                };
                int H = m.H();
                if (H == 0) {
                    // loop on the lone vertex, or an edge to a second vertex
                    grown(make_emap(D, 2, {{0, 1}}, {{0, 1, cs}}));
                    grown(make_emap(D, 2, {{0}, {1}}, {{0, 1, cs}}));
                    continue;
                }
                auto add = [&](int p1, int p2 /* -1 = new vertex */) {
                    Emap nm = m;
                    int h1 = nm.H(), h2 = h1 + 1;
                    nm.cset.insert(nm.cset.end(), {cs, cs});
                    nm.cil.insert(nm.cil.end(), {0, 0});
                    nm.sigma.insert(nm.sigma.end(), {-1, -1});
                    nm.alpha.insert(nm.alpha.end(), {-1, -1});
                    nm.alpha[h1] = h2;
                    nm.alpha[h2] = h1;
                    // insert h1 after p1
                    nm.sigma[h1] = nm.sigma[p1];
                    nm.sigma[p1] = h1;
                    if (p2 < 0) {
                        nm.sigma[h2] = h2;
                    } else {
                        nm.sigma[h2] = nm.sigma[p2];
                        nm.sigma[p2] = h2;
                    }
                    grown(std::move(nm));
                };
                for (int p1 : corners(m)) {
                    add(p1, -1);
                    for (int p2 : corners(m)) add(p1, p2);
                    // second end right after the first one's fresh position
                    {
                        Emap nm = m;
                        int h1 = nm.H(), h2 = h1 + 1;
                        nm.cset.insert(nm.cset.end(), {cs, cs});
                        nm.cil.insert(nm.cil.end(), {0, 0});
                        nm.sigma.insert(nm.sigma.end(), {-1, -1});
                        nm.alpha.insert(nm.alpha.end(), {-1, -1});
                        nm.alpha[h1] = h2;
                        nm.alpha[h2] = h1;
                        nm.sigma[h1] = h2;
                        nm.sigma[h2] = nm.sigma[p1];
                        nm.sigma[p1] = h1;
                        grown(std::move(nm));
                    }
                }
            }
        }
        level = std::move(next_level);
    }

    if (max_cilia == 0) return closed;

    // cilia insertion: pick distinct vertices and a corner on each
    std::vector<Emap> out;
    std::set<std::vector<int>> out_seen;
    for (const Emap& m : closed) {
        out.push_back(m);
        out_seen.insert(canon_trace(m));
    }
    std::vector<Emap> frontier = closed;
    for (int c = 1; c <= max_cilia; ++c) {
        std::vector<Emap> next;
        for (const Emap& m : frontier) {
            auto vs = map_vertices(m);
            int nv = (int)vs.size() + m.isolated;
            for (int v = 0; v < nv; ++v) {
                std::vector<int> spots;
                if (v < (int)vs.size()) {
                    bool has_cil = false;
                    for (int h : vs[v]) has_cil |= (bool)m.cil[h];
                    if (has_cil) continue;
                    spots = vs[v];
                } else {
                    spots = {-1}; // an isolated vertex
                }
                for (int after : spots) {
                    Emap nm = m;
                    int cil = nm.H();
                    nm.cset.push_back(0);
                    nm.cil.push_back(1);
                    nm.sigma.push_back(-1);
                    nm.alpha.push_back(cil);
                    nm.alpha[cil] = cil;
                    if (after < 0) {
                        nm.sigma[cil] = cil;
                        --nm.isolated;
                    } else {
                        nm.sigma[cil] = nm.sigma[after];
                        nm.sigma[after] = cil;
                    }
                    auto tr = canon_trace(nm);
                    if (out_seen.insert(tr).second) {
                        out.push_back(nm);
                        next.push_back(std::move(nm));
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// All labeled connected bubbles with the given D and V (no isomorphism quotient).
inline std::vector<Bubble> all_connected_bubbles(int D, int V) {
    std::vector<Perm> perms;
    Perm p = perm_identity(V);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::vector<Bubble> out;
    std::vector<int> idx(D, 0);
    while (true) {
        Bubble b{D, V, {}};
        for (int i = 0; i < D; ++i) b.tau.push_back(perms[idx[i]]);
        if (bubble_connected(b)) out.push_back(b);
        int k = D - 1;
        while (k >= 0 && idx[k] + 1 == (int)perms.size()) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
    }
    return out;
}

} // namespace cwm
