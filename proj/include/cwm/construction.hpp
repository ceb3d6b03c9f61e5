#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "cwm/boundary.hpp"
#include "cwm/bubble.hpp"
#include "cwm/emap.hpp"
#include "cwm/errors.hpp"
#include "cwm/pairing.hpp"

namespace cwm {

// A ciliated map together with the (bubble, pairing) it was built from.
// cilium_of_pair[x] is the half-edge label of pair x's cilium; attach[x] the
// color set carried by its attachment half-edge when the map is used as a
// stuffing template.
struct MapTemplate {
    Bubble bubble;
    Pairing om;
    std::vector<Perm> nu; // pair-frame permutations
    Emap map;
    std::vector<int> cilium_of_pair;
    std::vector<ColorSet> attach;
    // per color, per pair: labels of the outgoing/incoming half-edges of
    // M(B, Omega), or -1; set by build_map, cleared by the reductions
    std::vector<std::vector<int>> out_half, in_half;

    int pairs() const { return bubble.V; }
};

namespace detail {

inline void check_boundary_unchanged(const MapTemplate& t, const char* what) {
    BoundaryResult br = boundary(t.map);
    bool same = (int)br.cilium_of_pair.size() == t.pairs();
    for (int i = 0; same && i < t.bubble.D; ++i) same = br.bubble.tau[i] == t.nu[i];
    internal_check(same, what);
}

// Drop the labels marked dead and compact the rest, preserving order. Vertices
// whose labels all die disappear.
inline void compact_map(Emap& m, std::vector<int>& cilium_of_pair, const std::vector<char>& dead) {
    int H = m.H();
    std::vector<int> newid(H, -1);
    int n = 0;
    for (int h = 0; h < H; ++h)
        if (!dead[h]) newid[h] = n++;
    Emap r;
    r.D = m.D;
    r.isolated = m.isolated;
    r.cset.resize(n);
    r.cil.resize(n);
    r.sigma.resize(n);
    r.alpha.resize(n);
    Perm live_sigma = restrict_perm(m.sigma, [&] {
        std::vector<char> keep(H);
        for (int h = 0; h < H; ++h) keep[h] = !dead[h];
        return keep;
    }());
    for (int h = 0; h < H; ++h) {
        if (dead[h]) continue;
        r.cset[newid[h]] = m.cset[h];
        r.cil[newid[h]] = m.cil[h];
        r.sigma[newid[h]] = newid[live_sigma[h]];
        internal_check(!dead[m.alpha[h]], "compaction would orphan a half-edge");
        r.alpha[newid[h]] = newid[m.alpha[h]];
    }
    for (int& c : cilium_of_pair) c = newid[c];
    m = std::move(r);
}

} // namespace detail

// The canonical map M(B, Omega): one ciliated vertex per pair; for each color i
// and each pair x with nu_i(x) != x, an edge of color i from x to nu_i(x).
// Clockwise order at each vertex: cilium, outgoing half-edges by ascending
// color, then incoming half-edges by ascending color.
inline MapTemplate build_map(const Bubble& b, const Pairing& om) {
    validate_bubble(b);
    validate_pairing(b, om);
    MapTemplate t;
    t.bubble = b;
    t.om = om;
    t.nu = pair_frame(b, om);
    t.attach = attachment_color_sets(t.nu);

    int V = b.V;
    std::vector<std::vector<int>> out_half(b.D, std::vector<int>(V, -1));
    std::vector<std::vector<int>> in_half(b.D, std::vector<int>(V, -1));
    int next = V; // labels 0..V-1 are the cilia, pair x = label x
    for (int i = 0; i < b.D; ++i)
        for (int x = 0; x < V; ++x)
            if (t.nu[i][x] != x) {
                out_half[i][x] = next++;
                in_half[i][x] = next++;
            }

    std::vector<std::vector<int>> vertices(V);
    for (int x = 0; x < V; ++x) {
        vertices[x].push_back(x);
        for (int i = 0; i < b.D; ++i)
            if (out_half[i][x] >= 0) vertices[x].push_back(out_half[i][x]);
        for (int i = 0; i < b.D; ++i)
            if (in_half[i][x] >= 0) vertices[x].push_back(in_half[i][x]);
    }
    std::vector<std::tuple<int, int, ColorSet>> edges;
    for (int i = 0; i < b.D; ++i)
        for (int x = 0; x < V; ++x)
            if (out_half[i][x] >= 0)
                edges.emplace_back(out_half[i][x], in_half[i][t.nu[i][x]], single_color(i + 1));
    std::vector<int> cilia(V);
    std::iota(cilia.begin(), cilia.end(), 0);

    t.map = make_emap(b.D, next, vertices, edges, cilia);
    t.cilium_of_pair = cilia;
    t.out_half = std::move(out_half);
    t.in_half = std::move(in_half);
    validate_map(t.map);
    detail::check_boundary_unchanged(t, "build_map produced a wrong boundary");
    return t;
}

enum class ReduceMethod { Star, EdgeRemoval };

// Turn every monochromatic cycle of M(B, Omega) into a forest, either by
// replacing the cycle with a star on a new unciliated center (cycle order
// preserved around the center, the spoke taking the outgoing half-edge's
// position) or by deleting the outgoing edge of the smallest-labeled pair.
inline MapTemplate reduce(const MapTemplate& built, ReduceMethod method = ReduceMethod::Star) {
    internal_check(!built.out_half.empty(), "reduce expects a map fresh from build_map");
    MapTemplate t = built;
    Emap& m = t.map;
    std::vector<char> dead(m.H(), 0);

    for (int i = 0; i < t.bubble.D; ++i) {
        std::vector<char> seen(t.pairs(), 0);
        for (int x0 = 0; x0 < t.pairs(); ++x0) {
            if (seen[x0] || t.nu[i][x0] == x0) continue;
            std::vector<int> cycle;
            for (int x = x0; !seen[x]; x = t.nu[i][x]) {
                seen[x] = 1;
                cycle.push_back(x);
            }
            std::vector<int> outs(cycle.size()), ins(cycle.size());
            for (size_t k = 0; k < cycle.size(); ++k) {
                outs[k] = t.out_half[i][cycle[k]];
                ins[k] = t.in_half[i][cycle[k]];
                internal_check(outs[k] >= 0 && ins[k] >= 0, "reduce: missing half-edge");
            }

            if (method == ReduceMethod::EdgeRemoval) {
                size_t kmin = 0;
                for (size_t k = 1; k < cycle.size(); ++k)
                    if (cycle[k] < cycle[kmin]) kmin = k;
                dead[outs[kmin]] = 1;
                dead[m.alpha[outs[kmin]]] = 1;
            } else {
                // star: keep each out half as the spoke, drop the in halves,
                // wire spokes to a fresh center vertex in cycle order
                int base = m.H();
                for (size_t k = 0; k < cycle.size(); ++k) {
                    m.cset.push_back(single_color(i + 1));
                    m.cil.push_back(0);
                    m.sigma.push_back(-1);
                    m.alpha.push_back(-1);
                    dead.push_back(0);
                }
                for (size_t k = 0; k < cycle.size(); ++k) {
                    int hc = base + (int)k;
                    m.sigma[hc] = base + (int)((k + 1) % cycle.size());
                    m.alpha[hc] = outs[k];
                    m.alpha[outs[k]] = hc;
                    dead[ins[k]] = 1;
                }
            }
        }
    }

    detail::compact_map(m, t.cilium_of_pair, dead);
    t.out_half.clear();
    t.in_half.clear();
    validate_map(m);
    for (int i = 1; i <= t.bubble.D; ++i) {
        MonoStats ms = detail::stats_for(m, detail::keep_color(m, i));
        internal_check(ms.l == 0, "reduce left a monochromatic cycle");
    }
    detail::check_boundary_unchanged(t, "reduce changed the boundary");
    return t;
}

// Conservative template shrinking: merge color-disjoint parallel edges into one
// edge carrying the union, and splice out unciliated degree-2 vertices whose
// two half-edges carry the same set. A rewrite is kept only if the extracted
// boundary is bit-identical; otherwise it is rolled back.
inline MapTemplate simplify(const MapTemplate& reduced) {
    MapTemplate t = reduced;
    bool changed = true;
    while (changed) {
        changed = false;
        Emap& m = t.map;
        auto vid = vertex_of_half_edge(m);

        // parallel merge
        std::vector<std::pair<int, int>> edge_list;
        for (int h = 0; h < m.H(); ++h)
            if (!m.cil[h] && h < m.alpha[h]) edge_list.emplace_back(h, m.alpha[h]);
        for (size_t a = 0; a < edge_list.size() && !changed; ++a) {
            for (size_t b = a + 1; b < edge_list.size() && !changed; ++b) {
                auto [h1, h2] = edge_list[a];
                auto [g1, g2] = edge_list[b];
                if (m.cset[h1] & m.cset[g1]) continue;
                std::pair<int, int> ea{std::min(vid[h1], vid[h2]), std::max(vid[h1], vid[h2])};
                std::pair<int, int> eb{std::min(vid[g1], vid[g2]), std::max(vid[g1], vid[g2])};
                if (ea != eb) continue;
                MapTemplate trial = t;
                ColorSet merged = ColorSet(m.cset[h1] | m.cset[g1]);
                trial.map.cset[h1] = trial.map.cset[h2] = merged;
                std::vector<char> dead(trial.map.H(), 0);
                dead[g1] = dead[g2] = 1;
                detail::compact_map(trial.map, trial.cilium_of_pair, dead);
                try {
                    validate_map(trial.map);
                    detail::check_boundary_unchanged(trial, "x");
                } catch (const std::exception&) {
                    continue;
                }
                t = std::move(trial);
                changed = true;
            }
        }
        if (changed) continue;

        // degree-2 chain collapse
        for (const auto& v : map_vertices(m)) {
            if (v.size() != 2) continue;
            int ha = v[0], hb = v[1];
            if (m.cil[ha] || m.cil[hb]) continue;
            if (m.alpha[ha] == hb) continue; // a free-standing loop, leave it
            if (m.cset[ha] != m.cset[hb]) continue;
            MapTemplate trial = t;
            int u = trial.map.alpha[ha], w = trial.map.alpha[hb];
            trial.map.alpha[u] = w;
            trial.map.alpha[w] = u;
            std::vector<char> dead(trial.map.H(), 0);
            dead[ha] = dead[hb] = 1;
            detail::compact_map(trial.map, trial.cilium_of_pair, dead);
            try {
                validate_map(trial.map);
                detail::check_boundary_unchanged(trial, "x");
            } catch (const std::exception&) {
                continue;
            }
            t = std::move(trial);
            changed = true;
            break;
        }
    }
    for (int i = 1; i <= t.bubble.D; ++i) {
        MonoStats ms = detail::stats_for(t.map, detail::keep_color(t.map, i));
        internal_check(ms.l == 0, "simplify broke the forest property");
    }
    return t;
}

// A template supplied directly (the star-shaped ones of the worked families).
// The boundary guard validates it against (bubble, pairing).
inline MapTemplate custom_template(const Bubble& b, const Pairing& om, Emap map,
                                   std::vector<int> cilium_of_pair) {
    MapTemplate t;
    t.bubble = b;
    t.om = om;
    t.nu = pair_frame(b, om);
    t.attach = attachment_color_sets(t.nu);
    t.map = std::move(map);
    t.cilium_of_pair = std::move(cilium_of_pair);
    validate_map(t.map);
    for (int i = 1; i <= b.D; ++i) {
        MonoStats ms = detail::stats_for(t.map, detail::keep_color(t.map, i));
        internal_check(ms.l == 0, "custom template has a monochromatic cycle");
    }
    detail::check_boundary_unchanged(t, "custom template has the wrong boundary");
    return t;
}

} // namespace cwm
