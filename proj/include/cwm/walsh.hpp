#pragma once

#include <memory>
#include <vector>

#include "cwm/colored_graph.hpp"
#include "cwm/construction.hpp"
#include "cwm/emap.hpp"
#include "cwm/errors.hpp"

namespace cwm {

// A stuffed Walsh map: `mu` on pair-frame slots whose cycles are the black
// vertices (clockwise slot order), plus one template copy per bubble.
// mu[y] = x means the corner after slot y carries the color-0 edge into slot x;
// mu[y] = -1 ends an open chain there, putting a cilium on that corner.
// Copies may use distinct templates (all sharing D and V); the plain bijection
// uses a single one.
struct StuffedWalshMap {
    std::vector<std::shared_ptr<const MapTemplate>> tpl; // one per copy
    std::vector<int> mu;

    int copies() const { return (int)tpl.size(); }
    int V() const { return tpl[0]->pairs(); }
    int D() const { return tpl[0]->bubble.D; }
    int slots() const { return copies() * V(); }
    bool closed() const {
        for (int v : mu)
            if (v < 0) return false;
        return true;
    }
    bool single_template() const {
        for (const auto& t : tpl)
            if (t != tpl[0]) return false;
        return true;
    }
    const MapTemplate& tmpl() const { return *tpl[0]; }
};

inline StuffedWalshMap to_walsh(const ColoredGraph& g, std::shared_ptr<const MapTemplate> tmpl) {
    if (!(g.bubble == tmpl->bubble))
        throw LabelMismatchError("graph bubble differs from the template's bubble");
    validate_graph(g);
    int V = g.bubble.V;
    StuffedWalshMap w;
    w.tpl.assign(g.copies, tmpl);
    w.mu.assign(g.slots(), -1);
    const Perm& t0 = tmpl->om.tau0;
    for (int y = 0; y < g.slots(); ++y) {
        int raw_black = g.block_base(y) + t0[y % V];
        w.mu[y] = g.mu[raw_black];
    }
    return w;
}

inline ColoredGraph from_walsh(const StuffedWalshMap& w) {
    internal_check(w.single_template(), "from_walsh needs a single-bubble map");
    const MapTemplate& t = w.tmpl();
    int V = t.bubble.V;
    ColoredGraph g;
    g.bubble = t.bubble;
    g.copies = w.copies();
    g.mu.assign(w.slots(), -1);
    for (int y = 0; y < w.slots(); ++y) {
        int raw_black = (y / V) * V + t.om.tau0[y % V];
        g.mu[raw_black] = w.mu[y];
    }
    return g;
}

// Faces computed directly in the pair frame; for a single template this agrees
// with graph_faces(from_walsh(w)) walk for walk, and it is also defined for
// mixed-template maps.
inline FaceSet walsh_graph_faces(const StuffedWalshMap& w) {
    int n = w.slots(), V = w.V(), D = w.D();
    FaceSet fs;
    fs.closed.resize(D);
    fs.broken.resize(D);
    std::vector<char> image(n, 0);
    for (int v : w.mu)
        if (v >= 0) image[v] = 1;
    for (int i = 0; i < D; ++i) {
        std::vector<char> done(n, 0);
        auto step_black = [&](int x) { return (x / V) * V + w.tpl[x / V]->nu[i][x % V]; };
        for (int x = 0; x < n; ++x) {
            if (image[x]) continue; // broken chains start at free whites
            std::vector<int> chain;
            int wslot = x;
            while (true) {
                chain.push_back(wslot);
                done[wslot] = 1;
                int y = step_black(wslot);
                chain.push_back(n + y);
                if (w.mu[y] < 0) break;
                wslot = w.mu[y];
            }
            fs.broken[i].push_back(std::move(chain));
        }
        for (int x = 0; x < n; ++x) {
            if (done[x]) continue;
            std::vector<int> cyc;
            int wslot = x;
            do {
                cyc.push_back(wslot);
                done[wslot] = 1;
                int y = step_black(wslot);
                cyc.push_back(n + y);
                wslot = w.mu[y];
            } while (wslot != x);
            fs.closed[i].push_back(std::move(cyc));
        }
    }
    return fs;
}

// The fully glued (alpha, sigma) map: b template copies with cilia turned into
// attachment half-edges, black vertices from the cycles of mu, half-edges glued
// without twist. half-edge layout: copy k's template labels at k*Ht, then one
// slot half per pair slot, then one cilium per open chain.
struct GluedMap {
    Emap map;
    std::vector<int> slot_half;          // per pair slot
    std::vector<int> black_of_slot;      // black vertex id per slot
    int black_count = 0;
    std::vector<char> half_on_black;     // per half-edge
    std::vector<char> black_open;        // per black vertex: carries a cilium
};

inline GluedMap glue(const StuffedWalshMap& w) {
    for (const auto& t : w.tpl)
        for (int i = 1; i <= t->bubble.D; ++i)
            if (detail::stats_for(t->map, detail::keep_color(t->map, i)).l != 0)
                throw UnreducedTemplateError();

    int n = w.slots(), V = w.V(), D = w.D();
    GluedMap gm;
    Emap& m = gm.map;
    m.D = D;

    // template copies
    std::vector<int> base(w.copies() + 1, 0);
    for (int k = 0; k < w.copies(); ++k) base[k + 1] = base[k] + w.tpl[k]->map.H();
    int H = base[w.copies()];
    gm.slot_half.assign(n, -1);
    for (int s = 0; s < n; ++s) gm.slot_half[s] = H + s;
    H += n;
    std::vector<int> chain_cilium; // one label per open chain, appended below

    m.cset.assign(H, 0);
    m.cil.assign(H, 0);
    m.sigma.assign(H, -1);
    m.alpha.assign(H, -1);
    for (int k = 0; k < w.copies(); ++k) {
        const MapTemplate& t = *w.tpl[k];
        const Emap& tm = t.map;
        for (int h = 0; h < tm.H(); ++h) {
            m.cset[base[k] + h] = tm.cset[h];
            m.sigma[base[k] + h] = base[k] + tm.sigma[h];
            m.alpha[base[k] + h] = base[k] + tm.alpha[h];
        }
        m.isolated += tm.isolated;
        for (int a = 0; a < V; ++a) {
            int att = base[k] + t.cilium_of_pair[a];
            int slot = gm.slot_half[k * V + a];
            m.cset[att] = m.cset[slot] = t.attach[a];
            m.alpha[att] = slot;
            m.alpha[slot] = att;
        }
    }

    // black vertices: cycles of mu; open chains get a cilium after their last slot
    gm.black_of_slot.assign(n, -1);
    std::vector<char> image(n, 0), seen(n, 0);
    for (int v : w.mu)
        if (v >= 0) image[v] = 1;
    auto emit_vertex = [&](const std::vector<int>& slots_in_order, bool open) {
        int b = gm.black_count++;
        gm.black_open.push_back(open);
        std::vector<int> ring;
        for (int s : slots_in_order) {
            gm.black_of_slot[s] = b;
            ring.push_back(gm.slot_half[s]);
        }
        if (open) {
            int cil = (int)m.cset.size();
            m.cset.push_back(0);
            m.cil.push_back(1);
            m.sigma.push_back(-1);
            m.alpha.push_back(-1);
            m.alpha[cil] = cil;
            ring.push_back(cil);
            chain_cilium.push_back(cil);
        }
        for (size_t j = 0; j < ring.size(); ++j)
            m.sigma[ring[j]] = ring[(j + 1) % ring.size()];
    };
    for (int s = 0; s < n; ++s) {
        if (image[s] || seen[s]) continue; // open chain head
        std::vector<int> chain;
        int cur = s;
        while (true) {
            seen[cur] = 1;
            chain.push_back(cur);
            if (w.mu[cur] < 0) break;
            cur = w.mu[cur];
        }
        emit_vertex(chain, true);
    }
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        int cur = s;
        do {
            seen[cur] = 1;
            cyc.push_back(cur);
            cur = w.mu[cur];
        } while (cur != s);
        emit_vertex(cyc, false);
    }

    gm.half_on_black.assign(m.H(), 0);
    for (int s = 0; s < n; ++s) gm.half_on_black[gm.slot_half[s]] = 1;
    for (int c : chain_cilium) gm.half_on_black[c] = 1;
    validate_map(m, /*require_connected=*/false);
    return gm;
}

// Per-color faces of the stuffed map that run along at least one black vertex:
// these are exactly the faces of the underlying colored graph.
struct WalshFaces {
    std::vector<int> closed_per_color;
    std::vector<int> broken_per_color;
    int total_closed = 0;
};

inline WalshFaces walsh_faces(const StuffedWalshMap& w) {
    GluedMap gm = glue(w);
    WalshFaces wf;
    wf.closed_per_color.assign(w.D(), 0);
    wf.broken_per_color.assign(w.D(), 0);
    for (int i = 1; i <= w.D(); ++i) {
        ColorFaces cf = map_faces(gm.map, i);
        for (const auto& f : cf.closed) {
            bool black = false;
            for (int h : f) black |= (bool)gm.half_on_black[h];
            if (black) ++wf.closed_per_color[i - 1];
        }
        // every broken face holds a cilium, and cilia sit on black vertices
        wf.broken_per_color[i - 1] = (int)cf.broken.size();
        // an unciliated black vertex with no color-i slot is an isolated
        // vertex of W^(i) and carries one face
        std::vector<char> carries(gm.black_count, 0);
        for (int s = 0; s < w.slots(); ++s)
            if (has_color(w.tpl[s / w.V()]->attach[s % w.V()], i))
                carries[gm.black_of_slot[s]] = 1;
        for (int b = 0; b < gm.black_count; ++b)
            if (!carries[b] && !gm.black_open[b]) ++wf.closed_per_color[i - 1];
        wf.total_closed += wf.closed_per_color[i - 1];
    }
    return wf;
}

// Graph-level projection P(W): whites = copies, blacks = cycles of mu, one edge
// per slot. Only the underlying multigraph is retained.
struct ProjectedWalshMap {
    int whites = 0, blacks = 0, edges = 0, components = 0;
    std::vector<int> black_of_slot;
    std::vector<ColorSet> edge_set; // per slot

    int circuit_rank() const { return edges - (whites + blacks) + components; }
    bool is_tree() const { return components == 1 && circuit_rank() == 0; }
};

inline ProjectedWalshMap project(const StuffedWalshMap& w) {
    GluedMap gm = glue(w);
    ProjectedWalshMap p;
    p.whites = w.copies();
    p.blacks = gm.black_count;
    p.edges = w.slots();
    p.black_of_slot = gm.black_of_slot;
    p.edge_set.resize(w.slots());
    std::vector<int> parent(p.whites + p.blacks);
    for (int i = 0; i < (int)parent.size(); ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int s = 0; s < w.slots(); ++s) {
        p.edge_set[s] = w.tpl[s / w.V()]->attach[s % w.V()];
        int a = find(s / w.V()), b = find(p.whites + gm.black_of_slot[s]);
        if (a != b) parent[a] = b;
    }
    std::vector<char> root_seen(parent.size(), 0);
    for (int i = 0; i < (int)parent.size(); ++i) {
        int r = find(i);
        if (!root_seen[r]) {
            root_seen[r] = 1;
            ++p.components;
        }
    }
    return p;
}

// Monochromatic circuit ranks and genera of the glued map plus the projected
// circuit rank L(W).
struct WalshMonoStats {
    MapStats map_stats;
    int L = 0;
};

inline WalshMonoStats mono_stats(const StuffedWalshMap& w) {
    GluedMap gm = glue(w);
    WalshMonoStats s;
    s.map_stats = stats(gm.map);
    s.L = project(w).circuit_rank();
    return s;
}

} // namespace cwm
