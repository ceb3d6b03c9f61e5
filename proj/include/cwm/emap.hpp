#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cwm/errors.hpp"
#include "cwm/perm.hpp"

namespace cwm {

// Color sets are bitmasks with color i on bit i-1.
using ColorSet = uint16_t;

inline ColorSet single_color(int color1) { return ColorSet(1u << (color1 - 1)); }
inline bool has_color(ColorSet s, int color1) { return (s >> (color1 - 1)) & 1u; }
inline int colorset_size(ColorSet s) { return __builtin_popcount(s); }
inline std::string colorset_str(ColorSet s, int D) {
    std::string r;
    for (int c = 1; c <= D; ++c)
        if (has_color(s, c)) {
            if (!r.empty()) r += '+';
            r += std::to_string(c);
        }
    return r.empty() ? "0" : r;
}

// A ciliated edge-colored combinatorial map. Half-edges are 0-based labels;
// sigma's cycles are the vertices in clockwise order, alpha is a
// color-preserving involution pairing half-edges into edges and fixing exactly
// the cilia. Edges may carry color subsets of [D] (singletons for plain maps);
// cilia count as carrying every color. Vertices stripped of all half-edges are
// tracked by the `isolated` count.
struct Emap {
    int D = 0;
    std::vector<ColorSet> cset;
    std::vector<char> cil;
    Perm sigma, alpha;
    int isolated = 0;

    int H() const { return (int)cset.size(); }
    int cilia_count() const {
        int p = 0;
        for (char c : cil) p += c;
        return p;
    }
    int edge_count() const { return (H() - cilia_count()) / 2; }
    bool is_closed() const { return cilia_count() == 0; }
    bool keeps(int h, int color1) const { return cil[h] || has_color(cset[h], color1); }
};

// Convenience constructor from explicit vertex rotations and edges.
// `vertices`: sigma cycles (clockwise); `edges`: (h1, h2, colorset) triples;
// `cilia`: labels that are fixed points of alpha.
inline Emap make_emap(int D, int H, const std::vector<std::vector<int>>& vertices,
                      const std::vector<std::tuple<int, int, ColorSet>>& edges,
                      const std::vector<int>& cilia = {}, int isolated = 0) {
    Emap m;
    m.D = D;
    m.cset.assign(H, 0);
    m.cil.assign(H, 0);
    m.sigma = perm_from_cycles(H, vertices);
    m.alpha = perm_identity(H);
    m.isolated = isolated;
    for (const auto& [a, b, cs] : edges) {
        m.alpha[a] = b;
        m.alpha[b] = a;
        m.cset[a] = m.cset[b] = cs;
    }
    for (int c : cilia) m.cil[c] = 1;
    return m;
}

inline std::vector<std::vector<int>> map_vertices(const Emap& m) { return perm_cycles(m.sigma); }

inline std::vector<int> vertex_of_half_edge(const Emap& m) {
    std::vector<int> vid(m.H(), -1);
    auto vs = map_vertices(m);
    for (int v = 0; v < (int)vs.size(); ++v)
        for (int h : vs[v]) vid[h] = v;
    return vid;
}

inline bool map_connected(const Emap& m) {
    if (m.H() == 0) return m.isolated <= 1;
    if (m.isolated > 0) return false;
    std::vector<char> seen(m.H(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int n = 1;
    while (!stack.empty()) {
        int h = stack.back();
        stack.pop_back();
        for (int nb : {m.sigma[h], m.alpha[h]})
            if (!seen[nb]) {
                seen[nb] = 1;
                ++n;
                stack.push_back(nb);
            }
    }
    return n == m.H();
}

inline void validate_map(const Emap& m, bool require_connected = true) {
    if (m.D < 1) throw PreconditionError("map needs D >= 1");
    int H = m.H();
    if ((int)m.cil.size() != H || (int)m.sigma.size() != H || (int)m.alpha.size() != H)
        throw PreconditionError("map arrays have inconsistent sizes");
    if (!is_permutation(m.sigma) || !is_permutation(m.alpha))
        throw PreconditionError("sigma/alpha are not permutations");
    for (int h = 0; h < H; ++h) {
        if (m.alpha[m.alpha[h]] != h) throw PreconditionError("alpha is not an involution");
        if ((m.alpha[h] == h) != (bool)m.cil[h])
            throw PreconditionError("alpha must fix exactly the cilia");
        if (!m.cil[h] && m.cset[m.alpha[h]] != m.cset[h])
            throw PreconditionError("alpha does not preserve colors");
        if (!m.cil[h] && (m.cset[h] == 0 || (m.cset[h] >> m.D) != 0))
            throw PreconditionError("half-edge color set out of range");
    }
    for (const auto& v : map_vertices(m)) {
        int c = 0;
        for (int h : v) c += m.cil[h];
        if (c > 1) throw PreconditionError("at most one cilium per vertex");
    }
    if (require_connected && !map_connected(m)) throw DisconnectedError("map is disconnected");
}

namespace detail {

// Restriction of sigma to the kept labels: next kept label along the cycle.
inline Perm restrict_perm(const Perm& p, const std::vector<char>& keep) {
    Perm r(p.size(), -1);
    for (int h = 0; h < (int)p.size(); ++h) {
        if (!keep[h]) continue;
        int j = p[h];
        while (!keep[j]) j = p[j];
        r[h] = j;
    }
    return r;
}

// Cycles of h -> alpha(sigma_restricted(h)) over kept labels.
inline std::vector<std::vector<int>> face_cycles(const Emap& m, const std::vector<char>& keep) {
    Perm sr = restrict_perm(m.sigma, keep);
    std::vector<std::vector<int>> cycles;
    std::vector<char> done(m.H(), 0);
    for (int h = 0; h < m.H(); ++h) {
        if (!keep[h] || done[h]) continue;
        std::vector<int> cyc;
        int j = h;
        do {
            done[j] = 1;
            cyc.push_back(j);
            j = m.alpha[sr[j]];
        } while (j != h);
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

inline std::vector<char> keep_color(const Emap& m, int color1) {
    std::vector<char> keep(m.H(), 0);
    for (int h = 0; h < m.H(); ++h) keep[h] = m.keeps(h, color1);
    return keep;
}

inline std::vector<char> keep_all(const Emap& m) { return std::vector<char>(m.H(), 1); }

inline std::vector<char> drop_cilia(const Emap& m, std::vector<char> keep) {
    for (int h = 0; h < m.H(); ++h)
        if (m.cil[h]) keep[h] = 0;
    return keep;
}

} // namespace detail

// The monochromatic submap M^(i): color-i half-edges plus all cilia, isolated
// vertices retained. Labels are compacted; `back_labels[h']` is the original label.
inline Emap mono_submap(const Emap& m, int color1, std::vector<int>* back_labels = nullptr) {
    auto keep = detail::keep_color(m, color1);
    std::vector<int> newid(m.H(), -1), back;
    for (int h = 0; h < m.H(); ++h)
        if (keep[h]) {
            newid[h] = (int)back.size();
            back.push_back(h);
        }
    Emap r;
    r.D = m.D;
    r.isolated = m.isolated;
    r.cset.resize(back.size());
    r.cil.resize(back.size());
    r.sigma.resize(back.size());
    r.alpha.resize(back.size());
    Perm sr = detail::restrict_perm(m.sigma, keep);
    for (int h2 = 0; h2 < (int)back.size(); ++h2) {
        int h = back[h2];
        r.cset[h2] = m.cset[h];
        r.cil[h2] = m.cil[h];
        r.sigma[h2] = newid[sr[h]];
        r.alpha[h2] = newid[m.alpha[h]];
    }
    for (const auto& v : map_vertices(m)) {
        bool kept = false;
        for (int h : v) kept |= (bool)keep[h];
        if (!kept) ++r.isolated;
    }
    if (back_labels) *back_labels = std::move(back);
    return r;
}

// Faces of color i: closed faces are the cilium-free cycles of alpha^(i) sigma^(i);
// a cycle with q cilia splits into q broken faces, each running from one cilium
// to the next in cycle order.
struct ColorFaces {
    std::vector<std::vector<int>> closed;
    std::vector<std::vector<int>> broken; // begins at a cilium, ends before the next one
};

inline ColorFaces map_faces(const Emap& m, int color1) {
    ColorFaces cf;
    for (auto& cyc : detail::face_cycles(m, detail::keep_color(m, color1))) {
        std::vector<int> cil_pos;
        for (int k = 0; k < (int)cyc.size(); ++k)
            if (m.cil[cyc[k]]) cil_pos.push_back(k);
        if (cil_pos.empty()) {
            cf.closed.push_back(std::move(cyc));
            continue;
        }
        int q = (int)cil_pos.size(), n = (int)cyc.size();
        for (int s = 0; s < q; ++s) {
            std::vector<int> seg;
            int from = cil_pos[s], to = cil_pos[(s + 1) % q];
            int k = from;
            do {
                seg.push_back(cyc[k]);
                k = (k + 1) % n;
            } while (k != to);
            cf.broken.push_back(std::move(seg));
        }
    }
    return cf;
}

// Count of honest (unbroken) faces of the ciliated map; this is the F entering
// the map power delta. A vertex with no color-i half-edge and no cilium is an
// isolated vertex of M^(i) and carries one face.
inline int closed_color_face_count(const Emap& m) {
    int f = m.isolated * m.D;
    auto vs = map_vertices(m);
    for (int i = 1; i <= m.D; ++i) {
        f += (int)map_faces(m, i).closed.size();
        for (const auto& v : vs) {
            bool kept = false;
            for (int h : v) kept |= m.keeps(h, i);
            if (!kept) ++f;
        }
    }
    return f;
}

struct MonoStats {
    int E = 0, V = 0, F = 0, k = 0, g = 0, l = 0;
};

struct MapStats {
    MonoStats map;                  // all colors as a single map (closure faces)
    std::vector<MonoStats> color;   // per monochromatic submap
    int color_faces = 0;            // sum of per-color closure faces
};

namespace detail {

// Euler bookkeeping on the closure (cilia removed, corners merged) of the kept
// part of the map. Genus is summed over connected components.
inline MonoStats stats_for(const Emap& m, const std::vector<char>& keep_with_cilia) {
    MonoStats s;
    auto keep = drop_cilia(m, keep_with_cilia);
    // vertices: sigma cycles meeting the kept-with-cilia set, plus stripped ones
    auto vs = map_vertices(m);
    std::vector<int> vid = vertex_of_half_edge(m);
    int nv = (int)vs.size();
    // every original vertex persists in every submap, possibly isolated
    s.V = m.isolated + nv;
    for (int h = 0; h < m.H(); ++h)
        if (keep[h] && h < m.alpha[h]) ++s.E;

    // components over vertices joined by kept edges
    std::vector<int> parent(nv);
    for (int v = 0; v < nv; ++v) parent[v] = v;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int h = 0; h < m.H(); ++h)
        if (keep[h]) parent[find(vid[h])] = find(vid[m.alpha[h]]);

    auto faces = face_cycles(m, keep);
    s.F = (int)faces.size();

    // per-component Euler relation; empty vertices are spheres on their own
    std::vector<int> compE(nv, 0), compV(nv, 0), compF(nv, 0);
    std::vector<char> seen_comp(nv, 0);
    for (int h = 0; h < m.H(); ++h)
        if (keep[h] && h < m.alpha[h]) ++compE[find(vid[h])];
    for (int v = 0; v < nv; ++v) {
        bool has_kept_edge = false;
        for (int h : vs[v]) has_kept_edge |= (bool)keep[h];
        if (has_kept_edge) ++compV[find(v)];
    }
    for (const auto& f : faces) ++compF[find(vid[f[0]])];
    int isolated_vertices = m.isolated;
    for (int v = 0; v < nv; ++v) {
        bool has_kept_edge = false;
        for (int h : vs[v]) has_kept_edge |= (bool)keep[h];
        if (!has_kept_edge) ++isolated_vertices;
    }
    s.k = isolated_vertices;
    s.F += isolated_vertices;
    for (int v = 0; v < nv; ++v) {
        int r = find(v);
        if (seen_comp[r] || compV[r] == 0) continue;
        seen_comp[r] = 1;
        ++s.k;
        int chi = compV[r] - compE[r] + compF[r];
        internal_check(chi % 2 == 0 && chi <= 2, "odd Euler characteristic: corrupt map");
        s.g += (2 - chi) / 2;
    }
    s.l = s.E - s.V + s.k;
    internal_check(s.l >= 0, "negative circuit rank");
    return s;
}

} // namespace detail

inline MapStats stats(const Emap& m) {
    MapStats st;
    st.map = detail::stats_for(m, detail::keep_all(m));
    st.color.resize(m.D);
    for (int i = 1; i <= m.D; ++i) {
        st.color[i - 1] = detail::stats_for(m, detail::keep_color(m, i));
        st.color_faces += st.color[i - 1].F;
    }
    return st;
}

// delta(M) = F(M) - (D-1) E(M), with F counting unbroken faces of every color.
// For closed maps the identity delta = D(1-l) + 2 sum_i (l_i - g_i) is asserted.
inline int power(const Emap& m) {
    if (!map_connected(m)) throw PreconditionError("power needs a connected map");
    int delta = closed_color_face_count(m) - (m.D - 1) * m.edge_count();
    if (m.is_closed()) {
        MapStats st = stats(m);
        int rhs = m.D * (1 - st.map.l);
        for (const auto& c : st.color) rhs += 2 * (c.l - c.g);
        internal_check(delta == rhs, "power identity violated on a closed map");
    }
    return delta;
}

// Canonical form: the lexicographically smallest relabeling trace over all
// root half-edges. Two connected maps are isomorphic iff their traces match.
// When `pair_labels` is given (per half-edge, -1 for non-cilia), cilium labels
// are part of the trace, so equality preserves the labeled cilia.
inline std::vector<int> canon_trace(const Emap& m, const std::vector<int>* pair_labels = nullptr) {
    int H = m.H();
    if (H == 0) return {m.D, m.isolated};
    std::vector<int> best;
    std::vector<int> lab(H), order(H);
    for (int root = 0; root < H; ++root) {
        std::fill(lab.begin(), lab.end(), -1);
        lab[root] = 0;
        order[0] = root;
        int next = 1;
        std::vector<int> trace;
        trace.reserve(4 * H + 2);
        trace.push_back(m.D);
        trace.push_back(m.isolated);
        for (int k = 0; k < H; ++k) {
            int h = order[k];
            for (int nb : {m.sigma[h], m.alpha[h]}) {
                if (lab[nb] < 0) {
                    lab[nb] = next;
                    order[next++] = nb;
                }
            }
            trace.push_back(lab[m.sigma[h]]);
            trace.push_back(lab[m.alpha[h]]);
            trace.push_back(m.cil[h] ? -1 : (int)m.cset[h]);
            if (pair_labels) trace.push_back(m.cil[h] ? (*pair_labels)[h] : -2);
        }
        if (best.empty() || trace < best) best = std::move(trace);
    }
    return best;
}

} // namespace cwm
