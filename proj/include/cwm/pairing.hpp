#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "cwm/bubble.hpp"
#include "cwm/colored_graph.hpp"
#include "cwm/errors.hpp"

namespace cwm {

// The covering B^Omega: one bubble copy, a color-0 edge inside each pair.
// In raw slot labels the color-0 edge joins black tau0(a) to white a,
// so mu = tau0^{-1}.
inline ColoredGraph covering(const Bubble& b, const Pairing& om) {
    validate_bubble(b);
    validate_pairing(b, om);
    return ColoredGraph{b, 1, perm_inverse(om.tau0)};
}

// F(B^Omega) = sum over colors of cycles of tau0^{-1} o tau_i.
inline int covering_faces(const Bubble& b, const Pairing& om) {
    Perm inv = perm_inverse(om.tau0);
    int f = 0;
    for (const auto& t : b.tau) f += perm_cycle_count(perm_compose(inv, t));
    return f;
}

inline int default_pairing_cap() { return 8; }

inline std::vector<Pairing> enumerate_pairings(const Bubble& b, bool dedup = false,
                                               int cap = default_pairing_cap()) {
    validate_bubble(b);
    if (b.V > cap)
        throw CapExceededError("pairing enumeration capped at V <= " + std::to_string(cap));
    std::vector<Pairing> all;
    Perm t0 = perm_identity(b.V);
    do {
        all.push_back(Pairing{t0});
    } while (std::next_permutation(t0.begin(), t0.end()));
    if (!dedup) return all;

    // Orbit representatives under bubble automorphisms: tau0 -> pb o tau0 o pw^{-1}.
    auto autos = bubble_automorphisms(b);
    std::set<Perm> seen;
    std::vector<Pairing> reps;
    for (const auto& p : all) {
        if (seen.count(p.tau0)) continue;
        Perm best = p.tau0;
        std::vector<Perm> orbit;
        for (const auto& [pw, pb] : autos) {
            Perm image = perm_compose(perm_compose(pb, p.tau0), perm_inverse(pw));
            orbit.push_back(image);
            if (image < best) best = image;
        }
        for (auto& im : orbit) seen.insert(std::move(im));
        reps.push_back(Pairing{best});
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

inline std::vector<Pairing> optimal_pairings(const Bubble& b, bool dedup = false,
                                             int cap = default_pairing_cap()) {
    auto all = enumerate_pairings(b, dedup, cap);
    int best = -1;
    for (const auto& p : all) best = std::max(best, covering_faces(b, p));
    std::vector<Pairing> opt;
    for (const auto& p : all)
        if (covering_faces(b, p) == best) opt.push_back(p);
    return opt;
}

// The contracted directed graph B_circ,Omega: one node per pair, and for each
// color i a directed edge x -> y whenever tau_i(x) != tau0(x), y being the pair
// holding the black vertex tau_i(x). Per color the edges split into directed
// cycles (the nontrivial cycles of tau0^{-1} o tau_i).
struct ContractedGraph {
    int V = 0;
    int D = 0;
    // per color, the list of directed edges (x, y)
    std::vector<std::vector<std::pair<int, int>>> edges;

    int edge_count() const {
        int e = 0;
        for (const auto& c : edges) e += (int)c.size();
        return e;
    }
};

inline ContractedGraph contracted_graph(const Bubble& b, const Pairing& om) {
    validate_bubble(b);
    validate_pairing(b, om);
    auto nu = pair_frame(b, om);
    ContractedGraph cg;
    cg.V = b.V;
    cg.D = b.D;
    cg.edges.resize(b.D);
    for (int i = 0; i < b.D; ++i)
        for (int x = 0; x < b.V; ++x)
            if (nu[i][x] != x) cg.edges[i].emplace_back(x, nu[i][x]);
    return cg;
}

// circuit rank of the underlying undirected multigraph, counting isolated nodes
inline int contracted_circuit_rank(const ContractedGraph& cg) {
    std::vector<int> parent(cg.V);
    for (int i = 0; i < cg.V; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int k = cg.V;
    for (const auto& col : cg.edges)
        for (const auto& [x, y] : col)
            if (find(x) != find(y)) {
                parent[find(x)] = find(y);
                --k;
            }
    return cg.edge_count() - cg.V + k;
}

// opt_B(Omega) = l(B_circ) - sum_i l(B_circ^(i)); the per-color rank is the
// number of nontrivial cycles. Cross-checked against 1 + (D-1)V - F(B^Omega).
inline int optimality(const Bubble& b, const Pairing& om) {
    ContractedGraph cg = contracted_graph(b, om);
    auto nu = pair_frame(b, om);
    int per_color = 0;
    for (const auto& n : nu) per_color += perm_cycle_count(n) - perm_fixed_points(n);
    int opt = contracted_circuit_rank(cg) - per_color;
    int via_faces = 1 + (b.D - 1) * b.V - covering_faces(b, om);
    internal_check(opt == via_faces, "optimality formulas disagree");
    return opt;
}

} // namespace cwm
