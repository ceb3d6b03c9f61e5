#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "cwm/bubble.hpp"
#include "cwm/construction.hpp"
#include "cwm/errors.hpp"

namespace cwm {

// ---- named bubbles -------------------------------------------------------

// The unique bubble on two vertices: D parallel edges.
inline Bubble two_vertex_bubble(int D) {
    return Bubble{D, 1, std::vector<Perm>(D, Perm{0})};
}

// Quartic melonic bubble B_i: white a joined to black a by the D-1 colors
// other than i, and to the other black by color i.
inline Bubble quartic_melonic(int D, int color1 = 1) {
    Bubble b{D, 2, std::vector<Perm>(D, Perm{0, 1})};
    b.tau[color1 - 1] = Perm{1, 0};
    return b;
}

// Six-vertex melonic bubble at D=3: two nested dipole insertions.
inline Bubble melonic_6v() {
    Bubble b = quartic_melonic(3, 1);
    return insert_dipole(b, 2, 1); // tau = [(0 1), (0 2), id]
}

// Necklace at D=4 with 2n vertices: a cycle alternating a doubled edge of
// colors {c1, c2} and one of the complementary pair. keep = {c1, c2} must
// contain two distinct colors.
inline Bubble necklace_bubble(int n, int c1 = 1, int c2 = 2) {
    Bubble b{4, n, std::vector<Perm>(4)};
    Perm shift(n); // a -> a-1 (mod n)
    for (int a = 0; a < n; ++a) shift[a] = (a + n - 1) % n;
    for (int c = 1; c <= 4; ++c) b.tau[c - 1] = (c == c1 || c == c2) ? perm_identity(n) : shift;
    return b;
}

// Pairing along the complementary colors, so map edges carry {c1, c2}.
inline Pairing necklace_pairing(int n) {
    Perm shift(n);
    for (int a = 0; a < n; ++a) shift[a] = (a + n - 1) % n;
    return Pairing{shift};
}

// The six-vertex D=4 bubble of the one-bubble model whose optimal-pairing map
// has 2-cycles of colors 2 and 4 and a 3-cycle of color 3.
inline Bubble meander6_bubble() {
    Bubble b{4, 3, {}};
    b.tau = {perm_identity(3), perm_from_cycles(3, {{0, 1}}), perm_from_cycles(3, {{0, 1, 2}}),
             perm_from_cycles(3, {{0, 2}})};
    return b;
}
inline Pairing meander6_pairing() { return Pairing{perm_identity(3)}; }

// K_{3,3} with its proper 3-edge-coloring.
inline Bubble k33_bubble() {
    Bubble b{3, 3, {}};
    b.tau = {perm_identity(3), perm_from_cycles(3, {{0, 1, 2}}), perm_from_cycles(3, {{0, 2, 1}})};
    return b;
}
// One of the three optimal mixed pairings: each pair internal to a distinct color.
inline Pairing k33_pairing() { return Pairing{perm_from_cycles(3, {{1, 2}})}; }

// ---- canonical star templates --------------------------------------------

// A star template: one leaf per pair (cilium + spoke), an unciliated center
// whose rotation is the ascending pair order, spoke x carrying `sets[x]`.
inline MapTemplate star_template(const Bubble& b, const Pairing& om,
                                 const std::vector<ColorSet>& sets) {
    int V = b.V;
    std::vector<std::vector<int>> vertices;
    std::vector<std::tuple<int, int, ColorSet>> edges;
    std::vector<int> cilia(V);
    std::iota(cilia.begin(), cilia.end(), 0);
    // labels: cilia 0..V-1, spokes V..2V-1, center halves 2V..3V-1
    std::vector<int> center;
    for (int x = 0; x < V; ++x) {
        vertices.push_back({x, V + x});
        center.push_back(2 * V + x);
        edges.emplace_back(V + x, 2 * V + x, sets[x]);
    }
    vertices.push_back(center);
    return custom_template(b, om, make_emap(b.D, 3 * V, vertices, edges, cilia), cilia);
}

inline std::shared_ptr<const MapTemplate> necklace_template(int n, int c1 = 1, int c2 = 2) {
    Bubble b = necklace_bubble(n, c1, c2);
    ColorSet cs = ColorSet(single_color(c1) | single_color(c2));
    return std::make_shared<MapTemplate>(
        star_template(b, necklace_pairing(n), std::vector<ColorSet>(n, cs)));
}

inline std::shared_ptr<const MapTemplate> meander6_template() {
    std::vector<ColorSet> sets = {
        ColorSet(single_color(2) | single_color(3) | single_color(4)),
        ColorSet(single_color(2) | single_color(3)),
        ColorSet(single_color(3) | single_color(4))};
    return std::make_shared<MapTemplate>(star_template(meander6_bubble(), meander6_pairing(), sets));
}

inline std::shared_ptr<const MapTemplate> k33_template() {
    std::vector<ColorSet> sets = {ColorSet(single_color(2) | single_color(3)),
                                  ColorSet(single_color(1) | single_color(3)),
                                  ColorSet(single_color(1) | single_color(2))};
    return std::make_shared<MapTemplate>(star_template(k33_bubble(), k33_pairing(), sets));
}

// Default reduced template for any (B, Omega).
inline std::shared_ptr<const MapTemplate> reduced_template(const Bubble& b, const Pairing& om,
                                                           ReduceMethod method = ReduceMethod::Star) {
    return std::make_shared<MapTemplate>(reduce(build_map(b, om), method));
}

// The dipole-pairing tree template of a melonic bubble.
inline std::shared_ptr<const MapTemplate> melonic_template(const Bubble& b) {
    auto [ok, om] = is_melonic(b);
    if (!ok) throw PreconditionError("bubble is not melonic");
    return reduced_template(b, *om);
}

} // namespace cwm
