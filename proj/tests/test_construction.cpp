#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cwm/boundary.hpp"
#include "cwm/construction.hpp"
#include "cwm/enumerate.hpp"
#include "cwm/families.hpp"

using namespace cwm;

namespace {

void check_roundtrip(const Bubble& b, const Pairing& om) {
    auto nu = pair_frame(b, om);
    MapTemplate built = build_map(b, om);
    BoundaryResult br = boundary(built.map);
    REQUIRE(br.bubble.V == b.V);
    for (int i = 0; i < b.D; ++i) CHECK(br.bubble.tau[i] == nu[i]);
    CHECK(bubbles_isomorphic(br.bubble, b));

    for (ReduceMethod meth : {ReduceMethod::Star, ReduceMethod::EdgeRemoval}) {
        MapTemplate red = reduce(built, meth);
        BoundaryResult rr = boundary(red.map);
        for (int i = 0; i < b.D; ++i) CHECK(rr.bubble.tau[i] == nu[i]);
        for (int i = 1; i <= b.D; ++i) {
            MonoStats ms = detail::stats_for(red.map, detail::keep_color(red.map, i));
            CHECK(ms.l == 0);
        }
    }
}

} // namespace

TEST_CASE("single ciliated vertex has the two-vertex boundary") {
    Emap v = make_emap(3, 1, {{0}}, {}, {0});
    BoundaryResult br = boundary(v);
    CHECK(br.bubble == two_vertex_bubble(3));
}

TEST_CASE("build_map on the quartic melonic bubble") {
    MapTemplate t = build_map(quartic_melonic(3, 1), Pairing{perm_identity(2)});
    // a cycle of length two of color 1 with both cilia on one face
    CHECK(t.map.edge_count() == 2);
    CHECK(t.map.cilia_count() == 2);
    ColorFaces cf = map_faces(t.map, 1);
    CHECK(cf.closed.size() == 1);
    CHECK(cf.broken.size() == 2);
    // both cilia on the same face cycle: the two broken faces partition it
    CHECK(cf.broken[0].size() + cf.broken[1].size() >= 2);

    // reduced by edge removal: a single edge of color 1 with two cilia
    MapTemplate r = reduce(t, ReduceMethod::EdgeRemoval);
    CHECK(r.map.edge_count() == 1);
    CHECK(r.map.cilia_count() == 2);
    for (int h = 0; h < r.map.H(); ++h)
        if (!r.map.cil[h]) CHECK(r.map.cset[h] == single_color(1));
    // star method: a two-spoke star
    MapTemplate s = reduce(t, ReduceMethod::Star);
    CHECK(s.map.edge_count() == 2);
    CHECK((int)map_vertices(s.map).size() == 3);
}

TEST_CASE("two-vertex bubble gives a single ciliated vertex") {
    MapTemplate t = build_map(two_vertex_bubble(4), Pairing{perm_identity(1)});
    CHECK(t.map.edge_count() == 0);
    CHECK(t.map.cilia_count() == 1);
    CHECK((int)map_vertices(t.map).size() == 1);
}

TEST_CASE("boundary round-trips on the named bubbles") {
    check_roundtrip(two_vertex_bubble(3), Pairing{perm_identity(1)});
    check_roundtrip(quartic_melonic(3, 1), Pairing{perm_identity(2)});
    check_roundtrip(quartic_melonic(3, 1), Pairing{perm_from_cycles(2, {{0, 1}})});
    check_roundtrip(melonic_6v(), Pairing{perm_identity(3)});
    check_roundtrip(necklace_bubble(2), necklace_pairing(2));
    check_roundtrip(necklace_bubble(3), necklace_pairing(3));
    check_roundtrip(meander6_bubble(), meander6_pairing());
    for (const Pairing& om : enumerate_pairings(k33_bubble())) check_roundtrip(k33_bubble(), om);
}

TEST_CASE("meander map has the advertised cycle structure") {
    MapTemplate t = build_map(meander6_bubble(), meander6_pairing());
    // cycles: one 2-cycle of color 2, a 3-cycle of color 3, a 2-cycle of color 4
    MapStats st = stats(t.map);
    CHECK(st.color[0].E == 0);
    CHECK(st.color[1].E == 2);
    CHECK(st.color[2].E == 3);
    CHECK(st.color[3].E == 2);
    CHECK(st.color[1].l == 1);
    CHECK(st.color[2].l == 1);
    CHECK(st.color[3].l == 1);
}

TEST_CASE("pair-label symmetries fix the reduced map") {
    for (const auto& [b, om] : {std::pair<Bubble, Pairing>{k33_bubble(), k33_pairing()},
                                {necklace_bubble(3), necklace_pairing(3)},
                                {quartic_melonic(3, 1), Pairing{perm_identity(2)}}}) {
        MapTemplate red = reduce(build_map(b, om));
        auto syms = pairing_symmetries(b, om);
        CHECK(!syms.empty());
        std::vector<int> labels(red.map.H(), -1);
        for (int x = 0; x < b.V; ++x) labels[red.cilium_of_pair[x]] = x;
        auto base_trace = canon_trace(red.map, &labels);
        for (const Perm& s : syms) {
            std::vector<int> relabeled(red.map.H(), -1);
            for (int x = 0; x < b.V; ++x) relabeled[red.cilium_of_pair[x]] = s[x];
            CHECK(canon_trace(red.map, &relabeled) == base_trace);
        }
    }
}

TEST_CASE("boundary round-trips over random and exhaustive small bubbles") {
    // exhaustive at V <= 2, D <= 3; sampled at V = 3..4
    for (int D = 2; D <= 3; ++D)
        for (int V = 1; V <= 2; ++V)
            for (const Bubble& b : all_connected_bubbles(D, V))
                for (const Pairing& om : enumerate_pairings(b)) check_roundtrip(b, om);

    std::mt19937 rng(42);
    for (int n = 0; n < 8; ++n) {
        int D = 3 + (int)(rng() % 2), V = 3 + (int)(rng() % 2);
        Bubble b{D, V, {}};
        do {
            b.tau.clear();
            for (int i = 0; i < D; ++i) {
                Perm t = perm_identity(V);
                std::shuffle(t.begin(), t.end(), rng);
                b.tau.push_back(t);
            }
        } while (!bubble_connected(b));
        for (const Pairing& om : enumerate_pairings(b)) check_roundtrip(b, om);
    }
}

TEST_CASE("simplify merges the necklace template to uniform color pairs") {
    // edge-removal reduction of the 2n=4 necklace, then simplify: the result
    // carries {1,2} edges only and keeps the boundary
    MapTemplate red = reduce(build_map(necklace_bubble(2), necklace_pairing(2)),
                             ReduceMethod::EdgeRemoval);
    MapTemplate simp = simplify(red);
    CHECK(simp.map.edge_count() < red.map.edge_count());
    for (int h = 0; h < simp.map.H(); ++h)
        if (!simp.map.cil[h])
            CHECK(simp.map.cset[h] == (single_color(1) | single_color(2)));
    BoundaryResult br = boundary(simp.map);
    for (int i = 0; i < 4; ++i) CHECK(br.bubble.tau[i] == simp.nu[i]);
}

TEST_CASE("simplify is idempotent on the worked star templates") {
    for (auto tmpl : {necklace_template(3), meander6_template(), k33_template()}) {
        MapTemplate s = simplify(*tmpl);
        CHECK(s.map.H() == tmpl->map.H());
        CHECK(s.map.edge_count() == tmpl->map.edge_count());
    }
}

TEST_CASE("star templates carry the advertised color sets") {
    auto nt = necklace_template(3);
    CHECK(nt->map.edge_count() == 3);
    auto mt = meander6_template();
    std::multiset<ColorSet> sets;
    for (int h = 0; h < mt->map.H(); ++h)
        if (!mt->map.cil[h] && h < mt->map.alpha[h]) sets.insert(mt->map.cset[h]);
    std::multiset<ColorSet> expect{ColorSet(single_color(2) | single_color(3) | single_color(4)),
                                   ColorSet(single_color(2) | single_color(3)),
                                   ColorSet(single_color(3) | single_color(4))};
    CHECK(sets == expect);
    CHECK_NOTHROW(k33_template());
}

TEST_CASE("one cycle per color: edge removal deletes one edge of each color") {
    // D=3 bubble whose pair-frame permutations are three transpositions
    Bubble b{3, 3, {perm_from_cycles(3, {{0, 1}}), perm_from_cycles(3, {{1, 2}}),
                    perm_from_cycles(3, {{0, 2}})}};
    REQUIRE_NOTHROW(validate_bubble(b));
    MapTemplate built = build_map(b, Pairing{perm_identity(3)});
    CHECK(built.map.edge_count() == 6);
    MapTemplate red = reduce(built, ReduceMethod::EdgeRemoval);
    CHECK(red.map.edge_count() == 3);
    for (int i = 1; i <= 3; ++i) {
        int count = 0;
        for (int h = 0; h < red.map.H(); ++h)
            if (!red.map.cil[h] && has_color(red.map.cset[h], i)) ++count;
        CHECK(count == 2); // one surviving edge of each color
    }
}

TEST_CASE("simplify splices out the degree-two star centers of the meander map") {
    MapTemplate r = reduce(build_map(meander6_bubble(), meander6_pairing()));
    CHECK(r.map.edge_count() == 7); // 2 + 3 + 2 spokes
    MapTemplate s = simplify(r);
    CHECK(s.map.edge_count() == 5); // the two 2-cycles collapse to single edges
    CHECK(map_vertices(s.map).size() == 4);
    BoundaryResult br = boundary(s.map);
    for (int i = 0; i < 4; ++i) CHECK(br.bubble.tau[i] == s.nu[i]);
}

TEST_CASE("boundary round-trips exhaustively on thin and wide slices") {
    // D=2 with V=4 and D=4 with V=2: every bubble, every pairing
    for (auto [D, V] : {std::pair<int, int>{2, 4}, {4, 2}}) {
        for (const Bubble& b : all_connected_bubbles(D, V))
            for (const Pairing& om : enumerate_pairings(b)) check_roundtrip(b, om);
    }
}
