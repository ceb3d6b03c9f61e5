#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cwm/enumerate.hpp"
#include "cwm/families.hpp"
#include "cwm/io.hpp"

using namespace cwm;

TEST_CASE("bubble text round trip") {
    for (const Bubble& b : {two_vertex_bubble(3), quartic_melonic(4, 2), k33_bubble(),
                            meander6_bubble(), necklace_bubble(3)}) {
        std::istringstream in(write_bubble(b));
        Bubble back = read_bubble(in);
        CHECK(back == b);
    }
    std::istringstream bad("3 2\n1 1\n1 2\n1 2\n");
    CHECK_NOTHROW(read_bubble(bad)); // parses; validation is separate
    std::istringstream trunc("3 2\n1 2\n");
    CHECK_THROWS_AS(read_bubble(trunc), ParseError);
}

TEST_CASE("graph text round trip") {
    ColoredGraph g{k33_bubble(), 2, {3, 4, 5, 0, 1, 2}};
    std::istringstream in(write_graph(g));
    ColoredGraph back = read_graph(in);
    CHECK(back.bubble == g.bubble);
    CHECK(back.mu == g.mu);
    CHECK(write_graph(back) == write_graph(g)); // writer is canonical

    // open graph keeps its zeros
    ColoredGraph open{quartic_melonic(3, 1), 1, {-1, 1}};
    std::istringstream in2(write_graph(open));
    CHECK(read_graph(in2).mu == open.mu);
}

TEST_CASE("map text round trip preserves the permutations") {
    MapTemplate t = reduce(build_map(meander6_bubble(), meander6_pairing()));
    std::istringstream in(write_map(t.map));
    Emap back = read_map(in);
    CHECK(back.sigma == t.map.sigma);
    CHECK(back.alpha == t.map.alpha);
    CHECK(back.cset == t.map.cset);
    CHECK(back.cil == t.map.cil);

    // multi-color sets survive
    auto star = k33_template();
    std::istringstream in2(write_map(star->map));
    CHECK(read_map(in2).cset == star->map.cset);
}

TEST_CASE("walsh text round trip") {
    auto tmpl = reduced_template(k33_bubble(), k33_pairing());
    ColoredGraph g{k33_bubble(), 2, {3, 4, 5, 0, 1, 2}};
    StuffedWalshMap w = to_walsh(g, tmpl);
    std::istringstream in(write_walsh(w));
    StuffedWalshMap back = read_walsh(in);
    CHECK(back.mu == w.mu);
    CHECK(back.tmpl().bubble == w.tmpl().bubble);
    CHECK(back.tmpl().om.tau0 == w.tmpl().om.tau0);
    CHECK(from_walsh(back).mu == g.mu);
}

TEST_CASE("dot exports mention the structures") {
    ColoredGraph g{quartic_melonic(3, 1), 1, perm_identity(2)};
    std::string d = dot_of_graph(g);
    CHECK(d.find("style=dashed") != std::string::npos);
    CHECK(d.find("color=red") != std::string::npos);

    auto star = k33_template();
    std::string dm = dot_of_map(star->map);
    CHECK(dm.find("2+3") != std::string::npos);

    StuffedWalshMap w = to_walsh(g, reduced_template(quartic_melonic(3, 1), Pairing{perm_identity(2)}));
    std::string dw = dot_of_walsh(w);
    CHECK(dw.find("copy 1") != std::string::npos);
}

TEST_CASE("the empty single-vertex map survives the text format") {
    Emap dot;
    dot.D = 3;
    dot.isolated = 1;
    std::istringstream in(write_map(dot));
    Emap back = read_map(in);
    CHECK(back.H() == 0);
    CHECK(back.isolated == 1);
    CHECK(back.D == 3);
}
