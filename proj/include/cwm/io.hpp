#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cwm/bubble.hpp"
#include "cwm/colored_graph.hpp"
#include "cwm/emap.hpp"
#include "cwm/errors.hpp"
#include "cwm/families.hpp"
#include "cwm/walsh.hpp"

namespace cwm {

// Text formats are line-oriented and 1-indexed.
//
//   .bub   line 1: "D V"; lines 2..D+1: the V images of tau_i
//   .gcg   line 1: "inline" (bubble lines follow) or a path to a .bub;
//          then "b p"; then b*V integers, mu images with 0 for free black slots
//   .ecm   line 1: "D H p [isolated]"; line 2: color of each label, 0 for
//          cilia, multi-color sets joined with '+'; lines 3,4: sigma and alpha
//          in image form
//   .swm   line 1: "swm"; inline bubble; pairing line; "b p"; mu image line
//          (0 = open corner); cilia slot list (possibly empty line)

namespace io_detail {

inline std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string l;
    while (std::getline(in, l)) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        lines.push_back(l);
    }
    return lines;
}

inline std::vector<long long> ints_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<long long> v;
    long long x;
    while (is >> x) v.push_back(x);
    return v;
}

} // namespace io_detail

// ---- bubbles ----------------------------------------------------------------

inline std::string write_bubble(const Bubble& b) {
    std::ostringstream os;
    os << b.D << " " << b.V << "\n";
    for (const auto& t : b.tau) {
        for (int a = 0; a < b.V; ++a) os << (a ? " " : "") << t[a] + 1;
        os << "\n";
    }
    return os.str();
}

inline Bubble parse_bubble_lines(const std::vector<std::string>& lines, size_t& pos) {
    if (pos >= lines.size()) throw ParseError("bubble: missing header line");
    auto head = io_detail::ints_of(lines[pos++]);
    if (head.size() != 2) throw ParseError("bubble: header must be 'D V'");
    Bubble b;
    b.D = (int)head[0];
    b.V = (int)head[1];
    if (b.D < 1 || b.D > 15 || b.V < 1) throw ParseError("bubble: bad D or V");
    for (int i = 0; i < b.D; ++i) {
        if (pos >= lines.size()) throw ParseError("bubble: missing tau line");
        auto img = io_detail::ints_of(lines[pos++]);
        if ((int)img.size() != b.V) throw ParseError("bubble: tau line needs V entries");
        Perm t(b.V);
        for (int a = 0; a < b.V; ++a) {
            if (img[a] < 1 || img[a] > b.V) throw ParseError("bubble: tau image out of range");
            t[a] = (int)img[a] - 1;
        }
        b.tau.push_back(std::move(t));
    }
    return b;
}

inline Bubble read_bubble(std::istream& in) {
    auto lines = io_detail::read_lines(in);
    size_t pos = 0;
    return parse_bubble_lines(lines, pos);
}

inline Bubble load_bubble(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read_bubble(f);
}

// ---- colored graphs -----------------------------------------------------------

inline std::string write_graph(const ColoredGraph& g) {
    std::ostringstream os;
    os << "inline\n" << write_bubble(g.bubble);
    os << g.copies << " " << g.free_count() << "\n";
    for (int y = 0; y < g.slots(); ++y) os << (y ? " " : "") << g.mu[y] + 1;
    os << "\n";
    return os.str();
}

inline ColoredGraph read_graph(std::istream& in, const std::string& base_dir = ".") {
    auto lines = io_detail::read_lines(in);
    if (lines.empty()) throw ParseError("graph: empty input");
    size_t pos = 0;
    Bubble b;
    if (lines[0] == "inline") {
        ++pos;
        b = parse_bubble_lines(lines, pos);
    } else {
        std::filesystem::path p(lines[0]);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        b = load_bubble(p.string());
        ++pos;
    }
    if (pos >= lines.size()) throw ParseError("graph: missing 'b p' line");
    auto bp = io_detail::ints_of(lines[pos++]);
    if (bp.size() != 2) throw ParseError("graph: need 'b p'");
    ColoredGraph g;
    g.bubble = b;
    g.copies = (int)bp[0];
    if (pos >= lines.size()) throw ParseError("graph: missing mu line");
    auto img = io_detail::ints_of(lines[pos++]);
    if ((int)img.size() != g.copies * b.V) throw ParseError("graph: mu line needs b*V entries");
    for (long long v : img) {
        if (v < 0 || v > g.copies * b.V) throw ParseError("graph: mu image out of range");
        g.mu.push_back((int)v - 1);
    }
    if (g.free_count() != (int)bp[1]) throw ParseError("graph: p does not match the free slots");
    return g;
}

// ---- maps ----------------------------------------------------------------------

inline std::string write_map(const Emap& m) {
    std::ostringstream os;
    os << m.D << " " << m.H() << " " << m.cilia_count();
    if (m.isolated) os << " " << m.isolated;
    os << "\n";
    for (int h = 0; h < m.H(); ++h)
        os << (h ? " " : "") << (m.cil[h] ? "0" : colorset_str(m.cset[h], m.D));
    os << "\n";
    for (int h = 0; h < m.H(); ++h) os << (h ? " " : "") << m.sigma[h] + 1;
    os << "\n";
    for (int h = 0; h < m.H(); ++h) os << (h ? " " : "") << m.alpha[h] + 1;
    os << "\n";
    return os.str();
}

inline ColorSet parse_colorset(const std::string& tok, int D) {
    ColorSet s = 0;
    std::istringstream is(tok);
    std::string part;
    while (std::getline(is, part, '+')) {
        int c = std::stoi(part);
        if (c < 1 || c > D) throw ParseError("map: color out of range");
        s = ColorSet(s | single_color(c));
    }
    return s;
}

inline Emap read_map(std::istream& in) {
    auto lines = io_detail::read_lines(in);
    if (lines.size() < 4) throw ParseError("map: need 4 lines");
    auto head = io_detail::ints_of(lines[0]);
    if (head.size() < 3) throw ParseError("map: header must be 'D H p [isolated]'");
    Emap m;
    m.D = (int)head[0];
    int H = (int)head[1];
    m.isolated = head.size() > 3 ? (int)head[3] : 0;
    m.cset.assign(H, 0);
    m.cil.assign(H, 0);
    {
        std::istringstream is(lines[1]);
        std::string tok;
        for (int h = 0; h < H; ++h) {
            if (!(is >> tok)) throw ParseError("map: color line too short");
            if (tok == "0") m.cil[h] = 1;
            else m.cset[h] = parse_colorset(tok, m.D);
        }
    }
    auto sg = io_detail::ints_of(lines[2]), al = io_detail::ints_of(lines[3]);
    if ((int)sg.size() != H || (int)al.size() != H) throw ParseError("map: sigma/alpha size");
    for (int h = 0; h < H; ++h) {
        m.sigma.push_back((int)sg[h] - 1);
        m.alpha.push_back((int)al[h] - 1);
    }
    validate_map(m);
    if (m.cilia_count() != (int)head[2]) throw ParseError("map: p does not match the cilia");
    return m;
}

// ---- stuffed Walsh maps ----------------------------------------------------------

inline std::string write_walsh(const StuffedWalshMap& w) {
    internal_check(w.single_template(), "swm format stores single-bubble maps");
    const MapTemplate& t = w.tmpl();
    std::ostringstream os;
    os << "swm\n" << write_bubble(t.bubble);
    for (int a = 0; a < t.bubble.V; ++a) os << (a ? " " : "") << t.om.tau0[a] + 1;
    os << "\n" << w.copies() << " ";
    int p = 0;
    for (int v : w.mu) p += (v < 0);
    os << p << "\n";
    for (int y = 0; y < w.slots(); ++y) os << (y ? " " : "") << w.mu[y] + 1;
    os << "\n";
    bool first = true;
    for (int y = 0; y < w.slots(); ++y)
        if (w.mu[y] < 0) {
            os << (first ? "" : " ") << y + 1;
            first = false;
        }
    os << "\n";
    return os.str();
}

inline StuffedWalshMap read_walsh(std::istream& in) {
    auto lines = io_detail::read_lines(in);
    if (lines.empty() || lines[0] != "swm") throw ParseError("swm: bad magic");
    size_t pos = 1;
    Bubble b = parse_bubble_lines(lines, pos);
    if (pos >= lines.size()) throw ParseError("swm: missing pairing");
    auto pr = io_detail::ints_of(lines[pos++]);
    if ((int)pr.size() != b.V) throw ParseError("swm: pairing needs V entries");
    Pairing om;
    for (long long v : pr) om.tau0.push_back((int)v - 1);
    validate_pairing(b, om);
    auto bp = io_detail::ints_of(lines[pos++]);
    if (bp.size() != 2) throw ParseError("swm: need 'b p'");
    StuffedWalshMap w;
    auto tmpl = reduced_template(b, om);
    w.tpl.assign((size_t)bp[0], tmpl);
    auto img = io_detail::ints_of(lines[pos++]);
    if ((int)img.size() != w.slots()) throw ParseError("swm: mu needs b*V entries");
    for (long long v : img) w.mu.push_back((int)v - 1);
    // the cilia list is redundant with the zeros of mu; verify when present
    if (pos < lines.size()) {
        auto cil = io_detail::ints_of(lines[pos]);
        std::vector<long long> open;
        for (int y = 0; y < w.slots(); ++y)
            if (w.mu[y] < 0) open.push_back(y + 1);
        if (cil != open) throw ParseError("swm: cilia list disagrees with the open slots");
    }
    return w;
}

// ---- DOT export -------------------------------------------------------------

inline const char* dot_palette(int color1) {
    static const char* pal[] = {"red",    "blue",  "green3", "orange",
                                "purple", "brown", "cyan3",  "magenta"};
    return pal[(color1 - 1) % 8];
}

inline std::string dot_of_graph(const ColoredGraph& g) {
    std::ostringstream os;
    os << "graph G {\n  node [shape=circle width=0.25 fixedsize=true];\n";
    for (int x = 0; x < g.slots(); ++x) {
        os << "  w" << x + 1 << " [label=\"" << x + 1 << "\" style=\"\"];\n";
        os << "  b" << x + 1 << " [label=\"" << x + 1 << "\" style=filled fillcolor=black fontcolor=white];\n";
    }
    for (int i = 0; i < g.bubble.D; ++i)
        for (int x = 0; x < g.slots(); ++x)
            os << "  w" << x + 1 << " -- b" << g.black_end(i, x) + 1 << " [color="
               << dot_palette(i + 1) << "];\n";
    for (int y = 0; y < g.slots(); ++y)
        if (g.mu[y] >= 0)
            os << "  b" << y + 1 << " -- w" << g.mu[y] + 1 << " [style=dashed];\n";
    os << "}\n";
    return os.str();
}

inline std::string dot_of_map(const Emap& m) {
    std::ostringstream os;
    os << "graph M {\n  node [shape=point];\n";
    auto vid = vertex_of_half_edge(m);
    int nv = (int)map_vertices(m).size();
    for (int v = 0; v < nv + m.isolated; ++v) os << "  v" << v << ";\n";
    for (int h = 0; h < m.H(); ++h) {
        if (m.cil[h]) {
            os << "  c" << h << " [shape=none label=\"x\"];\n";
            os << "  v" << vid[h] << " -- c" << h << " [style=dotted];\n";
        } else if (h < m.alpha[h]) {
            os << "  v" << vid[h] << " -- v" << vid[m.alpha[h]] << " [label=\""
               << colorset_str(m.cset[h], m.D) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

inline std::string dot_of_walsh(const StuffedWalshMap& w) {
    GluedMap gm = glue(w);
    ProjectedWalshMap p = project(w);
    std::ostringstream os;
    os << "graph W {\n";
    for (int k = 0; k < w.copies(); ++k)
        os << "  w" << k << " [shape=box label=\"copy " << k + 1 << "\"];\n";
    for (int b = 0; b < p.blacks; ++b)
        os << "  b" << b << " [shape=point width=0.15 style=filled fillcolor=black];\n";
    for (int s = 0; s < w.slots(); ++s)
        os << "  w" << s / w.V() << " -- b" << p.black_of_slot[s] << " [label=\""
           << colorset_str(p.edge_set[s], w.D()) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace cwm
