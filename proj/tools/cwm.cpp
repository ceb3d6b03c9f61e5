// Command-line front end: colored graphs, stuffed Walsh maps, dominance
// analysis and exact amplitude checks over the text formats documented in the
// README.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cwm/amplitude.hpp"
#include "cwm/analysis.hpp"
#include "cwm/boundary.hpp"
#include "cwm/construction.hpp"
#include "cwm/enumerate.hpp"
#include "cwm/families.hpp"
#include "cwm/io.hpp"
#include "cwm/walsh.hpp"

using nlohmann::json;
using namespace cwm;

namespace {

Pairing parse_pairing(const std::string& s, int V) {
    std::istringstream is(s);
    Pairing om;
    int x;
    while (is >> x) om.tau0.push_back(x - 1);
    if ((int)om.tau0.size() != V) throw ParseError("--pairing needs exactly V integers");
    return om;
}

std::string ext_of(const std::string& path) {
    auto dot = path.find_last_of('.');
    return dot == std::string::npos ? "" : path.substr(dot + 1);
}

void emit(const std::string& text, const json& j, bool as_json) {
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path);
    f << content;
}

json pairing_json(const Pairing& om) {
    json a = json::array();
    for (int v : om.tau0) a.push_back(v + 1);
    return a;
}

int run(int argc, char** argv) {
    CLI::App app{"colored graphs <-> stuffed Walsh maps toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    int threads = 0;
    app.add_flag("--json", as_json, "mirror output as JSON");
    app.add_option("--threads", threads, "enumeration worker count (0 = all cores)");

    // validate ---------------------------------------------------------------
    std::string v_file;
    auto* sc_validate = app.add_subcommand("validate", "check a .bub/.gcg/.ecm/.swm file");
    sc_validate->add_option("file", v_file)->required();

    // pairings ---------------------------------------------------------------
    std::string p_file;
    bool p_optimal = false, p_dedup = false;
    auto* sc_pairings = app.add_subcommand("pairings", "list pairings of a bubble");
    sc_pairings->add_option("bubble", p_file)->required();
    sc_pairings->add_flag("--optimal", p_optimal, "only the optimal ones");
    sc_pairings->add_flag("--dedup", p_dedup, "quotient by bubble automorphisms");

    // build-map ----------------------------------------------------------------
    std::string b_file, b_pairing, b_reduce = "none", b_dot, b_out;
    bool b_simplify = false;
    auto* sc_build = app.add_subcommand("build-map", "construct the canonical map of (B, Omega)");
    sc_build->add_option("bubble", b_file)->required();
    sc_build->add_option("--pairing", b_pairing, "V integers, white a -> black tau0(a)")->required();
    sc_build->add_option("--reduce", b_reduce, "star|edges|none")
        ->check(CLI::IsMember({"star", "edges", "none"}));
    sc_build->add_flag("--simplify", b_simplify, "shrink the reduced template");
    sc_build->add_option("--dot", b_dot, "also write a DOT rendering");
    sc_build->add_option("-o,--output", b_out, "output .ecm path (default stdout)");

    // boundary -----------------------------------------------------------------
    std::string bd_file;
    auto* sc_boundary = app.add_subcommand("boundary", "boundary bubble of a ciliated map");
    sc_boundary->add_option("map", bd_file)->required();

    // bijection ----------------------------------------------------------------
    std::string bj_dir, bj_file, bj_pairing, bj_out;
    auto* sc_bijection = app.add_subcommand("bijection", "graph <-> stuffed Walsh map");
    sc_bijection->add_option("direction", bj_dir)->required()->check(CLI::IsMember({"fwd", "inv"}));
    sc_bijection->add_option("file", bj_file)->required();
    sc_bijection->add_option("--pairing", bj_pairing, "pairing for fwd (V integers)");
    sc_bijection->add_option("-o,--output", bj_out, "output path (default stdout)");

    // faces ---------------------------------------------------------------------
    std::string f_file;
    auto* sc_faces = app.add_subcommand("faces", "face counts of a colored graph");
    sc_faces->add_option("graph", f_file)->required();

    // stats ---------------------------------------------------------------------
    std::string st_file;
    auto* sc_stats = app.add_subcommand("stats", "per-color map statistics and power");
    sc_stats->add_option("map", st_file)->required();

    // enumerate -------------------------------------------------------------------
    std::string e_file, e_csv, e_pairing;
    int e_copies = 1;
    bool e_max = false, e_open = false;
    auto* sc_enum = app.add_subcommand("enumerate", "exhaustive gluings of bubble copies");
    sc_enum->add_option("bubble", e_file)->required();
    sc_enum->add_option("--copies", e_copies)->required();
    sc_enum->add_flag("--max-faces", e_max, "report the maximum face count and maximizers");
    sc_enum->add_flag("--open", e_open, "include open gluings");
    sc_enum->add_option("--csv", e_csv, "write one row per gluing");
    sc_enum->add_option("--pairing", e_pairing, "pairing (used by --max-faces tree filter)");

    // dominant ---------------------------------------------------------------------
    std::string d_family, d_file;
    auto* sc_dom = app.add_subcommand("dominant", "family dominance verdict for a .swm map");
    sc_dom->add_option("family", d_family)
        ->required()
        ->check(CLI::IsMember({"melonic", "necklace-single", "necklace-triple", "meander6", "k33"}));
    sc_dom->add_option("walsh", d_file)->required();

    // amplitude -----------------------------------------------------------------------
    std::string a_file, a_pairing, a_side = "both";
    int a_order = 1, a_scaling = -1;
    auto* sc_amp = app.add_subcommand("amplitude", "perturbative coefficients as Laurent polynomials");
    sc_amp->add_option("bubble", a_file)->required();
    sc_amp->add_option("--pairing", a_pairing, "V integers (matrix side)");
    sc_amp->add_option("--order", a_order, "power of the coupling")->required();
    sc_amp->add_option("--side", a_side)->check(CLI::IsMember({"tensor", "matrix", "both"}));
    sc_amp->add_option("-s,--scaling", a_scaling, "N exponent per interaction (default D-1)");

    // export-dot -----------------------------------------------------------------------
    std::string x_file, x_out;
    auto* sc_dot = app.add_subcommand("export-dot", "Graphviz rendering of a file");
    sc_dot->add_option("file", x_file)->required();
    sc_dot->add_option("-o,--output", x_out, "output path (default stdout)");

    // selftest -------------------------------------------------------------------------
    auto* sc_self = app.add_subcommand("selftest", "run the exact Wick engine self-checks");

    CLI11_PARSE(app, argc, argv);

    if (*sc_validate) {
        std::string e = ext_of(v_file);
        std::ifstream in(v_file);
        if (!in) throw ParseError("cannot open " + v_file);
        if (e == "bub") validate_bubble(read_bubble(in));
        else if (e == "gcg") validate_graph(read_graph(in, std::filesystem::path(v_file).parent_path().string()));
        else if (e == "ecm") validate_map(read_map(in));
        else if (e == "swm") validate_graph(from_walsh(read_walsh(in)));
        else throw ParseError("unknown extension ." + e);
        emit("ok " + e + "\n", json{{"ok", true}, {"kind", e}}, as_json);
        return 0;
    }

    if (*sc_pairings) {
        Bubble b = load_bubble(p_file);
        auto list = p_optimal ? optimal_pairings(b, p_dedup) : enumerate_pairings(b, p_dedup);
        std::ostringstream os;
        json rows = json::array();
        for (const Pairing& om : list) {
            for (int a = 0; a < b.V; ++a) os << om.tau0[a] + 1 << " ";
            int f = covering_faces(b, om), o = optimality(b, om);
            os << " F=" << f << " opt=" << o << "\n";
            rows.push_back({{"tau0", pairing_json(om)}, {"faces", f}, {"optimality", o}});
        }
        emit(os.str(), rows, as_json);
        return 0;
    }

    if (*sc_build) {
        Bubble b = load_bubble(b_file);
        Pairing om = parse_pairing(b_pairing, b.V);
        MapTemplate t = build_map(b, om);
        if (b_reduce == "star") t = reduce(t, ReduceMethod::Star);
        else if (b_reduce == "edges") t = reduce(t, ReduceMethod::EdgeRemoval);
        if (b_simplify) {
            if (b_reduce == "none") throw PreconditionError("--simplify needs --reduce");
            t = simplify(t);
        }
        std::string ecm = write_map(t.map);
        if (!b_dot.empty()) write_output(b_dot, dot_of_map(t.map));
        if (as_json) {
            json j{{"half_edges", t.map.H()},
                   {"edges", t.map.edge_count()},
                   {"cilia", t.map.cilia_count()},
                   {"ecm", ecm}};
            emit("", j, true);
        } else {
            write_output(b_out, ecm);
        }
        return 0;
    }

    if (*sc_boundary) {
        std::ifstream in(bd_file);
        if (!in) throw ParseError("cannot open " + bd_file);
        BoundaryResult br = boundary(read_map(in));
        std::ostringstream os;
        os << write_bubble(br.bubble) << "pairing:";
        for (int a = 0; a < br.bubble.V; ++a) os << " " << br.pairing.tau0[a] + 1;
        os << "\n";
        json j{{"bubble", write_bubble(br.bubble)}, {"pairing", pairing_json(br.pairing)}};
        emit(os.str(), j, as_json);
        return 0;
    }

    if (*sc_bijection) {
        std::ifstream in(bj_file);
        if (!in) throw ParseError("cannot open " + bj_file);
        if (bj_dir == "fwd") {
            ColoredGraph g = read_graph(in, std::filesystem::path(bj_file).parent_path().string());
            if (bj_pairing.empty()) throw ParseError("fwd needs --pairing");
            Pairing om = parse_pairing(bj_pairing, g.bubble.V);
            StuffedWalshMap w = to_walsh(g, reduced_template(g.bubble, om));
            write_output(bj_out, write_walsh(w));
        } else {
            StuffedWalshMap w = read_walsh(in);
            write_output(bj_out, write_graph(from_walsh(w)));
        }
        return 0;
    }

    if (*sc_faces) {
        std::ifstream in(f_file);
        if (!in) throw ParseError("cannot open " + f_file);
        ColoredGraph g = read_graph(in, std::filesystem::path(f_file).parent_path().string());
        validate_graph(g);
        FaceSet fs = graph_faces(g);
        std::ostringstream os;
        json per = json::array();
        for (int i = 0; i < g.bubble.D; ++i) {
            os << "color " << i + 1 << ": closed=" << fs.closed[i].size()
               << " broken=" << fs.broken[i].size() << "\n";
            per.push_back({{"color", i + 1},
                           {"closed", fs.closed[i].size()},
                           {"broken", fs.broken[i].size()}});
        }
        os << "total closed faces: " << fs.total_closed() << "\n";
        if (g.closed()) os << "reduced degree: " << melonic_degree(g) << "\n";
        json j{{"per_color", per}, {"total_closed", fs.total_closed()}};
        if (g.closed()) j["reduced_degree"] = melonic_degree(g);
        emit(os.str(), j, as_json);
        return 0;
    }

    if (*sc_stats) {
        std::ifstream in(st_file);
        if (!in) throw ParseError("cannot open " + st_file);
        Emap m = read_map(in);
        MapStats s = stats(m);
        std::ostringstream os;
        auto row = [&](const std::string& name, const MonoStats& ms) {
            os << name << ": E=" << ms.E << " V=" << ms.V << " F=" << ms.F << " k=" << ms.k
               << " g=" << ms.g << " l=" << ms.l << "\n";
        };
        row("map", s.map);
        json jc = json::array();
        for (int i = 0; i < m.D; ++i) {
            row("color " + std::to_string(i + 1), s.color[i]);
            jc.push_back({{"color", i + 1},
                          {"E", s.color[i].E},
                          {"V", s.color[i].V},
                          {"F", s.color[i].F},
                          {"k", s.color[i].k},
                          {"g", s.color[i].g},
                          {"l", s.color[i].l}});
        }
        os << "color faces: " << s.color_faces << "\n";
        if (map_connected(m)) os << "power: " << power(m) << "\n";
        json j{{"map", {{"E", s.map.E}, {"V", s.map.V}, {"F", s.map.F}, {"k", s.map.k},
                        {"g", s.map.g}, {"l", s.map.l}}},
               {"per_color", jc},
               {"color_faces", s.color_faces}};
        if (map_connected(m)) j["power"] = power(m);
        emit(os.str(), j, as_json);
        return 0;
    }

    if (*sc_enum) {
        Bubble b = load_bubble(e_file);
        std::ofstream csv;
        if (!e_csv.empty()) {
            csv.open(e_csv);
            if (!csv) throw ParseError("cannot write " + e_csv);
            csv << "mu,connected,faces\n";
        }
        if (e_max) {
            Pairing om = e_pairing.empty() ? Pairing{perm_identity(b.V)}
                                           : parse_pairing(e_pairing, b.V);
            MaxFacesResult r = max_faces(b, om, e_copies, GluingClass::All, threads);
            std::ostringstream os;
            os << "connected gluings: " << r.connected_count << "\n";
            os << "max faces: " << r.max_faces << "\n";
            os << "maximizers: " << r.argmax.size() << "\n";
            for (const auto& mu : r.argmax) {
                for (size_t y = 0; y < mu.size(); ++y) os << mu[y] + 1 << (y + 1 < mu.size() ? " " : "\n");
            }
            json j{{"connected", r.connected_count},
                   {"max_faces", r.max_faces},
                   {"maximizers", r.argmax.size()}};
            emit(os.str(), j, as_json);
        } else {
            std::ostringstream os;
            long long count = 0;
            auto visit = [&](const ColoredGraph& g, bool connected) {
                ++count;
                if (csv.is_open()) {
                    for (size_t y = 0; y < g.mu.size(); ++y)
                        csv << g.mu[y] + 1 << (y + 1 < g.mu.size() ? " " : "");
                    csv << "," << connected << "," << graph_face_count(g) << "\n";
                }
            };
            if (e_open) for_each_partial_gluing(b, e_copies, visit);
            else for_each_gluing(b, e_copies, visit);
            os << "gluings: " << count << "\n";
            emit(os.str(), json{{"gluings", count}}, as_json);
        }
        return 0;
    }

    if (*sc_dom) {
        std::ifstream in(d_file);
        if (!in) throw ParseError("cannot open " + d_file);
        StuffedWalshMap w = read_walsh(in);
        Family fam = family_from_name(d_family);
        // the worked families run over the star template of (B, Omega); the
        // star constructor rejects bubbles outside the family's labeling
        if (fam != Family::Melonic) {
            const MapTemplate& t = w.tmpl();
            auto star = std::make_shared<MapTemplate>(star_template(t.bubble, t.om, t.attach));
            StuffedWalshMap sw;
            sw.tpl.assign(w.copies(), star);
            sw.mu = w.mu;
            w = sw;
        }
        DominanceResult r = dominance_check(w, fam);
        std::ostringstream os;
        os << (r.dominant ? "dominant" : "not dominant") << "\n" << r.certificate << "\n";
        emit(os.str(), json{{"dominant", r.dominant}, {"certificate", r.certificate}}, as_json);
        return 0;
    }

    if (*sc_amp) {
        Bubble b = load_bubble(a_file);
        int s = a_scaling >= 0 ? a_scaling : b.D - 1;
        std::ostringstream os;
        json j;
        LaurentPoly tensor, matrix;
        if (a_side != "matrix") {
            tensor = tensor_coefficient(b, s, a_order);
            os << "tensor: " << tensor.str() << "\n";
            j["tensor"] = tensor.str();
        }
        if (a_side != "tensor") {
            Pairing om = a_pairing.empty() ? Pairing{perm_identity(b.V)}
                                           : parse_pairing(a_pairing, b.V);
            matrix = matrix_coefficient(b, om, s, a_order);
            os << "matrix: " << matrix.str() << "\n";
            j["matrix"] = matrix.str();
        }
        if (a_side == "both") {
            os << "equal: " << (tensor == matrix ? "yes" : "no") << "\n";
            j["equal"] = (tensor == matrix);
        }
        emit(os.str(), j, as_json);
        return 0;
    }

    if (*sc_dot) {
        std::string e = ext_of(x_file);
        std::ifstream in(x_file);
        if (!in) throw ParseError("cannot open " + x_file);
        std::string out;
        if (e == "bub") out = dot_of_graph(ColoredGraph{read_bubble(in), 1, std::vector<int>(0, 0)});
        else if (e == "gcg") out = dot_of_graph(read_graph(in, std::filesystem::path(x_file).parent_path().string()));
        else if (e == "ecm") out = dot_of_map(read_map(in));
        else if (e == "swm") out = dot_of_walsh(read_walsh(in));
        else throw ParseError("unknown extension ." + e);
        write_output(x_out, out);
        return 0;
    }

    if (*sc_self) {
        wick_engine_selftest(6);
        emit("wick engine: ok\n", json{{"wick_engine", "ok"}}, as_json);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
