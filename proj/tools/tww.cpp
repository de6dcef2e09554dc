#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tww/caps.hpp"
#include "tww/constructors.hpp"
#include "tww/engine.hpp"
#include "tww/exact.hpp"
#include "tww/formula.hpp"
#include "tww/io.hpp"
#include "tww/matrix.hpp"
#include "tww/pipeline.hpp"
#include "tww/trigraph.hpp"

namespace {

using namespace tww;

// exit codes: 0 success/true, 1 false/invalid answer, 2 usage or bad input,
// 3 cap exceeded or search inconclusive
constexpr int kTrue = 0, kFalse = 1, kUsage = 2, kCapped = 3;

void print_steps(const ContractionSequence& seq) {
    for (const ContractionStep& s : seq.steps)
        std::cout << "contract=" << s.u << "," << s.v << "," << s.w << "\n";
}

void maybe_write_sequence(const std::string& path, const ContractionSequence& seq) {
    if (!path.empty()) write_sequence_file(path, seq);
}

void write_order_file(const std::string& path, const std::vector<Vertex>& order) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    for (size_t i = 0; i < order.size(); ++i) out << (i ? " " : "") << order[i];
    out << "\n";
}

std::string join(const std::vector<Vertex>& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(xs[i]);
    }
    return s;
}

int run_verify(const std::string& graph_path, const std::string& seq_path, int d) {
    Trigraph g = read_graph_file(graph_path);
    ContractionSequence seq = attach_sequence(g, read_sequence_file(seq_path));
    VerifyReport rep = verify_sequence(seq, d);
    if (!rep.valid) {
        std::cout << "valid=false\n";
        std::cerr << rep.message << "\n";
        return kFalse;
    }
    std::cout << "width=" << rep.width << "\n";
    return kTrue;
}

int run_exact(const std::string& graph_path, int threads, const Caps& caps,
              const std::string& seq_out) {
    Trigraph g = read_graph_file(graph_path);
    ExactResult res = exact_twinwidth(g, caps, threads);
    std::cout << "tww=" << res.width << "\n";
    print_steps(res.sequence);
    maybe_write_sequence(seq_out, res.sequence);
    return kTrue;
}

int run_greedy(const std::string& graph_path, const std::string& seq_out) {
    Trigraph g = read_graph_file(graph_path);
    ContractionSequence seq = greedy_sequence(g);
    std::cout << "width=" << verify_sequence(seq, -1).width << "\n";
    print_steps(seq);
    maybe_write_sequence(seq_out, seq);
    return kTrue;
}

int finish_construct(const ContractionSequence& seq, int bound, const std::string& seq_out,
                     const std::string& graph_out) {
    VerifyReport rep = verify_sequence(seq, bound);
    if (!rep.valid) {
        std::cout << "valid=false\n";
        std::cerr << rep.message << "\n";
        return kFalse;
    }
    std::cout << "bound=" << bound << "\n";
    std::cout << "width=" << rep.width << "\n";
    print_steps(seq);
    maybe_write_sequence(seq_out, seq);
    if (!graph_out.empty()) write_graph_file(graph_out, seq.initial);
    return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twin-width toolkit: contraction sequences, matrix divisions, FO model checking"};
    app.require_subcommand(1);

    Caps caps;
    try {
        caps = caps_from_env();
    } catch (const std::exception& e) {
        std::cerr << "TWW_CAPS: " << e.what() << "\n";
        return kUsage;
    }
    std::string caps_spec;
    app.add_option("--caps", caps_spec, "cap overrides, e.g. exact=10,mixed=16");

    // verify
    std::string graph_path, seq_path, formula_text;
    int bound_d = -1;
    auto* verify = app.add_subcommand("verify", "replay a sequence and check its width");
    verify->add_option("graph", graph_path)->required();
    verify->add_option("seq", seq_path)->required();
    verify->add_option("--d", bound_d, "width bound; -1 only reports");

    // exact
    int threads = 1;
    std::string seq_out, graph_out, order_out, structure_out, matrix_out;
    auto* exact = app.add_subcommand("exact", "exact twin-width with a witness sequence");
    exact->add_option("graph", graph_path)->required();
    exact->add_option("--threads", threads)->check(CLI::PositiveNumber);
    exact->add_option("--seq-out", seq_out);

    // greedy
    auto* greedy = app.add_subcommand("greedy", "greedy upper-bound sequence");
    greedy->add_option("graph", graph_path)->required();
    greedy->add_option("--seq-out", seq_out);

    // construct family
    auto* construct = app.add_subcommand("construct", "bounded-width constructions");
    construct->require_subcommand(1);

    int grid_d = 2, grid_n = 2;
    auto* c_grid = construct->add_subcommand("grid", "collapse the all-red d-dimensional grid");
    c_grid->add_option("--d", grid_d)->required()->check(CLI::PositiveNumber);
    c_grid->add_option("--n", grid_n)->required()->check(CLI::PositiveNumber);
    c_grid->add_option("--seq-out", seq_out);
    c_grid->add_option("--graph-out", graph_out);

    std::string tree_path;
    int boolw_k = 0;
    auto* c_boolw = construct->add_subcommand("boolw", "schedule from a boolean-width certificate");
    c_boolw->add_option("graph", graph_path)->required();
    c_boolw->add_option("tree", tree_path)->required();
    c_boolw->add_option("--k", boolw_k)->required()->check(CLI::Range(0, 8));
    c_boolw->add_option("--seq-out", seq_out);

    std::string points_path;
    auto* c_kings = construct->add_subcommand("kings", "collapse a kings graph on lattice points");
    c_kings->add_option("points", points_path)->required();
    c_kings->add_option("--seq-out", seq_out);
    c_kings->add_option("--graph-out", graph_out);

    std::string balls_path;
    auto* c_ball = construct->add_subcommand("unitball", "collapse a unit-ball intersection graph");
    c_ball->add_option("balls", balls_path)->required();
    c_ball->add_option("--seq-out", seq_out);
    c_ball->add_option("--graph-out", graph_out);

    std::string arcs_path;
    bool transitive_closure = false;
    auto* c_poset = construct->add_subcommand("poset", "chain order and structure of a poset");
    c_poset->add_option("arcs", arcs_path)->required();
    c_poset->add_flag("--transitive-closure", transitive_closure, "close the arcs transitively");
    c_poset->add_option("--structure-out", structure_out);
    c_poset->add_option("--order-out", order_out);

    std::string perm_path;
    auto* c_perm = construct->add_subcommand("perm", "two-orders-plus-matching structure");
    c_perm->add_option("perm", perm_path)->required();
    c_perm->add_option("--structure-out", structure_out);
    c_perm->add_option("--order-out", order_out);
    c_perm->add_option("--matrix-out", matrix_out);

    auto* c_lexdfs = construct->add_subcommand("lexdfs", "component-maximizing DFS order");
    c_lexdfs->add_option("graph", graph_path)->required();
    c_lexdfs->add_option("--order-out", order_out);

    // order-to-seq
    std::string structure_path, order_path;
    int minor_t = 1;
    long long threshold = -1;
    auto* o2s = app.add_subcommand("order-to-seq", "matrix pipeline from a vertex order");
    o2s->add_option("structure", structure_path)->required();
    o2s->add_option("order", order_path)->required();
    o2s->add_option("--t", minor_t)->required()->check(CLI::PositiveNumber);
    o2s->add_option("--threshold", threshold, "mixed-value threshold; -1 = derived");
    o2s->add_option("--seq-out", seq_out);

    // mixed-minor
    std::string matrix_path;
    bool grid_minor = false;
    std::uint64_t seed = 0;
    auto* minor = app.add_subcommand("mixed-minor", "search a t-mixed (or t-grid) minor");
    minor->add_option("matrix", matrix_path)->required();
    minor->add_option("--t", minor_t)->required()->check(CLI::PositiveNumber);
    minor->add_flag("--grid", grid_minor, "search a grid minor instead");
    minor->add_option("--seed", seed, "sampling seed beyond the exhaustive cap");

    // mc
    bool stats = false, tight_radii = false;
    auto* mc = app.add_subcommand("mc", "first-order model check along a sequence");
    mc->add_option("graph", graph_path)->required();
    mc->add_option("seq", seq_path)->required();
    mc->add_option("formula", formula_text)->required();
    mc->add_flag("--stats", stats, "print dynamic-program statistics");
    mc->add_flag("--tight-radii", tight_radii, "refresh with the tuple-span radii");

    // interpret
    std::string out_path;
    auto* interp = app.add_subcommand("interpret", "graph defined by a two-free-variable formula");
    interp->add_option("graph", graph_path)->required();
    interp->add_option("seq", seq_path)->required();
    interp->add_option("formula", formula_text)->required();
    interp->add_option("--out", out_path);

    // dot
    auto* dot = app.add_subcommand("dot", "DOT export of a trigraph");
    dot->add_option("graph", graph_path)->required();
    dot->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (!caps_spec.empty()) caps = apply_caps_spec(caps, caps_spec);

        if (verify->parsed()) return run_verify(graph_path, seq_path, bound_d);
        if (exact->parsed()) return run_exact(graph_path, threads, caps, seq_out);
        if (greedy->parsed()) return run_greedy(graph_path, seq_out);

        if (c_grid->parsed()) {
            ContractionSequence seq = grid_sequence(grid_d, grid_n);
            std::cout << "d=" << grid_d << "\nn=" << grid_n << "\n";
            return finish_construct(seq, 3 * grid_d, seq_out, graph_out);
        }
        if (c_boolw->parsed()) {
            Trigraph g = read_graph_file(graph_path);
            DecompositionTree t = read_decomposition_tree_file(tree_path);
            ContractionSequence seq = boolw_sequence(g, t, boolw_k);
            std::cout << "k=" << boolw_k << "\n";
            return finish_construct(seq, (1 << (boolw_k + 1)) - 1, seq_out, graph_out);
        }
        if (c_kings->parsed()) {
            std::vector<std::vector<int>> pts = read_points_file(points_path);
            if (pts.empty()) throw UsageError("no points given");
            int d = static_cast<int>(pts[0].size());
            ContractionSequence seq = kings_sequence(pts);
            int bound = 2 * (static_cast<int>(std::pow(3, d)) - 1);
            std::cout << "d=" << d << "\npoints=" << pts.size() << "\n";
            return finish_construct(seq, bound, seq_out, graph_out);
        }
        if (c_ball->parsed()) {
            BallConfiguration c = read_balls_file(balls_path);
            Trigraph g;
            for (size_t i = 0; i < c.centers.size(); ++i) g.add_vertex(static_cast<int>(i) + 1);
            for (size_t i = 0; i < c.centers.size(); ++i)
                for (size_t j = i + 1; j < c.centers.size(); ++j) {
                    double d2 = 0;
                    for (int p = 0; p < c.d; ++p) {
                        double diff = c.centers[i][p] - c.centers[j][p];
                        d2 += diff * diff;
                    }
                    if (d2 <= 4.0 + 1e-9)
                        g.set_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                                   EdgeColor::Black);
                }
            int k = unit_ball_occupancy(c);
            int q = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(c.d))));
            int bound = static_cast<int>(std::pow(3 * q, c.d)) * std::max(k, 1);
            ContractionSequence seq = unit_ball_sequence(c, g);
            std::cout << "d=" << c.d << "\nballs=" << c.centers.size() << "\nk=" << k << "\n";
            return finish_construct(seq, bound, seq_out, graph_out);
        }
        if (c_poset->parsed()) {
            ArcList arcs = read_arcs_file(arcs_path);
            Poset p = Poset::from_arcs(arcs.n, arcs.arcs, transitive_closure);
            PosetOrderResult res = poset_order(p);
            std::cout << "n=" << p.n << "\nwidth=" << res.width << "\n";
            std::cout << "order=" << join(res.order) << "\n";
            if (!structure_out.empty()) write_structure_file(structure_out, poset_structure(p));
            if (!order_out.empty()) write_order_file(order_out, res.order);
            return kTrue;
        }
        if (c_perm->parsed()) {
            std::vector<int> tau = read_int_line_file(perm_path);
            PermutationStructureResult res = permutation_structure(tau);
            std::cout << "n=" << tau.size() << "\ndomain=" << res.structure.n << "\n";
            std::cout << "order=" << join(res.order) << "\n";
            if (!structure_out.empty()) write_structure_file(structure_out, res.structure);
            if (!order_out.empty()) write_order_file(order_out, res.order);
            if (!matrix_out.empty()) write_matrix_file(matrix_out, permutation_matrix(tau));
            return kTrue;
        }
        if (c_lexdfs->parsed()) {
            Trigraph g = read_graph_file(graph_path);
            std::vector<Vertex> order = lexdfs_order(g);
            std::cout << "order=" << join(order) << "\n";
            if (!order_out.empty()) write_order_file(order_out, order);
            return kTrue;
        }

        if (o2s->parsed()) {
            BinaryStructure s = read_structure_file(structure_path);
            std::vector<int> order = read_int_line_file(order_path);
            SymmetricPipelineResult res =
                symmetric_sequence_from_order(s, order, minor_t, threshold, caps);
            std::cout << "complete=" << (res.complete ? "true" : "false") << "\n";
            if (res.minor_check) {
                const char* st = res.minor_check->status == MinorStatus::Found ? "found"
                                 : res.minor_check->status == MinorStatus::AbsentCertified
                                     ? "absent"
                                     : "inconclusive";
                std::cout << "minor_check=" << st << "\n";
            }
            if (!res.complete) return kCapped;
            std::cout << "error=" << res.max_error << "\n";
            std::cout << "width=" << res.structure_report.width << "\n";
            print_steps(res.seq);
            maybe_write_sequence(seq_out, res.seq);
            return kTrue;
        }

        if (minor->parsed()) {
            AlphabetMatrix m = read_matrix_file(matrix_path);
            MinorResult res = grid_minor ? has_grid_minor(m, minor_t, caps, seed)
                                         : has_mixed_minor(m, minor_t, caps, seed);
            if (res.status == MinorStatus::Found) {
                std::cout << "found=true\n" << format_division(*res.witness) << "\n";
                return kTrue;
            }
            if (res.status == MinorStatus::AbsentCertified) {
                std::cout << "found=false\n";
                return kFalse;
            }
            std::cout << "inconclusive=true\n";
            return kCapped;
        }

        if (mc->parsed()) {
            Trigraph g = read_graph_file(graph_path);
            ContractionSequence seq = attach_sequence(g, read_sequence_file(seq_path));
            BinaryStructure s = BinaryStructure::from_graph(g);
            PrenexFormula f = to_prenex(formula_text);
            ModelChecker checker(std::move(s), std::move(seq), caps,
                                 tight_radii ? DpRadii::Tight : DpRadii::Wide);
            bool answer = checker.check(f);
            std::cout << (answer ? "true" : "false") << "\n";
            if (stats) {
                const auto& st = checker.stats(f.depth());
                long long shuffles = 0, largest = 0;
                int refreshed = 0;
                for (const DpStepStats& x : st) {
                    shuffles += x.shuffle_nodes;
                    largest = std::max(largest, x.largest_reduct);
                    refreshed = std::max(refreshed, x.parts_refreshed);
                }
                std::cout << "steps=" << st.size() << "\n"
                          << "max_parts_refreshed=" << refreshed << "\n"
                          << "max_reduct_nodes=" << largest << "\n"
                          << "shuffle_nodes=" << shuffles << "\n";
            }
            return answer ? kTrue : kFalse;
        }

        if (interp->parsed()) {
            Trigraph g = read_graph_file(graph_path);
            ContractionSequence seq = attach_sequence(g, read_sequence_file(seq_path));
            BinaryStructure s = BinaryStructure::from_graph(g);
            PrenexFormula f = to_prenex(formula_text);
            Trigraph out = interpret(s, seq, f, caps);
            if (out_path.empty()) {
                write_graph(std::cout, out);
            } else {
                write_graph_file(out_path, out);
            }
            return kTrue;
        }

        if (dot->parsed()) {
            Trigraph g = read_graph_file(graph_path);
            std::string text = to_dot(g);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path);
                if (!out) throw UsageError("cannot write '" + out_path + "'");
                out << text;
            }
            return kTrue;
        }

        std::cerr << "no subcommand selected\n";
        return kUsage;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCapped;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
