#include "tww/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tww {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenized_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream split(raw);
        Line line{number, {}};
        std::string tok;
        while (split >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        fail(line, "expected an integer, got '" + tok + "'");
    return value;
}

double parse_double(const std::string& tok, int line) {
    try {
        size_t used = 0;
        double value = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + tok + "'");
    }
}

const Line& line_at(const std::vector<Line>& lines, size_t index, const std::string& what) {
    if (index >= lines.size())
        throw ParseError("unexpected end of input: missing " + what);
    return lines[index];
}

void expect_tokens(const Line& line, size_t count, const std::string& what) {
    if (line.tokens.size() != count)
        fail(line.number, "expected " + what + " (" + std::to_string(count) + " fields)");
}

Vertex parse_vertex(const std::string& tok, int n, int line) {
    int v = parse_int(tok, line);
    if (v < 1 || v > n) fail(line, "vertex " + tok + " outside 1.." + std::to_string(n));
    return v;
}

template <typename Reader>
auto from_file(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return reader(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

template <typename Writer>
void to_file(const std::string& path, Writer writer) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    writer(out);
    if (!out) throw ParseError("write to " + path + " failed");
}

std::vector<Vertex> contiguous_ids(const Trigraph& g, const std::string& who) {
    auto verts = g.vertices();
    for (size_t i = 0; i < verts.size(); ++i)
        if (verts[i] != static_cast<Vertex>(i) + 1)
            throw std::invalid_argument(who + " requires vertex ids 1..n");
    return verts;
}

}  // namespace

Trigraph read_graph(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "graph header `n m`");
    expect_tokens(head, 2, "graph header `n m`");
    int n = parse_int(head.tokens[0], head.number);
    int m = parse_int(head.tokens[1], head.number);
    if (n < 0 || m < 0) fail(head.number, "negative counts in header");

    Trigraph g;
    for (Vertex v = 1; v <= n; ++v) g.add_vertex(v);
    for (int e = 0; e < m; ++e) {
        const Line& line = line_at(lines, 1 + e, "edge line");
        bool red = line.tokens[0] == "R";
        expect_tokens(line, red ? 3 : 2, red ? "red edge `R u v`" : "edge `u v`");
        size_t base = red ? 1 : 0;
        Vertex u = parse_vertex(line.tokens[base], n, line.number);
        Vertex v = parse_vertex(line.tokens[base + 1], n, line.number);
        if (u == v) fail(line.number, "self-loop");
        if (g.has_edge(u, v)) fail(line.number, "duplicate edge");
        g.set_edge(u, v, red ? EdgeColor::Red : EdgeColor::Black);
    }
    if (lines.size() > static_cast<size_t>(1 + m))
        fail(lines[1 + m].number, "trailing content after " + std::to_string(m) + " edges");
    return g;
}

Trigraph read_graph_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_graph(in); });
}

void write_graph(std::ostream& out, const Trigraph& g) {
    auto verts = contiguous_ids(g, "write_graph");
    out << verts.size() << ' '
        << g.edge_count(EdgeColor::Black) + g.edge_count(EdgeColor::Red) << '\n';
    for (Vertex u : verts) {
        for (auto& [v, color] : g.neighbors(u)) {
            if (v < u) continue;
            if (color == EdgeColor::Red) out << "R ";
            out << u << ' ' << v << '\n';
        }
    }
}

void write_graph_file(const std::string& path, const Trigraph& g) {
    to_file(path, [&](std::ostream& out) { write_graph(out, g); });
}

SequenceFile read_sequence(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "sequence header `n`");
    expect_tokens(head, 1, "sequence header `n`");
    SequenceFile sf;
    sf.n = parse_int(head.tokens[0], head.number);
    if (sf.n < 0) fail(head.number, "negative vertex count");
    for (size_t i = 1; i < lines.size(); ++i) {
        expect_tokens(lines[i], 2, "contraction `u v`");
        int limit = sf.n + static_cast<int>(i) - 1;  // ids created so far
        Vertex u = parse_vertex(lines[i].tokens[0], limit, lines[i].number);
        Vertex v = parse_vertex(lines[i].tokens[1], limit, lines[i].number);
        sf.merges.emplace_back(u, v);
    }
    return sf;
}

SequenceFile read_sequence_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_sequence(in); });
}

ContractionSequence attach_sequence(const Trigraph& initial, const SequenceFile& sf) {
    auto verts = contiguous_ids(initial, "attach_sequence");
    if (static_cast<int>(verts.size()) != sf.n)
        throw std::invalid_argument("sequence header n=" + std::to_string(sf.n) +
                                    " does not match the graph on " +
                                    std::to_string(verts.size()) + " vertices");
    ContractionSequence seq;
    seq.initial = initial;
    for (size_t i = 0; i < sf.merges.size(); ++i)
        seq.steps.push_back(
            {sf.merges[i].first, sf.merges[i].second, sf.n + static_cast<Vertex>(i) + 1});
    return seq;
}

void write_sequence(std::ostream& out, const ContractionSequence& seq) {
    auto verts = contiguous_ids(seq.initial, "write_sequence");
    const int n = static_cast<int>(verts.size());
    for (size_t i = 0; i < seq.steps.size(); ++i)
        if (seq.steps[i].w != n + static_cast<Vertex>(i) + 1)
            throw std::invalid_argument("sequence merged ids are not n+1, n+2, ...");
    out << n << '\n';
    for (auto& step : seq.steps) out << step.u << ' ' << step.v << '\n';
}

void write_sequence_file(const std::string& path, const ContractionSequence& seq) {
    to_file(path, [&](std::ostream& out) { write_sequence(out, seq); });
}

BinaryStructure read_structure(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "structure header `n r s`");
    expect_tokens(head, 3, "structure header `n r s`");
    BinaryStructure s;
    s.n = parse_int(head.tokens[0], head.number);
    int r = parse_int(head.tokens[1], head.number);
    int u = parse_int(head.tokens[2], head.number);
    if (s.n < 0 || r < 0 || u < 0) fail(head.number, "negative counts in header");

    size_t at = 1;
    auto block_header = [&](const char* keyword) {
        const Line& line = line_at(lines, at, std::string(keyword) + " block header");
        expect_tokens(line, 3, std::string("block header `") + keyword + " name k`");
        if (line.tokens[0] != keyword)
            fail(line.number, "expected keyword " + std::string(keyword));
        ++at;
        return std::pair{line.tokens[1], parse_int(line.tokens[2], line.number)};
    };

    for (int i = 0; i < r; ++i) {
        auto [name, k] = block_header("REL");
        std::set<std::pair<Vertex, Vertex>> pairs;
        for (int j = 0; j < k; ++j) {
            const Line& line = line_at(lines, at++, "relation pair `u v`");
            expect_tokens(line, 2, "relation pair `u v`");
            Vertex a = parse_vertex(line.tokens[0], s.n, line.number);
            Vertex b = parse_vertex(line.tokens[1], s.n, line.number);
            if (!pairs.insert({a, b}).second) fail(line.number, "duplicate pair");
        }
        s.relations.emplace_back(name, std::move(pairs));
    }
    for (int i = 0; i < u; ++i) {
        auto [name, k] = block_header("UNARY");
        std::set<Vertex> members;
        for (int j = 0; j < k; ++j) {
            const Line& line = line_at(lines, at++, "unary member line");
            expect_tokens(line, 1, "unary member");
            if (!members.insert(parse_vertex(line.tokens[0], s.n, line.number)).second)
                fail(line.number, "duplicate member");
        }
        s.unary.emplace_back(name, std::move(members));
    }
    if (at < lines.size()) fail(lines[at].number, "trailing content after the declared blocks");
    s.validate();
    return s;
}

BinaryStructure read_structure_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_structure(in); });
}

void write_structure(std::ostream& out, const BinaryStructure& s) {
    out << s.n << ' ' << s.relations.size() << ' ' << s.unary.size() << '\n';
    for (auto& [name, pairs] : s.relations) {
        out << "REL " << name << ' ' << pairs.size() << '\n';
        for (auto& [a, b] : pairs) out << a << ' ' << b << '\n';
    }
    for (auto& [name, members] : s.unary) {
        out << "UNARY " << name << ' ' << members.size() << '\n';
        for (Vertex v : members) out << v << '\n';
    }
}

void write_structure_file(const std::string& path, const BinaryStructure& s) {
    to_file(path, [&](std::ostream& out) { write_structure(out, s); });
}

AlphabetMatrix read_matrix(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "matrix header `rows cols alphabet...`");
    if (head.tokens.size() < 3)
        fail(head.number, "expected `rows cols` followed by at least one symbol");
    int rows = parse_int(head.tokens[0], head.number);
    int cols = parse_int(head.tokens[1], head.number);
    std::vector<std::string> alphabet(head.tokens.begin() + 2, head.tokens.end());

    AlphabetMatrix m(rows, cols, alphabet);
    for (int i = 1; i <= rows; ++i) {
        const Line& line = line_at(lines, i, "matrix row");
        expect_tokens(line, static_cast<size_t>(cols), "matrix row");
        for (int j = 1; j <= cols; ++j) {
            const std::string& sym = line.tokens[j - 1];
            if (sym == "r") {
                m.set(i, j, AlphabetMatrix::RED);
            } else {
                int code = m.code_of(sym);
                if (code < 0) fail(line.number, "symbol '" + sym + "' not in the alphabet");
                m.set(i, j, code);
            }
        }
    }
    if (lines.size() > static_cast<size_t>(1 + rows))
        fail(lines[1 + rows].number, "trailing content after the declared rows");
    return m;
}

AlphabetMatrix read_matrix_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_matrix(in); });
}

void write_matrix(std::ostream& out, const AlphabetMatrix& m) {
    out << m.rows() << ' ' << m.cols();
    for (auto& sym : m.alphabet()) out << ' ' << sym;
    out << '\n';
    for (int i = 1; i <= m.rows(); ++i) {
        for (int j = 1; j <= m.cols(); ++j) out << (j > 1 ? " " : "") << m.symbol_at(i, j);
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const AlphabetMatrix& m) {
    to_file(path, [&](std::ostream& out) { write_matrix(out, m); });
}

std::vector<int> read_int_line(std::istream& in) {
    auto lines = tokenized_lines(in);
    if (lines.empty()) throw ParseError("unexpected end of input: missing integer line");
    if (lines.size() > 1) fail(lines[1].number, "expected a single content line");
    std::vector<int> out;
    for (auto& tok : lines[0].tokens) out.push_back(parse_int(tok, lines[0].number));
    return out;
}

std::vector<int> read_int_line_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_int_line(in); });
}

ArcList read_arcs(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "arc list header `n m`");
    expect_tokens(head, 2, "arc list header `n m`");
    ArcList list;
    list.n = parse_int(head.tokens[0], head.number);
    int m = parse_int(head.tokens[1], head.number);
    if (list.n < 0 || m < 0) fail(head.number, "negative counts in header");
    for (int e = 0; e < m; ++e) {
        const Line& line = line_at(lines, 1 + e, "arc line `u v`");
        if (!line.tokens.empty() && line.tokens[0] == "R")
            fail(line.number, "red edges are not allowed in an arc list");
        expect_tokens(line, 2, "arc `u v`");
        list.arcs.emplace_back(parse_vertex(line.tokens[0], list.n, line.number),
                               parse_vertex(line.tokens[1], list.n, line.number));
    }
    if (lines.size() > static_cast<size_t>(1 + m))
        fail(lines[1 + m].number, "trailing content after " + std::to_string(m) + " arcs");
    return list;
}

ArcList read_arcs_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_arcs(in); });
}

BallConfiguration read_balls(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "dimension header `d`");
    expect_tokens(head, 1, "dimension header `d`");
    BallConfiguration c;
    c.d = parse_int(head.tokens[0], head.number);
    if (c.d < 1) fail(head.number, "dimension must be >= 1");
    for (size_t i = 1; i < lines.size(); ++i) {
        expect_tokens(lines[i], static_cast<size_t>(c.d), "center with d coordinates");
        std::vector<double> center;
        for (auto& tok : lines[i].tokens) center.push_back(parse_double(tok, lines[i].number));
        c.centers.push_back(std::move(center));
    }
    return c;
}

BallConfiguration read_balls_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_balls(in); });
}

std::vector<std::vector<int>> read_points(std::istream& in) {
    auto lines = tokenized_lines(in);
    const Line& head = line_at(lines, 0, "dimension header `d`");
    expect_tokens(head, 1, "dimension header `d`");
    int d = parse_int(head.tokens[0], head.number);
    if (d < 1) fail(head.number, "dimension must be >= 1");
    std::vector<std::vector<int>> points;
    for (size_t i = 1; i < lines.size(); ++i) {
        expect_tokens(lines[i], static_cast<size_t>(d), "point with d coordinates");
        std::vector<int> point;
        for (auto& tok : lines[i].tokens) point.push_back(parse_int(tok, lines[i].number));
        points.push_back(std::move(point));
    }
    return points;
}

std::vector<std::vector<int>> read_points_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_points(in); });
}

DecompositionTree read_decomposition_tree(std::istream& in) {
    auto lines = tokenized_lines(in);
    if (lines.empty()) throw ParseError("unexpected end of input: missing tree nodes");
    DecompositionTree t;
    bool first = true;
    for (auto& line : lines) {
        if (line.tokens[0] == "I") {
            expect_tokens(line, 4, "internal node `I id left right`");
            int id = parse_int(line.tokens[1], line.number);
            int left = parse_int(line.tokens[2], line.number);
            int right = parse_int(line.tokens[3], line.number);
            if (!t.children.emplace(id, std::pair{left, right}).second || t.leaf_label.count(id))
                fail(line.number, "node id repeated");
            if (first) t.root = id;
        } else if (line.tokens[0] == "L") {
            expect_tokens(line, 3, "leaf `L id vertex`");
            int id = parse_int(line.tokens[1], line.number);
            int v = parse_int(line.tokens[2], line.number);
            if (!t.leaf_label.emplace(id, v).second || t.children.count(id))
                fail(line.number, "node id repeated");
            if (first) t.root = id;
        } else {
            fail(line.number, "expected a node line starting with I or L");
        }
        first = false;
    }
    return t;
}

DecompositionTree read_decomposition_tree_file(const std::string& path) {
    return from_file(path, [](std::istream& in) { return read_decomposition_tree(in); });
}

std::string format_division(const Division& d) {
    auto side = [](const char* label, const std::vector<int>& ends) {
        std::string out = label;
        int start = 1;
        for (size_t p = 0; p < ends.size(); ++p) {
            out += " part" + std::to_string(p + 1) + "=" + std::to_string(start) + ".." +
                   std::to_string(ends[p]);
            start = ends[p] + 1;
        }
        return out + "\n";
    };
    return side("ROWS", d.row_ends) + side("COLS", d.col_ends);
}

std::string to_dot(const Trigraph& g) {
    std::ostringstream out;
    out << "graph {\n";
    for (Vertex v : g.vertices()) out << "  " << v << ";\n";
    for (Vertex u : g.vertices())
        for (auto& [v, color] : g.neighbors(u))
            if (u < v)
                out << "  " << u << " -- " << v
                    << (color == EdgeColor::Red ? " [color=red];\n" : ";\n");
    out << "}\n";
    return out.str();
}

}  // namespace tww
