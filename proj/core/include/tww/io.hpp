#pragma once

#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tww/binary_structure.hpp"
#include "tww/constructors.hpp"
#include "tww/matrix.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// All readers strip `#` comments, skip blank lines, and report 1-based line
// numbers in their diagnostics.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// header `n m`, then m edge lines `u v` (black) or `R u v` (red)
Trigraph read_graph(std::istream& in);
Trigraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Trigraph& g);
void write_graph_file(const std::string& path, const Trigraph& g);

// header `n`, then one `u v` per step; the merged id is n plus the step rank
struct SequenceFile {
    int n = 0;
    std::vector<std::pair<Vertex, Vertex>> merges;
};

SequenceFile read_sequence(std::istream& in);
SequenceFile read_sequence_file(const std::string& path);
ContractionSequence attach_sequence(const Trigraph& initial, const SequenceFile& sf);
void write_sequence(std::ostream& out, const ContractionSequence& seq);
void write_sequence_file(const std::string& path, const ContractionSequence& seq);

// header `n r s`, then r blocks `REL name k` of k pair lines and s blocks
// `UNARY name k` of k vertex lines
BinaryStructure read_structure(std::istream& in);
BinaryStructure read_structure_file(const std::string& path);
void write_structure(std::ostream& out, const BinaryStructure& s);
void write_structure_file(const std::string& path, const BinaryStructure& s);

// header `rows cols` followed by the alphabet symbols, then one row per line
AlphabetMatrix read_matrix(std::istream& in);
AlphabetMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const AlphabetMatrix& m);
void write_matrix_file(const std::string& path, const AlphabetMatrix& m);

// single content line of integers (permutations, vertex orders)
std::vector<int> read_int_line(std::istream& in);
std::vector<int> read_int_line_file(const std::string& path);

// graph header `n m` with m directed arc lines `u v`; red lines rejected
struct ArcList {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;
};

ArcList read_arcs(std::istream& in);
ArcList read_arcs_file(const std::string& path);

// `d`, then one center (d coordinates) per line
BallConfiguration read_balls(std::istream& in);
BallConfiguration read_balls_file(const std::string& path);

// same layout as ball input with integer coordinates
std::vector<std::vector<int>> read_points(std::istream& in);
std::vector<std::vector<int>> read_points_file(const std::string& path);

// one node per line, root first: `I id left right` or `L id vertex`
DecompositionTree read_decomposition_tree(std::istream& in);
DecompositionTree read_decomposition_tree_file(const std::string& path);

// two lines: `ROWS part1=1..3 part2=4..7 ...` and the same for `COLS`
std::string format_division(const Division& d);

std::string to_dot(const Trigraph& g);

}  // namespace tww
