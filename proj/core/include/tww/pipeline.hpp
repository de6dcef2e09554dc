#pragma once

#include <optional>
#include <vector>

#include "tww/binary_structure.hpp"
#include "tww/caps.hpp"
#include "tww/matrix.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// min(2 * marcus_tardos_constant(t), cap); the full constant is sound but
// astronomically loose, so a small cap keeps greedy fusion meaningful.
long long effective_threshold(int t, long long requested = -1, long long cap = 64);

// Greedy fusion chain from the finest division towards the coarsest, keeping
// every part's mixed value <= threshold. Sides alternate starting from the
// one with more parts (ties: rows); adjacent pairs are scanned left to right
// and the first admissible fusion is taken. When stuck, `obstruction` holds
// the 0/1 mixed-zone indicator matrix of the last division.
struct DivisionSequenceResult {
    std::vector<Division> divisions;  // finest first, one fusion per step
    bool complete = false;
    std::optional<AlphabetMatrix> obstruction;
};

DivisionSequenceResult division_sequence(const AlphabetMatrix& m, int t, long long threshold = -1);

// Symmetric variant for square matrices: row i and column i are always fused
// together, keeping both partitions equal at every step.
DivisionSequenceResult symmetric_division_sequence(const AlphabetMatrix& m, int t,
                                                   long long threshold = -1);

// Splits every part of every division by its entry pattern on the non-mixed
// side runs (rows over maximal runs of column parts free of mixed zones and
// mixed cuts, columns symmetrically). One output pair per input division;
// consecutive outputs form a refinement chain.
std::vector<MatrixPartitionPair> refine_to_partition_sequence(const std::vector<Division>& divs,
                                                              const AlphabetMatrix& m);

struct MatrixContractionStep {
    Axis axis = Axis::Row;
    int a = 0;  // b is merged into a; 1-based indices of the current matrix
    int b = 0;
};

struct MatrixContractionResult {
    std::vector<MatrixContractionStep> steps;
    std::vector<int> per_step_red;  // red_number after each elementary step
    int max_red = 0;
};

// Elementary merge schedule realizing the coarsening chain: per chain step,
// row merges first and then column merges, target parts in least-element
// order. A final segment down to the one-part pair is appended when the last
// input pair is not already trivial.
MatrixContractionResult coarsening_to_contractions(const std::vector<MatrixPartitionPair>& pairs,
                                                   const AlphabetMatrix& m);

// 0/1 adjacency matrix of a plain graph with rows/columns in `order`.
AlphabetMatrix adjacency_matrix(const Trigraph& g, const std::vector<Vertex>& order);

// First-bullet property check: a matrix ordered by the leaf order of a valid
// width-t sequence must be (2t+2)-mixed free. Throws CapError when the minor
// search cannot certify either way.
bool twin_ordered_is_mixed_free(const AlphabetMatrix& m, const ContractionSequence& seq,
                                const Caps& caps = {});

// Adjacency encoding of a binary structure under a vertex order. Cell (i,j)
// holds one value per relation: 2 both arcs, 1 forward only, -1 backward
// only, 0 none; diagonal cells use 1 for a loop and 0 otherwise. Symbols are
// the comma-joined value tuples.
struct EncodedStructure {
    AlphabetMatrix matrix;
    std::vector<Vertex> order;  // row/column i is vertex order[i-1]
    int relation_count = 0;
};

EncodedStructure encode_adjacency(const BinaryStructure& s, const std::vector<Vertex>& order);

// Off-diagonal invariant of every encoded structure: values in {0,2} match
// their mirror entry, values in {-1,1} are the mirror's negation.
bool mixed_symmetric(const EncodedStructure& e);

// Replays the steps as a vertex partition of the structure's domain and
// reports the max degree of the non-homogeneous-pairs graph per level.
VerifyReport verify_structure_sequence(const BinaryStructure& s, const ContractionSequence& seq,
                                       int d);

// Full pipeline: encode under the order, symmetric division sequence,
// symmetric refinement, coarsening into paired row/column merges, and the
// resulting vertex contraction sequence (merged ids n + step).
struct SymmetricPipelineResult {
    bool complete = false;
    EncodedStructure encoded;
    std::optional<MinorResult> minor_check;  // only run within the mixed-minor cap
    DivisionSequenceResult division;
    std::vector<MatrixPartitionPair> pairs;
    ContractionSequence seq;
    std::vector<int> per_step_error;  // error value after each vertex merge
    int max_error = 0;
    VerifyReport structure_report;
};

SymmetricPipelineResult symmetric_sequence_from_order(const BinaryStructure& s,
                                                      const std::vector<Vertex>& order, int t,
                                                      long long threshold = -1,
                                                      const Caps& caps = {});

}  // namespace tww
