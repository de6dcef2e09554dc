#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tww/caps.hpp"

namespace tww {

// Matrix over a finite symbol alphabet; entries are stored as indices into
// the alphabet. All row/column indices in this module are 1-based. RED is the
// contraction error entry; it compares equal only to itself and never belongs
// to the alphabet of an input matrix.
class AlphabetMatrix {
  public:
    static constexpr int RED = -1;

    AlphabetMatrix() = default;
    AlphabetMatrix(int rows, int cols, std::vector<std::string> alphabet);

    static AlphabetMatrix zero_one(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }

    int code_of(const std::string& symbol) const;  // -1 when absent
    int get(int i, int j) const;
    void set(int i, int j, int code);
    std::string symbol_at(int i, int j) const;  // "r" for RED

    bool has_red() const;
    bool is_zero_one() const;  // alphabet within {"0","1"}

    bool operator==(const AlphabetMatrix& other) const = default;

  private:
    void check(int i, int j) const;

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::string> alphabet_;
    std::vector<int> cells_;
};

// Inclusive 1-based corner coordinates of a contiguous submatrix.
struct Zone {
    int r1 = 0, r2 = 0, c1 = 0, c2 = 0;
};

// Vertical: all rows of the zone are identical. Horizontal: all columns are
// identical. Mixed: neither. Constant zones are both.
bool is_vertical(const AlphabetMatrix& m, Zone z);
bool is_horizontal(const AlphabetMatrix& m, Zone z);
bool is_constant(const AlphabetMatrix& m, Zone z);
bool is_mixed(const AlphabetMatrix& m, Zone z);
bool is_mixed(const AlphabetMatrix& m);

// Top-left positions (i,j) of all mixed 2x2 contiguous submatrices.
std::vector<std::pair<int, int>> corners(const AlphabetMatrix& m);

// Division into consecutive blocks, stored as the last index of each part.
struct Division {
    std::vector<int> row_ends;  // strictly increasing, back() == rows
    std::vector<int> col_ends;

    static Division finest(int rows, int cols);
    static Division coarsest(int rows, int cols);

    int row_parts() const { return static_cast<int>(row_ends.size()); }
    int col_parts() const { return static_cast<int>(col_ends.size()); }
    std::pair<int, int> row_range(int i) const;  // 0-based part -> 1-based range
    std::pair<int, int> col_range(int j) const;
    Zone zone(int i, int j) const;

    bool operator==(const Division& other) const = default;
};

// Row and column partitions into arbitrary (not necessarily consecutive)
// index sets. Parts are sorted internally and listed by least element.
struct MatrixPartitionPair {
    std::vector<std::vector<int>> row_parts;
    std::vector<std::vector<int>> col_parts;

    static MatrixPartitionPair finest(int rows, int cols);
    static MatrixPartitionPair from_division(const Division& d);
    void normalize();
    void validate(int rows, int cols) const;
    bool refines(const MatrixPartitionPair& coarser) const;
    // Max over coarser parts of the number of own parts inside it.
    int refinement_factor(const MatrixPartitionPair& coarser) const;

    bool operator==(const MatrixPartitionPair& other) const = default;
};

// Mixed value of one division part against the other side's division:
// number of mixed zones plus number of mixed boundary cuts (the 2-row or
// 2-column strips between consecutive parts of the other side).
struct MixedValueEntry {
    int zones = 0;
    int cuts = 0;
    int value = 0;
};

MixedValueEntry mixed_value_row_part(const AlphabetMatrix& m, const Division& d, int part);
MixedValueEntry mixed_value_col_part(const AlphabetMatrix& m, const Division& d, int part);

struct MixedReport {
    std::vector<MixedValueEntry> rows;
    std::vector<MixedValueEntry> cols;
    int global = 0;
};

MixedReport mixed_report(const AlphabetMatrix& m, const Division& d);

// Max over all parts (both sides) of the number of non-constant zones the
// part meets.
int error_value(const MatrixPartitionPair& p, const AlphabetMatrix& m);

enum class Axis { Row, Col };

// Contracts b into a along `axis`: b's line is deleted and every mismatching
// entry of a's line becomes RED.
AlphabetMatrix matrix_contract(const AlphabetMatrix& m, int a, int b, Axis axis);

// Max number of RED entries over all rows and all columns.
int red_number(const AlphabetMatrix& m);

// One entry per zone: the common symbol when the zone is constant, RED
// otherwise. Parts are ordered by least member on both axes.
AlphabetMatrix contract_by_partition(const AlphabetMatrix& m, const MatrixPartitionPair& p);

// Grid/mixed minor search. Exhaustive over row divisions (columns are closed
// greedily, which is exact since both zone predicates are monotone under
// widening) up to the configured caps; beyond them a seeded sample of row
// divisions is tried and absence is no longer certified.
enum class MinorStatus { Found, AbsentCertified, Inconclusive };

struct MinorResult {
    MinorStatus status = MinorStatus::Inconclusive;
    std::optional<Division> witness;
};

MinorResult has_grid_minor(const AlphabetMatrix& m, int t, const Caps& caps = {},
                           std::uint64_t seed = 0);
MinorResult has_mixed_minor(const AlphabetMatrix& m, int t, const Caps& caps = {},
                            std::uint64_t seed = 0);

// 8/3 (t+1)^2 2^(4t), the grid-minor constant used for division thresholds.
double marcus_tardos_constant(int t);

}  // namespace tww
