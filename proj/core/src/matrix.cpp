#include "tww/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace tww {

AlphabetMatrix::AlphabetMatrix(int rows, int cols, std::vector<std::string> alphabet)
    : rows_(rows), cols_(cols), alphabet_(std::move(alphabet)) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (alphabet_.empty()) throw std::invalid_argument("empty alphabet");
    std::set<std::string> seen;
    for (auto& s : alphabet_) {
        if (s.empty() || s == "r") throw std::invalid_argument("bad alphabet symbol");
        if (!seen.insert(s).second) throw std::invalid_argument("duplicate alphabet symbol " + s);
    }
    cells_.assign(static_cast<size_t>(rows_) * cols_, 0);
}

AlphabetMatrix AlphabetMatrix::zero_one(int rows, int cols) {
    return AlphabetMatrix(rows, cols, {"0", "1"});
}

int AlphabetMatrix::code_of(const std::string& symbol) const {
    for (size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == symbol) return static_cast<int>(i);
    return -1;
}

void AlphabetMatrix::check(int i, int j) const {
    if (i < 1 || i > rows_ || j < 1 || j > cols_)
        throw std::out_of_range("matrix index out of range");
}

int AlphabetMatrix::get(int i, int j) const {
    check(i, j);
    return cells_[static_cast<size_t>(i - 1) * cols_ + (j - 1)];
}

void AlphabetMatrix::set(int i, int j, int code) {
    check(i, j);
    if (code != RED && (code < 0 || code >= alphabet_size()))
        throw std::invalid_argument("entry code outside alphabet");
    cells_[static_cast<size_t>(i - 1) * cols_ + (j - 1)] = code;
}

std::string AlphabetMatrix::symbol_at(int i, int j) const {
    int c = get(i, j);
    return c == RED ? "r" : alphabet_[c];
}

bool AlphabetMatrix::has_red() const {
    return std::find(cells_.begin(), cells_.end(), RED) != cells_.end();
}

bool AlphabetMatrix::is_zero_one() const {
    for (auto& s : alphabet_)
        if (s != "0" && s != "1") return false;
    return true;
}

namespace {

void check_zone(const AlphabetMatrix& m, Zone z) {
    if (z.r1 < 1 || z.r2 > m.rows() || z.r1 > z.r2 || z.c1 < 1 || z.c2 > m.cols() || z.c1 > z.c2)
        throw std::invalid_argument("bad zone");
}

}  // namespace

bool is_vertical(const AlphabetMatrix& m, Zone z) {
    check_zone(m, z);
    for (int i = z.r1; i < z.r2; ++i)
        for (int j = z.c1; j <= z.c2; ++j)
            if (m.get(i, j) != m.get(i + 1, j)) return false;
    return true;
}

bool is_horizontal(const AlphabetMatrix& m, Zone z) {
    check_zone(m, z);
    for (int j = z.c1; j < z.c2; ++j)
        for (int i = z.r1; i <= z.r2; ++i)
            if (m.get(i, j) != m.get(i, j + 1)) return false;
    return true;
}

bool is_constant(const AlphabetMatrix& m, Zone z) {
    check_zone(m, z);
    int first = m.get(z.r1, z.c1);
    for (int i = z.r1; i <= z.r2; ++i)
        for (int j = z.c1; j <= z.c2; ++j)
            if (m.get(i, j) != first) return false;
    return true;
}

bool is_mixed(const AlphabetMatrix& m, Zone z) {
    return !is_vertical(m, z) && !is_horizontal(m, z);
}

bool is_mixed(const AlphabetMatrix& m) {
    return is_mixed(m, Zone{1, m.rows(), 1, m.cols()});
}

std::vector<std::pair<int, int>> corners(const AlphabetMatrix& m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i < m.rows(); ++i)
        for (int j = 1; j < m.cols(); ++j)
            if (is_mixed(m, Zone{i, i + 1, j, j + 1})) out.emplace_back(i, j);
    return out;
}

Division Division::finest(int rows, int cols) {
    Division d;
    for (int i = 1; i <= rows; ++i) d.row_ends.push_back(i);
    for (int j = 1; j <= cols; ++j) d.col_ends.push_back(j);
    return d;
}

Division Division::coarsest(int rows, int cols) {
    return Division{{rows}, {cols}};
}

std::pair<int, int> Division::row_range(int i) const {
    return {i == 0 ? 1 : row_ends[i - 1] + 1, row_ends[i]};
}

std::pair<int, int> Division::col_range(int j) const {
    return {j == 0 ? 1 : col_ends[j - 1] + 1, col_ends[j]};
}

Zone Division::zone(int i, int j) const {
    auto [r1, r2] = row_range(i);
    auto [c1, c2] = col_range(j);
    return Zone{r1, r2, c1, c2};
}

MatrixPartitionPair MatrixPartitionPair::finest(int rows, int cols) {
    MatrixPartitionPair p;
    for (int i = 1; i <= rows; ++i) p.row_parts.push_back({i});
    for (int j = 1; j <= cols; ++j) p.col_parts.push_back({j});
    return p;
}

MatrixPartitionPair MatrixPartitionPair::from_division(const Division& d) {
    MatrixPartitionPair p;
    for (int i = 0; i < d.row_parts(); ++i) {
        auto [a, b] = d.row_range(i);
        std::vector<int> part;
        for (int r = a; r <= b; ++r) part.push_back(r);
        p.row_parts.push_back(std::move(part));
    }
    for (int j = 0; j < d.col_parts(); ++j) {
        auto [a, b] = d.col_range(j);
        std::vector<int> part;
        for (int c = a; c <= b; ++c) part.push_back(c);
        p.col_parts.push_back(std::move(part));
    }
    return p;
}

void MatrixPartitionPair::normalize() {
    auto norm = [](std::vector<std::vector<int>>& parts) {
        for (auto& p : parts) std::sort(p.begin(), p.end());
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    };
    norm(row_parts);
    norm(col_parts);
}

void MatrixPartitionPair::validate(int rows, int cols) const {
    auto check = [](const std::vector<std::vector<int>>& parts, int n, const char* what) {
        std::vector<char> seen(n + 1, 0);
        for (auto& p : parts) {
            if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty part");
            for (int x : p) {
                if (x < 1 || x > n || seen[x])
                    throw std::invalid_argument(std::string(what) + ": not a partition");
                seen[x] = 1;
            }
        }
        for (int x = 1; x <= n; ++x)
            if (!seen[x]) throw std::invalid_argument(std::string(what) + ": uncovered index");
    };
    check(row_parts, rows, "row partition");
    check(col_parts, cols, "column partition");
}

namespace {

// part_of[x] = index of the coarser part containing x, or -1 on a violation.
std::vector<int> containment(const std::vector<std::vector<int>>& fine,
                             const std::vector<std::vector<int>>& coarse, int n) {
    std::vector<int> owner(n + 1, -1);
    for (size_t i = 0; i < coarse.size(); ++i)
        for (int x : coarse[i]) owner[x] = static_cast<int>(i);
    std::vector<int> result(fine.size(), -1);
    for (size_t i = 0; i < fine.size(); ++i) {
        int o = owner[fine[i].front()];
        bool ok = o >= 0;
        for (int x : fine[i]) ok = ok && owner[x] == o;
        result[i] = ok ? o : -1;
    }
    return result;
}

int max_index(const std::vector<std::vector<int>>& parts) {
    int n = 0;
    for (auto& p : parts)
        for (int x : p) n = std::max(n, x);
    return n;
}

}  // namespace

bool MatrixPartitionPair::refines(const MatrixPartitionPair& coarser) const {
    auto rows = containment(row_parts, coarser.row_parts, max_index(coarser.row_parts));
    auto cols = containment(col_parts, coarser.col_parts, max_index(coarser.col_parts));
    auto ok = [](const std::vector<int>& v) {
        return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
    };
    return ok(rows) && ok(cols);
}

int MatrixPartitionPair::refinement_factor(const MatrixPartitionPair& coarser) const {
    auto factor = [](const std::vector<std::vector<int>>& fine,
                     const std::vector<std::vector<int>>& coarse) {
        auto owner = containment(fine, coarse, max_index(coarse));
        std::vector<int> count(coarse.size(), 0);
        for (int o : owner) {
            if (o < 0) throw std::invalid_argument("refinement violated");
            ++count[o];
        }
        return *std::max_element(count.begin(), count.end());
    };
    return std::max(factor(row_parts, coarser.row_parts), factor(col_parts, coarser.col_parts));
}

MixedValueEntry mixed_value_row_part(const AlphabetMatrix& m, const Division& d, int part) {
    auto [r1, r2] = d.row_range(part);
    MixedValueEntry e;
    for (int j = 0; j < d.col_parts(); ++j)
        if (is_mixed(m, d.zone(part, j))) ++e.zones;
    for (int j = 0; j + 1 < d.col_parts(); ++j) {
        int cut = d.col_ends[j];
        if (is_mixed(m, Zone{r1, r2, cut, cut + 1})) ++e.cuts;
    }
    e.value = e.zones + e.cuts;
    return e;
}

MixedValueEntry mixed_value_col_part(const AlphabetMatrix& m, const Division& d, int part) {
    auto [c1, c2] = d.col_range(part);
    MixedValueEntry e;
    for (int i = 0; i < d.row_parts(); ++i)
        if (is_mixed(m, d.zone(i, part))) ++e.zones;
    for (int i = 0; i + 1 < d.row_parts(); ++i) {
        int cut = d.row_ends[i];
        if (is_mixed(m, Zone{cut, cut + 1, c1, c2})) ++e.cuts;
    }
    e.value = e.zones + e.cuts;
    return e;
}

MixedReport mixed_report(const AlphabetMatrix& m, const Division& d) {
    MixedReport rep;
    for (int i = 0; i < d.row_parts(); ++i) rep.rows.push_back(mixed_value_row_part(m, d, i));
    for (int j = 0; j < d.col_parts(); ++j) rep.cols.push_back(mixed_value_col_part(m, d, j));
    for (auto& e : rep.rows) rep.global = std::max(rep.global, e.value);
    for (auto& e : rep.cols) rep.global = std::max(rep.global, e.value);
    return rep;
}

namespace {

bool part_zone_constant(const AlphabetMatrix& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    int first = m.get(rows.front(), cols.front());
    for (int i : rows)
        for (int j : cols)
            if (m.get(i, j) != first) return false;
    return true;
}

}  // namespace

int error_value(const MatrixPartitionPair& p, const AlphabetMatrix& m) {
    p.validate(m.rows(), m.cols());
    int worst = 0;
    for (auto& rp : p.row_parts) {
        int bad = 0;
        for (auto& cp : p.col_parts)
            if (!part_zone_constant(m, rp, cp)) ++bad;
        worst = std::max(worst, bad);
    }
    for (auto& cp : p.col_parts) {
        int bad = 0;
        for (auto& rp : p.row_parts)
            if (!part_zone_constant(m, rp, cp)) ++bad;
        worst = std::max(worst, bad);
    }
    return worst;
}

AlphabetMatrix matrix_contract(const AlphabetMatrix& m, int a, int b, Axis axis) {
    if (a == b) throw std::invalid_argument("matrix_contract: equal indices");
    if (axis == Axis::Row) {
        if (a < 1 || a > m.rows() || b < 1 || b > m.rows())
            throw std::out_of_range("matrix_contract: row out of range");
        AlphabetMatrix out(m.rows() - 1, m.cols(), m.alphabet());
        int oi = 0;
        for (int i = 1; i <= m.rows(); ++i) {
            if (i == b) continue;
            ++oi;
            for (int j = 1; j <= m.cols(); ++j) {
                int v = m.get(i, j);
                if (i == a && v != m.get(b, j)) v = AlphabetMatrix::RED;
                out.set(oi, j, v);
            }
        }
        return out;
    }
    if (a < 1 || a > m.cols() || b < 1 || b > m.cols())
        throw std::out_of_range("matrix_contract: column out of range");
    AlphabetMatrix out(m.rows(), m.cols() - 1, m.alphabet());
    for (int i = 1; i <= m.rows(); ++i) {
        int oj = 0;
        for (int j = 1; j <= m.cols(); ++j) {
            if (j == b) continue;
            ++oj;
            int v = m.get(i, j);
            if (j == a && v != m.get(i, b)) v = AlphabetMatrix::RED;
            out.set(i, oj, v);
        }
    }
    return out;
}

int red_number(const AlphabetMatrix& m) {
    int best = 0;
    for (int i = 1; i <= m.rows(); ++i) {
        int count = 0;
        for (int j = 1; j <= m.cols(); ++j)
            if (m.get(i, j) == AlphabetMatrix::RED) ++count;
        best = std::max(best, count);
    }
    for (int j = 1; j <= m.cols(); ++j) {
        int count = 0;
        for (int i = 1; i <= m.rows(); ++i)
            if (m.get(i, j) == AlphabetMatrix::RED) ++count;
        best = std::max(best, count);
    }
    return best;
}

AlphabetMatrix contract_by_partition(const AlphabetMatrix& m, const MatrixPartitionPair& pair) {
    MatrixPartitionPair p = pair;
    p.normalize();
    p.validate(m.rows(), m.cols());
    AlphabetMatrix out(static_cast<int>(p.row_parts.size()), static_cast<int>(p.col_parts.size()),
                       m.alphabet());
    for (size_t i = 0; i < p.row_parts.size(); ++i) {
        for (size_t j = 0; j < p.col_parts.size(); ++j) {
            bool constant = part_zone_constant(m, p.row_parts[i], p.col_parts[j]);
            out.set(static_cast<int>(i + 1), static_cast<int>(j + 1),
                    constant ? m.get(p.row_parts[i].front(), p.col_parts[j].front())
                             : AlphabetMatrix::RED);
        }
    }
    return out;
}

namespace {

// Prefix-counted zone predicates: ones for grid minors, corner positions for
// mixed minors (a zone is mixed iff it contains a corner).
class ZoneOracle {
  public:
    ZoneOracle(const AlphabetMatrix& m, bool mixed) : rows_(m.rows()), cols_(m.cols()) {
        pref_.assign(static_cast<size_t>(rows_ + 1) * (cols_ + 1), 0);
        for (int i = 1; i <= rows_; ++i) {
            for (int j = 1; j <= cols_; ++j) {
                int hit = 0;
                if (mixed) {
                    hit = i < rows_ && j < cols_ && is_mixed(m, Zone{i, i + 1, j, j + 1}) ? 1 : 0;
                } else {
                    hit = m.symbol_at(i, j) == "1" ? 1 : 0;
                }
                at(i, j) = at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1) + hit;
            }
        }
        mixed_ = mixed;
    }

    bool good(Zone z) const {
        int r2 = z.r2, c2 = z.c2;
        if (mixed_) {
            // corner top-left positions must fit strictly inside the zone
            r2 -= 1;
            c2 -= 1;
            if (r2 < z.r1 || c2 < z.c1) return false;
        }
        return count(z.r1, r2, z.c1, c2) > 0;
    }

  private:
    int& at(int i, int j) { return pref_[static_cast<size_t>(i) * (cols_ + 1) + j]; }
    int at(int i, int j) const { return pref_[static_cast<size_t>(i) * (cols_ + 1) + j]; }
    int count(int r1, int r2, int c1, int c2) const {
        return at(r2, c2) - at(r1 - 1, c2) - at(r2, c1 - 1) + at(r1 - 1, c1 - 1);
    }

    int rows_, cols_;
    bool mixed_ = false;
    std::vector<int> pref_;
};

// Greedily closes column parts left to right; exact because both zone
// predicates are monotone under widening a zone.
std::optional<std::vector<int>> greedy_columns(const ZoneOracle& oracle,
                                               const std::vector<int>& row_ends, int t, int cols) {
    std::vector<int> col_ends;
    int c1 = 1;
    for (int part = 0; part < t; ++part) {
        bool closed = false;
        for (int c = c1; c <= cols - (t - 1 - part); ++c) {
            bool all_good = true;
            int r1 = 1;
            for (int re : row_ends) {
                if (!oracle.good(Zone{r1, re, c1, c})) {
                    all_good = false;
                    break;
                }
                r1 = re + 1;
            }
            if (all_good) {
                col_ends.push_back(part == t - 1 ? cols : c);
                c1 = c + 1;
                closed = true;
                break;
            }
        }
        if (!closed) return std::nullopt;
    }
    return col_ends;
}

MinorResult minor_search(const AlphabetMatrix& m, int t, bool mixed, int cap, std::uint64_t seed) {
    if (t < 1) throw std::invalid_argument("minor order must be >= 1");
    MinorResult res;
    if (m.rows() < t || m.cols() < t) {
        res.status = MinorStatus::AbsentCertified;
        return res;
    }

    ZoneOracle oracle(m, mixed);
    auto try_row_division = [&](const std::vector<int>& cuts) -> std::optional<Division> {
        std::vector<int> row_ends = cuts;
        row_ends.push_back(m.rows());
        auto cols = greedy_columns(oracle, row_ends, t, m.cols());
        if (!cols) return std::nullopt;
        return Division{row_ends, *cols};
    };

    if (t == 1 || (m.rows() <= cap && m.cols() <= cap)) {
        // lexicographic enumeration of all (t-1)-cut row divisions
        std::vector<int> cuts(t - 1);
        for (int i = 0; i < t - 1; ++i) cuts[i] = i + 1;
        while (true) {
            if (auto w = try_row_division(cuts)) {
                res.status = MinorStatus::Found;
                res.witness = *w;
                return res;
            }
            int k = t - 2;
            while (k >= 0 && cuts[k] == m.rows() - 1 - (t - 2 - k)) --k;
            if (k < 0) break;
            ++cuts[k];
            for (int i = k + 1; i < t - 1; ++i) cuts[i] = cuts[i - 1] + 1;
        }
        res.status = MinorStatus::AbsentCertified;
        return res;
    }

    std::mt19937_64 rng(seed);
    const int samples = 20000;
    for (int it = 0; it < samples; ++it) {
        std::set<int> cut_set;
        while (static_cast<int>(cut_set.size()) < t - 1)
            cut_set.insert(1 + static_cast<int>(rng() % (m.rows() - 1)));
        std::vector<int> cuts(cut_set.begin(), cut_set.end());
        if (auto w = try_row_division(cuts)) {
            res.status = MinorStatus::Found;
            res.witness = *w;
            return res;
        }
    }
    res.status = MinorStatus::Inconclusive;
    return res;
}

}  // namespace

MinorResult has_grid_minor(const AlphabetMatrix& m, int t, const Caps& caps, std::uint64_t seed) {
    if (!m.is_zero_one()) throw std::invalid_argument("grid minors need a 0/1 matrix");
    return minor_search(m, t, false, caps.grid_minor_n, seed);
}

MinorResult has_mixed_minor(const AlphabetMatrix& m, int t, const Caps& caps, std::uint64_t seed) {
    return minor_search(m, t, true, caps.mixed_minor_n, seed);
}

double marcus_tardos_constant(int t) {
    return 8.0 / 3.0 * (t + 1.0) * (t + 1.0) * std::exp2(4.0 * t);
}

}  // namespace tww
