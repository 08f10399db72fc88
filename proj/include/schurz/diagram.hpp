#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "schurz/errors.hpp"
#include "schurz/eval_result.hpp"
#include "schurz/notation.hpp"
#include "schurz/rational.hpp"

namespace schurz {

// Matrix orientation: row index grows downward, column index rightward.
// Diagonals are indexed by d = col - row.
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

// A connected skew Young diagram, normalized so that min row = min col = 1.
class SkewDiagram {
public:
    explicit SkewDiagram(std::vector<Cell> cells) : cells_(std::move(cells)) {
        if (cells_.empty()) throw parse_error("diagram has no cells");
        normalize();
        validate();
    }

    const std::vector<Cell>& cells() const noexcept { return cells_; }

    bool contains(int row, int col) const {
        return std::binary_search(cells_.begin(), cells_.end(),
                                  Cell{row, col});
    }

    bool is_corner(const Cell& c) const {
        return !contains(c.row + 1, c.col) && !contains(c.row, c.col + 1);
    }

    std::set<int> diagonals() const {
        std::set<int> out;
        for (const Cell& c : cells_) out.insert(c.col - c.row);
        return out;
    }

    bool operator==(const SkewDiagram& o) const { return cells_ == o.cells_; }

private:
    void normalize() {
        std::sort(cells_.begin(), cells_.end());
        cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
        int min_row = cells_.front().row;
        int min_col = cells_.front().col;
        for (const Cell& c : cells_) min_col = std::min(min_col, c.col);
        for (Cell& c : cells_) {
            c.row += 1 - min_row;
            c.col += 1 - min_col;
        }
        std::sort(cells_.begin(), cells_.end());
    }

    void validate() const {
        // Row segments must be contiguous and form a contiguous row range,
        // with both endpoints weakly decreasing downward; this is the
        // constructive form of "difference of two nested partitions".
        std::map<int, std::pair<int, int>> rows; // row -> [lo, hi]
        std::map<int, int> row_count;
        for (const Cell& c : cells_) {
            auto it = rows.find(c.row);
            if (it == rows.end()) {
                rows[c.row] = {c.col, c.col};
            } else {
                it->second.first = std::min(it->second.first, c.col);
                it->second.second = std::max(it->second.second, c.col);
            }
            row_count[c.row]++;
        }
        int prev_row = 0;
        for (auto& [row, span] : rows) {
            if (prev_row != 0 && row != prev_row + 1)
                throw parse_error("shape is not connected: empty row " +
                                  std::to_string(prev_row + 1));
            prev_row = row;
            if (row_count[row] != span.second - span.first + 1)
                throw parse_error("row " + std::to_string(row) +
                                  " is not contiguous");
        }
        std::pair<int, int> prev{0, 0};
        bool first = true;
        for (auto& [row, span] : rows) {
            if (!first && (span.first > prev.first || span.second > prev.second))
                throw parse_error("cells do not form a skew shape (row " +
                                  std::to_string(row) + ")");
            prev = span;
            first = false;
        }
        // Column segments contiguous.
        std::map<int, std::vector<int>> cols;
        for (const Cell& c : cells_) cols[c.col].push_back(c.row);
        for (auto& [col, rs] : cols) {
            for (std::size_t i = 1; i < rs.size(); ++i)
                if (rs[i] != rs[i - 1] + 1)
                    throw parse_error("column " + std::to_string(col) +
                                      " is not contiguous");
        }
        // Connectedness: exactly one cell with nothing above and nothing
        // to the right.
        int sources = 0;
        for (const Cell& c : cells_)
            if (!contains(c.row - 1, c.col) && !contains(c.row, c.col + 1))
                ++sources;
        if (sources != 1)
            throw parse_error("shape is not connected (found " +
                              std::to_string(sources) + " source cells)");
    }

    std::vector<Cell> cells_;
};

// Index with one exponent per cell, no diagonal constraint (the set T(lambda)
// when admissible).
class GeneralTableau {
public:
    GeneralTableau(SkewDiagram shape, std::vector<int> exponents)
        : shape_(std::move(shape)), exponents_(std::move(exponents)) {
        if (exponents_.size() != shape_.cells().size())
            throw parse_error("exponent count does not match cell count");
        for (int k : exponents_)
            if (k < 1) throw parse_error("exponents must be positive");
    }

    static GeneralTableau from_cells(
        const std::vector<std::pair<Cell, int>>& entries) {
        std::vector<std::pair<Cell, int>> sorted = entries;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Cell> cells;
        for (auto& [c, k] : sorted) cells.push_back(c);
        SkewDiagram shape(cells);
        // Normalization may have translated the cells; exponents follow the
        // original row-major order, which translation preserves.
        std::vector<int> exps;
        for (auto& [c, k] : sorted) exps.push_back(k);
        return GeneralTableau(std::move(shape), std::move(exps));
    }

    const SkewDiagram& shape() const noexcept { return shape_; }
    const std::vector<int>& exponents() const noexcept { return exponents_; }

    int exponent_at(const Cell& c) const {
        auto it = std::lower_bound(shape_.cells().begin(),
                                   shape_.cells().end(), c);
        if (it == shape_.cells().end() || !(*it == c))
            throw parse_error("cell not in shape");
        return exponents_[static_cast<std::size_t>(
            it - shape_.cells().begin())];
    }

    bool is_admissible() const {
        for (std::size_t i = 0; i < shape_.cells().size(); ++i)
            if (shape_.is_corner(shape_.cells()[i]) && exponents_[i] < 2)
                return false;
        return true;
    }

    bool operator==(const GeneralTableau& o) const {
        return shape_ == o.shape_ && exponents_ == o.exponents_;
    }

private:
    SkewDiagram shape_;
    std::vector<int> exponents_;
};

// Diagonal-constant index: one exponent per diagonal d = col - row
// (the set T^diag(lambda)).
class DiagonalTableau {
public:
    DiagonalTableau(SkewDiagram shape, std::map<int, int> diag_exponents)
        : shape_(std::move(shape)), diag_(std::move(diag_exponents)) {
        auto present = shape_.diagonals();
        for (int d : present)
            if (!diag_.count(d))
                throw parse_error("missing exponent for diagonal " +
                                  std::to_string(d));
        for (auto& [d, k] : diag_) {
            if (!present.count(d))
                throw parse_error("exponent for absent diagonal " +
                                  std::to_string(d));
            if (k < 1) throw parse_error("exponents must be positive");
        }
    }

    const SkewDiagram& shape() const noexcept { return shape_; }
    const std::map<int, int>& diag_exponents() const noexcept { return diag_; }

    int exponent_at(const Cell& c) const { return diag_.at(c.col - c.row); }

    bool is_admissible() const {
        for (const Cell& c : shape_.cells())
            if (shape_.is_corner(c) && exponent_at(c) < 2) return false;
        return true;
    }

    GeneralTableau to_general() const {
        std::vector<int> exps;
        for (const Cell& c : shape_.cells()) exps.push_back(exponent_at(c));
        return GeneralTableau(shape_, std::move(exps));
    }

    bool operator==(const DiagonalTableau& o) const {
        return shape_ == o.shape_ && diag_ == o.diag_;
    }

private:
    SkewDiagram shape_;
    std::map<int, int> diag_;
};

// One diagonal of a diagonal-constant tableau: its value d, the contiguous
// row interval it occupies, and its exponent.
struct DiagRun {
    int diag = 0;
    int row_lo = 0;
    int row_hi = 0;
    int exponent = 0;
    bool operator==(const DiagRun&) const = default;
};

// Diagonals listed in strictly decreasing d (top-right to bottom-left).
// Consecutive runs must step by (lo, hi) -> (lo or lo+1, hi or hi+1);
// anything else means the shape is not connected.
inline std::vector<DiagRun> diagonal_profile(const DiagonalTableau& t) {
    std::map<int, std::vector<int>> rows_by_diag;
    for (const Cell& c : t.shape().cells())
        rows_by_diag[c.col - c.row].push_back(c.row);
    std::vector<DiagRun> out;
    for (auto it = rows_by_diag.rbegin(); it != rows_by_diag.rend(); ++it) {
        auto& rows = it->second;
        std::sort(rows.begin(), rows.end());
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i] != rows[i - 1] + 1)
                throw parse_error("diagonal " + std::to_string(it->first) +
                                  " has non-contiguous rows");
        out.push_back(DiagRun{it->first, rows.front(), rows.back(),
                              t.diag_exponents().at(it->first)});
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].diag != out[i - 1].diag - 1)
            throw parse_error("diagonals are not consecutive");
        int da = out[i].row_lo - out[i - 1].row_lo;
        int db = out[i].row_hi - out[i - 1].row_hi;
        if ((da != 0 && da != 1) || (db != 0 && db != 1))
            throw parse_error("diagonal rows do not step by 0 or 1");
    }
    return out;
}

// The four-case correspondence between adjacent diagonals and connector
// symbols, read off the row-interval steps.
inline SeqIndex tableau_to_sequence(const DiagonalTableau& t) {
    auto profile = diagonal_profile(t);
    SeqIndex s;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        s.exponents.push_back(profile[i].exponent);
        if (i == 0) continue;
        int da = profile[i].row_lo - profile[i - 1].row_lo;
        int db = profile[i].row_hi - profile[i - 1].row_hi;
        Connector r;
        if (da == 0 && db == 1) r = Connector::Open;
        else if (da == 1 && db == 0) r = Connector::Close;
        else if (da == 1 && db == 1) r = Connector::Up;
        else r = Connector::Down; // da == 0 && db == 0
        s.connectors.push_back(r);
    }
    return s;
}

inline DiagonalTableau sequence_to_tableau(const SeqIndex& s) {
    detail::require_index_shape(s);
    if (!is_proper(s.connectors))
        throw admissibility_error(
            "connector word is not proper; no finite connected shape exists: " +
            format_sequence(s));
    int lo = 1, hi = 1;
    std::vector<std::pair<int, int>> runs{{lo, hi}};
    for (Connector r : s.connectors) {
        switch (r) {
        case Connector::Open: ++hi; break;
        case Connector::Close: ++lo; break;
        case Connector::Up: ++lo; ++hi; break;
        case Connector::Down: break;
        }
        runs.emplace_back(lo, hi);
    }
    // Run x sits on diagonal d0 - x; pick d0 so the minimum column is 1.
    int min_col = runs[0].first;
    for (std::size_t x = 0; x < runs.size(); ++x)
        for (int row = runs[x].first; row <= runs[x].second; ++row)
            min_col = std::min(min_col, row - static_cast<int>(x));
    const int d0 = 1 - min_col;
    std::vector<Cell> cells;
    std::map<int, int> diag;
    for (std::size_t x = 0; x < runs.size(); ++x) {
        const int d = d0 - static_cast<int>(x);
        diag[d] = s.exponents[x];
        for (int row = runs[x].first; row <= runs[x].second; ++row)
            cells.push_back(Cell{row, row + d});
    }
    return DiagonalTableau(SkewDiagram(std::move(cells)), std::move(diag));
}

namespace detail {

// Tableau-column transfer for the SSYT sum.
//
// Columns are processed left to right. The partial sum, as a function of
// the current column's values (indexed bottom-up, so position 1 holds the
// largest value), is kept as a list of separable terms. Moving one column
// to the right sums out the old column: dangling bottom cells fold by
// suffix sums, and the overlap - a strictly decreasing tuple a with the
// componentwise caps a_j <= b_j from the weak row constraints - expands by
//
//   Sum(f_1..f_m; b) = F_1(b_1) * Sum(f_2..f_m; b_2..)
//                      - Sum(f_2 F_1, f_3..f_m; b_2..),
//
// where F_1 is the prefix sum of f_1. The expansion is valid on ordered
// tuples b_1 > b_2 > ..., which is the only domain ever evaluated.
template <class S>
class SsytColumnDp {
public:
    SsytColumnDp(const GeneralTableau& t, long n) : n_(n) {
        const auto& cells = t.shape().cells();
        std::map<int, std::vector<std::pair<int, int>>> by_col; // col -> (row, k)
        for (std::size_t i = 0; i < cells.size(); ++i)
            by_col[cells[i].col].emplace_back(cells[i].row, t.exponents()[i]);
        for (auto& [col, rows] : by_col) {
            std::sort(rows.begin(), rows.end());
            Column c;
            c.row_hi = rows.back().first;
            for (auto it = rows.rbegin(); it != rows.rend(); ++it)
                c.exps.push_back(it->second); // bottom-up
            cols_.push_back(std::move(c));
        }
    }

    // Worst-case separable-term count stays small on ribbon-like shapes;
    // anything wider falls back to depth-first enumeration.
    bool feasible() const {
        return term_bound() <= 8192.0 &&
               term_bound() * static_cast<double>(max_height()) *
                       static_cast<double>(n_ + 1) <=
                   3e7;
    }

    double predicted_ops() const {
        return term_bound() * static_cast<double>(max_height()) *
               static_cast<double>(n_ + 1) * static_cast<double>(cols_.size());
    }

    S run() const {
        if (n_ < 1) return scalar_ops<S>::zero();
        std::vector<Term> terms;
        terms.push_back(initial_term(0));
        for (std::size_t c = 0; c + 1 < cols_.size(); ++c) {
            const std::size_t m = overlap(c);
            std::vector<Term> next;
            for (Term& term : terms) {
                fold_dangling(term, cols_[c].exps.size() - m);
                expand_caps(term, 0, m, c + 1, Term{}, next);
            }
            if (cols_[c + 1].exps.size() == 1 && next.size() > 1) {
                Term merged(1, zero_vec());
                for (const Term& t : next)
                    for (long v = 1; v <= n_; ++v)
                        merged[0][static_cast<std::size_t>(v)] +=
                            t[0][static_cast<std::size_t>(v)];
                next.assign(1, std::move(merged));
            }
            terms = std::move(next);
        }
        S total = scalar_ops<S>::zero();
        for (const Term& term : terms) total += close(term);
        return total;
    }

private:
    struct Column {
        int row_hi = 0;
        std::vector<int> exps; // bottom-up
    };
    using Term = std::vector<std::vector<S>>; // factor per bottom-up position

    double term_bound() const {
        double worst = 1.0, cur = 1.0;
        for (std::size_t c = 0; c + 1 < cols_.size(); ++c) {
            const std::size_t m = overlap(c);
            cur *= static_cast<double>(1u << (m > 0 ? m - 1 : 0));
            if (cols_[c + 1].exps.size() == 1) cur = 1.0;
            worst = std::max(worst, cur);
            if (worst > 1e6) return worst;
        }
        return worst;
    }

    std::size_t max_height() const {
        std::size_t hmax = 1;
        for (const auto& c : cols_) hmax = std::max(hmax, c.exps.size());
        return hmax;
    }

    std::vector<S> zero_vec() const {
        return std::vector<S>(static_cast<std::size_t>(n_) + 1,
                              scalar_ops<S>::zero());
    }

    // Number of shared rows between columns c and c+1. Both are bottom-
    // aligned after the dangling cells of column c are folded away.
    std::size_t overlap(std::size_t c) const {
        const int lo_c = cols_[c].row_hi -
                         static_cast<int>(cols_[c].exps.size()) + 1;
        const int shared_lo = lo_c; // columns to the right start no lower
        const int shared_hi = std::min(cols_[c].row_hi, cols_[c + 1].row_hi);
        return static_cast<std::size_t>(std::max(0, shared_hi - shared_lo + 1));
    }

    std::vector<S> weight(std::size_t c, std::size_t pos) const {
        std::vector<S> w = zero_vec();
        for (long v = 1; v <= n_; ++v)
            w[static_cast<std::size_t>(v)] =
                scalar_ops<S>::reciprocal_pow(v, cols_[c].exps[pos]);
        return w;
    }

    Term initial_term(std::size_t c) const {
        Term t;
        for (std::size_t j = 0; j < cols_[c].exps.size(); ++j)
            t.push_back(weight(c, j));
        return t;
    }

    // Sum out the d bottom positions, which carry no row constraint to the
    // next column: Sum_{v_1 > v_2} f_1(v_1) attaches to position 2 as a
    // suffix sum.
    void fold_dangling(Term& term, std::size_t d) const {
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<S> ss(static_cast<std::size_t>(n_) + 2,
                              scalar_ops<S>::zero());
            for (long v = n_; v >= 1; --v)
                ss[static_cast<std::size_t>(v)] =
                    ss[static_cast<std::size_t>(v) + 1] +
                    term[0][static_cast<std::size_t>(v)];
            for (long v = 1; v <= n_; ++v)
                term[1][static_cast<std::size_t>(v)] =
                    term[1][static_cast<std::size_t>(v)] *
                    ss[static_cast<std::size_t>(v) + 1];
            term.erase(term.begin());
        }
    }

    // Recursive cap expansion. `acc` collects the factors already assigned
    // to the new column's positions 0..j-1; position j of the new column
    // receives either F_j (prefix sums of the head factor) or nothing.
    void expand_caps(const Term& old, std::size_t j, std::size_t m,
                     std::size_t c_new, Term acc,
                     std::vector<Term>& out) const {
        if (j == m) {
            // Remaining new-column positions carry their weights alone.
            Term done = std::move(acc);
            for (std::size_t p = 0; p < cols_[c_new].exps.size(); ++p) {
                const std::vector<S> w = weight(c_new, p);
                if (p < done.size()) {
                    for (long v = 1; v <= n_; ++v)
                        done[p][static_cast<std::size_t>(v)] =
                            done[p][static_cast<std::size_t>(v)] *
                            w[static_cast<std::size_t>(v)];
                } else {
                    done.push_back(w);
                }
            }
            out.push_back(std::move(done));
            return;
        }
        std::vector<S> head_ps(static_cast<std::size_t>(n_) + 1,
                               scalar_ops<S>::zero());
        for (long v = 1; v <= n_; ++v)
            head_ps[static_cast<std::size_t>(v)] =
                head_ps[static_cast<std::size_t>(v) - 1] +
                old[j][static_cast<std::size_t>(v)];
        // Plus branch: F_j lands on new position j.
        {
            Term plus = acc;
            plus.push_back(head_ps);
            expand_caps(old, j + 1, m, c_new, std::move(plus), out);
        }
        // Minus branch: fold F_j pointwise into the next old factor.
        if (j + 1 < m) {
            Term rest = old;
            for (long v = 1; v <= n_; ++v)
                rest[j + 1][static_cast<std::size_t>(v)] =
                    -(rest[j + 1][static_cast<std::size_t>(v)] *
                      head_ps[static_cast<std::size_t>(v)]);
            Term minus = acc;
            minus.push_back(std::vector<S>(static_cast<std::size_t>(n_) + 1,
                                           scalar_ops<S>::one()));
            expand_caps(rest, j + 1, m, c_new, std::move(minus), out);
        }
    }

    // Sum a term over its ordered domain v_1 > v_2 > ... >= 1.
    S close(const Term& term) const {
        std::vector<S> acc = term.back();
        for (std::size_t j = term.size() - 1; j-- > 0;) {
            std::vector<S> ps(static_cast<std::size_t>(n_) + 1,
                              scalar_ops<S>::zero());
            for (long v = 1; v <= n_; ++v)
                ps[static_cast<std::size_t>(v)] =
                    ps[static_cast<std::size_t>(v) - 1] +
                    acc[static_cast<std::size_t>(v)];
            for (long v = 1; v <= n_; ++v)
                acc[static_cast<std::size_t>(v)] =
                    term[j][static_cast<std::size_t>(v)] *
                    ps[static_cast<std::size_t>(v) - 1];
        }
        S total = scalar_ops<S>::zero();
        for (long v = 1; v <= n_; ++v)
            total += acc[static_cast<std::size_t>(v)];
        return total;
    }

    long n_;
    std::vector<Column> cols_;
};

// Depth-first enumeration of SSYT fillings in row-major cell order; the
// final cell is closed with a precomputed tail sum.
template <class S>
class SsytSum {
public:
    SsytSum(const GeneralTableau& t, long n, long long budget)
        : t_(t), n_(n), budget_(budget) {
        const auto& cells = t.shape().cells();
        left_.assign(cells.size(), -1);
        above_.assign(cells.size(), -1);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (cells[j].row == cells[i].row &&
                    cells[j].col == cells[i].col - 1)
                    left_[i] = static_cast<long>(j);
                if (cells[j].row == cells[i].row - 1 &&
                    cells[j].col == cells[i].col)
                    above_[i] = static_cast<long>(j);
            }
        }
        values_.assign(cells.size(), 0);
    }

    S run() {
        if (n_ < 1) return scalar_ops<S>::zero();
        const int k_last = t_.exponents().back();
        tail_.assign(static_cast<std::size_t>(n_) + 2, scalar_ops<S>::zero());
        for (long v = n_; v >= 1; --v)
            tail_[static_cast<std::size_t>(v)] =
                tail_[static_cast<std::size_t>(v) + 1] +
                scalar_ops<S>::reciprocal_pow(v, k_last);
        inv_.assign(values_.size(), {});
        for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
            inv_[i].assign(static_cast<std::size_t>(n_) + 1,
                           scalar_ops<S>::zero());
            for (long v = 1; v <= n_; ++v)
                inv_[i][static_cast<std::size_t>(v)] =
                    scalar_ops<S>::reciprocal_pow(v, t_.exponents()[i]);
        }
        return rec(0);
    }

private:
    long lower_bound_at(std::size_t idx) const {
        long lb = 1;
        if (left_[idx] >= 0)
            lb = std::max(lb, values_[static_cast<std::size_t>(left_[idx])]);
        if (above_[idx] >= 0)
            lb = std::max(lb,
                          values_[static_cast<std::size_t>(above_[idx])] + 1);
        return lb;
    }

    S rec(std::size_t idx) {
        const long lb = lower_bound_at(idx);
        if (lb > n_) return scalar_ops<S>::zero();
        if (idx + 1 == values_.size())
            return tail_[static_cast<std::size_t>(lb)];
        S sum = scalar_ops<S>::zero();
        for (long v = lb; v <= n_; ++v) {
            if (--budget_ < 0)
                throw cap_exceeded("SSYT enumeration exceeded loop budget");
            values_[idx] = v;
            S below = rec(idx + 1);
            sum += inv_[idx][static_cast<std::size_t>(v)] * below;
        }
        return sum;
    }

    const GeneralTableau& t_;
    long n_;
    long long budget_;
    std::vector<long> left_, above_, values_;
    std::vector<S> tail_;
    std::vector<std::vector<S>> inv_;
};

} // namespace detail

namespace detail {

template <class S>
S ssyt_sum(const GeneralTableau& t, long n, long long budget) {
    SsytColumnDp<S> dp(t, n);
    if (dp.feasible()) {
        if (dp.predicted_ops() > static_cast<double>(budget))
            throw cap_exceeded("SSYT transfer exceeds the loop budget");
        return dp.run();
    }
    return SsytSum<S>(t, n, budget).run();
}

} // namespace detail

// Truncated Schur multiple zeta sum over semi-standard fillings with
// entries at most N. Exact in rational mode.
inline EvalResult eval_ssyt_series(const GeneralTableau& t, long n,
                                   EvalMode mode,
                                   long long loop_budget = 1000000000LL) {
    if (n < 1) throw parse_error("N must be positive");
    if (!t.is_admissible())
        throw admissibility_error("tableau has a corner with exponent 1");
    if (mode == EvalMode::Rational) {
        Rational s_n = detail::ssyt_sum<Rational>(t, n, loop_budget);
        Rational s_half = detail::ssyt_sum<Rational>(t, n / 2, loop_budget);
        return make_eval_result(s_n, s_half, n);
    }
    double s_n = detail::ssyt_sum<double>(t, n, loop_budget);
    double s_half = detail::ssyt_sum<double>(t, n / 2, loop_budget);
    return make_eval_result(s_n, s_half, n);
}

} // namespace schurz
