#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "schurz/errors.hpp"
#include "schurz/notation.hpp"

namespace schurz {

struct PosetElem {
    int x = 0;
    int y = 0;
    auto operator<=>(const PosetElem&) const = default;
};

inline std::string elem_name(const PosetElem& e) {
    return std::to_string(e.x) + "," + std::to_string(e.y);
}

// Finite 2-labeled poset. Elements are kept sorted by (x, y); covers store
// the transitive reduction and the full strict order is precomputed.
class TwoLabeledPoset {
public:
    TwoLabeledPoset() = default;

    // `relations` are arbitrary strict pairs (a < b) by element index;
    // the closure and reduction are derived here.
    static TwoLabeledPoset from_relations(
        std::vector<PosetElem> elems, std::vector<Dot> labels,
        const std::vector<std::pair<std::size_t, std::size_t>>& relations) {
        if (elems.size() != labels.size())
            throw parse_error("element/label count mismatch");
        // Sort elements, remapping indices.
        std::vector<std::size_t> perm(elems.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return elems[a] < elems[b];
        });
        std::vector<std::size_t> where(elems.size());
        for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;

        TwoLabeledPoset p;
        p.elems_.resize(elems.size());
        p.labels_.resize(elems.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            p.elems_[i] = elems[perm[i]];
            p.labels_[i] = labels[perm[i]];
        }
        for (std::size_t i = 1; i < p.elems_.size(); ++i)
            if (p.elems_[i] == p.elems_[i - 1])
                throw parse_error("duplicate poset element " +
                                  elem_name(p.elems_[i]));

        const std::size_t n = p.elems_.size();
        p.lt_.assign(n, std::vector<bool>(n, false));
        for (auto [a, b] : relations) {
            if (a >= n || b >= n) throw parse_error("relation index out of range");
            p.lt_[where[a]][where[b]] = true;
        }
        // Transitive closure.
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (p.lt_[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (p.lt_[k][j]) p.lt_[i][j] = true;
        for (std::size_t i = 0; i < n; ++i)
            if (p.lt_[i][i])
                throw parse_error("relations contain a cycle at " +
                                  elem_name(p.elems_[i]));
        // Transitive reduction.
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (!p.lt_[a][b]) continue;
                bool cover = true;
                for (std::size_t c = 0; c < n && cover; ++c)
                    if (p.lt_[a][c] && p.lt_[c][b]) cover = false;
                if (cover) p.covers_.emplace_back(a, b);
            }
        std::sort(p.covers_.begin(), p.covers_.end());
        return p;
    }

    std::size_t size() const noexcept { return elems_.size(); }
    const std::vector<PosetElem>& elements() const noexcept { return elems_; }
    const std::vector<Dot>& labels() const noexcept { return labels_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept {
        return covers_;
    }

    bool less(std::size_t a, std::size_t b) const { return lt_[a][b]; }

    bool is_minimal(std::size_t i) const {
        for (std::size_t j = 0; j < size(); ++j)
            if (lt_[j][i]) return false;
        return true;
    }
    bool is_maximal(std::size_t i) const {
        for (std::size_t j = 0; j < size(); ++j)
            if (lt_[i][j]) return false;
        return true;
    }

private:
    std::vector<PosetElem> elems_;
    std::vector<Dot> labels_;
    std::vector<std::vector<bool>> lt_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

// Support columns Y_1..Y_{s+1} of the carrier L(r_1..r_s), each returned in
// ascending order. Throws when the word is not weakly proper (some Y empty).
inline std::vector<std::vector<int>> build_support(
    std::span<const Connector> connectors) {
    std::vector<std::vector<int>> cols;
    cols.push_back({0});
    for (Connector r : connectors) {
        const std::vector<int>& y = cols.back();
        std::vector<int> up, down;
        up.reserve(y.size());
        down.reserve(y.size());
        for (int v : y) up.push_back(v + 1);
        for (int v : y) down.push_back(v - 1);
        std::vector<int> next;
        switch (r) {
        case Connector::Up: next = up; break;
        case Connector::Down: next = down; break;
        case Connector::Open:
            std::set_union(down.begin(), down.end(), up.begin(), up.end(),
                           std::back_inserter(next));
            break;
        case Connector::Close:
            std::set_intersection(down.begin(), down.end(), up.begin(),
                                  up.end(), std::back_inserter(next));
            break;
        }
        if (next.empty())
            throw admissibility_error(
                "connector word is not weakly proper: empty support column");
        cols.push_back(std::move(next));
    }
    return cols;
}

// P(d_1 r_1 ... d_s r_s d_{s+1}): carrier L(r_1..r_s) with label d_x on
// column x and order generated by (x,y) <= (x+1,y+1), (x,y) >= (x+1,y-1).
inline TwoLabeledPoset build_poset(const LabeledSeq& w) {
    if (w.dots.size() != w.connectors.size() + 1)
        throw parse_error("labeled word shape mismatch");
    auto cols = build_support(w.connectors);
    std::vector<PosetElem> elems;
    std::vector<Dot> labels;
    std::vector<std::size_t> col_start;
    for (std::size_t x = 0; x < cols.size(); ++x) {
        col_start.push_back(elems.size());
        for (int y : cols[x]) {
            elems.push_back(PosetElem{static_cast<int>(x) + 1, y});
            labels.push_back(w.dots[x]);
        }
    }
    auto index_of = [&](std::size_t x, int y) -> long {
        const auto& ys = cols[x];
        auto it = std::lower_bound(ys.begin(), ys.end(), y);
        if (it == ys.end() || *it != y) return -1;
        return static_cast<long>(col_start[x] + static_cast<std::size_t>(it - ys.begin()));
    };
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t x = 0; x + 1 < cols.size(); ++x) {
        for (int y : cols[x]) {
            long self = index_of(x, y);
            long ne = index_of(x + 1, y + 1);
            long se = index_of(x + 1, y - 1);
            if (ne >= 0) rel.emplace_back(self, ne); // (x,y) < (x+1,y+1)
            if (se >= 0) rel.emplace_back(se, self); // (x+1,y-1) < (x,y)
        }
    }
    return TwoLabeledPoset::from_relations(std::move(elems), std::move(labels),
                                           rel);
}

// Admissible: all maximal elements hollow, all minimal elements filled.
inline bool is_admissible_poset(const TwoLabeledPoset& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.is_maximal(i) && p.labels()[i] != Dot::Circ) return false;
        if (p.is_minimal(i) && p.labels()[i] != Dot::Bullet) return false;
    }
    return true;
}

// All linear extensions, each reported as its label word read from smallest
// to largest element. Lexicographic backtracking over element positions.
inline std::vector<std::string> linear_extensions(const TwoLabeledPoset& p,
                                                  std::size_t element_cap = 20) {
    if (p.size() > element_cap)
        throw cap_exceeded("poset has " + std::to_string(p.size()) +
                           " elements, cap is " + std::to_string(element_cap));
    const std::size_t n = p.size();
    std::vector<std::size_t> pred_left(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (p.less(j, i)) ++pred_left[i];
    std::vector<bool> used(n, false);
    std::string word(n, '?');
    std::vector<std::string> out;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            out.push_back(word);
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || pred_left[i] != 0) continue;
            used[i] = true;
            for (std::size_t j = 0; j < n; ++j)
                if (p.less(i, j)) --pred_left[j];
            word[depth] = dot_char(p.labels()[i]);
            self(self, depth + 1);
            used[i] = false;
            for (std::size_t j = 0; j < n; ++j)
                if (p.less(i, j)) ++pred_left[j];
        }
    };
    rec(rec, 0);
    return out;
}

// Hasse diagram in DOT format: filled circles for bullet labels, hollow for
// circ, edges are cover relations oriented upward.
inline std::string to_dot(const TwoLabeledPoset& p) {
    std::string out = "digraph poset {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::string name = elem_name(p.elements()[i]);
        out += "  \"" + name + "\" [shape=circle, label=\"\", style=filled, fillcolor=" +
               (p.labels()[i] == Dot::Bullet ? std::string("black") : std::string("white")) +
               "];\n";
    }
    for (auto [a, b] : p.covers())
        out += "  \"" + elem_name(p.elements()[a]) + "\" -> \"" +
               elem_name(p.elements()[b]) + "\";\n";
    out += "}\n";
    return out;
}

} // namespace schurz
