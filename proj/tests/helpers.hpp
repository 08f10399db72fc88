#pragma once

// Shared brute-force oracles for the test suite. These deliberately use the
// dumbest possible enumeration strategies; they exist to be obviously
// correct, not fast.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "schurz/schurz.hpp"

namespace oracle {

using namespace schurz;

// Sum over all SSYT fillings with entries <= n by plain nested enumeration
// of every cell value.
inline Rational ssyt_brute(const GeneralTableau& t, long n) {
    const auto& cells = t.shape().cells();
    std::vector<long> vals(cells.size(), 0);
    Rational total(0);
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == cells.size()) {
            Rational term(1);
            for (std::size_t i = 0; i < cells.size(); ++i)
                term *= inv_pow(vals[i], t.exponents()[i]);
            total += term;
            return;
        }
        for (long v = 1; v <= n; ++v) {
            bool ok = true;
            for (std::size_t j = 0; j < idx && ok; ++j) {
                if (cells[j].row == cells[idx].row &&
                    cells[j].col == cells[idx].col - 1 && vals[j] > v)
                    ok = false;
                if (cells[j].row == cells[idx].row - 1 &&
                    cells[j].col == cells[idx].col && vals[j] >= v)
                    ok = false;
            }
            if (!ok) continue;
            vals[idx] = v;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    return total;
}

// Sum over all constrained assignments on the carrier L by nested
// enumeration, straight from the defining formula.
inline Rational schur_brute(const SeqIndex& s, long n) {
    auto cols = build_support(s.connectors);
    std::vector<PosetElem> elems;
    std::vector<int> exps;
    for (std::size_t x = 0; x < cols.size(); ++x)
        for (int y : cols[x]) {
            elems.push_back(PosetElem{static_cast<int>(x) + 1, y});
            exps.push_back(s.exponents[x]);
        }
    std::vector<long> vals(elems.size(), 0);
    auto find = [&](int x, int y) -> long {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i].x == x && elems[i].y == y) return static_cast<long>(i);
        return -1;
    };
    Rational total(0);
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == elems.size()) {
            for (std::size_t i = 0; i < elems.size(); ++i) {
                long ne = find(elems[i].x + 1, elems[i].y + 1);
                long se = find(elems[i].x + 1, elems[i].y - 1);
                if (ne >= 0 && !(vals[i] < vals[ne])) return;
                if (se >= 0 && !(vals[i] >= vals[se])) return;
            }
            Rational term(1);
            for (std::size_t i = 0; i < elems.size(); ++i)
                term *= inv_pow(vals[i], exps[i]);
            total += term;
            return;
        }
        for (long v = 1; v <= n; ++v) {
            vals[idx] = v;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    return total;
}

// Linear extension count by filtering all permutations.
inline long long extension_count_brute(const TwoLabeledPoset& p) {
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    long long count = 0;
    do {
        bool ok = true;
        std::vector<std::size_t> pos(p.size());
        for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
        for (std::size_t a = 0; a < p.size() && ok; ++a)
            for (std::size_t b = 0; b < p.size() && ok; ++b)
                if (p.less(a, b) && pos[a] > pos[b]) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// Determinant as the plain Leibniz sum over permutations.
template <class S>
S det_leibniz(const std::vector<std::vector<S>>& m) {
    std::vector<std::size_t> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    S total = scalar_ops<S>::zero();
    do {
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
        S prod = scalar_ops<S>::one();
        for (std::size_t i = 0; i < perm.size(); ++i) prod = prod * m[i][perm[i]];
        if (inv & 1) total -= prod;
        else total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// All proper connector words of the given length.
inline std::vector<std::vector<Connector>> proper_words(std::size_t len) {
    std::vector<std::vector<Connector>> out;
    std::vector<Connector> cur;
    auto rec = [&](auto&& self, std::size_t depth, int exc) -> void {
        if (depth == len) {
            if (exc == 0) out.push_back(cur);
            return;
        }
        for (Connector r : {Connector::Up, Connector::Down, Connector::Open,
                            Connector::Close}) {
            int e = exc + excess(r);
            if (e < 0 || e > static_cast<int>(len - depth - 1)) continue;
            cur.push_back(r);
            self(self, depth + 1, e);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// All members of G with s connectors.
inline std::vector<LabeledSeq> g_words(std::size_t s) {
    std::vector<LabeledSeq> out;
    for (const auto& conns : proper_words(s)) {
        const std::size_t dots = s + 1;
        for (unsigned mask = 0; mask < (1u << dots); ++mask) {
            LabeledSeq w;
            w.connectors = conns;
            for (std::size_t i = 0; i < dots; ++i)
                w.dots.push_back((mask >> i) & 1 ? Dot::Bullet : Dot::Circ);
            if (in_G(w)) out.push_back(std::move(w));
        }
    }
    return out;
}

} // namespace oracle
