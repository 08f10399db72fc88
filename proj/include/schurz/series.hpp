#pragma once

#include <span>
#include <vector>

#include "schurz/errors.hpp"
#include "schurz/eval_result.hpp"
#include "schurz/notation.hpp"
#include "schurz/poset.hpp"
#include "schurz/rational.hpp"

namespace schurz {

struct SeriesCaps {
    long long loop_budget = 1000000000LL;
};

namespace detail {

template <class S>
S small_det_rec(const std::vector<std::vector<S>>& m, unsigned col_mask,
                std::size_t row) {
    const std::size_t n = m.size();
    if (row == n) return scalar_ops<S>::one();
    S sum = scalar_ops<S>::zero();
    int parity = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (col_mask & (1u << c)) continue;
        S sub = small_det_rec(m, col_mask | (1u << c), row + 1);
        S term = m[row][c] * sub;
        if (parity & 1) sum -= term;
        else sum += term;
        ++parity;
    }
    return sum;
}

// Determinant by cofactor expansion; fine for the small matrices used here.
template <class S>
S small_det(const std::vector<std::vector<S>>& m) {
    if (m.empty()) return scalar_ops<S>::one();
    return small_det_rec(m, 0u, 0);
}

} // namespace detail

// F(t_0..t_j; n_1..n_j): the (j+1)x(j+1) determinant with first row of ones
// and row i+1 equal to (t_0^{n_i}, ..., t_j^{n_i}).
template <class S>
S f_determinant(std::span<const S> t, std::span<const long> n) {
    if (t.size() != n.size() + 1)
        throw parse_error("F determinant needs one more t than n");
    for (long e : n)
        if (e < 0) throw parse_error("F determinant exponents must be >= 0");
    const std::size_t dim = t.size();
    std::vector<std::vector<S>> m(dim, std::vector<S>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        m[0][c] = scalar_ops<S>::one();
        for (std::size_t r = 1; r < dim; ++r)
            m[r][c] = scalar_ops<S>::power(t[c], n[r - 1]);
    }
    return detail::small_det(m);
}

namespace detail {

template <class S>
std::vector<S> inverse_powers(long n, int k) {
    std::vector<S> out(static_cast<std::size_t>(n) + 1, scalar_ops<S>::zero());
    for (long v = 1; v <= n; ++v)
        out[static_cast<std::size_t>(v)] = scalar_ops<S>::reciprocal_pow(v, k);
    return out;
}

template <class S>
std::vector<S> prefix_sums(const std::vector<S>& g) {
    std::vector<S> ps(g.size(), scalar_ops<S>::zero());
    for (std::size_t v = 1; v < g.size(); ++v) ps[v] = ps[v - 1] + g[v];
    return ps;
}

template <class S>
std::vector<S> suffix_sums(const std::vector<S>& g) {
    std::vector<S> ss(g.size() + 1, scalar_ops<S>::zero());
    for (std::size_t v = g.size(); v-- > 1;) ss[v] = ss[v + 1] + g[v];
    return ss;
}

// t^v for v = 0..n by repeated multiplication.
template <class S>
std::vector<S> power_table(const S& t, long n) {
    std::vector<S> out(static_cast<std::size_t>(n) + 1);
    out[0] = scalar_ops<S>::one();
    for (long v = 1; v <= n; ++v)
        out[static_cast<std::size_t>(v)] = out[static_cast<std::size_t>(v) - 1] * t;
    return out;
}

inline int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

// ------------------------------------------------------------------
// Prefix-sum column DP.
//
// The partial sum over columns 1..x, as a function of the column-x values
// v_1 < ... < v_h, is kept as a short list of separable rank-1 terms
// prod_i f_i(v_i). Summing out the previous column factorizes because each
// old variable u_i is confined to a window bounded by adjacent new values,
// so every transition is a product of prefix-sum differences; expanding
// those differences multiplies the term count by at most 2^{h_prev}, and
// the count resets to one at every height-1 column. dp_feasible() bounds
// the blow-up before committing to this path.

template <class S>
using DpTerm = std::vector<std::vector<S>>; // one factor vector per position

// Upper bound on the number of separable terms the DP would reach. The
// lowest window of an Up or Close transition has the constant lower bound
// ps[0] = 0, so only one of its two branches survives.
inline bool dp_feasible(const std::vector<std::vector<int>>& cols, long n,
                        const std::vector<Connector>& conns) {
    double worst = 1.0, cur = 1.0;
    std::size_t hmax = 1;
    for (std::size_t x = 1; x < cols.size(); ++x) {
        const std::size_t hp = cols[x - 1].size();
        const std::size_t hc = cols[x].size();
        hmax = std::max(hmax, hc);
        const Connector r = conns[x - 1];
        const std::size_t doubling =
            (r == Connector::Up || r == Connector::Close) ? hp - 1 : hp;
        if (hc == 1) cur = 1.0;
        else cur *= static_cast<double>(1ull << doubling);
        worst = std::max(worst, cur);
        if (worst > 8192.0) return false;
    }
    const double scalars = worst * static_cast<double>(hmax) *
                           static_cast<double>(n + 1);
    return scalars <= 3e7;
}

template <class S>
class ColumnDp {
public:
    ColumnDp(const SeqIndex& s, const std::vector<std::vector<int>>& cols,
             long n, const std::vector<S>* tvals)
        : s_(s), cols_(cols), n_(n), tvals_(tvals) {}

    S run() {
        std::vector<DpTerm<S>> terms;
        terms.push_back({inverse_powers<S>(n_, s_.exponents[0])});
        for (std::size_t x = 1; x < cols_.size(); ++x)
            terms = transition(terms, x);
        return close(terms, cols_.back().size());
    }

private:
    // One factor of the summed-out column: ps[UB(v)] - ps[LB(v)], where each
    // bound is v_{pos} - 1 for a new-column position, or the constant 0 / N.
    struct Bound {
        int pos; // -1: constant
        long constant;
    };

    static long bound_value(const Bound& b, long v_at_pos) {
        return b.pos >= 0 ? v_at_pos - 1 : b.constant;
    }

    std::vector<DpTerm<S>> transition(const std::vector<DpTerm<S>>& terms,
                                      std::size_t x) const {
        const Connector r = s_.connectors[x - 1];
        const std::size_t hp = cols_[x - 1].size();
        const std::size_t hc = cols_[x].size();
        const auto invk = inverse_powers<S>(n_, s_.exponents[x]);

        // Windows of the old variables in terms of the new positions.
        std::vector<Bound> ub(hp), lb(hp);
        for (std::size_t i = 0; i < hp; ++i) {
            switch (r) {
            case Connector::Up: // u_i in [v_{i-1}, v_i)
                ub[i] = Bound{static_cast<int>(i), 0};
                lb[i] = (i == 0) ? Bound{-1, 0} : Bound{static_cast<int>(i - 1), 0};
                break;
            case Connector::Down: // u_i in [v_i, v_{i+1})
                ub[i] = (i + 1 < hc + 0u && i + 1 < hp)
                            ? Bound{static_cast<int>(i + 1), 0}
                            : Bound{-1, n_};
                lb[i] = Bound{static_cast<int>(i), 0};
                break;
            case Connector::Open: // u_i in [v_i, v_{i+1})
                ub[i] = Bound{static_cast<int>(i + 1), 0};
                lb[i] = Bound{static_cast<int>(i), 0};
                break;
            case Connector::Close: // u_i in [v_{i-1}, v_i)
                ub[i] = (i < hc) ? Bound{static_cast<int>(i), 0} : Bound{-1, n_};
                lb[i] = (i == 0) ? Bound{-1, 0} : Bound{static_cast<int>(i - 1), 0};
                break;
            }
        }

        std::vector<DpTerm<S>> next;
        for (const DpTerm<S>& term : terms) {
            std::vector<std::vector<S>> ps;
            ps.reserve(hp);
            for (const auto& f : term) ps.push_back(prefix_sums(f));
            // Expand prod_i (ps_i[UB_i] - ps_i[LB_i]) into rank-1 terms by
            // choosing, per factor, the upper or lower bound.
            for (unsigned choice = 0; choice < (1u << hp); ++choice) {
                bool zero = false;
                int sign = 1;
                S constant = scalar_ops<S>::one();
                // piece[p]: product of ps_i(v_p - 1) attached to position p.
                std::vector<std::vector<const std::vector<S>*>> piece(hc);
                for (std::size_t i = 0; i < hp && !zero; ++i) {
                    const bool take_ub = !(choice & (1u << i));
                    const Bound& b = take_ub ? ub[i] : lb[i];
                    if (!take_ub) sign = -sign;
                    if (b.pos >= 0) {
                        piece[static_cast<std::size_t>(b.pos)].push_back(&ps[i]);
                    } else if (b.constant == 0) {
                        zero = true; // ps[0] = 0 annihilates the product
                    } else {
                        constant = constant * ps[i][static_cast<std::size_t>(b.constant)];
                    }
                }
                if (zero) continue;
                DpTerm<S> out(hc);
                for (std::size_t p = 0; p < hc; ++p) {
                    out[p].assign(static_cast<std::size_t>(n_) + 1,
                                  scalar_ops<S>::zero());
                    for (long v = 1; v <= n_; ++v) {
                        S val = invk[v];
                        for (const auto* f : piece[p])
                            val = val * (*f)[static_cast<std::size_t>(v) - 1];
                        out[p][static_cast<std::size_t>(v)] = val;
                    }
                }
                // Fold the sign and any constant factor into position 0.
                for (long v = 1; v <= n_; ++v) {
                    out[0][static_cast<std::size_t>(v)] =
                        out[0][static_cast<std::size_t>(v)] * constant;
                    if (sign < 0)
                        out[0][static_cast<std::size_t>(v)] =
                            -out[0][static_cast<std::size_t>(v)];
                }
                next.push_back(std::move(out));
            }
        }
        // A height-1 column resets the representation to a single vector.
        if (hc == 1 && next.size() > 1) {
            DpTerm<S> merged(1);
            merged[0].assign(static_cast<std::size_t>(n_) + 1,
                             scalar_ops<S>::zero());
            for (const auto& t : next)
                for (long v = 1; v <= n_; ++v)
                    merged[0][static_cast<std::size_t>(v)] +=
                        t[0][static_cast<std::size_t>(v)];
            next.clear();
            next.push_back(std::move(merged));
        }
        return next;
    }

    // Sum a rank-1 term over v_1 < ... < v_h by iterated prefix sums,
    // optionally with per-position weight vectors.
    S fold_term(const DpTerm<S>& term,
                const std::vector<const std::vector<S>*>* weights) const {
        std::vector<S> acc(static_cast<std::size_t>(n_) + 1);
        for (long v = 0; v <= n_; ++v) {
            acc[static_cast<std::size_t>(v)] = term[0][static_cast<std::size_t>(v)];
            if (weights && v >= 1)
                acc[static_cast<std::size_t>(v)] =
                    acc[static_cast<std::size_t>(v)] *
                    (*(*weights)[0])[static_cast<std::size_t>(v)];
        }
        for (std::size_t i = 1; i < term.size(); ++i) {
            auto ps = prefix_sums(acc);
            for (long v = 1; v <= n_; ++v) {
                S val = term[i][static_cast<std::size_t>(v)] *
                        ps[static_cast<std::size_t>(v) - 1];
                if (weights)
                    val = val * (*(*weights)[i])[static_cast<std::size_t>(v)];
                acc[static_cast<std::size_t>(v)] = val;
            }
        }
        S sum = scalar_ops<S>::zero();
        for (long v = 1; v <= n_; ++v) sum += acc[static_cast<std::size_t>(v)];
        return sum;
    }

    S close(const std::vector<DpTerm<S>>& terms, std::size_t h_last) const {
        if (!tvals_) {
            S sum = scalar_ops<S>::zero();
            for (const auto& term : terms) sum += fold_term(term, nullptr);
            return sum;
        }
        // F-weighted closure: expand the determinant over assignments of
        // t-columns to the last-column variables (row 0 is the row of ones).
        const std::vector<S>& ts = *tvals_;
        const std::size_t j = ts.size();
        std::vector<std::vector<S>> pw;
        for (const S& t : ts) pw.push_back(power_table(t, n_));
        std::vector<int> perm(j);
        for (std::size_t i = 0; i < j; ++i) perm[i] = static_cast<int>(i);
        S total = scalar_ops<S>::zero();
        do {
            const int sign = permutation_sign(perm);
            std::vector<const std::vector<S>*> weights(h_last);
            for (std::size_t i = 0; i < h_last; ++i)
                weights[i] = &pw[static_cast<std::size_t>(perm[i + 1])];
            S part = scalar_ops<S>::zero();
            for (const auto& term : terms) part += fold_term(term, &weights);
            if (sign > 0) total += part;
            else total -= part;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    }

    const SeqIndex& s_;
    const std::vector<std::vector<int>>& cols_;
    long n_;
    const std::vector<S>* tvals_;
};

// ------------------------------------------------------------------
// Depth-first fallback for carriers with columns of height 3 or more.
// Enumerates column tuples left to right through the interleaving windows;
// the final element of the last column is closed with a tail sum in the
// plain case. Guarded by the loop budget.

template <class S>
class ColumnDfs {
public:
    ColumnDfs(const SeqIndex& s, const std::vector<std::vector<int>>& cols,
              long n, const std::vector<S>* tvals, long long budget)
        : s_(s), cols_(cols), n_(n), tvals_(tvals), budget_(budget) {
        vals_.resize(cols_.size());
        for (std::size_t x = 0; x < cols_.size(); ++x)
            vals_[x].assign(cols_[x].size(), 0);
    }

    S run() {
        if (n_ < 1) return scalar_ops<S>::zero();
        if (!tvals_) {
            const int k_last = s_.exponents.back();
            auto inv = inverse_powers<S>(n_, k_last);
            tail_ = suffix_sums(inv);
        }
        inv_.clear();
        for (std::size_t x = 0; x < cols_.size(); ++x)
            inv_.push_back(inverse_powers<S>(n_, s_.exponents[x]));
        return column(0, scalar_ops<S>::one());
    }

private:
    void window(std::size_t x, std::size_t i, long& lo, long& hi) const {
        if (x == 0) {
            lo = 1;
            hi = n_;
            return;
        }
        const auto& u = vals_[x - 1];
        const std::size_t hp = u.size();
        switch (s_.connectors[x - 1]) {
        case Connector::Up:
            lo = u[i] + 1;
            hi = (i + 1 < hp) ? u[i + 1] : n_;
            break;
        case Connector::Down:
            lo = (i > 0) ? u[i - 1] + 1 : 1;
            hi = u[i];
            break;
        case Connector::Open:
            lo = (i > 0) ? u[i - 1] + 1 : 1;
            hi = (i < hp) ? u[i] : n_;
            break;
        case Connector::Close:
            lo = u[i] + 1;
            hi = u[i + 1];
            break;
        }
    }

    S column(std::size_t x, const S& acc) {
        if (x == cols_.size()) return acc;
        return element(x, 0, acc);
    }

    S element(std::size_t x, std::size_t i, const S& acc) {
        const std::size_t h = cols_[x].size();
        long lo, hi;
        window(x, i, lo, hi);
        if (lo < 1) lo = 1;
        if (hi > n_) hi = n_;
        const bool last_column = (x + 1 == cols_.size());
        // Plain case: the final variable closes in one lookup.
        if (last_column && i + 1 == h && !tvals_) {
            if (lo > hi) return scalar_ops<S>::zero();
            return acc * (tail_[static_cast<std::size_t>(lo)] -
                          tail_[static_cast<std::size_t>(hi) + 1]);
        }
        S sum = scalar_ops<S>::zero();
        for (long v = lo; v <= hi; ++v) {
            if (--budget_ < 0)
                throw cap_exceeded("series enumeration exceeded loop budget");
            vals_[x][i] = v;
            S next_acc = acc * inv_[x][static_cast<std::size_t>(v)];
            if (i + 1 < h) {
                sum += element(x, i + 1, next_acc);
            } else if (!last_column) {
                sum += column(x + 1, next_acc);
            } else {
                // Generalized: weight the completed last column by F.
                std::vector<long> m(vals_[x].begin(), vals_[x].end());
                sum += next_acc *
                       f_determinant<S>(std::span<const S>(*tvals_),
                                        std::span<const long>(m));
            }
        }
        return sum;
    }

    const SeqIndex& s_;
    const std::vector<std::vector<int>>& cols_;
    long n_;
    const std::vector<S>* tvals_;
    long long budget_;
    std::vector<std::vector<long>> vals_;
    std::vector<S> tail_;
    std::vector<std::vector<S>> inv_;
};

template <class S>
S schur_sum(const SeqIndex& s, long n, const std::vector<S>* tvals,
            long long budget) {
    if (n < 1) return scalar_ops<S>::zero();
    auto cols = build_support(s.connectors);
    if (dp_feasible(cols, n, s.connectors))
        return ColumnDp<S>(s, cols, n, tvals).run();
    return ColumnDfs<S>(s, cols, n, tvals, budget).run();
}

template <class S>
S mzv_sum(const std::vector<int>& index, bool star, long n) {
    if (n < 1) return scalar_ops<S>::zero();
    std::vector<S> cur = inverse_powers<S>(n, index[0]);
    for (std::size_t d = 1; d < index.size(); ++d) {
        std::vector<S> inv = inverse_powers<S>(n, index[d]);
        std::vector<S> next(cur.size(), scalar_ops<S>::zero());
        S prefix = scalar_ops<S>::zero();
        for (long v = 1; v <= n; ++v) {
            if (star) prefix += cur[static_cast<std::size_t>(v)];
            next[static_cast<std::size_t>(v)] =
                inv[static_cast<std::size_t>(v)] * prefix;
            if (!star) prefix += cur[static_cast<std::size_t>(v)];
        }
        cur = std::move(next);
    }
    S sum = scalar_ops<S>::zero();
    for (long v = 1; v <= n; ++v) sum += cur[static_cast<std::size_t>(v)];
    return sum;
}

} // namespace detail

// Truncated zeta(k_1 r_1 ... k_{s+1}): the constrained sum over the carrier
// L with every variable at most N. Exact in rational mode.
inline EvalResult eval_schur_series(const SeqIndex& s, long n, EvalMode mode,
                                    SeriesCaps caps = {}) {
    if (n < 1) throw parse_error("N must be positive");
    if (!is_admissible(s))
        throw admissibility_error("index is not admissible: " +
                                  format_sequence(s));
    if (mode == EvalMode::Rational) {
        Rational s_n = detail::schur_sum<Rational>(s, n, nullptr, caps.loop_budget);
        Rational s_half =
            detail::schur_sum<Rational>(s, n / 2, nullptr, caps.loop_budget);
        return make_eval_result(s_n, s_half, n);
    }
    double s_n = detail::schur_sum<double>(s, n, nullptr, caps.loop_budget);
    double s_half = detail::schur_sum<double>(s, n / 2, nullptr, caps.loop_budget);
    return make_eval_result(s_n, s_half, n);
}

// Truncated generalized zeta(k_1 r_1 ... k_{s+1}; t_1..t_j), the F-weighted
// sum of section "Generalization". Float flavour.
inline EvalResult eval_schur_series_generalized(const SeqIndex& s,
                                                std::span<const double> t,
                                                long n, SeriesCaps caps = {}) {
    if (n < 1) throw parse_error("N must be positive");
    if (!is_admissible_generalized(s, t))
        throw admissibility_error("(index; t) is not admissible: " +
                                  format_sequence(s));
    std::vector<double> tv(t.begin(), t.end());
    double s_n = detail::schur_sum<double>(s, n, &tv, caps.loop_budget);
    double s_half = detail::schur_sum<double>(s, n / 2, &tv, caps.loop_budget);
    return make_eval_result(s_n, s_half, n);
}

// Exact flavour, permitted because every t is rational.
inline EvalResult eval_schur_series_generalized(const SeqIndex& s,
                                                std::span<const Rational> t,
                                                long n, SeriesCaps caps = {}) {
    if (n < 1) throw parse_error("N must be positive");
    if (!is_admissible_generalized(s, t))
        throw admissibility_error("(index; t) is not admissible: " +
                                  format_sequence(s));
    std::vector<Rational> tv(t.begin(), t.end());
    Rational s_n = detail::schur_sum<Rational>(s, n, &tv, caps.loop_budget);
    Rational s_half = detail::schur_sum<Rational>(s, n / 2, &tv, caps.loop_budget);
    return make_eval_result(s_n, s_half, n);
}

// Truncated classical MZV (strict) or MZV-star (weak), index ascending with
// k_1 attached to the smallest variable; requires the exponent on the
// largest variable to be at least 2.
inline EvalResult eval_mzv(const std::vector<int>& index, bool star, long n,
                           EvalMode mode) {
    if (n < 1) throw parse_error("N must be positive");
    if (index.empty()) throw parse_error("empty MZV index");
    for (int k : index)
        if (k < 1) throw parse_error("MZV exponents must be positive");
    if (index.back() < 2)
        throw admissibility_error(
            "MZV index needs exponent >= 2 on its largest variable");
    if (mode == EvalMode::Rational) {
        Rational s_n = detail::mzv_sum<Rational>(index, star, n);
        Rational s_half = detail::mzv_sum<Rational>(index, star, n / 2);
        return make_eval_result(s_n, s_half, n);
    }
    double s_n = detail::mzv_sum<double>(index, star, n);
    double s_half = detail::mzv_sum<double>(index, star, n / 2);
    return make_eval_result(s_n, s_half, n);
}

} // namespace schurz
