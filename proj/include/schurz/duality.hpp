#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schurz/errors.hpp"
#include "schurz/notation.hpp"

namespace schurz {

// ------------------------------------------------------------------
// The set G: proper labeled words avoiding the eight forbidden triples and
// the four forbidden boundary pairs.

struct GMembership {
    LabeledSeq word;
    bool is_member = false;
    std::string violated_rule; // empty when member
    std::size_t position = 0;  // 1-based dot/connector position of the violation
};

namespace detail {

struct ForbiddenTriple {
    Connector before;
    Dot dot;
    Connector after;
};

// r_i d_{i+1} r_{i+1} patterns excluded from G.
inline constexpr ForbiddenTriple kForbiddenTriples[8] = {
    {Connector::Up, Dot::Bullet, Connector::Down},
    {Connector::Up, Dot::Bullet, Connector::Close},
    {Connector::Open, Dot::Bullet, Connector::Down},
    {Connector::Open, Dot::Bullet, Connector::Close},
    {Connector::Down, Dot::Circ, Connector::Up},
    {Connector::Down, Dot::Circ, Connector::Close},
    {Connector::Open, Dot::Circ, Connector::Up},
    {Connector::Open, Dot::Circ, Connector::Close},
};

} // namespace detail

inline GMembership check_G(const LabeledSeq& w) {
    GMembership out;
    out.word = w;
    if (w.dots.size() != w.connectors.size() + 1) {
        out.violated_rule = "word shape mismatch";
        return out;
    }
    if (!is_proper(w.connectors)) {
        out.violated_rule = "connector word is not proper";
        return out;
    }
    const std::size_t s = w.s();
    if (s >= 1) {
        if ((w.dots[0] == Dot::Bullet && w.connectors[0] == Connector::Down) ||
            (w.dots[0] == Dot::Circ && w.connectors[0] == Connector::Up)) {
            out.violated_rule = "forbidden start d1 r1";
            out.position = 1;
            return out;
        }
        if ((w.connectors[s - 1] == Connector::Up && w.dots[s] == Dot::Bullet) ||
            (w.connectors[s - 1] == Connector::Down && w.dots[s] == Dot::Circ)) {
            out.violated_rule = "forbidden end r_s d_{s+1}";
            out.position = s + 1;
            return out;
        }
    }
    for (std::size_t i = 0; i + 1 < s; ++i) {
        for (const auto& f : detail::kForbiddenTriples) {
            if (w.connectors[i] == f.before && w.dots[i + 1] == f.dot &&
                w.connectors[i + 1] == f.after) {
                out.violated_rule = std::string("forbidden triple ") +
                                    connector_char(f.before) + dot_char(f.dot) +
                                    connector_char(f.after);
                out.position = i + 2;
                return out;
            }
        }
    }
    out.is_member = true;
    return out;
}

inline bool in_G(const LabeledSeq& w) { return check_G(w).is_member; }

namespace detail {

inline void require_G(const LabeledSeq& w, const char* who) {
    GMembership g = check_G(w);
    if (!g.is_member)
        throw admissibility_error(std::string(who) + ": word not in G (" +
                                  g.violated_rule + "): " +
                                  format_labeled_sequence(w));
}

} // namespace detail

// ------------------------------------------------------------------
// theta: H -> G, expanding each exponent k into the block b (u o)^{k-1}.

inline LabeledSeq theta(const SeqIndex& s) {
    if (!in_H(s))
        throw admissibility_error("theta requires an element of H: " +
                                  format_sequence(s));
    LabeledSeq w;
    for (std::size_t i = 0; i < s.exponents.size(); ++i) {
        if (i > 0) w.connectors.push_back(s.connectors[i - 1]);
        w.dots.push_back(Dot::Bullet);
        for (int t = 1; t < s.exponents[i]; ++t) {
            w.connectors.push_back(Connector::Up);
            w.dots.push_back(Dot::Circ);
        }
    }
    return w;
}

// Image characterization of theta(H): membership in G together with
// "every hollow dot at position i has i > 1 and r_{i-1} = Up".
// Returns the 1-based position of the first violation, or nullopt.
inline std::optional<std::pair<std::size_t, std::string>> theta_image_violation(
    const LabeledSeq& w) {
    GMembership g = check_G(w);
    if (!g.is_member) return std::make_pair(g.position, g.violated_rule);
    for (std::size_t i = 0; i < w.dots.size(); ++i) {
        if (w.dots[i] != Dot::Circ) continue;
        if (i == 0)
            return std::make_pair(std::size_t{1}, std::string("d1 is hollow"));
        if (w.connectors[i - 1] != Connector::Up)
            return std::make_pair(i + 1,
                                  std::string("hollow dot not preceded by u"));
    }
    // The block parse must land in H. The forbidden patterns of G enforce
    // exponent admissibility everywhere except for the one-block word "b",
    // whose parse "1" is not admissible.
    SeqIndex parsed;
    int k = 1;
    for (std::size_t i = 1; i < w.dots.size(); ++i) {
        if (w.dots[i] == Dot::Circ) {
            ++k;
        } else {
            parsed.exponents.push_back(k);
            parsed.connectors.push_back(w.connectors[i - 1]);
            k = 1;
        }
    }
    parsed.exponents.push_back(k);
    if (!in_H(parsed))
        return std::make_pair(w.dots.size(),
                              std::string("parsed index not admissible"));
    return std::nullopt;
}

inline bool in_theta_image(const LabeledSeq& w) {
    return !theta_image_violation(w).has_value();
}

inline SeqIndex theta_inverse(const LabeledSeq& w) {
    if (auto v = theta_image_violation(w))
        throw admissibility_error("word not in theta(H) at position " +
                                  std::to_string(v->first) + " (" + v->second +
                                  "): " + format_labeled_sequence(w));
    SeqIndex s;
    int k = 1;
    for (std::size_t i = 1; i < w.dots.size(); ++i) {
        if (w.dots[i] == Dot::Circ) {
            ++k;
        } else {
            s.exponents.push_back(k);
            s.connectors.push_back(w.connectors[i - 1]);
            k = 1;
        }
    }
    s.exponents.push_back(k);
    return s;
}

// ------------------------------------------------------------------
// The involutions of G.

inline LabeledSeq tau_ud(const LabeledSeq& w) {
    detail::require_G(w, "tau_ud");
    LabeledSeq out;
    out.dots.reserve(w.dots.size());
    for (Dot d : w.dots) out.dots.push_back(dot_flip(d));
    for (Connector r : w.connectors) {
        switch (r) {
        case Connector::Up: out.connectors.push_back(Connector::Down); break;
        case Connector::Down: out.connectors.push_back(Connector::Up); break;
        default: out.connectors.push_back(r); break;
        }
    }
    return out;
}

inline LabeledSeq tau_lr(const LabeledSeq& w) {
    detail::require_G(w, "tau_lr");
    LabeledSeq out;
    out.dots.assign(w.dots.rbegin(), w.dots.rend());
    for (auto it = w.connectors.rbegin(); it != w.connectors.rend(); ++it) {
        switch (*it) {
        case Connector::Up: out.connectors.push_back(Connector::Down); break;
        case Connector::Down: out.connectors.push_back(Connector::Up); break;
        case Connector::Open: out.connectors.push_back(Connector::Close); break;
        case Connector::Close: out.connectors.push_back(Connector::Open); break;
        }
    }
    return out;
}

inline LabeledSeq tau(const LabeledSeq& w) { return tau_ud(tau_lr(w)); }

// ------------------------------------------------------------------
// The dualizable subsets T (for tau_lr) and T' (for tau) of H.

// T = theta^{-1}(theta(H) ∩ tau_lr(theta(H))): every exponent is 1 or 2,
// and each 2 at position i has i <= s with r_i = Down.
inline bool in_T(const SeqIndex& s) {
    if (!in_H(s))
        throw admissibility_error("in_T requires an element of H: " +
                                  format_sequence(s));
    for (std::size_t i = 0; i < s.exponents.size(); ++i) {
        const int k = s.exponents[i];
        if (k == 1) continue;
        if (k != 2) return false;
        if (i == s.exponents.size() - 1) return false; // i <= s
        if (s.connectors[i] != Connector::Down) return false;
    }
    return true;
}

// T' = theta^{-1}(theta(H) ∩ tau(theta(H))): k_{s+1} >= 2 and, for each
// i <= s, r_i = Up or k_i >= 2.
inline bool in_Tprime(const SeqIndex& s) {
    if (!in_H(s))
        throw admissibility_error("in_Tprime requires an element of H: " +
                                  format_sequence(s));
    if (s.exponents.back() < 2) return false;
    for (std::size_t i = 0; i + 1 < s.exponents.size(); ++i)
        if (s.connectors[i] != Connector::Up && s.exponents[i] < 2)
            return false;
    return true;
}

inline SeqIndex dual_lr(const SeqIndex& s) {
    if (!in_T(s))
        throw admissibility_error("dual_lr requires an element of T: " +
                                  format_sequence(s));
    return theta_inverse(tau_lr(theta(s)));
}

namespace detail {

inline Connector connector_tilde(Connector r) {
    switch (r) {
    case Connector::Open: return Connector::Close;
    case Connector::Close: return Connector::Open;
    default: return r;
    }
}

// Closed form of the tau-dual: for
//   k = (1u)^{a1-1}(b1+1) r_1 ... r_{j-1} (1u)^{aj-1}(bj+1)
// the dual is
//   l = (1u)^{bj-1}(aj+1) ~r_{j-1} ... ~r_1 (1u)^{b1-1}(a1+1).
inline SeqIndex dual_tau_closed_form(const SeqIndex& s) {
    struct Group {
        int a;
        int b;
    };
    std::vector<Group> groups;
    std::vector<Connector> seps;
    std::size_t pos = 0;
    while (true) {
        int a = 1;
        while (s.exponents[pos] == 1) {
            ++a;
            ++pos; // consumes the mandatory Up connector as well
        }
        groups.push_back(Group{a, s.exponents[pos] - 1});
        if (pos + 1 == s.exponents.size()) break;
        seps.push_back(s.connectors[pos]);
        ++pos;
    }
    SeqIndex out;
    for (std::size_t g = groups.size(); g-- > 0;) {
        for (int t = 1; t < groups[g].b; ++t) {
            out.exponents.push_back(1);
            out.connectors.push_back(Connector::Up);
        }
        out.exponents.push_back(groups[g].a + 1);
        if (g > 0) out.connectors.push_back(connector_tilde(seps[g - 1]));
    }
    return out;
}

} // namespace detail

inline SeqIndex dual_tau(const SeqIndex& s) {
    if (!in_Tprime(s))
        throw admissibility_error("dual_tau requires an element of T': " +
                                  format_sequence(s));
    SeqIndex via_theta = theta_inverse(tau(theta(s)));
    SeqIndex closed = detail::dual_tau_closed_form(s);
    if (!(via_theta == closed))
        throw std::logic_error("tau-dual mismatch between theta path and "
                               "closed form for " +
                               format_sequence(s));
    return via_theta;
}

// ------------------------------------------------------------------
// Enumeration of H and of the certified duality relations.

namespace detail {

inline void fill_exponents(const std::vector<Connector>& conns,
                           const std::vector<bool>& needs_two, int max_weight,
                           std::vector<int>& exps, int spent, std::size_t pos,
                           std::vector<SeqIndex>& out) {
    const std::size_t count = needs_two.size();
    if (pos == count) {
        out.push_back(SeqIndex{exps, conns});
        return;
    }
    int min_rest = 0;
    for (std::size_t i = pos + 1; i < count; ++i)
        min_rest += needs_two[i] ? 2 : 1;
    for (int k = needs_two[pos] ? 2 : 1; spent + k + min_rest <= max_weight;
         ++k) {
        exps[pos] = k;
        fill_exponents(conns, needs_two, max_weight, exps, spent + k, pos + 1,
                       out);
    }
}

inline void enumerate_connector_words(std::size_t s, std::size_t depth, int exc,
                                      std::vector<Connector>& cur,
                                      std::vector<std::vector<Connector>>& out) {
    if (depth == s) {
        if (exc == 0) out.push_back(cur);
        return;
    }
    static constexpr Connector all[4] = {Connector::Up, Connector::Down,
                                         Connector::Open, Connector::Close};
    for (Connector r : all) {
        const int e = exc + excess(r);
        if (e < 0) continue;
        if (e > static_cast<int>(s - depth - 1)) continue; // cannot close
        cur.push_back(r);
        enumerate_connector_words(s, depth + 1, e, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

// All elements of H with weight at most max_weight, in a fixed order
// (by word length, then connector word, then exponents).
inline std::vector<SeqIndex> enumerate_H(int max_weight, int weight_cap = 12) {
    if (max_weight > weight_cap)
        throw cap_exceeded("enumeration weight " + std::to_string(max_weight) +
                           " exceeds cap " + std::to_string(weight_cap));
    std::vector<SeqIndex> out;
    for (std::size_t s = 0;
         static_cast<int>(s) + 1 <= max_weight; ++s) {
        std::vector<std::vector<Connector>> words;
        std::vector<Connector> cur;
        detail::enumerate_connector_words(s, 0, 0, cur, words);
        for (const auto& conns : words) {
            std::vector<bool> needs_two(s + 1, false);
            SeqIndex probe;
            probe.connectors = conns;
            probe.exponents.assign(s + 1, 1);
            for (std::size_t i = 1; i <= s + 1; ++i)
                needs_two[i - 1] = detail::rises_into(probe, i) &&
                                   detail::falls_from(probe, i);
            int min_weight = 0;
            for (bool b : needs_two) min_weight += b ? 2 : 1;
            if (min_weight > max_weight) continue;
            std::vector<int> exps(s + 1, 1);
            detail::fill_exponents(conns, needs_two, max_weight, exps, 0, 0,
                                   out);
        }
    }
    return out;
}

struct RelationPair {
    SeqIndex lhs;
    SeqIndex rhs;
    bool self_dual = false;
};

enum class DualityKind { LR, Tau };

// Every unordered duality pair with both members of weight <= max_weight,
// the lexicographically smaller text first; self-dual indices flagged.
inline std::vector<RelationPair> enumerate_relations(int max_weight,
                                                     DualityKind kind,
                                                     int weight_cap = 12) {
    std::vector<RelationPair> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const SeqIndex& s : enumerate_H(max_weight, weight_cap)) {
        const bool member = (kind == DualityKind::LR) ? in_T(s) : in_Tprime(s);
        if (!member) continue;
        const SeqIndex d = (kind == DualityKind::LR) ? dual_lr(s) : dual_tau(s);
        std::string a = format_sequence(s);
        std::string b = format_sequence(d);
        const bool self_dual = (a == b);
        if (b < a) std::swap(a, b);
        if (!seen.insert({a, b}).second) continue;
        RelationPair pair;
        pair.lhs = parse_sequence(a);
        pair.rhs = parse_sequence(b);
        pair.self_dual = self_dual;
        out.push_back(std::move(pair));
    }
    std::sort(out.begin(), out.end(), [](const RelationPair& x, const RelationPair& y) {
        const std::string xa = format_sequence(x.lhs), xb = format_sequence(x.rhs);
        const std::string ya = format_sequence(y.lhs), yb = format_sequence(y.rhs);
        return std::tie(xa, xb) < std::tie(ya, yb);
    });
    return out;
}

} // namespace schurz
