#pragma once

#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schurz/errors.hpp"

namespace schurz {

// Connector symbols between consecutive exponents of a sequence index.
// ASCII surface syntax: 'u' (up), 'd' (down), '(' (open), ')' (close).
enum class Connector : unsigned char { Up, Down, Open, Close };

constexpr int excess(Connector r) noexcept {
    switch (r) {
    case Connector::Open: return 1;
    case Connector::Close: return -1;
    default: return 0;
    }
}

constexpr char connector_char(Connector r) noexcept {
    switch (r) {
    case Connector::Up: return 'u';
    case Connector::Down: return 'd';
    case Connector::Open: return '(';
    default: return ')';
    }
}

inline int excess(std::span<const Connector> word) noexcept {
    int e = 0;
    for (Connector r : word) e += excess(r);
    return e;
}

// Every prefix has nonnegative excess.
inline bool is_weakly_proper(std::span<const Connector> word) noexcept {
    int e = 0;
    for (Connector r : word) {
        e += excess(r);
        if (e < 0) return false;
    }
    return true;
}

// Weakly proper and total excess zero.
inline bool is_proper(std::span<const Connector> word) noexcept {
    return is_weakly_proper(word) && excess(word) == 0;
}

// A sequence index k1 r1 k2 r2 ... ks rs k{s+1}. Properness of the
// connector word is checked at membership tests, not at construction,
// so partial words can be assembled freely.
struct SeqIndex {
    std::vector<int> exponents;
    std::vector<Connector> connectors;

    bool operator==(const SeqIndex&) const = default;

    std::size_t s() const noexcept { return connectors.size(); }

    int weight() const noexcept {
        return std::accumulate(exponents.begin(), exponents.end(), 0);
    }
};

// Grammar: seq := number (connector number)*, number := [0-9]+ (greedy),
// connector := 'u' | 'd' | '(' | ')'.
inline SeqIndex parse_sequence(std::string_view text) {
    SeqIndex out;
    std::size_t i = 0;
    auto read_number = [&]() {
        if (i >= text.size() || text[i] < '0' || text[i] > '9')
            throw parse_error("expected digit", i);
        long v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            v = v * 10 + (text[i] - '0');
            if (v > 1000000) throw parse_error("exponent too large", i);
            ++i;
        }
        if (v == 0) throw parse_error("exponent must be positive", i - 1);
        out.exponents.push_back(static_cast<int>(v));
    };
    read_number();
    while (i < text.size()) {
        Connector r;
        switch (text[i]) {
        case 'u': r = Connector::Up; break;
        case 'd': r = Connector::Down; break;
        case '(': r = Connector::Open; break;
        case ')': r = Connector::Close; break;
        default: throw parse_error("unexpected character", i);
        }
        out.connectors.push_back(r);
        ++i;
        read_number();
    }
    return out;
}

inline std::string format_sequence(const SeqIndex& s) {
    std::string out;
    for (std::size_t i = 0; i < s.exponents.size(); ++i) {
        if (i > 0) out.push_back(connector_char(s.connectors[i - 1]));
        out += std::to_string(s.exponents[i]);
    }
    return out;
}

namespace detail {

inline void require_index_shape(const SeqIndex& s) {
    if (s.exponents.empty())
        throw parse_error("sequence index has no exponents");
    if (s.exponents.size() != s.connectors.size() + 1)
        throw parse_error("sequence index shape mismatch");
    for (int k : s.exponents)
        if (k < 1) throw parse_error("exponent must be positive");
}

// Position i (1-based) carries a k_i > 1 requirement when it is entered
// from above and left from above: (i=1 or r_{i-1} in {Up,Open}) and
// (i=s+1 or r_i in {Down,Close}).
inline bool rises_into(const SeqIndex& s, std::size_t i) {
    return i == 1 || s.connectors[i - 2] == Connector::Up ||
           s.connectors[i - 2] == Connector::Open;
}
inline bool falls_from(const SeqIndex& s, std::size_t i) {
    if (i == s.s() + 1) return true;
    return s.connectors[i - 1] == Connector::Down ||
           s.connectors[i - 1] == Connector::Close;
}

} // namespace detail

// Admissibility for proper words (membership test for H together with
// is_proper). Throws if the connector word is not proper.
inline bool is_admissible(const SeqIndex& s) {
    detail::require_index_shape(s);
    if (!is_proper(s.connectors))
        throw admissibility_error("connector word is not proper: " +
                                  format_sequence(s));
    for (std::size_t i = 1; i <= s.s() + 1; ++i) {
        if (detail::rises_into(s, i) && detail::falls_from(s, i) &&
            s.exponents[i - 1] <= 1)
            return false;
    }
    return true;
}

inline bool in_H(const SeqIndex& s) {
    detail::require_index_shape(s);
    return is_proper(s.connectors) && is_admissible(s);
}

// Admissibility of (s; t1..tj) for weakly proper words, j = excess + 2.
// The comparison t_j = 1 is exact by design.
template <class T>
bool is_admissible_generalized(const SeqIndex& s, std::span<const T> t) {
    detail::require_index_shape(s);
    if (!is_weakly_proper(s.connectors))
        throw admissibility_error("connector word is not weakly proper: " +
                                  format_sequence(s));
    const std::size_t j = static_cast<std::size_t>(excess(s.connectors)) + 2;
    if (t.size() != j)
        throw parse_error("t-list must have excess+2 = " + std::to_string(j) +
                          " entries, got " + std::to_string(t.size()));
    if (t.front() < T(0) || t.back() > T(1))
        throw parse_error("t-list must lie in [0,1]");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i - 1] < t[i]))
            throw parse_error("t-list must be strictly increasing");

    const bool t_ends_at_one = (t.back() == T(1));
    for (std::size_t i = 1; i <= s.s() + 1; ++i) {
        if (!detail::rises_into(s, i)) continue;
        const bool falls = (i == s.s() + 1)
                               ? t_ends_at_one
                               : (s.connectors[i - 1] == Connector::Down ||
                                  s.connectors[i - 1] == Connector::Close);
        if (falls && s.exponents[i - 1] <= 1) return false;
    }
    return true;
}

// ------------------------------------------------------------------
// 2-labeled words (elements of G, images of theta).

// Circ is the hollow dot (form dt/t), Bullet the filled dot (dt/(1-t)).
// ASCII: 'o' and 'b'.
enum class Dot : unsigned char { Circ, Bullet };

constexpr char dot_char(Dot d) noexcept {
    return d == Dot::Circ ? 'o' : 'b';
}

constexpr Dot dot_flip(Dot d) noexcept {
    return d == Dot::Circ ? Dot::Bullet : Dot::Circ;
}

struct LabeledSeq {
    std::vector<Dot> dots;
    std::vector<Connector> connectors;

    bool operator==(const LabeledSeq&) const = default;

    std::size_t s() const noexcept { return connectors.size(); }
};

inline LabeledSeq parse_labeled_sequence(std::string_view text) {
    LabeledSeq out;
    std::size_t i = 0;
    auto read_dot = [&]() {
        if (i >= text.size() || (text[i] != 'o' && text[i] != 'b'))
            throw parse_error("expected dot label 'o' or 'b'", i);
        out.dots.push_back(text[i] == 'o' ? Dot::Circ : Dot::Bullet);
        ++i;
    };
    read_dot();
    while (i < text.size()) {
        Connector r;
        switch (text[i]) {
        case 'u': r = Connector::Up; break;
        case 'd': r = Connector::Down; break;
        case '(': r = Connector::Open; break;
        case ')': r = Connector::Close; break;
        default: throw parse_error("unexpected character", i);
        }
        out.connectors.push_back(r);
        ++i;
        read_dot();
    }
    return out;
}

inline std::string format_labeled_sequence(const LabeledSeq& w) {
    std::string out;
    for (std::size_t i = 0; i < w.dots.size(); ++i) {
        if (i > 0) out.push_back(connector_char(w.connectors[i - 1]));
        out.push_back(dot_char(w.dots[i]));
    }
    return out;
}

} // namespace schurz
