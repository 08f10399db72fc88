#include <catch2/catch.hpp>

#include <set>

#include "helpers.hpp"

using namespace schurz;

namespace {

// X1 from the introduction: order p6>p4>p2<p1<p3<p5>p6 and p3>p4, labels
// (b,b,b,o,o,b). Hand-coded with arbitrary coordinates.
TwoLabeledPoset x1_fixture() {
    std::vector<PosetElem> elems{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}};
    std::vector<Dot> labels{Dot::Bullet, Dot::Bullet, Dot::Bullet,
                            Dot::Circ,   Dot::Circ,   Dot::Bullet};
    std::vector<std::pair<std::size_t, std::size_t>> rel{
        {1, 0}, {0, 2}, {2, 4}, {1, 3}, {3, 2}, {3, 5}, {5, 4}};
    return TwoLabeledPoset::from_relations(elems, labels, rel);
}

// Label-and-order preserving bijection search.
bool isomorphic(const TwoLabeledPoset& a, const TwoLabeledPoset& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::size_t> perm(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            if (a.labels()[i] != b.labels()[perm[i]]) ok = false;
            for (std::size_t j = 0; j < a.size() && ok; ++j)
                if (a.less(i, j) != b.less(perm[i], perm[j])) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace

TEST_CASE("support columns", "[poset]") {
    auto cols = build_support(std::vector<Connector>{Connector::Up});
    CHECK(cols == std::vector<std::vector<int>>{{0}, {1}});

    cols = build_support(std::vector<Connector>{Connector::Open, Connector::Up,
                                                Connector::Close});
    CHECK(cols ==
          std::vector<std::vector<int>>{{0}, {-1, 1}, {0, 2}, {1}});
    std::size_t total = 0;
    for (auto& c : cols) total += c.size();
    CHECK(total == 6);

    CHECK(build_support(std::vector<Connector>{}) ==
          std::vector<std::vector<int>>{{0}});

    CHECK_THROWS_AS(build_support(std::vector<Connector>{Connector::Close}),
                    admissibility_error);
}

TEST_CASE("poset of the theta image of 1(2)1 is X1", "[poset]") {
    TwoLabeledPoset p = build_poset(parse_labeled_sequence("b(buo)b"));
    REQUIRE(p.size() == 6);
    CHECK(p.covers().size() == 7);
    CHECK(isomorphic(p, x1_fixture()));
    CHECK(is_admissible_poset(p));
}

TEST_CASE("small labeled words", "[poset]") {
    TwoLabeledPoset chain = build_poset(parse_labeled_sequence("buo"));
    REQUIRE(chain.size() == 2);
    CHECK(chain.less(0, 1));
    CHECK(chain.labels()[0] == Dot::Bullet);
    CHECK(chain.labels()[1] == Dot::Circ);
    CHECK(is_admissible_poset(chain));

    TwoLabeledPoset bad = build_poset(parse_labeled_sequence("buoub"));
    CHECK_FALSE(is_admissible_poset(bad)); // maximal element is filled

    TwoLabeledPoset dot = build_poset(parse_labeled_sequence("b"));
    CHECK_FALSE(is_admissible_poset(dot));
}

TEST_CASE("theta images give admissible posets", "[poset]") {
    for (const SeqIndex& s : enumerate_H(6))
        CHECK(is_admissible_poset(build_poset(theta(s))));
}

TEST_CASE("linear extensions", "[poset]") {
    TwoLabeledPoset chain = build_poset(parse_labeled_sequence("buo"));
    CHECK(linear_extensions(chain) == std::vector<std::string>{"bo"});

    TwoLabeledPoset anti = TwoLabeledPoset::from_relations(
        {{1, 0}, {2, 0}}, {Dot::Bullet, Dot::Circ}, {});
    CHECK(linear_extensions(anti) == std::vector<std::string>{"bo", "ob"});

    TwoLabeledPoset x1 = build_poset(parse_labeled_sequence("b(buo)b"));
    auto words = linear_extensions(x1);
    CHECK(static_cast<long long>(words.size()) ==
          oracle::extension_count_brute(x1));
    for (const auto& w : words) {
        REQUIRE(w.size() == 6);
        CHECK(w.front() == 'b');
        CHECK(w.back() == 'o');
    }
}

TEST_CASE("extension words of admissible posets are admissible", "[poset]") {
    for (const SeqIndex& s : enumerate_H(6)) {
        TwoLabeledPoset p = build_poset(theta(s));
        auto words = linear_extensions(p);
        CHECK(static_cast<long long>(words.size()) ==
              oracle::extension_count_brute(p));
        for (const auto& w : words) {
            CHECK(w.front() == 'b');
            CHECK(w.back() == 'o');
        }
    }
}

TEST_CASE("element cap on extension enumeration", "[poset]") {
    LabeledSeq big;
    big.dots.assign(21, Dot::Bullet);
    big.connectors.assign(20, Connector::Up);
    TwoLabeledPoset p = build_poset(big);
    CHECK_THROWS_AS(linear_extensions(p), cap_exceeded);
    CHECK(linear_extensions(p, 21).size() == 1);
}

TEST_CASE("closure order equals the distance characterization", "[poset]") {
    // On every constructed carrier, (x,y) <= (x',y') iff y'-y >= |x-x'|.
    for (std::size_t len = 0; len <= 8; ++len) {
        for (const auto& conns : oracle::proper_words(len)) {
            LabeledSeq w;
            w.connectors = conns;
            w.dots.assign(len + 1, Dot::Bullet);
            TwoLabeledPoset p = build_poset(w);
            const auto& e = p.elements();
            for (std::size_t a = 0; a < p.size(); ++a)
                for (std::size_t b = 0; b < p.size(); ++b) {
                    const bool formula =
                        !(a == b) && (e[b].y - e[a].y >=
                                      std::abs(e[a].x - e[b].x));
                    if (p.less(a, b) != formula) {
                        CAPTURE(len, a, b);
                        CHECK(p.less(a, b) == formula);
                    }
                }
        }
        // Also the column-size law |Y_x| = 1 + excess of the prefix.
        for (const auto& conns : oracle::proper_words(len)) {
            auto cols = build_support(conns);
            int exc = 0;
            for (std::size_t x = 0; x < cols.size(); ++x) {
                CHECK(static_cast<int>(cols[x].size()) == 1 + exc);
                if (x < conns.size()) exc += excess(conns[x]);
            }
        }
    }
}

TEST_CASE("poset element count equals total tableau weight", "[poset]") {
    // |P(theta(s))| = sum over columns of k_x * |Y_x|, the number of boxes
    // of the tableau weighted by its exponents.
    for (const SeqIndex& s : enumerate_H(6)) {
        auto cols = build_support(s.connectors);
        std::size_t expected = 0;
        for (std::size_t x = 0; x < cols.size(); ++x)
            expected += cols[x].size() * static_cast<std::size_t>(s.exponents[x]);
        CHECK(build_poset(theta(s)).size() == expected);
    }
}

TEST_CASE("dot export", "[poset]") {
    auto count = [](const std::string& text, const std::string& needle) {
        std::size_t n = 0, pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) {
            ++n;
            pos += needle.size();
        }
        return n;
    };
    TwoLabeledPoset chain = build_poset(parse_labeled_sequence("buo"));
    std::string dot = to_dot(chain);
    CHECK(count(dot, "shape=circle") == 2);
    CHECK(count(dot, "->") == 1);
    CHECK(count(dot, "fillcolor=black") == 1);
    CHECK(count(dot, "fillcolor=white") == 1);

    TwoLabeledPoset x1 = build_poset(parse_labeled_sequence("b(buo)b"));
    std::string dotx = to_dot(x1);
    CHECK(count(dotx, "shape=circle") == 6);
    CHECK(count(dotx, "->") == 7);

    CHECK(count(to_dot(TwoLabeledPoset{}), "shape=circle") == 0);
}

TEST_CASE("poset json", "[poset]") {
    TwoLabeledPoset x1 = build_poset(parse_labeled_sequence("b(buo)b"));
    json j = poset_to_json(x1);
    CHECK(j["elements"].size() == 6);
    CHECK(j["covers"].size() == 7);
    CHECK(j["labels"].size() == 6);
    CHECK(j["labels"]["1,0"] == "b");
    CHECK(j["labels"]["3,0"] == "o");
}

TEST_CASE("relation cycles are rejected", "[poset]") {
    CHECK_THROWS_AS(TwoLabeledPoset::from_relations(
                        {{1, 0}, {2, 0}}, {Dot::Bullet, Dot::Circ},
                        {{0, 1}, {1, 0}}),
                    parse_error);
}
