#include <catch2/catch.hpp>

#include <random>

#include "helpers.hpp"

using namespace schurz;

TEST_CASE("sequence parsing", "[notation]") {
    SeqIndex s = parse_sequence("2u4(2)3(2)1");
    CHECK(s.exponents == std::vector<int>{2, 4, 2, 3, 2, 1});
    CHECK(s.connectors == std::vector<Connector>{Connector::Up, Connector::Open,
                                                 Connector::Close,
                                                 Connector::Open,
                                                 Connector::Close});

    SeqIndex single = parse_sequence("3");
    CHECK(single.exponents == std::vector<int>{3});
    CHECK(single.connectors.empty());

    SeqIndex greedy = parse_sequence("12u3");
    CHECK(greedy.exponents == std::vector<int>{12, 3});
    CHECK(greedy.connectors == std::vector<Connector>{Connector::Up});
}

TEST_CASE("parse errors carry byte offsets", "[notation]") {
    CHECK_THROWS_AS(parse_sequence(""), parse_error);
    try {
        parse_sequence("2u");
        FAIL("expected error");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 2);
    }
    try {
        parse_sequence("2x3");
        FAIL("expected error");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 1);
    }
    CHECK_THROWS_AS(parse_sequence("0"), parse_error);
    CHECK_THROWS_AS(parse_sequence("2u0d1"), parse_error);
}

TEST_CASE("sequence formatting", "[notation]") {
    CHECK(format_sequence(SeqIndex{{2}, {}}) == "2");
    CHECK(format_sequence(SeqIndex{{1, 2, 1},
                                   {Connector::Open, Connector::Close}}) ==
          "1(2)1");
    CHECK(format_sequence(SeqIndex{{2, 1, 1},
                                   {Connector::Down, Connector::Down}}) ==
          "2d1d1");
    // Canonicalizes redundant leading zeros.
    CHECK(format_sequence(parse_sequence("012u03")) == "12u3");
}

TEST_CASE("parse/format round trip", "[notation]") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 500; ++iter) {
        SeqIndex s;
        const int len = 1 + static_cast<int>(rng() % 7);
        for (int i = 0; i < len; ++i) {
            s.exponents.push_back(1 + static_cast<int>(rng() % 30));
            if (i + 1 < len)
                s.connectors.push_back(static_cast<Connector>(rng() % 4));
        }
        CHECK(parse_sequence(format_sequence(s)) == s);
    }
}

TEST_CASE("excess values", "[notation]") {
    CHECK(excess(std::vector<Connector>{Connector::Open}) == 1);
    CHECK(excess(std::vector<Connector>{}) == 0);
    CHECK(excess(std::vector<Connector>{Connector::Open, Connector::Up,
                                        Connector::Close, Connector::Down}) ==
          0);
}

TEST_CASE("weakly proper and proper", "[notation]") {
    std::vector<Connector> open_close{Connector::Open, Connector::Close};
    CHECK(is_weakly_proper(open_close));
    CHECK(is_proper(open_close));

    std::vector<Connector> close_only{Connector::Close};
    CHECK_FALSE(is_weakly_proper(close_only));

    SeqIndex nested = parse_sequence("1(1u1(1)1)1d1");
    CHECK(is_proper(nested.connectors));

    std::vector<Connector> open_only{Connector::Open};
    CHECK(is_weakly_proper(open_only));
    CHECK_FALSE(is_proper(open_only));
}

TEST_CASE("admissibility of sequence indices", "[notation]") {
    CHECK(is_admissible(parse_sequence("2d1d1")));
    CHECK_FALSE(is_admissible(parse_sequence("1d1")));
    CHECK(is_admissible(parse_sequence("1u2")));
    CHECK_THROWS_AS(is_admissible(parse_sequence("1(1")), admissibility_error);
}

TEST_CASE("generalized admissibility", "[notation]") {
    const SeqIndex one = parse_sequence("1");
    const SeqIndex two = parse_sequence("2");
    std::vector<double> half{0.0, 0.5};
    std::vector<double> full{0.0, 1.0};
    CHECK(is_admissible_generalized(one, std::span<const double>(half)));
    CHECK_FALSE(is_admissible_generalized(one, std::span<const double>(full)));
    CHECK(is_admissible_generalized(two, std::span<const double>(full)));

    std::vector<double> wrong_len{0.0, 0.5, 1.0};
    CHECK_THROWS_AS(
        is_admissible_generalized(one, std::span<const double>(wrong_len)),
        parse_error);
    std::vector<double> unsorted{0.5, 0.25};
    CHECK_THROWS_AS(
        is_admissible_generalized(one, std::span<const double>(unsorted)),
        parse_error);
    CHECK_THROWS_AS(
        is_admissible_generalized(parse_sequence("1)1(1"),
                                  std::span<const double>(full)),
        admissibility_error);
}

TEST_CASE("admissible iff generalized admissible at (0,1)", "[notation]") {
    // On proper words the plain and generalized notions coincide at t=(0,1).
    for (std::size_t len = 0; len <= 4; ++len) {
        for (const auto& conns : oracle::proper_words(len)) {
            const int j = excess(conns) + 2;
            std::vector<double> t;
            for (int i = 0; i < j; ++i)
                t.push_back(i + 1 == j ? 1.0 : i / static_cast<double>(j));
            SeqIndex s;
            s.connectors = conns;
            std::mt19937 rng(static_cast<unsigned>(len * 977 + conns.size()));
            for (int rep = 0; rep < 8; ++rep) {
                s.exponents.assign(len + 1, 1);
                for (auto& k : s.exponents) k = 1 + static_cast<int>(rng() % 3);
                CHECK(is_admissible(s) ==
                      is_admissible_generalized(s, std::span<const double>(t)));
            }
        }
    }
}

TEST_CASE("labeled word parse/format", "[notation]") {
    LabeledSeq w = parse_labeled_sequence("b(buo)b");
    REQUIRE(w.dots.size() == 4);
    CHECK(w.dots == std::vector<Dot>{Dot::Bullet, Dot::Bullet, Dot::Circ,
                                     Dot::Bullet});
    CHECK(format_labeled_sequence(w) == "b(buo)b");
    CHECK_THROWS_AS(parse_labeled_sequence("x"), parse_error);
    CHECK_THROWS_AS(parse_labeled_sequence("bu"), parse_error);
}
