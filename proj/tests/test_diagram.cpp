#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace schurz;

namespace {

// The tableau of section 2: rows (.,.,2 / .,2,4 / 2,3,2 / 1,2,.),
// diagonal-constant with the exponents read off the picture.
DiagonalTableau paper_four_row() {
    std::vector<Cell> cells{{1, 3}, {2, 2}, {2, 3}, {3, 1},
                            {3, 2}, {3, 3}, {4, 1}, {4, 2}};
    std::map<int, int> diag{{2, 2}, {1, 4}, {0, 2}, {-1, 3}, {-2, 2}, {-3, 1}};
    return DiagonalTableau(SkewDiagram(cells), diag);
}

} // namespace

TEST_CASE("diagonal profile of the paper tableau", "[diagram]") {
    auto profile = diagonal_profile(paper_four_row());
    std::vector<DiagRun> expected{{2, 1, 1, 2},  {1, 2, 2, 4}, {0, 2, 3, 2},
                                  {-1, 3, 3, 3}, {-2, 3, 4, 2}, {-3, 4, 4, 1}};
    CHECK(profile == expected);
}

TEST_CASE("diagonal profile of small shapes", "[diagram]") {
    DiagonalTableau single(SkewDiagram({{1, 1}}), {{0, 2}});
    CHECK(diagonal_profile(single) == std::vector<DiagRun>{{0, 1, 1, 2}});

    DiagonalTableau square(SkewDiagram({{1, 1}, {1, 2}, {2, 1}, {2, 2}}),
                           {{1, 1}, {0, 2}, {-1, 1}});
    CHECK(diagonal_profile(square) ==
          std::vector<DiagRun>{{1, 1, 1, 1}, {0, 1, 2, 2}, {-1, 2, 2, 1}});
}

TEST_CASE("tableau to sequence on the paper examples", "[diagram]") {
    CHECK(format_sequence(tableau_to_sequence(paper_four_row())) ==
          "2u4(2)3(2)1");

    DiagonalTableau square(SkewDiagram({{1, 1}, {1, 2}, {2, 1}, {2, 2}}),
                           {{1, 1}, {0, 2}, {-1, 1}});
    CHECK(format_sequence(tableau_to_sequence(square)) == "1(2)1");

    DiagonalTableau row(SkewDiagram({{1, 1}, {1, 2}, {1, 3}}),
                        {{0, 1}, {1, 1}, {2, 2}});
    CHECK(format_sequence(tableau_to_sequence(row)) == "2d1d1");
}

TEST_CASE("sequence to tableau on the paper examples", "[diagram]") {
    DiagonalTableau square = sequence_to_tableau(parse_sequence("1(2)1"));
    CHECK(square.shape().cells() ==
          std::vector<Cell>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    CHECK(square.diag_exponents() == std::map<int, int>{{1, 1}, {0, 2}, {-1, 1}});

    DiagonalTableau hook = sequence_to_tableau(parse_sequence("1u2d1"));
    CHECK(hook.shape().cells() == std::vector<Cell>{{1, 2}, {2, 1}, {2, 2}});
    CHECK(hook.exponent_at({1, 2}) == 1);
    CHECK(hook.exponent_at({2, 1}) == 1);
    CHECK(hook.exponent_at({2, 2}) == 2);

    DiagonalTableau single = sequence_to_tableau(parse_sequence("3"));
    CHECK(single.shape().cells() == std::vector<Cell>{{1, 1}});

    CHECK_THROWS_AS(sequence_to_tableau(parse_sequence("1(2")),
                    admissibility_error);
}

TEST_CASE("tableau/sequence round trip over H", "[diagram]") {
    for (const SeqIndex& s : enumerate_H(7)) {
        DiagonalTableau t = sequence_to_tableau(s);
        CHECK(tableau_to_sequence(t) == s);
        // And the tableau direction is the identity on normalized tableaux.
        CHECK(sequence_to_tableau(tableau_to_sequence(t)) == t);
    }
}

TEST_CASE("shape validation", "[diagram]") {
    CHECK_THROWS_AS(SkewDiagram({}), parse_error);
    // Row gap.
    CHECK_THROWS_AS(SkewDiagram({{1, 1}, {3, 1}}), parse_error);
    // Non-contiguous row.
    CHECK_THROWS_AS(SkewDiagram({{1, 1}, {1, 3}}), parse_error);
    // Left endpoints must not increase downward.
    CHECK_THROWS_AS(SkewDiagram({{1, 1}, {1, 2}, {2, 2}, {2, 3}}), parse_error);
    // Disconnected skew shape (two sources).
    CHECK_THROWS_AS(SkewDiagram({{1, 2}, {2, 1}}), parse_error);
    // Normalization translates to min row = min col = 1.
    SkewDiagram shifted({{5, 7}, {5, 8}});
    CHECK(shifted.cells() == std::vector<Cell>{{1, 1}, {1, 2}});
}

TEST_CASE("diagonal tableau validation", "[diagram]") {
    SkewDiagram square({{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    CHECK_THROWS_AS(DiagonalTableau(square, {{0, 2}}), parse_error);
    CHECK_THROWS_AS(DiagonalTableau(square, {{1, 1}, {0, 2}, {-1, 1}, {7, 3}}),
                    parse_error);
    DiagonalTableau ok(square, {{1, 1}, {0, 2}, {-1, 1}});
    CHECK(ok.is_admissible());
    DiagonalTableau bad_corner(square, {{1, 1}, {0, 2}, {-1, 2}});
    // Corner (2,2) sits on diagonal 0 with exponent 2: fine; corner is only
    // (2,2) here. Corner exponent 1 on the (1,2)/(2,1) cells is allowed.
    CHECK(bad_corner.is_admissible());
    DiagonalTableau inadmissible(square, {{1, 1}, {0, 1}, {-1, 1}});
    CHECK_FALSE(inadmissible.is_admissible());
}

TEST_CASE("ssyt series on small fixtures", "[diagram]") {
    // Single cell k=2 at N=3: partial zeta(2).
    GeneralTableau single = GeneralTableau::from_cells({{{1, 1}, 2}});
    CHECK(eval_ssyt_series(single, 3, EvalMode::Rational).exact ==
          Rational(49, 36));

    // Column of two cells, k = (1,2) top to bottom, N=2.
    GeneralTableau column =
        GeneralTableau::from_cells({{{1, 1}, 1}, {{2, 1}, 2}});
    CHECK(eval_ssyt_series(column, 2, EvalMode::Rational).exact ==
          Rational(1, 4));

    // 2x2 square against the brute-force oracle.
    GeneralTableau square = GeneralTableau::from_cells(
        {{{1, 1}, 2}, {{1, 2}, 1}, {{2, 1}, 1}, {{2, 2}, 2}});
    for (long n : {1L, 2L, 3L, 5L})
        CHECK(eval_ssyt_series(square, n, EvalMode::Rational).exact ==
              oracle::ssyt_brute(square, n));

    // Inadmissible corner.
    GeneralTableau bad = GeneralTableau::from_cells({{{1, 1}, 1}});
    CHECK_THROWS_AS(eval_ssyt_series(bad, 3, EvalMode::Rational),
                    admissibility_error);
}

TEST_CASE("ssyt series against brute force on general tableaux", "[diagram]") {
    // A non-diagonal-constant index on the hook.
    GeneralTableau hook = GeneralTableau::from_cells(
        {{{1, 2}, 3}, {{2, 1}, 1}, {{2, 2}, 2}});
    for (long n : {1L, 2L, 4L, 6L})
        CHECK(eval_ssyt_series(hook, n, EvalMode::Rational).exact ==
              oracle::ssyt_brute(hook, n));
    // Float mode agrees with the rational value.
    EvalResult f = eval_ssyt_series(hook, 6, EvalMode::Float);
    EvalResult q = eval_ssyt_series(hook, 6, EvalMode::Rational);
    CHECK(f.value == Approx(q.value).epsilon(1e-13));
}

TEST_CASE("ssyt loop budget", "[diagram]") {
    GeneralTableau row = GeneralTableau::from_cells(
        {{{1, 1}, 2}, {{1, 2}, 1}, {{1, 3}, 1}, {{1, 4}, 2}});
    CHECK_THROWS_AS(eval_ssyt_series(row, 50, EvalMode::Rational, 10),
                    cap_exceeded);
}

TEST_CASE("tableau json round trip", "[diagram]") {
    GeneralTableau hook = GeneralTableau::from_cells(
        {{{1, 2}, 1}, {{2, 1}, 1}, {{2, 2}, 2}});
    json j = tableau_to_json(hook);
    GeneralTableau back = tableau_from_json(j);
    CHECK(back == hook);

    DiagonalTableau d = diagonal_tableau_from_json(j);
    CHECK(format_sequence(tableau_to_sequence(d)) == "1u2d1");

    // Diagonal-constancy enforced on load.
    json bad = json::parse(
        R"({"cells":[{"row":1,"col":1,"k":2},{"row":2,"col":2,"k":3}]})");
    CHECK_THROWS_AS(diagonal_tableau_from_json(bad), parse_error);
    CHECK_THROWS_AS(tableau_from_json(json::parse(R"({"cells":"zap"})")),
                    parse_error);
}
