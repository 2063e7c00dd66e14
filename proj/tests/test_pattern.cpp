#include <random>

#include "doctest.h"
#include "pattern.hpp"

using namespace sz;

namespace {

AlphabetPtr binary() { return std::make_shared<Alphabet>(std::vector<std::string>{"0", "1"}); }

ForbiddenSet fs_from(AlphabetPtr a, std::vector<std::string> rows) {
    std::vector<Pattern> ps;
    for (auto& r : rows) ps.push_back(Pattern::from_string(a, r));
    return ForbiddenSet(a, std::move(ps));
}

}  // namespace

TEST_CASE("occurs_in on strings") {
    auto a = binary();
    CHECK(occurs_in(Pattern::from_string(a, "11"), Pattern::from_string(a, "0110")));
    CHECK_FALSE(occurs_in(Pattern::from_string(a, "11"), Pattern::from_string(a, "0101")));
    // Dimension mismatch: a 1x2 vertical domino inside a string.
    Pattern vert(a, Window::rect(1, 2), {0, 1});
    CHECK_THROWS_AS(occurs_in(vert, Pattern::from_string(a, "0101")), error);
}

TEST_CASE("occurs_in in 2D includes translation") {
    auto a = binary();
    Pattern small(a, Window::rect(1, 2), {1, 1});  // vertical 1 over 1
    // 3x3 host with a vertical 11 in the right column (x=2, y=1..2).
    std::vector<uint8_t> host(9, 0);
    host[1 * 3 + 2] = 1;
    host[2 * 3 + 2] = 1;
    Pattern big(a, Window::rect(3, 3), host);
    CHECK(occurs_in(small, big));
    Pattern horiz(a, Window::rect(2, 1, 2), {1, 1});
    CHECK_FALSE(occurs_in(horiz, big));
    // A 1D pattern cannot occur in a 2D host.
    CHECK_THROWS_AS(occurs_in(Pattern::from_string(a, "11"), big), error);
}

TEST_CASE("local admissibility") {
    auto a = binary();
    ForbiddenSet F = fs_from(a, {"11"});
    CHECK(locally_admissible(Pattern::from_string(a, "0101"), F));
    CHECK_FALSE(locally_admissible(Pattern::from_string(a, "0110"), F));
    ForbiddenSet empty(a, {});
    CHECK(locally_admissible(Pattern::from_string(a, "1111"), empty));
}

TEST_CASE("enumeration of golden mean strings") {
    auto a = binary();
    ForbiddenSet F = fs_from(a, {"11"});
    auto got = enumerate_admissible(F, Window::segment(3));
    REQUIRE(got.size() == 5);
    // Lexicographic by symbol index, first point most significant.
    std::vector<std::string> expect = {"0 0 0", "0 0 1", "0 1 0", "1 0 0", "1 0 1"};
    for (std::size_t i = 0; i < expect.size(); i++) CHECK(got[i].str() == expect[i]);
}

TEST_CASE("full shift count and everything-forbidden") {
    auto a3 = std::make_shared<Alphabet>(std::vector<std::string>{"a", "b", "c"});
    ForbiddenSet empty(a3, {});
    CHECK(enumerate_admissible(empty, Window::segment(3)).size() == 27);

    auto a = binary();
    ForbiddenSet all1 = fs_from(a, {"0", "1"});
    CHECK(enumerate_admissible(all1, Window::segment(2)).empty());
}

TEST_CASE("enumeration cap raises") {
    auto a = binary();
    ForbiddenSet F(a, {});
    CHECK_THROWS_AS(enumerate_admissible(F, Window::segment(30), mpz_class(1) << 20), error);
}

TEST_CASE("DP count matches enumeration oracle") {
    auto a = binary();
    ForbiddenSet F = fs_from(a, {"11"});
    CHECK(count_admissible_dp(F, 3) == 5);
    CHECK(count_admissible_dp(F, 10) == 144);  // Fibonacci
    ForbiddenSet none(a, {});
    CHECK(count_admissible_dp(none, 20) == (mpz_class(1) << 20));

    // Random forbidden sets, every length up to 14.
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 25; trial++) {
        std::vector<Pattern> pats;
        int npat = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < npat; i++) {
            int len = 1 + static_cast<int>(rng() % 4);
            std::string s;
            for (int j = 0; j < len; j++) s += static_cast<char>('0' + rng() % 2);
            pats.push_back(Pattern::from_string(a, s));
        }
        ForbiddenSet G(a, std::move(pats));
        for (unsigned long len = 1; len <= 14; len++) {
            auto listed = enumerate_admissible(G, Window::segment(static_cast<int>(len)));
            CHECK(count_admissible_dp(G, len) == listed.size());
        }
    }
}

TEST_CASE("monotonicity: larger forbidden set, smaller admissible set") {
    auto a = binary();
    ForbiddenSet F = fs_from(a, {"11"});
    ForbiddenSet G = fs_from(a, {"11", "000"});
    auto af = enumerate_admissible(F, Window::segment(6));
    auto ag = enumerate_admissible(G, Window::segment(6));
    CHECK(ag.size() <= af.size());
    for (const Pattern& p : ag) CHECK(locally_admissible(p, F));
}

TEST_CASE("enumerated patterns are exactly the admissible ones") {
    auto a = binary();
    ForbiddenSet F(a, {Pattern(a, Window::rect(3, 1, 2), {1, 0, 1}),
                       Pattern(a, Window::rect(2, 1, 2), {1, 1})});
    Window shape = Window::rect(3, 2);
    auto got = enumerate_admissible(F, shape);
    // Brute force oracle over all 2^6 assignments.
    std::size_t count = 0;
    for (unsigned m = 0; m < 64; m++) {
        std::vector<uint8_t> syms(6);
        for (int i = 0; i < 6; i++) syms[i] = (m >> i) & 1;
        Pattern p(a, shape, syms);
        if (locally_admissible(p, F)) count++;
    }
    CHECK(got.size() == count);
    for (const Pattern& p : got) CHECK(locally_admissible(p, F));
}

TEST_CASE("window volume is (2n-1)^d") {
    for (int n = 1; n <= 100; n++) {
        CHECK(Window::square_centered(n, 1).size() ==
              static_cast<std::size_t>(2 * n - 1));
        if (n <= 40)
            CHECK(Window::square_centered(n, 2).size() ==
                  static_cast<std::size_t>(2 * n - 1) * (2 * n - 1));
    }
}

TEST_CASE("cross window canonicalizes to five points with min at origin") {
    Window c = Window::cross();
    CHECK(c.size() == 5);
    CHECK(c.width() == 3);
    CHECK(c.height() == 3);
    CHECK(c.find({1, 1}) >= 0);
    CHECK(c.find({0, 0}) < 0);
}

TEST_CASE("forbidden-set text format round trip") {
    std::string text =
        "alphabet 0 1\n"
        "pat 2x1 1 1\n"
        "pat 1x2 1;0\n";
    ForbiddenSet F = parse_forbidden(text);
    CHECK(F.patterns().size() == 2);
    std::string printed = print_forbidden(F);
    ForbiddenSet F2 = parse_forbidden(printed);
    CHECK(print_forbidden(F2) == printed);
    // First file row is the top row: "1;0" puts 1 at y=1, 0 at y=0.
    const Pattern* vert = nullptr;
    for (const Pattern& p : F.patterns())
        if (p.window().height() == 2) vert = &p;
    REQUIRE(vert != nullptr);
    CHECK(vert->at(static_cast<std::size_t>(vert->window().find({0, 1}))) == 1);
    CHECK(vert->at(static_cast<std::size_t>(vert->window().find({0, 0}))) == 0);
}

TEST_CASE("parse errors carry line context") {
    CHECK_THROWS_AS(parse_forbidden("pat 2x1 1 1\n"), error);       // pat before alphabet
    CHECK_THROWS_AS(parse_forbidden("alphabet 0 1\npat 2x2 1 1\n"), error);  // row mismatch
    CHECK_THROWS_AS(parse_forbidden("alphabet 0 0\n"), error);      // duplicate symbol
}
