#include <cmath>
#include <random>

#include "doctest.h"
#include "recode.hpp"

using namespace sz;

namespace {
AlphabetPtr binary() { return std::make_shared<Alphabet>(std::vector<std::string>{"a", "b"}); }
}

TEST_CASE("block size one is the identity") {
    auto a = binary();
    BlockCode code{a, 1, 1};
    Pattern x = Pattern::from_string(a, "abab");
    Pattern y = recode_forward(x, code);
    CHECK(y.window().size() == 4);
    CHECK(recode_backward(y, code) == x);
}

TEST_CASE("1D pairs group as expected") {
    auto a = binary();
    BlockCode code{a, 2, 1};
    Pattern x = Pattern::from_string(a, "abab");
    Pattern y = recode_forward(x, code);
    REQUIRE(y.window().size() == 2);
    CHECK(y.alphabet().name(y.at(0)) == "ab");
    CHECK(y.alphabet().name(y.at(1)) == "ab");
    CHECK(recode_backward(y, code) == x);
    // Misaligned window.
    CHECK_THROWS_AS(recode_forward(Pattern::from_string(a, "aba"), code), error);
}

TEST_CASE("round trip on random windows") {
    std::mt19937 rng(5);
    auto a = binary();
    for (int m : {2, 3}) {
        BlockCode c1{a, m, 1};
        for (int len = m; len <= 12; len += m) {
            std::string s;
            for (int i = 0; i < len; i++) s += static_cast<char>('a' + rng() % 2);
            Pattern x = Pattern::from_string(a, s);
            CHECK(recode_backward(recode_forward(x, c1), c1) == x);
        }
    }
    BlockCode c2{a, 2, 2};
    for (int w = 2; w <= 6; w += 2)
        for (int h = 2; h <= 6; h += 2) {
            std::vector<uint8_t> syms(static_cast<std::size_t>(w) * h);
            for (auto& v : syms) v = rng() % 2;
            Pattern x(a, Window::rect(w, h), syms);
            CHECK(recode_backward(recode_forward(x, c2), c2) == x);
        }
}

TEST_CASE("block entropies") {
    CHECK(block_entropy(1) == 0.0);
    CHECK(block_entropy(16) == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
    CHECK(block_entropy(3) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(block_entropy(0), error);
    // Full block vocabulary: lambda_m log |base|.
    BlockCode code{binary(), 2, 2};
    CHECK(block_entropy(code.block_alphabet_size()) ==
          doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("pressure scaling ratio equals the block size") {
    auto a = binary();
    // Zero potential.
    Potential zero{a, Window::segment(2), std::vector<double>(4, 0.0)};
    for (int m : {1, 2, 3}) {
        PressureScalingReport rep = pressure_scaling_check(zero, 1.0, m);
        CHECK(rep.holds);
        CHECK(rep.block_pressure ==
              doctest::Approx(m * std::log(2.0)).epsilon(1e-10));
    }
    // Soft golden mean at beta = 1.
    ForbiddenSet F(a, {Pattern::from_string(a, "bb")});
    Potential gm = potential_direct(F);
    for (int m : {1, 2, 3}) {
        PressureScalingReport rep = pressure_scaling_check(gm, 1.0, m);
        CHECK(rep.holds);
        CHECK(rep.gap <= 1e-8);
    }
    // A two-valued potential with an asymmetric table.
    std::vector<double> tbl{0.0, -0.25, -1.5, -0.75};
    Potential other{a, Window::segment(2), tbl};
    for (int m : {2, 3}) CHECK(pressure_scaling_check(other, 0.8, m).holds);
}
