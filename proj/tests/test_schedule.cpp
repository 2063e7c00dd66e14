#include "doctest.h"
#include "schedule.hpp"

using namespace sz;

TEST_CASE("seed schedule and printing round trip") {
    Schedule s = Schedule::seed();
    CHECK(s.length(1) == 4);
    CHECK(s.freq(1) == mpq_class(1, 2));
    CHECK(s.window(1) == 7);
    Schedule t = parse_schedule(s.print());
    CHECK(t.print() == s.print());
    CHECK(t.mode() == ScheduleMode::strict);
}

TEST_CASE("S1 at the seed") {
    Schedule s = Schedule::seed();
    ConditionResult r = check_s1(s, 1);
    CHECK(r.holds);
    CHECK(r.margin == "5/2");  // 7/2 - 1
}

TEST_CASE("S4 holds with margin zero at the exact threshold") {
    Schedule s({mpz_class(4), mpz_class(65536)}, {mpq_class(1, 2), mpq_class(1, 512)},
               ScheduleMode::toy);
    ConditionReport rep = check_conditions(s, 1);
    CHECK(rep.s4.holds);
    CHECK(rep.s4.margin == "0");
}

TEST_CASE("toy pair (4,1/2)->(8,1/4) fails S2") {
    Schedule s({mpz_class(4), mpz_class(8)}, {mpq_class(1, 2), mpq_class(1, 4)},
               ScheduleMode::toy);
    ConditionReport rep = check_conditions(s, 1);
    CHECK_FALSE(rep.s2.holds);   // 10 H(1/4) = 5.62 > 0.173
    CHECK_FALSE(rep.s4.holds);   // 8 < 2^16
    CHECK(rep.s1.holds);
    // Strict construction must reject the same data.
    CHECK_THROWS_AS(Schedule({mpz_class(4), mpz_class(8)},
                             {mpq_class(1, 2), mpq_class(1, 4)}, ScheduleMode::strict),
                    error);
}

TEST_CASE("extension from the seed") {
    Schedule s = Schedule::seed();
    Schedule e = extend_schedule(s);
    REQUIRE(e.levels() == 2);

    // Oracle: scan upward from 2^16 for the first length whose window is
    // divisible by 7.
    mpz_class expect = 65536;
    while ((2 * expect - 1) % 7 != 0) expect += 1;
    CHECK(e.length(2) == expect);
    CHECK(e.length(2) == 65538);
    CHECK(e.length(2) >= 65536);
    CHECK((2 * e.length(2) - 1) % 7 == 0);
    CHECK(e.block_ratio(2) == (2 * mpz_class(65538) - 1) / 7);

    // Maximal dyadic frequency from the entropy bisection.
    CHECK(e.freq(2) == mpq_class(1, 512));
    CHECK(e.freq(2) <= mpq_class(22, 10000));  // r_2 <= 0.0022

    ConditionReport rep = check_conditions(e, 1);
    CHECK(rep.all());
}

TEST_CASE("extension monotone structure") {
    Schedule e = extend_schedule(Schedule::seed());
    // One exponent up must still pass S2/S3 (conditions relax as r decreases)
    // and one down must fail S2 (r = 2^-9 was minimal-exponent maximal r).
    Schedule up({e.length(1), e.length(2)}, {e.freq(1), e.freq(2) / 2}, ScheduleMode::toy);
    CHECK(check_conditions(up, 1).s2.holds);
    CHECK(check_conditions(up, 1).s3.holds);
    Schedule down({e.length(1), e.length(2)}, {e.freq(1), e.freq(2) * 2}, ScheduleMode::toy);
    CHECK_FALSE(check_conditions(down, 1).s2.holds);
}

TEST_CASE("schedule structural invariants") {
    CHECK_THROWS_AS(Schedule({mpz_class(4), mpz_class(4)}, {mpq_class(1, 2), mpq_class(1, 4)},
                             ScheduleMode::toy),
                    error);
    CHECK_THROWS_AS(Schedule({mpz_class(4), mpz_class(8)}, {mpq_class(1, 2), mpq_class(1, 2)},
                             ScheduleMode::toy),
                    error);
    CHECK_THROWS_AS(Schedule({mpz_class(4)}, {mpq_class(0)}, ScheduleMode::toy), error);
    // Divisibility surfaces as a schedule error when the ratio is taken.
    Schedule s({mpz_class(4), mpz_class(8)}, {mpq_class(1, 2), mpq_class(1, 4)},
               ScheduleMode::toy);
    CHECK_THROWS_AS(s.block_ratio(2), error);
}

TEST_CASE("schedule parsing errors") {
    CHECK_THROWS_AS(parse_schedule("level 2 l=4 r=1/2\n"), error);
    CHECK_THROWS_AS(parse_schedule("level 1 l=x r=1/2\n"), error);
    CHECK_THROWS_AS(parse_schedule("mode wild\n"), error);
}
