#include <cstring>
#include <string>

#include "doctest.h"
#include "subzero.h"

namespace {

std::string take(char* s) {
    std::string out(s);
    sz_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("bounds through the C surface") {
    char* out = nullptr;
    REQUIRE(sz_binom_bounds(4, "1/2", &out) == SZ_OK);
    CHECK(take(out) == "lower=4 sum=11 upper=16 holds=true");

    REQUIRE(sz_binom_partial_sum(10, "3/10", &out) == SZ_OK);
    CHECK(take(out) == "176");

    REQUIRE(sz_binary_entropy("1/2", 0, &out) == SZ_OK);
    std::string h = take(out);
    CHECK(h.find("0.693147") != std::string::npos);

    CHECK(sz_binom_bounds(4, "3/4", &out) == SZ_ERR_CONTRACT);
    CHECK(std::string(sz_last_error()).find("alpha") != std::string::npos);
    CHECK(sz_binom_bounds(4, "x", &out) == SZ_ERR_PARSE);
}

TEST_CASE("schedule handles") {
    sz_schedule* s = nullptr;
    REQUIRE(sz_schedule_seed(&s) == SZ_OK);
    REQUIRE(sz_schedule_extend(s, 1) == SZ_OK);
    char* out = nullptr;
    REQUIRE(sz_schedule_print(s, &out) == SZ_OK);
    std::string printed = take(out);
    CHECK(printed.find("level 2 l=65538 r=1/512") != std::string::npos);
    REQUIRE(sz_schedule_check(s, 1, &out) == SZ_OK);
    std::string rep = take(out);
    CHECK(rep.find("S4=pass") != std::string::npos);

    REQUIRE(sz_verify_51(s, 2, 10, 0, 1 << 22, &out) == SZ_OK);
    CHECK(take(out).find("overall: pass") != std::string::npos);

    sz_schedule* bad = nullptr;
    CHECK(sz_schedule_parse("level 1 l=x r=1/2\n", &bad) == SZ_ERR_PARSE);
    sz_schedule_free(s);
}

TEST_CASE("patterns and counting through the C surface") {
    const char* golden = "alphabet 0 1\npat 2x1 1 1\n";
    char* out = nullptr;
    REQUIRE(sz_count_admissible(golden, 10, 1 << 22, &out) == SZ_OK);
    CHECK(take(out) == "144");
    REQUIRE(sz_enumerate_admissible(golden, "3x1", 1 << 22, &out) == SZ_OK);
    std::string listed = take(out);
    CHECK(listed.rfind("count 5", 0) == 0);

    sz_schedule* s = nullptr;
    REQUIRE(sz_schedule_seed(&s) == SZ_OK);
    REQUIRE(sz_freq_count(s, 1, '+', 1 << 22, &out) == SZ_OK);
    std::string csv = take(out);
    CHECK(csv.find("1,+,64,") != std::string::npos);
    sz_schedule_free(s);
}

TEST_CASE("tiles through the C surface") {
    sz_tileset* ts = nullptr;
    REQUIRE(sz_tileset_coordinate(2, &ts) == SZ_OK);
    char* out = nullptr;
    REQUIRE(sz_tiles_count(ts, "3x3", "free", &out) == SZ_OK);
    CHECK(take(out) == "4");
    REQUIRE(sz_tiles_solve(ts, "2x2", "free", 100, &out) == SZ_OK);
    std::string sols = take(out);
    CHECK(sols.rfind("count 4", 0) == 0);

    // Round trip through the printer and parser.
    REQUIRE(sz_tileset_print(ts, &out) == SZ_OK);
    std::string text = take(out);
    sz_tileset* ts2 = nullptr;
    REQUIRE(sz_tileset_parse(text.c_str(), &ts2) == SZ_OK);

    // The reference simulation example.
    sz_tileset* rho = nullptr;
    REQUIRE(sz_tileset_parse("tile 0 l=0 r=0 t=0 b=0\n", &rho) == SZ_OK);
    REQUIRE(sz_tiles_verify_sim(rho, ts2, 2, "map 0 : 1 3 0 2\n", 2, &out) == SZ_OK);
    std::string rep = take(out);
    CHECK(rep.find("unique split:   pass") != std::string::npos);
    sz_tileset_free(rho);
    sz_tileset_free(ts2);
    sz_tileset_free(ts);

    REQUIRE(sz_sft_to_wang("alphabet 0 1\npat 2x1 1 1\npat 1x2 1;1\n", &out) == SZ_OK);
    CHECK(take(out).find("tile 4") != std::string::npos);  // five tiles, ids 0..4
}

TEST_CASE("turing machines through the C surface") {
    const char* rm = "states q0\nblank _\nrule q0 _ -> q0 _ R\n";
    sz_tm* tm = nullptr;
    REQUIRE(sz_tm_parse(rm, &tm) == SZ_OK);
    char* out = nullptr;
    REQUIRE(sz_tm_diagram(tm, "", 4, 3, &out) == SZ_OK);
    CHECK(take(out).find("t=0 | q0:_") != std::string::npos);
    REQUIRE(sz_tm_fillings(tm, "", 4, 3, &out) == SZ_OK);
    CHECK(take(out) == "1");
    REQUIRE(sz_tm_compile(tm, &out) == SZ_OK);
    CHECK(take(out).find("tile 0") != std::string::npos);
    sz_tm_free(tm);

    CHECK(sz_tm_parse("states q0\n", &tm) == SZ_ERR_PARSE);
}

TEST_CASE("gibbs and recode through the C surface") {
    const char* pot =
        "alphabet 0 1\n"
        "window 2x1\n"
        "default 0\n"
        "val 1 1 -1\n";
    char* out = nullptr;
    REQUIRE(sz_gibbs_pressure(pot, 0.0, 1, &out) == SZ_OK);
    std::string rep = take(out);
    CHECK(rep.find("pressure=0.693147") != std::string::npos);

    const char* fams =
        "alphabet 0 1\n"
        "family plus\n"
        "pat 1x1 0\n"
        "family minus\n"
        "pat 1x1 1\n";
    REQUIRE(sz_gibbs_sweep(pot, fams, "0:2:1", 2, &out) == SZ_OK);
    std::string csv = take(out);
    CHECK(csv.rfind("beta,pressure,entropy,energy,mass_plus,mass_minus\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    REQUIRE(sz_recode_check(pot, 1.0, 2, &out) == SZ_OK);
    CHECK(take(out).find("pass") != std::string::npos);

    sz_schedule* s = nullptr;
    REQUIRE(sz_schedule_parse("level 1 l=2 r=2/3\nlevel 2 l=5 r=1/3\n", &s) == SZ_OK);
    REQUIRE(sz_gibbs_oscillate(s, 2, "0:2:1", 2.0, 2, &out) == SZ_OK);
    CHECK(take(out).find("beta,pressure") != std::string::npos);
    sz_schedule_free(s);
}
