#include "doctest.h"
#include "tmachine.hpp"
#include "tmtiles.hpp"

using namespace sz;

namespace {

const char* RIGHT_MOVER =
    "states q0\n"
    "blank _\n"
    "rule q0 _ -> q0 _ R\n";

// Infinite counter over {>, 0, 1}: scan right to the blank, then add one
// moving left; the end marker absorbs the carry and restarts the scan.
std::string counter_spec() {
    return "states scan inc done\n"
           "halt done\n"
           "blank _\n"
           "rule scan > -> scan > R\n"
           "rule scan 0 -> scan 0 R\n"
           "rule scan 1 -> scan 1 R\n"
           "rule scan _ -> inc _ L\n"
           "rule inc 1 -> inc 0 L\n"
           "rule inc 0 -> scan 1 R\n"
           "rule inc > -> scan > R\n"
           "rule inc _ -> done _ S\n";
}

std::string halter_spec() {
    return "states q0 qh\n"
           "halt qh\n"
           "blank _\n"
           "rule q0 _ -> qh _ S\n"
           "rule q0 0 -> qh 0 S\n"
           "rule q0 1 -> qh 1 S\n";
}

// Scans the input once, then spins on the first blank after it forever.
std::string scanner_spec() {
    return "states qr qs\n"
           "blank _\n"
           "rule qr 0 -> qr 0 R\n"
           "rule qr 1 -> qr 1 R\n"
           "rule qr _ -> qs _ S\n"
           "rule qs 0 -> qs 0 S\n"
           "rule qs 1 -> qs 1 S\n"
           "rule qs _ -> qs _ S\n";
}

// Halts when the bit under the head is 1, spins otherwise.
std::string first_bit_checker() {
    return "states q0 qs qh\n"
           "halt qh\n"
           "blank _\n"
           "rule q0 0 -> qs 0 S\n"
           "rule q0 1 -> qh 1 S\n"
           "rule q0 _ -> qs _ S\n"
           "rule qs 0 -> qs 0 S\n"
           "rule qs 1 -> qs 1 S\n"
           "rule qs _ -> qs _ S\n";
}

}  // namespace

TEST_CASE("parsing and validation") {
    TMSpec rm = TMSpec::parse(RIGHT_MOVER);
    CHECK(rm.state_count() == 1);
    CHECK(rm.symbol_count() == 1);

    TMSpec counter = TMSpec::parse(counter_spec());
    CHECK(counter.state_count() == 3);
    // Round trip through the printer.
    CHECK(TMSpec::parse(counter.print()).print() == counter.print());

    CHECK_THROWS_AS(TMSpec::parse("states q0\nblank _\n"
                                  "rule q0 _ -> q0 _ R\n"
                                  "rule q0 _ -> q0 _ L\n"),
                    error);  // duplicate transition
    CHECK_THROWS_AS(TMSpec::parse("states q0\nrule q0 _ -> q0 _ R\n"), error);  // no blank
    CHECK_THROWS_AS(TMSpec::parse("blank _\nrule q0 _ -> q0 _ R\n"), error);    // no states
    CHECK_THROWS_AS(TMSpec::parse("states q0\nblank _\n"), error);  // missing transition
}

TEST_CASE("right mover walks one cell per step") {
    TMSpec rm = TMSpec::parse(RIGHT_MOVER);
    SpaceTimeDiagram d = simulate(rm, "", 4, 3);
    REQUIRE(d.height() == 4);
    for (int t = 0; t < 4; t++)
        for (int x = 0; x < 4; x++) CHECK((d.rows[t][x].state >= 0) == (x == t));
    // Walking off the edge is a boundary-exit error naming the step.
    try {
        simulate(rm, "", 4, 10);
        FAIL("expected boundary exit");
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("step 4") != std::string::npos);
    }
}

TEST_CASE("immediate halt yields a height-one diagram") {
    TMSpec h = TMSpec::parse("states qh\nhalt qh\nblank _\n");
    SpaceTimeDiagram d = simulate(h, "", 3, 5);
    CHECK(d.height() == 1);
    CHECK(d.halted);
}

TEST_CASE("counter matches a hand-traced run") {
    TMSpec c = TMSpec::parse(counter_spec());
    SpaceTimeDiagram d = simulate(c, ">11", 5, 6);
    REQUIRE(d.height() == 7);
    // Row 0: scan at the marker. After scanning to the blank (3 steps) the
    // incrementer turns 11 into 00 with a carry into the marker.
    auto tape_at = [&](int t) {
        std::string s;
        for (int x = 0; x < 5; x++) s += c.symbol_name(d.rows[t][x].symbol);
        return s;
    };
    CHECK(tape_at(0) == ">11__");
    CHECK(tape_at(4) == ">11__");  // the turn at the blank writes nothing
    CHECK(tape_at(5) == ">10__");  // rightmost 1 cleared by the carry
    CHECK(tape_at(6) == ">00__");
    CHECK(d.rows[6][0].state == c.state_index("inc"));  // carry headed at the marker
}

TEST_CASE("compiled tile count matches the closed-form audit") {
    for (const std::string& spec :
         {std::string(RIGHT_MOVER), counter_spec(), halter_spec(), scanner_spec()}) {
        TMSpec tm = TMSpec::parse(spec);
        CompiledTiles ct = compile_tm(tm);
        std::size_t expect = static_cast<std::size_t>(tm.symbol_count()) + tm.rule_count() +
                             static_cast<std::size_t>(tm.symbol_count()) *
                                 (tm.right_targets().size() + tm.left_targets().size());
        CHECK(ct.tiles.size() == expect);
    }
}

TEST_CASE("determinism bijection: one tiling equal to the rendered run") {
    struct Case {
        std::string spec, input;
        int w, h;
    };
    std::vector<Case> cases = {
        {RIGHT_MOVER, "", 4, 3},
        {counter_spec(), ">11", 5, 6},
        {scanner_spec(), "00", 4, 5},
    };
    for (const Case& cs : cases) {
        TMSpec tm = TMSpec::parse(cs.spec);
        CompiledTiles ct = compile_tm(tm);
        Region rg = diagram_region(ct, tm, cs.input, cs.w, cs.h);
        auto sols = solve(ct.tiles, rg);
        REQUIRE(sols.size() == 1);
        SpaceTimeDiagram d = simulate(tm, cs.input, cs.w, cs.h - 1);
        CHECK(tiling_matches_diagram(ct, tm, sols[0], d));
    }
}

TEST_CASE("halting kills the tiling above the halt row") {
    TMSpec h = TMSpec::parse(halter_spec());
    CompiledTiles ct = compile_tm(h);
    Region rg = diagram_region(ct, h, "0", 4, 3);
    CHECK(solve(ct.tiles, rg).empty());
    CHECK(count_computation_fillings(h, "0", 4, 3) == 0);
}

TEST_CASE("quiescent region has exactly the all-content tiling") {
    TMSpec rm = TMSpec::parse(RIGHT_MOVER);
    CompiledTiles ct = compile_tm(rm);
    Region rg = diagram_region(ct, rm, "", 4, 3, /*with_head=*/false);
    auto sols = solve(ct.tiles, rg);
    REQUIRE(sols.size() == 1);
    for (int id : sols[0].cells) {
        const Tile& t = ct.tiles.tile(id);
        CHECK(ct.tiles.color_name(t.bottom) == ct.content[rm.blank()]);
    }
}

TEST_CASE("input independence for a non-halting checker") {
    TMSpec b = TMSpec::parse(scanner_spec());
    IndependenceReport rep = check_input_independence(b, 1, 4, 5, 4);
    CHECK(rep.independent);
    for (const auto& [len, count] : rep.counts_by_length) CHECK(count == 1);

    // A checker that halts on input 11 is caught.
    std::string picky =
        "states q0 q1 qh\n"
        "halt qh\n"
        "blank _\n"
        "rule q0 0 -> q0 0 R\n"
        "rule q0 1 -> q1 1 R\n"
        "rule q0 _ -> q0 _ S\n"
        "rule q1 0 -> q0 0 R\n"
        "rule q1 1 -> qh 1 S\n"
        "rule q1 _ -> q0 _ S\n";
    TMSpec p = TMSpec::parse(picky);
    IndependenceReport rep2 = check_input_independence(p, 2, 2, 4, 4);
    CHECK_FALSE(rep2.independent);
    CHECK(count_computation_fillings(p, "11", 4, 4) == 0);
    CHECK(count_computation_fillings(p, "00", 4, 4) == 1);
}

TEST_CASE("macro tile hosts an accepting checker and rejects a halting one") {
    TMSpec b = TMSpec::parse(scanner_spec());
    MacroIO io{"0", "0", "0", "0"};
    MacroTileBundle bundle = assemble_macrotile(12, io, b, 6);
    CHECK(bundle.min_n <= 12);
    SolveLimits lim;
    lim.area_cap = 4096;
    auto sols = solve(bundle.tiles, bundle.region, lim);
    CHECK(sols.size() == 1);

    // Wire subcheck: the delivered machine colors sit right above row 0.
    const Tiling& t = sols[0];
    for (std::size_t i = 0; i < bundle.tape_columns.size(); i++) {
        int x = bundle.tape_columns[i];
        ColorId bottom = bundle.tiles.tile(t.at(x, 1)).bottom;
        std::string name = bundle.tiles.color_name(bottom);
        CHECK(name.substr(name.find('|') + 1) == bundle.delivered[i]);
    }

    // A checker that halts instantly on its head bit kills the block.
    std::string reject =
        "states q0 qh\n"
        "halt qh\n"
        "blank _\n"
        "rule q0 0 -> qh 0 S\n"
        "rule q0 1 -> qh 1 S\n"
        "rule q0 _ -> qh _ S\n";
    TMSpec r = TMSpec::parse(reject);
    MacroTileBundle dead = assemble_macrotile(12, io, r, 6);
    CHECK(solve(dead.tiles, dead.region, lim).empty());

    // Below the computed minimum the layout errors out, naming it.
    try {
        assemble_macrotile(5, io, b, 6);
        FAIL("expected a layout error");
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("n >= ") != std::string::npos);
    }
}

TEST_CASE("macro tile io selectivity") {
    // The first-bit checker accepts exactly the io whose bottom string leads
    // with 0, so flipping one boundary bit kills the block.
    TMSpec c = TMSpec::parse(first_bit_checker());
    SolveLimits lim;
    lim.area_cap = 4096;
    MacroTileBundle ok = assemble_macrotile(12, MacroIO{"0", "1", "1", "0"}, c, 6);
    CHECK(solve(ok.tiles, ok.region, lim).size() == 1);
    MacroTileBundle bad = assemble_macrotile(12, MacroIO{"1", "1", "1", "0"}, c, 6);
    CHECK(solve(bad.tiles, bad.region, lim).empty());
}
