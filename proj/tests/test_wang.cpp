#include <random>
#include <set>

#include "doctest.h"
#include "wang.hpp"

using namespace sz;

TEST_CASE("monochrome tile tiles everything exactly once") {
    TileSet ts;
    ts.add_tile("a", "a", "a", "a");
    auto tilings = solve(ts, Region(3, 3));
    REQUIRE(tilings.size() == 1);
    CHECK(validate(ts, tilings[0]));
    CHECK(count_by_transfer(ts, Region(3, 3)) == 1);
    CHECK(count_by_transfer(ts, Region(4, 2, Wrap::torus)) == 1);
}

TEST_CASE("incompatible tiles give zero tilings") {
    TileSet ts;
    ts.add_tile("a", "a", "x", "x");
    ts.add_tile("b", "b", "x", "x");
    // No tile's left color matches any tile's right color across the pair
    // boundary unless the same tile repeats; make even that impossible.
    TileSet bad;
    bad.add_tile("a", "b", "x", "x");
    bad.add_tile("c", "d", "x", "x");
    CHECK(solve(bad, Region(2, 1)).empty());
    CHECK(count_by_transfer(bad, Region(2, 1)) == 0);
}

TEST_CASE("validate rejects mismatches and boundary violations") {
    TileSet ts;
    ts.add_tile("a", "b", "x", "x");  // 0
    ts.add_tile("b", "a", "x", "x");  // 1
    Tiling good{Region(2, 1), {0, 1}};
    CHECK(validate(ts, good));
    Tiling badt{Region(2, 1), {0, 0}};
    CHECK_FALSE(validate(ts, badt));
    Region pinned(1, 1, Wrap::free, {EdgeConstraint{Side::left, 0, "b"}});
    CHECK_FALSE(validate(ts, Tiling{pinned, {0}}));
    CHECK(validate(ts, Tiling{pinned, {1}}));
}

TEST_CASE("coordinate tile set basics") {
    TileSet ts = coordinate_tileset(2);
    CHECK(ts.size() == 4);
    // Tile (0,0): left = bottom = (0,0), right = (1,0), top = (0,1).
    const Tile& t0 = ts.tile(0);
    CHECK(ts.color_name(t0.left) == "0,0");
    CHECK(ts.color_name(t0.bottom) == "0,0");
    CHECK(ts.color_name(t0.right) == "1,0");
    CHECK(ts.color_name(t0.top) == "0,1");
}

TEST_CASE("coordinate tilings number exactly n^2") {
    for (int n = 2; n <= 4; n++) {
        TileSet ts = coordinate_tileset(n);
        for (int w = 2; w <= 5; w++)
            for (int h = 2; h <= 5; h++) {
                Region rg(w, h);
                CHECK(solve(ts, rg).size() == static_cast<std::size_t>(n) * n);
                CHECK(count_by_transfer(ts, rg) == n * n);
            }
    }
    // Torus counts agree when the sides are multiples of n.
    CHECK(count_by_transfer(coordinate_tileset(3), Region(3, 3, Wrap::torus)) == 9);
    CHECK(solve(coordinate_tileset(2), Region(2, 2, Wrap::torus)).size() == 4);
}

TEST_CASE("solver and transfer agree on random tile sets") {
    std::mt19937 rng(20240818);
    for (int trial = 0; trial < 100; trial++) {
        TileSet ts;
        int ncolors = 2 + static_cast<int>(rng() % 3);
        int ntiles = 1 + static_cast<int>(rng() % 6);
        std::set<std::array<int, 4>> used;
        for (int i = 0; i < ntiles; i++) {
            std::array<int, 4> quad{static_cast<int>(rng() % ncolors),
                                    static_cast<int>(rng() % ncolors),
                                    static_cast<int>(rng() % ncolors),
                                    static_cast<int>(rng() % ncolors)};
            if (!used.insert(quad).second) continue;
            ts.add_tile("c" + std::to_string(quad[0]), "c" + std::to_string(quad[1]),
                        "c" + std::to_string(quad[2]), "c" + std::to_string(quad[3]));
        }
        if (ts.size() == 0) continue;
        Wrap wrap = rng() % 2 ? Wrap::torus : Wrap::free;
        int w = 2 + static_cast<int>(rng() % 3), h = 2 + static_cast<int>(rng() % 3);
        Region rg(w, h, wrap);
        SolveLimits lim;
        lim.max_solutions = 1 << 22;
        auto sols = solve(ts, rg, lim);
        CHECK(count_by_transfer(ts, rg) == sols.size());
        for (std::size_t i = 0; i < std::min<std::size_t>(sols.size(), 10); i++)
            CHECK(validate(ts, sols[i]));
    }
}

TEST_CASE("macro tiles") {
    TileSet mono;
    mono.add_tile("a", "a", "a", "a");
    CHECK(macro_tiles(mono, 2).size() == 1);
    for (int n = 2; n <= 3; n++)
        CHECK(macro_tiles(coordinate_tileset(n), n).size() ==
              static_cast<std::size_t>(n) * n);
    // Zoom factor 1 returns the tile set itself.
    auto m1 = macro_tiles(coordinate_tileset(2), 1);
    CHECK(m1.size() == 4);
}

TEST_CASE("solution cap carries a partial count") {
    TileSet ts = coordinate_tileset(3);
    SolveLimits lim;
    lim.max_solutions = 4;
    try {
        solve(ts, Region(3, 3), lim);
        FAIL("expected a cap error");
    } catch (const error& e) {
        CHECK(e.kind() == errkind::cap);
        CHECK(std::string(e.what()).find("partial count 4") != std::string::npos);
    }
}

namespace {

// The macro map sending the single blank tile to the offset-(0,0) coordinate
// block, as in the reference example.
MacroMap coordinate_example_map(int n) {
    std::vector<int> block(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; y++)
        for (int x = 0; x < n; x++)
            block[static_cast<std::size_t>(y) * n + x] = x * n + y;  // tile (i,j) = i*n + j
    return MacroMap{block};
}

}  // namespace

TEST_CASE("simulation of the blank tile by coordinate tiles") {
    for (int n = 2; n <= 3; n++) {
        TileSet rho;
        rho.add_tile("0", "0", "0", "0");
        TileSet tau = coordinate_tileset(n);
        SimulationReport rep = verify_simulation(rho, tau, n, coordinate_example_map(n), 2);
        CHECK(rep.injective);
        CHECK(rep.images_valid);
        CHECK(rep.matching_equivalent);
        CHECK(rep.unique_split);
        CHECK(rep.tori_checked == 2);
    }
}

TEST_CASE("simulation failures are detected") {
    TileSet rho;
    rho.add_tile("0", "0", "0", "0");
    rho.add_tile("0", "0", "1", "1");
    TileSet tau = coordinate_tileset(2);
    // Two rho tiles mapped to the same block: injectivity fails.
    MacroMap dup{coordinate_example_map(2)[0], coordinate_example_map(2)[0]};
    SimulationReport rep = verify_simulation(rho, tau, 2, dup, 1);
    CHECK_FALSE(rep.injective);

    // A rogue tile enabling an unsplittable torus tiling: give tau an extra
    // all-same-color tile, whose tilings are never coordinate blocks.
    TileSet rogue = coordinate_tileset(2);
    rogue.add_tile("z", "z", "z", "z");
    TileSet rho1;
    rho1.add_tile("0", "0", "0", "0");
    SimulationReport rep2 = verify_simulation(rho1, rogue, 2, coordinate_example_map(2), 1);
    CHECK_FALSE(rep2.unique_split);
}

TEST_CASE("golden mean conversion counts match the direct configuration count") {
    auto a = std::make_shared<Alphabet>(std::vector<std::string>{"0", "1"});
    std::vector<Pattern> pats;
    pats.emplace_back(a, Window::rect(2, 1, 2), std::vector<uint8_t>{1, 1});
    pats.emplace_back(a, Window::rect(1, 2, 2), std::vector<uint8_t>{1, 1});
    ForbiddenSet F(a, std::move(pats));
    WangConversion wc = sft_to_wang(F);
    CHECK(wc.alphabet_size == 2);
    CHECK(wc.tiles.size() == 5);  // 4 ways around symbol 0, 1 around symbol 1

    // Direct torus configuration count as the oracle.
    auto torus_count = [&](int w, int h) {
        int count = 0;
        for (unsigned m = 0; m < (1u << (w * h)); m++) {
            auto at = [&](int x, int y) { return (m >> (y * w + x)) & 1u; };
            bool ok = true;
            for (int y = 0; y < h && ok; y++)
                for (int x = 0; x < w && ok; x++) {
                    if (at(x, y) && at((x + 1) % w, y)) ok = false;
                    if (at(x, y) && at(x, (y + 1) % h)) ok = false;
                }
            if (ok) count++;
        }
        return count;
    };
    CHECK(torus_count(2, 2) == 7);
    CHECK(count_by_transfer(wc.tiles, Region(2, 2, Wrap::torus)) == 7);
    CHECK(count_by_transfer(wc.tiles, Region(3, 3, Wrap::torus)) == torus_count(3, 3));
    CHECK(solve(wc.tiles, Region(3, 3, Wrap::torus)).size() ==
          static_cast<std::size_t>(torus_count(3, 3)));

    // The tile-to-symbol projection recovers configurations bijectively:
    // check distinct projections.
    auto sols = solve(wc.tiles, Region(2, 2, Wrap::torus));
    std::set<std::vector<int>> projections;
    for (const Tiling& t : sols) {
        std::vector<int> cfg;
        for (int id : t.cells) cfg.push_back(wc.tile_symbol[id]);
        projections.insert(cfg);
    }
    CHECK(projections.size() == sols.size());
}

TEST_CASE("single-symbol full shift converts to one tile") {
    auto a = std::make_shared<Alphabet>(std::vector<std::string>{"a"});
    ForbiddenSet F(a, {});
    WangConversion wc = sft_to_wang(F);
    CHECK(wc.tiles.size() == 1);
    CHECK(solve(wc.tiles, Region(3, 3)).size() == 1);
}

TEST_CASE("forbidding everything yields a conversion error") {
    auto a = std::make_shared<Alphabet>(std::vector<std::string>{"0", "1"});
    std::vector<Pattern> pats;
    pats.push_back(Pattern::from_string(a, "0"));
    pats.push_back(Pattern::from_string(a, "1"));
    ForbiddenSet F(a, std::move(pats));
    CHECK_THROWS_AS(sft_to_wang(F), error);
}

TEST_CASE("non-domino forbidden sets are recoded through blocks") {
    // Forbid the 2x2 all-ones square over {0,1}.
    auto a = std::make_shared<Alphabet>(std::vector<std::string>{"0", "1"});
    std::vector<Pattern> pats;
    pats.emplace_back(a, Window::rect(2, 2), std::vector<uint8_t>{1, 1, 1, 1});
    ForbiddenSet F(a, std::move(pats));
    WangConversion wc = sft_to_wang(F);
    CHECK(wc.alphabet_size == 15);  // all 2x2 blocks except the all-ones one

    // Torus counts of the recoded shift equal direct counts of the original.
    auto direct = [&](int w, int h) {
        int count = 0;
        for (unsigned m = 0; m < (1u << (w * h)); m++) {
            auto at = [&](int x, int y) { return (m >> (y * w + x)) & 1u; };
            bool ok = true;
            for (int y = 0; y < h && ok; y++)
                for (int x = 0; x < w && ok; x++)
                    if (at(x, y) && at((x + 1) % w, y) && at(x, (y + 1) % h) &&
                        at((x + 1) % w, (y + 1) % h))
                        ok = false;
            if (ok) count++;
        }
        return count;
    };
    CHECK(count_by_transfer(wc.tiles, Region(3, 3, Wrap::torus)) == direct(3, 3));
    CHECK(count_by_transfer(wc.tiles, Region(4, 3, Wrap::torus)) == direct(4, 3));
}

TEST_CASE("tileset text format round trip") {
    TileSet ts = coordinate_tileset(2);
    std::string text = print_tileset(ts);
    TileSet back = parse_tileset(text);
    CHECK(print_tileset(back) == text);
    CHECK_THROWS_AS(parse_tileset("tile 1 l=a r=a t=a b=a\n"), error);  // ids must ascend
    CHECK_THROWS_AS(parse_tileset("junk\n"), error);
}

TEST_CASE("macro map parsing") {
    TileSet rho;
    rho.add_tile("0", "0", "0", "0");
    TileSet tau = coordinate_tileset(2);
    // Rows listed top-first: top row is tiles (0,1), (1,1) = ids 1, 3.
    MacroMap m = parse_macro_map("map 0 : 1 3 0 2\n", 2, tau, rho);
    CHECK(m[0] == coordinate_example_map(2)[0]);
    CHECK_THROWS_AS(parse_macro_map("map 0 : 1 3 0\n", 2, tau, rho), error);
    CHECK_THROWS_AS(parse_macro_map("", 2, tau, rho), error);
}
