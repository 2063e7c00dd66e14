#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "tmachine.hpp"
#include "wang.hpp"

namespace sz {

// Tiles realizing one machine step per row. Vertical colors carry the tape
// content ("c:<sym>") or head ("h:<state>:<sym>"); horizontal colors carry
// the quiescent marker or a travelling head ("x:R:<state>" / "x:L:<state>").
// Halting pairs emit no tile, so a diagram that halts cannot grow upward.
struct CompiledTiles {
    TileSet tiles;
    std::string quiescent;                 // horizontal no-head color
    std::vector<std::string> content;      // symbol -> vertical color name
    std::vector<std::vector<std::string>> head;  // [state][symbol] -> color name
    // Audit counts: |Gamma| content tiles, one tile per rule, and receptions
    // per (travelling state, symbol).
    std::size_t expected_tiles = 0;
};

CompiledTiles compile_tm(const TMSpec& tm);

// Free region whose bottom edge is pinned to the initial configuration
// (head on cell 0 when with_head) and whose side edges are quiescent.
Region diagram_region(const CompiledTiles& ct, const TMSpec& tm, const std::string& input,
                      int width, int height, bool with_head = true);

// Does the tiling's row-by-row content equal the rendered run?
bool tiling_matches_diagram(const CompiledTiles& ct, const TMSpec& tm, const Tiling& t,
                            const SpaceTimeDiagram& d);

// Number of legal fillings of the w x h region above the fixed input row.
mpz_class count_computation_fillings(const TMSpec& tm, const std::string& input, int w, int h,
                                     const SolveLimits& limits = {});

// Checks that the filling count is input-independent over all 2^len binary
// inputs of each length in [len_lo, len_hi].
struct IndependenceReport {
    bool independent = true;
    std::vector<std::pair<int, mpz_class>> counts_by_length;
    std::string detail;
    std::string print() const;
};
IndependenceReport check_input_independence(const TMSpec& tm, int len_lo, int len_hi, int width,
                                            int height, const SolveLimits& limits = {});

// One assembled hierarchy level: a product of the coordinate layer with a
// decoration layer that routes four boundary strings into a checker zone.
struct MacroTileBundle {
    TileSet tiles;
    Region region;              // n x n, boundary pinned to offset (0,0) + io colors
    int min_n = 0;              // smallest layout that fits
    std::vector<int> tape_columns;       // zone columns carrying the input bits
    std::vector<std::string> delivered;  // decoration color expected above row 0 per tape column
};

struct MacroIO {
    std::string bottom, left, top, right;  // equal-length bit strings
};

// Builds the level: a legal tiling of the bundle's region exists iff the
// checker survives `budget` steps on the routed boundary bits. The checker's
// tape alphabet must contain symbols "0", "1" and the blank; its input is the
// concatenation bottom|left|top|right with the head on the first bit.
MacroTileBundle assemble_macrotile(int n, const MacroIO& io, const TMSpec& checker, int budget);

}  // namespace sz
