#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "pattern.hpp"

namespace sz {

// Colors are interned per tile set; a ColorId is an index into the name table.
using ColorId = int;

struct Tile {
    ColorId left, right, top, bottom;
    bool operator==(const Tile& o) const = default;
    auto operator<=>(const Tile& o) const = default;
};

class TileSet {
public:
    TileSet() = default;
    ColorId intern(const std::string& name);
    const std::string& color_name(ColorId c) const { return colors_.at(c); }
    std::size_t color_count() const { return colors_.size(); }
    std::optional<ColorId> find_color(const std::string& name) const;

    // Appends a tile given by color names; duplicates are rejected.
    int add_tile(const std::string& l, const std::string& r, const std::string& t,
                 const std::string& b);
    int add_tile_ids(ColorId l, ColorId r, ColorId t, ColorId b);

    std::size_t size() const { return tiles_.size(); }
    const Tile& tile(int id) const { return tiles_.at(id); }
    const std::vector<Tile>& tiles() const { return tiles_; }

private:
    std::vector<std::string> colors_;
    std::map<std::string, ColorId> color_index_;
    std::vector<Tile> tiles_;
    std::map<Tile, int> tile_index_;
};

enum class Wrap { free, torus };

enum class Side { left, right, top, bottom };

struct EdgeConstraint {
    Side side;
    int index;  // x for top/bottom, y for left/right
    std::string color;
};

struct Region {
    int width = 0, height = 0;
    Wrap wrap = Wrap::free;
    std::vector<EdgeConstraint> boundary;  // empty for torus regions

    Region(int w, int h, Wrap wr = Wrap::free, std::vector<EdgeConstraint> bc = {});
    std::size_t cells() const { return static_cast<std::size_t>(width) * height; }
};

struct Tiling {
    Region region;
    std::vector<int> cells;  // tile index at y * width + x
    int at(int x, int y) const { return cells[static_cast<std::size_t>(y) * region.width + x]; }
};

// Color-matching check for a complete tiling, including wrap adjacencies on
// tori and any boundary constraints.
bool validate(const TileSet& ts, const Tiling& t);

struct SolveLimits {
    std::uint64_t max_solutions = 1 << 20;
    std::uint64_t area_cap = 4096;
};

// All legal tilings in deterministic order (cells row-major from the bottom
// row, candidate tiles ascending). Backtracking with arc-consistency
// propagation. Exceeding max_solutions raises a cap error carrying the
// partial count in its message.
std::vector<Tiling> solve(const TileSet& ts, const Region& region,
                          const SolveLimits& limits = {});

// Exact tiling count via column transfer matrices with big integers.
// column_cap bounds the number of valid single columns.
mpz_class count_by_transfer(const TileSet& ts, const Region& region,
                            std::uint64_t column_cap = 1 << 20);

// The position-encoding tile set over colors (Z/N)^2: bottom = left = (i,j),
// right = (i+1,j), top = (i,j+1).
TileSet coordinate_tileset(int n);
// Name used for the coordinate color (i,j).
std::string coordinate_color(int i, int j);

// All internally color-matched n x n blocks, outer edges unconstrained,
// in solver order.
std::vector<Tiling> macro_tiles(const TileSet& ts, int n, const SolveLimits& limits = {});

// A macro tile assignment for a simulation claim: rho tile id -> n x n block
// of tau tile ids (row-major from the bottom row).
using MacroMap = std::vector<std::vector<int>>;

struct SimulationReport {
    bool injective = false;
    bool images_valid = false;       // every image internally color-matched
    bool matching_equivalent = false;  // rho adjacency <-> macro color match
    bool unique_split = false;         // every torus tiling splits uniquely
    int tori_checked = 0;
    std::string detail;
    bool all() const {
        return injective && images_valid && matching_equivalent && unique_split;
    }
    std::string print() const;
};

// Checks the simulation clauses on tori of size (k n) x (k n) for
// k = 1 .. torus_cap. Bounded verification: a pass is labelled by the number
// of tori checked.
SimulationReport verify_simulation(const TileSet& rho, const TileSet& tau, int n,
                                   const MacroMap& r, int torus_cap = 2,
                                   const SolveLimits& limits = {});

// Converts a domino-presented SFT into a tile set whose torus tilings biject
// with the SFT's torus configurations. Forbidden sets with larger patterns
// are first recoded to overlapping-block dominoes; block_cap bounds the
// recoded alphabet size.
struct WangConversion {
    TileSet tiles;
    // Recoded alphabet size (equals the original alphabet size when no
    // recoding was needed).
    std::size_t alphabet_size = 0;
    // tile id -> symbol index of the cell it encodes
    std::vector<int> tile_symbol;
};
WangConversion sft_to_wang(const ForbiddenSet& F, std::uint64_t block_cap = 4096);

// Tile set text format: "tile <id> l=<c> r=<c> t=<c> b=<c>" lines, ids
// ascending from 0; an optional leading "colors ..." line pre-declares names.
TileSet parse_tileset(const std::string& text);
std::string print_tileset(const TileSet& ts);

MacroMap parse_macro_map(const std::string& text, int n, const TileSet& tau,
                         const TileSet& rho);

}  // namespace sz
