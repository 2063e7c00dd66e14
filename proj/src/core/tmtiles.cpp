#include "tmtiles.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sz {

static const char* MOD = "tm-tiles";

CompiledTiles compile_tm(const TMSpec& tm) {
    CompiledTiles ct;
    // The quiescent marker doubles as the filler decoration in the macro-tile
    // layout, so zone cells sit flush against plain cells.
    ct.quiescent = "0";
    for (int s = 0; s < tm.symbol_count(); s++) ct.content.push_back("c:" + tm.symbol_name(s));
    ct.head.assign(tm.state_count(), {});
    for (int q = 0; q < tm.state_count(); q++)
        for (int s = 0; s < tm.symbol_count(); s++)
            ct.head[q].push_back("h:" + tm.state_name(q) + ":" + tm.symbol_name(s));

    // Content persists where no head is near.
    for (int s = 0; s < tm.symbol_count(); s++)
        ct.tiles.add_tile(ct.quiescent, ct.quiescent, ct.content[s], ct.content[s]);

    // One action tile per rule.
    for (int q = 0; q < tm.state_count(); q++) {
        if (tm.is_halting(q)) continue;
        for (int s = 0; s < tm.symbol_count(); s++) {
            const TMRule& r = tm.rule(q, s);
            switch (r.move) {
                case Move::S:
                    ct.tiles.add_tile(ct.quiescent, ct.quiescent, ct.head[r.next_state][r.write],
                                      ct.head[q][s]);
                    break;
                case Move::R:
                    ct.tiles.add_tile(ct.quiescent, "x:R:" + tm.state_name(r.next_state),
                                      ct.content[r.write], ct.head[q][s]);
                    break;
                case Move::L:
                    ct.tiles.add_tile("x:L:" + tm.state_name(r.next_state), ct.quiescent,
                                      ct.content[r.write], ct.head[q][s]);
                    break;
            }
        }
    }

    // Reception tiles: the head arrives from the left or from the right.
    std::set<int> rt = tm.right_targets(), lt = tm.left_targets();
    for (int q : rt)
        for (int s = 0; s < tm.symbol_count(); s++)
            ct.tiles.add_tile("x:R:" + tm.state_name(q), ct.quiescent, ct.head[q][s],
                              ct.content[s]);
    for (int q : lt)
        for (int s = 0; s < tm.symbol_count(); s++)
            ct.tiles.add_tile(ct.quiescent, "x:L:" + tm.state_name(q), ct.head[q][s],
                              ct.content[s]);

    ct.expected_tiles = static_cast<std::size_t>(tm.symbol_count()) + tm.rule_count() +
                        static_cast<std::size_t>(tm.symbol_count()) * (rt.size() + lt.size());
    require(ct.tiles.size() == ct.expected_tiles, errkind::contract, MOD,
            "tile count does not match the closed-form audit");
    return ct;
}

Region diagram_region(const CompiledTiles& ct, const TMSpec& tm, const std::string& input,
                      int width, int height, bool with_head) {
    std::vector<int> in = encode_input(tm, input);
    require(static_cast<int>(in.size()) <= width, errkind::contract, MOD,
            "input longer than the region width");
    std::vector<EdgeConstraint> bc;
    for (int x = 0; x < width; x++) {
        int sym = x < static_cast<int>(in.size()) ? in[x] : tm.blank();
        std::string color = (with_head && x == 0) ? ct.head[tm.initial_state()][sym]
                                                  : ct.content[sym];
        bc.push_back(EdgeConstraint{Side::bottom, x, color});
    }
    for (int y = 0; y < height; y++) {
        bc.push_back(EdgeConstraint{Side::left, y, ct.quiescent});
        bc.push_back(EdgeConstraint{Side::right, y, ct.quiescent});
    }
    return Region(width, height, Wrap::free, std::move(bc));
}

bool tiling_matches_diagram(const CompiledTiles& ct, const TMSpec&, const Tiling& t,
                            const SpaceTimeDiagram& d) {
    if (t.region.width != d.width) return false;
    if (t.region.height > d.height()) return false;
    for (int y = 0; y < t.region.height; y++)
        for (int x = 0; x < t.region.width; x++) {
            const DiagramCell& cell = d.rows[y][x];
            std::string want =
                cell.state >= 0 ? ct.head[cell.state][cell.symbol] : ct.content[cell.symbol];
            ColorId bottom = ct.tiles.tile(t.at(x, y)).bottom;
            if (ct.tiles.color_name(bottom) != want) return false;
        }
    return true;
}

mpz_class count_computation_fillings(const TMSpec& tm, const std::string& input, int w, int h,
                                     const SolveLimits& limits) {
    CompiledTiles ct = compile_tm(tm);
    Region rg = diagram_region(ct, tm, input, w, h);
    return mpz_class(static_cast<unsigned long>(solve(ct.tiles, rg, limits).size()));
}

std::string IndependenceReport::print() const {
    std::ostringstream os;
    os << "input independence: " << (independent ? "pass" : "FAIL") << "\n";
    for (const auto& [len, count] : counts_by_length)
        os << "  length " << len << ": fillings per input = " << count.get_str() << "\n";
    if (!detail.empty()) os << "  detail: " << detail << "\n";
    return os.str();
}

IndependenceReport check_input_independence(const TMSpec& tm, int len_lo, int len_hi, int width,
                                            int height, const SolveLimits& limits) {
    require(len_lo >= 1 && len_hi >= len_lo, errkind::contract, MOD, "bad length range");
    IndependenceReport rep;
    CompiledTiles ct = compile_tm(tm);
    for (int len = len_lo; len <= len_hi; len++) {
        require(len <= width, errkind::contract, MOD, "length exceeds region width");
        bool have = false;
        mpz_class common = 0;
        for (std::uint64_t m = 0; m < (1ull << len); m++) {
            std::string input;
            for (int i = 0; i < len; i++) input += ((m >> i) & 1) ? '1' : '0';
            Region rg = diagram_region(ct, tm, input, width, height);
            mpz_class c(static_cast<unsigned long>(solve(ct.tiles, rg, limits).size()));
            if (!have) {
                common = c;
                have = true;
            } else if (c != common) {
                rep.independent = false;
                rep.detail = "length " + std::to_string(len) + ": input " + input + " has " +
                             c.get_str() + " fillings, expected " + common.get_str();
                return rep;
            }
        }
        rep.counts_by_length.emplace_back(len, common);
    }
    return rep;
}

namespace {

// Decoration bookkeeping for the macro-tile layout. Wires contribute bit
// markers to cell sides; everything else defaults to the blank marker "0".
struct DecorationGrid {
    int n;
    // dec[y][x][side], side order: left, right, top, bottom.
    std::vector<std::vector<std::array<std::string, 4>>> dec;
    explicit DecorationGrid(int nn) : n(nn) {
        dec.assign(n, std::vector<std::array<std::string, 4>>(
                          n, {std::string(), std::string(), std::string(), std::string()}));
    }
    static int side_index(Side s) {
        switch (s) {
            case Side::left: return 0;
            case Side::right: return 1;
            case Side::top: return 2;
            case Side::bottom: return 3;
        }
        return 0;
    }
    void append(int x, int y, Side s, char bit) { dec[y][x][side_index(s)] += bit; }
    std::string get(int x, int y, Side s) const {
        const std::string& d = dec[y][x][side_index(s)];
        return d.empty() ? "0" : "w" + d;
    }
};

struct WireStep {
    int x, y;
    Side entry, exit;
};

// Straight/turning path from a source on the ring to a target column on the
// bottom row, plus one final upward exit.
void trace_wire(DecorationGrid& g, const std::vector<WireStep>& path, char bit) {
    for (const WireStep& st : path) {
        g.append(st.x, st.y, st.entry, bit);
        g.append(st.x, st.y, st.exit, bit);
    }
}

Side opposite_side(Side s) {
    switch (s) {
        case Side::left: return Side::right;
        case Side::right: return Side::left;
        case Side::top: return Side::bottom;
        case Side::bottom: return Side::top;
    }
    return Side::left;
}

// Walks from (x,y) to (tx,ty) along a single axis, entering each cell from
// the side faced by the previous one.
void straight(std::vector<WireStep>& path, int& x, int& y, int tx, int ty, Side entry_first) {
    Side entry = entry_first;
    while (x != tx || y != ty) {
        int nx = x + (tx > x ? 1 : tx < x ? -1 : 0);
        int ny = y + (ty > y ? 1 : ty < y ? -1 : 0);
        Side exit = nx > x   ? Side::right
                    : nx < x ? Side::left
                    : ny > y ? Side::top
                             : Side::bottom;
        path.push_back(WireStep{x, y, entry, exit});
        entry = opposite_side(exit);
        x = nx;
        y = ny;
    }
}

}  // namespace

MacroTileBundle assemble_macrotile(int n, const MacroIO& io, const TMSpec& checker, int budget) {
    const int ell = static_cast<int>(io.bottom.size());
    require(ell >= 1, errkind::contract, MOD, "io strings must be nonempty");
    require(io.left.size() == io.bottom.size() && io.top.size() == io.bottom.size() &&
                io.right.size() == io.bottom.size(),
            errkind::contract, MOD, "io strings must have equal length");
    for (const std::string* s : {&io.bottom, &io.left, &io.top, &io.right})
        for (char c : *s)
            require(c == '0' || c == '1', errkind::contract, MOD, "io bits must be 0 or 1");
    require(budget >= 1, errkind::contract, MOD, "budget must be >= 1");
    require(checker.find_symbol("0").has_value() && checker.find_symbol("1").has_value(),
            errkind::contract, MOD, "checker must read symbols 0 and 1");

    const int ZW = 4 * ell + 2;        // tape plus one blank margin per side
    const int zx0 = 2;                 // ring, one filler column, then the zone
    const int zy0 = 1;                 // zone rows [zy0, zy0 + budget - 1]
    const int cap_row = zy0 + budget;  // rejects halting heads
    MacroTileBundle bundle{TileSet{}, Region(1, 1), 0, {}, {}};
    int need_cols = zx0 + ZW + 2;      // zone, one filler column, right ring
    int need_rows = cap_row + 2;       // cap row, then at least the top ring
    bundle.min_n = std::max({need_cols, need_rows, ell + 4});
    require(n >= bundle.min_n, errkind::contract, MOD,
            "layout needs n >= " + std::to_string(bundle.min_n));

    CompiledTiles ct = compile_tm(checker);
    DecorationGrid grid(n);
    const int mid = (n - ell) / 2;
    const int T0 = zx0 + 1;  // first tape column
    std::string bits = io.bottom + io.left + io.top + io.right;

    // Wire paths: every boundary bit walks the ring to the bottom row and
    // exits upward at its tape column. The ring bus is shared; each edge
    // accumulates the bits crossing it in wire order.
    std::vector<std::vector<WireStep>> paths;
    for (int i = 0; i < 4 * ell; i++) {
        std::vector<WireStep> p;
        int x, y;
        Side entry;
        if (i < ell) {  // bottom string: enters from below
            x = mid + i;
            y = 0;
            entry = Side::bottom;
        } else if (i < 2 * ell) {  // left string: down column 0, then right
            x = 0;
            y = mid + (i - ell);
            entry = Side::left;
            straight(p, x, y, 0, 0, entry);
            entry = Side::top;
        } else if (i < 3 * ell) {  // top string: to the right ring, then down
            x = mid + (i - 2 * ell);
            y = n - 1;
            entry = Side::top;
            straight(p, x, y, n - 1, n - 1, entry);
            entry = Side::left;
            straight(p, x, y, n - 1, 0, entry);
            entry = Side::top;
        } else {  // right string: down the right ring
            x = n - 1;
            y = mid + (i - 3 * ell);
            entry = Side::right;
            straight(p, x, y, n - 1, 0, entry);
            entry = Side::top;
        }
        straight(p, x, y, T0 + i, 0, entry);
        // Final cell: exit upward into the tape.
        Side final_entry = p.empty() ? entry : opposite_side(p.back().exit);
        p.push_back(WireStep{T0 + i, 0, final_entry, Side::top});
        paths.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < paths.size(); i++) {
        // The top exit of the final cell is replaced by the machine input
        // color below; drop it from the generic decoration pass.
        std::vector<WireStep> body = paths[i];
        WireStep last = body.back();
        body.pop_back();
        trace_wire(grid, body, bits[i]);
        grid.append(last.x, last.y, last.entry, bits[i]);
    }

    // Decoration color of each internal/outer edge seam, fused with the
    // coordinate layer when tiles are emitted.
    auto coord = [&](int i, int j) { return coordinate_color((i + n) % n, (j + n) % n); };
    auto fuse = [&](const std::string& c, const std::string& d) { return c + "|" + d; };

    // Expected machine colors entering the zone above row 0.
    std::vector<std::string> delivered(n, "");
    for (int x = zx0; x < zx0 + ZW; x++) {
        if (x < T0 || x >= T0 + 4 * ell) {
            delivered[x] = ct.content[checker.blank()];
        } else {
            int i = x - T0;
            int sym = *checker.find_symbol(std::string(1, bits[i]));
            delivered[x] = (i == 0) ? ct.head[checker.initial_state()][sym] : ct.content[sym];
        }
        bundle.tape_columns.push_back(x);
        bundle.delivered.push_back(delivered[x]);
    }

    TileSet& out = bundle.tiles;
    auto in_zone = [&](int x, int y) {
        return x >= zx0 && x < zx0 + ZW && y >= zy0 && y < cap_row;
    };
    for (int y = 0; y < n; y++) {
        for (int x = 0; x < n; x++) {
            std::string cl = coord(x, y), cr = coord(x + 1, y), ctp = coord(x, y + 1),
                        cb = coord(x, y);
            if (in_zone(x, y)) {
                // Any machine tile may sit here; the seams force the run.
                for (std::size_t t = 0; t < ct.tiles.size(); t++) {
                    const Tile& mt = ct.tiles.tile(static_cast<int>(t));
                    out.add_tile(fuse(cl, ct.tiles.color_name(mt.left)),
                                 fuse(cr, ct.tiles.color_name(mt.right)),
                                 fuse(ctp, ct.tiles.color_name(mt.top)),
                                 fuse(cb, ct.tiles.color_name(mt.bottom)));
                }
                continue;
            }
            if (y == cap_row && x >= zx0 && x < zx0 + ZW) {
                // Cap: accept any non-halting machine color from below.
                for (int s = 0; s < checker.symbol_count(); s++)
                    out.add_tile(fuse(cl, "0"), fuse(cr, "0"), fuse(ctp, "0"),
                                 fuse(cb, ct.content[s]));
                for (int q = 0; q < checker.state_count(); q++) {
                    if (checker.is_halting(q)) continue;
                    for (int s = 0; s < checker.symbol_count(); s++)
                        out.add_tile(fuse(cl, "0"), fuse(cr, "0"), fuse(ctp, "0"),
                                     fuse(cb, ct.head[q][s]));
                }
                continue;
            }
            // Wire / filler cell: one fixed decoration per side, except that
            // row-0 cells under the zone hand the machine color upward.
            std::string dl = grid.get(x, y, Side::left), dr = grid.get(x, y, Side::right),
                        dt = grid.get(x, y, Side::top), db = grid.get(x, y, Side::bottom);
            if (y == 0 && x >= zx0 && x < zx0 + ZW) dt = delivered[x];
            out.add_tile(fuse(cl, dl), fuse(cr, dr), fuse(ctp, dt), fuse(cb, db));
        }
    }

    // Boundary: coordinate colors pin the offset; decorations carry the io
    // bits on the middle cells and the blank marker elsewhere.
    std::vector<EdgeConstraint> bc;
    for (int x = 0; x < n; x++) {
        std::string db = (x >= mid && x < mid + ell)
                             ? std::string("w") + io.bottom[x - mid]
                             : std::string("0");
        bc.push_back(EdgeConstraint{Side::bottom, x, fuse(coord(x, 0), db)});
        std::string dt = (x >= mid && x < mid + ell) ? std::string("w") + io.top[x - mid]
                                                     : std::string("0");
        bc.push_back(EdgeConstraint{Side::top, x, fuse(coord(x, 0), dt)});
    }
    for (int y = 0; y < n; y++) {
        std::string dl = (y >= mid && y < mid + ell) ? std::string("w") + io.left[y - mid]
                                                     : std::string("0");
        bc.push_back(EdgeConstraint{Side::left, y, fuse(coord(0, y), dl)});
        std::string dr = (y >= mid && y < mid + ell) ? std::string("w") + io.right[y - mid]
                                                     : std::string("0");
        bc.push_back(EdgeConstraint{Side::right, y, fuse(coord(0, y), dr)});
    }
    bundle.region = Region(n, n, Wrap::free, std::move(bc));
    return bundle;
}

}  // namespace sz
