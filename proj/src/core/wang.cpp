#include "wang.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

namespace sz {

static const char* MOD = "wang-tiling";

ColorId TileSet::intern(const std::string& name) {
    auto it = color_index_.find(name);
    if (it != color_index_.end()) return it->second;
    ColorId id = static_cast<ColorId>(colors_.size());
    colors_.push_back(name);
    color_index_.emplace(name, id);
    return id;
}

std::optional<ColorId> TileSet::find_color(const std::string& name) const {
    auto it = color_index_.find(name);
    if (it == color_index_.end()) return std::nullopt;
    return it->second;
}

int TileSet::add_tile(const std::string& l, const std::string& r, const std::string& t,
                      const std::string& b) {
    return add_tile_ids(intern(l), intern(r), intern(t), intern(b));
}

int TileSet::add_tile_ids(ColorId l, ColorId r, ColorId t, ColorId b) {
    Tile tile{l, r, t, b};
    auto it = tile_index_.find(tile);
    require(it == tile_index_.end(), errkind::contract, MOD, "duplicate tile");
    int id = static_cast<int>(tiles_.size());
    tiles_.push_back(tile);
    tile_index_.emplace(tile, id);
    return id;
}

Region::Region(int w, int h, Wrap wr, std::vector<EdgeConstraint> bc)
    : width(w), height(h), wrap(wr), boundary(std::move(bc)) {
    require(w >= 1 && h >= 1, errkind::contract, MOD, "region sides must be >= 1");
    require(wrap == Wrap::free || boundary.empty(), errkind::contract, MOD,
            "torus regions cannot carry boundary constraints");
}

bool validate(const TileSet& ts, const Tiling& t) {
    const Region& rg = t.region;
    if (t.cells.size() != rg.cells()) return false;
    for (int id : t.cells)
        if (id < 0 || id >= static_cast<int>(ts.size())) return false;
    for (int y = 0; y < rg.height; y++)
        for (int x = 0; x < rg.width; x++) {
            const Tile& here = ts.tile(t.at(x, y));
            if (x + 1 < rg.width) {
                if (here.right != ts.tile(t.at(x + 1, y)).left) return false;
            } else if (rg.wrap == Wrap::torus) {
                if (here.right != ts.tile(t.at(0, y)).left) return false;
            }
            if (y + 1 < rg.height) {
                if (here.top != ts.tile(t.at(x, y + 1)).bottom) return false;
            } else if (rg.wrap == Wrap::torus) {
                if (here.top != ts.tile(t.at(x, 0)).bottom) return false;
            }
        }
    for (const EdgeConstraint& c : rg.boundary) {
        auto col = ts.find_color(c.color);
        if (!col) return false;
        switch (c.side) {
            case Side::left:
                if (ts.tile(t.at(0, c.index)).left != *col) return false;
                break;
            case Side::right:
                if (ts.tile(t.at(rg.width - 1, c.index)).right != *col) return false;
                break;
            case Side::bottom:
                if (ts.tile(t.at(c.index, 0)).bottom != *col) return false;
                break;
            case Side::top:
                if (ts.tile(t.at(c.index, rg.height - 1)).top != *col) return false;
                break;
        }
    }
    return true;
}

namespace {

// Fixed-capacity bitset sized at runtime.
struct Domain {
    std::vector<std::uint64_t> w;
    explicit Domain(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}
    void fill(std::size_t bits) {
        for (auto& x : w) x = ~0ull;
        if (bits % 64) w.back() = (1ull << (bits % 64)) - 1;
    }
    bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    void set(std::size_t i) { w[i / 64] |= 1ull << (i % 64); }
    void reset() { std::fill(w.begin(), w.end(), 0); }
    bool empty() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    Domain& operator&=(const Domain& o) {
        for (std::size_t i = 0; i < w.size(); i++) w[i] &= o.w[i];
        return *this;
    }
    Domain& operator|=(const Domain& o) {
        for (std::size_t i = 0; i < w.size(); i++) w[i] |= o.w[i];
        return *this;
    }
    bool operator==(const Domain& o) const { return w == o.w; }
    template <class F>
    void for_each(F f) const {
        for (std::size_t wi = 0; wi < w.size(); wi++) {
            std::uint64_t x = w[wi];
            while (x) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(x));
                f(wi * 64 + b);
                x &= x - 1;
            }
        }
    }
};

enum Dir { RIGHT = 0, LEFT = 1, UP = 2, DOWN = 3 };

struct Solver {
    const TileSet& ts;
    const Region& rg;
    std::size_t nt;
    int W, H;
    std::array<std::vector<Domain>, 4> compat;  // compat[dir][t]: neighbors of t
    std::vector<Domain> dom;

    Solver(const TileSet& tset, const Region& region) : ts(tset), rg(region) {
        nt = ts.size();
        W = rg.width;
        H = rg.height;
        for (int d = 0; d < 4; d++) compat[d].assign(nt, Domain(nt));
        for (std::size_t a = 0; a < nt; a++)
            for (std::size_t b = 0; b < nt; b++) {
                const Tile& ta = ts.tile(static_cast<int>(a));
                const Tile& tb = ts.tile(static_cast<int>(b));
                if (ta.right == tb.left) compat[RIGHT][a].set(b);
                if (ta.left == tb.right) compat[LEFT][a].set(b);
                if (ta.top == tb.bottom) compat[UP][a].set(b);
                if (ta.bottom == tb.top) compat[DOWN][a].set(b);
            }
        dom.assign(rg.cells(), Domain(nt));
        for (auto& d : dom) d.fill(nt);
        apply_boundary();
    }

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * W + x; }

    void apply_boundary() {
        for (const EdgeConstraint& c : rg.boundary) {
            auto col = ts.find_color(c.color);
            Domain allowed(nt);
            if (col) {
                for (std::size_t t = 0; t < nt; t++) {
                    const Tile& tl = ts.tile(static_cast<int>(t));
                    ColorId want = *col;
                    bool ok = (c.side == Side::left && tl.left == want) ||
                              (c.side == Side::right && tl.right == want) ||
                              (c.side == Side::top && tl.top == want) ||
                              (c.side == Side::bottom && tl.bottom == want);
                    if (ok) allowed.set(t);
                }
            }
            std::size_t cell = 0;
            switch (c.side) {
                case Side::left: cell = idx(0, c.index); break;
                case Side::right: cell = idx(W - 1, c.index); break;
                case Side::bottom: cell = idx(c.index, 0); break;
                case Side::top: cell = idx(c.index, H - 1); break;
            }
            dom[cell] &= allowed;
        }
    }

    bool neighbor(int x, int y, int d, int& nx, int& ny) const {
        nx = x;
        ny = y;
        if (d == RIGHT) nx = x + 1;
        if (d == LEFT) nx = x - 1;
        if (d == UP) ny = y + 1;
        if (d == DOWN) ny = y - 1;
        if (rg.wrap == Wrap::torus) {
            nx = (nx + W) % W;
            ny = (ny + H) % H;
            return true;
        }
        return nx >= 0 && nx < W && ny >= 0 && ny < H;
    }

    // Arc consistency from the seed cells; false on a domain wipeout.
    bool propagate(std::vector<std::size_t> queue) {
        std::vector<char> queued(dom.size(), 0);
        for (auto c : queue) queued[c] = 1;
        while (!queue.empty()) {
            std::size_t cell = queue.back();
            queue.pop_back();
            queued[cell] = 0;
            int x = static_cast<int>(cell % W), y = static_cast<int>(cell / W);
            for (int d = 0; d < 4; d++) {
                int nx, ny;
                if (!neighbor(x, y, d, nx, ny)) continue;
                std::size_t ncell = idx(nx, ny);
                Domain allowed(nt);
                if (ncell == cell) {
                    // Width/height-1 torus: the cell borders itself.
                    dom[cell].for_each([&](std::size_t t) {
                        if (compat[d][t].test(t)) allowed.set(t);
                    });
                } else {
                    dom[cell].for_each([&](std::size_t t) { allowed |= compat[d][t]; });
                }
                Domain nd = dom[ncell];
                nd &= allowed;
                if (!(nd == dom[ncell])) {
                    dom[ncell] = nd;
                    if (dom[ncell].empty()) return false;
                    if (!queued[ncell]) {
                        queue.push_back(ncell);
                        queued[ncell] = 1;
                    }
                }
            }
        }
        return true;
    }

    void search(std::size_t next, std::vector<int>& assign, std::vector<Tiling>& out,
                const SolveLimits& lim, std::uint64_t& found) {
        if (next == dom.size()) {
            if (found == lim.max_solutions)
                fail(errkind::cap, MOD,
                     "solution cap " + std::to_string(lim.max_solutions) +
                         " exceeded; partial count " + std::to_string(found));
            found++;
            out.push_back(Tiling{rg, assign});
            return;
        }
        std::vector<std::size_t> candidates;
        dom[next].for_each([&](std::size_t t) { candidates.push_back(t); });
        for (std::size_t t : candidates) {
            std::vector<Domain> saved = dom;
            dom[next].reset();
            dom[next].set(t);
            if (propagate({next})) {
                assign[next] = static_cast<int>(t);
                search(next + 1, assign, out, lim, found);
                assign[next] = -1;
            }
            dom = std::move(saved);
        }
    }
};

}  // namespace

std::vector<Tiling> solve(const TileSet& ts, const Region& region, const SolveLimits& limits) {
    require(region.cells() <= limits.area_cap, errkind::cap, MOD,
            "region area " + std::to_string(region.cells()) + " exceeds cap " +
                std::to_string(limits.area_cap));
    require(ts.size() > 0, errkind::contract, MOD, "empty tile set");
    Solver sv(ts, region);
    std::vector<Tiling> out;
    std::vector<int> assign(region.cells(), -1);
    std::uint64_t found = 0;
    std::vector<std::size_t> all(region.cells());
    for (std::size_t i = 0; i < all.size(); i++) all[i] = i;
    if (sv.propagate(all)) sv.search(0, assign, out, limits, found);
    return out;
}

mpz_class count_by_transfer(const TileSet& ts, const Region& region, std::uint64_t column_cap) {
    require(ts.size() > 0, errkind::contract, MOD, "empty tile set");
    const int W = region.width, H = region.height;
    std::vector<std::vector<int>> valid;
    std::vector<int> cur(H, 0);
    std::function<void(int)> rec = [&](int y) {
        if (y == H) {
            if (region.wrap != Wrap::torus || ts.tile(cur[H - 1]).top == ts.tile(cur[0]).bottom)
                valid.push_back(cur);
            return;
        }
        for (std::size_t t = 0; t < ts.size(); t++) {
            if (y > 0 && ts.tile(cur[y - 1]).top != ts.tile(static_cast<int>(t)).bottom) continue;
            cur[y] = static_cast<int>(t);
            rec(y + 1);
            if (valid.size() > column_cap)
                fail(errkind::cap, MOD, "column count exceeds cap " + std::to_string(column_cap));
        }
    };
    rec(0);
    const std::size_t C = valid.size();
    if (C == 0) return 0;

    auto column_ok_at = [&](const std::vector<int>& col, int x) {
        for (const EdgeConstraint& c : region.boundary) {
            auto want = ts.find_color(c.color);
            if (!want) return false;
            if (c.side == Side::bottom && c.index == x && ts.tile(col[0]).bottom != *want)
                return false;
            if (c.side == Side::top && c.index == x && ts.tile(col[H - 1]).top != *want)
                return false;
            if (c.side == Side::left && x == 0 && ts.tile(col[c.index]).left != *want)
                return false;
            if (c.side == Side::right && x == W - 1 && ts.tile(col[c.index]).right != *want)
                return false;
        }
        return true;
    };
    auto compatible = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int y = 0; y < H; y++)
            if (ts.tile(a[y]).right != ts.tile(b[y]).left) return false;
        return true;
    };

    if (region.wrap == Wrap::torus) {
        std::vector<std::vector<char>> M(C, std::vector<char>(C, 0));
        for (std::size_t i = 0; i < C; i++)
            for (std::size_t j = 0; j < C; j++) M[i][j] = compatible(valid[i], valid[j]);
        mpz_class trace = 0;
        for (std::size_t s = 0; s < C; s++) {
            std::vector<mpz_class> v(C, 0);
            v[s] = 1;
            for (int step = 0; step < W; step++) {
                std::vector<mpz_class> nv(C, 0);
                for (std::size_t i = 0; i < C; i++) {
                    if (v[i] == 0) continue;
                    for (std::size_t j = 0; j < C; j++)
                        if (M[i][j]) nv[j] += v[i];
                }
                v.swap(nv);
            }
            trace += v[s];
        }
        return trace;
    }

    std::vector<mpz_class> v(C, 0);
    for (std::size_t i = 0; i < C; i++)
        if (column_ok_at(valid[i], 0)) v[i] = 1;
    for (int x = 1; x < W; x++) {
        std::vector<mpz_class> nv(C, 0);
        for (std::size_t i = 0; i < C; i++) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < C; j++) {
                if (!compatible(valid[i], valid[j])) continue;
                if (!column_ok_at(valid[j], x)) continue;
                nv[j] += v[i];
            }
        }
        v.swap(nv);
    }
    mpz_class total = 0;
    for (std::size_t i = 0; i < C; i++) total += v[i];
    return total;
}

std::string coordinate_color(int i, int j) {
    return std::to_string(i) + "," + std::to_string(j);
}

TileSet coordinate_tileset(int n) {
    require(n >= 2, errkind::contract, MOD, "coordinate tile set needs n >= 2");
    TileSet ts;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            ts.add_tile(coordinate_color(i, j), coordinate_color((i + 1) % n, j),
                        coordinate_color(i, (j + 1) % n), coordinate_color(i, j));
    return ts;
}

std::vector<Tiling> macro_tiles(const TileSet& ts, int n, const SolveLimits& limits) {
    require(n >= 1, errkind::contract, MOD, "zoom factor must be >= 1");
    return solve(ts, Region(n, n, Wrap::free), limits);
}

static std::vector<ColorId> macro_side(const TileSet& tau, const MacroMap& r, int id, int n,
                                       Side s) {
    std::vector<ColorId> out;
    const std::vector<int>& block = r[id];
    for (int k = 0; k < n; k++) {
        int x = 0, y = 0;
        switch (s) {
            case Side::left: x = 0, y = k; break;
            case Side::right: x = n - 1, y = k; break;
            case Side::bottom: x = k, y = 0; break;
            case Side::top: x = k, y = n - 1; break;
        }
        const Tile& t = tau.tile(block[static_cast<std::size_t>(y) * n + x]);
        out.push_back(s == Side::left ? t.left
                      : s == Side::right ? t.right
                      : s == Side::bottom ? t.bottom
                                          : t.top);
    }
    return out;
}

std::string SimulationReport::print() const {
    std::ostringstream os;
    os << "simulation check:\n";
    os << "  (a) injective:      " << (injective ? "pass" : "FAIL") << "\n";
    os << "  images valid:       " << (images_valid ? "pass" : "FAIL") << "\n";
    os << "  (b) matching equiv: " << (matching_equivalent ? "pass" : "FAIL") << "\n";
    os << "  (c) unique split:   " << (unique_split ? "pass" : "FAIL") << " (bounded, "
       << tori_checked << " tori)\n";
    if (!detail.empty()) os << "  detail: " << detail << "\n";
    return os.str();
}

SimulationReport verify_simulation(const TileSet& rho, const TileSet& tau, int n,
                                   const MacroMap& r, int torus_cap, const SolveLimits& limits) {
    require(n >= 1, errkind::contract, MOD, "zoom factor must be >= 1");
    require(r.size() == rho.size(), errkind::contract, MOD,
            "macro map must cover every simulated tile");
    SimulationReport rep;

    rep.injective = true;
    for (std::size_t i = 0; i < r.size() && rep.injective; i++)
        for (std::size_t j = i + 1; j < r.size(); j++)
            if (r[i] == r[j]) {
                rep.injective = false;
                rep.detail = "tiles " + std::to_string(i) + " and " + std::to_string(j) +
                             " map to the same block";
                break;
            }

    rep.images_valid = true;
    for (std::size_t i = 0; i < r.size(); i++) {
        require(r[i].size() == static_cast<std::size_t>(n) * n, errkind::contract, MOD,
                "macro block has wrong cell count");
        Tiling t{Region(n, n, Wrap::free), r[i]};
        if (!validate(tau, t)) {
            rep.images_valid = false;
            rep.detail = "image of tile " + std::to_string(i) + " is not color-matched";
            break;
        }
    }

    rep.matching_equivalent = true;
    for (std::size_t a = 0; a < rho.size() && rep.matching_equivalent; a++)
        for (std::size_t b = 0; b < rho.size(); b++) {
            bool legal_h =
                rho.tile(static_cast<int>(a)).right == rho.tile(static_cast<int>(b)).left;
            bool match_h = macro_side(tau, r, static_cast<int>(a), n, Side::right) ==
                           macro_side(tau, r, static_cast<int>(b), n, Side::left);
            bool legal_v =
                rho.tile(static_cast<int>(a)).top == rho.tile(static_cast<int>(b)).bottom;
            bool match_v = macro_side(tau, r, static_cast<int>(a), n, Side::top) ==
                           macro_side(tau, r, static_cast<int>(b), n, Side::bottom);
            if (legal_h != match_h || legal_v != match_v) {
                rep.matching_equivalent = false;
                rep.detail = "adjacency/macro-color mismatch for pair (" + std::to_string(a) +
                             ", " + std::to_string(b) + ")";
                break;
            }
        }

    rep.unique_split = true;
    for (int k = 1; k <= torus_cap && rep.unique_split; k++) {
        int side = k * n;
        std::vector<Tiling> tilings = solve(tau, Region(side, side, Wrap::torus), limits);
        rep.tori_checked = k;
        for (const Tiling& t : tilings) {
            int split_count = 0;
            for (int dy = 0; dy < n; dy++)
                for (int dx = 0; dx < n; dx++) {
                    bool all_blocks = true;
                    for (int by = 0; by < k && all_blocks; by++)
                        for (int bx = 0; bx < k && all_blocks; bx++) {
                            std::vector<int> block(static_cast<std::size_t>(n) * n);
                            for (int v = 0; v < n; v++)
                                for (int u = 0; u < n; u++)
                                    block[static_cast<std::size_t>(v) * n + u] =
                                        t.at((dx + bx * n + u) % side, (dy + by * n + v) % side);
                            bool found = false;
                            for (const auto& img : r)
                                if (img == block) {
                                    found = true;
                                    break;
                                }
                            if (!found) all_blocks = false;
                        }
                    if (all_blocks) split_count++;
                }
            if (split_count != 1) {
                rep.unique_split = false;
                rep.detail = "a " + std::to_string(side) + "x" + std::to_string(side) +
                             " torus tiling has " + std::to_string(split_count) + " valid splits";
                break;
            }
        }
    }
    return rep;
}

WangConversion sft_to_wang(const ForbiddenSet& F, std::uint64_t block_cap) {
    const std::size_t S = F.alphabet().size();
    require(!F.patterns().empty() || S > 0, errkind::contract, MOD, "empty alphabet");
    bool needs_recode = false;
    for (const Pattern& p : F.patterns()) {
        const Window& w = p.window();
        bool unit = w.size() == 1;
        bool h_domino = w.is_rect() && w.width() == 2 && w.height() == 1;
        bool v_domino = w.is_rect() && w.width() == 1 && w.height() == 2;
        if (!unit && !h_domino && !v_domino) needs_recode = true;
    }

    std::size_t nsym = S;
    std::vector<char> sym_ok(S, 1);
    std::vector<std::vector<char>> allowed_h, allowed_v;  // [a][b]: a left-of / below b

    if (!needs_recode) {
        allowed_h.assign(S, std::vector<char>(S, 1));
        allowed_v.assign(S, std::vector<char>(S, 1));
        for (const Pattern& p : F.patterns()) {
            const Window& w = p.window();
            if (w.size() == 1) {
                sym_ok[p.at(0)] = 0;
            } else if (w.width() == 2) {
                int li = w.find({0, 0}), ri = w.find({1, 0});
                allowed_h[p.at(li)][p.at(ri)] = 0;
            } else {
                int bi = w.find({0, 0}), ti = w.find({0, 1});
                allowed_v[p.at(bi)][p.at(ti)] = 0;
            }
        }
    } else {
        int BW = 1, BH = 1;
        for (const Pattern& p : F.patterns()) {
            BW = std::max(BW, p.window().width());
            BH = std::max(BH, p.window().height());
        }
        mpz_class total;
        mpz_ui_pow_ui(total.get_mpz_t(), S, static_cast<unsigned long>(BW) * BH);
        require(total <= mpz_class(static_cast<unsigned long>(block_cap)), errkind::cap, MOD,
                "recoded block alphabet of " + total.get_str() + " exceeds cap");
        const std::size_t ncodes = total.get_ui();
        Window shape = Window::rect(BW, BH, 2);
        std::vector<std::vector<uint8_t>> blocks;
        std::vector<uint8_t> syms(static_cast<std::size_t>(BW) * BH, 0);
        for (std::size_t code = 0; code < ncodes; code++) {
            std::size_t c = code;
            for (std::size_t i = syms.size(); i-- > 0;) {
                syms[i] = static_cast<uint8_t>(c % S);
                c /= S;
            }
            Pattern blk(F.alphabet_ptr(), shape, syms);
            if (locally_admissible(blk, F)) blocks.push_back(syms);
        }
        nsym = blocks.size();
        sym_ok.assign(nsym, 1);
        allowed_h.assign(nsym, std::vector<char>(nsym, 0));
        allowed_v.assign(nsym, std::vector<char>(nsym, 0));
        auto cell = [&](const std::vector<uint8_t>& b, int x, int y) {
            return b[static_cast<std::size_t>(y) * BW + x];
        };
        // Overlap consistency: the right/top neighbor repeats the shared part.
        for (std::size_t a = 0; a < nsym; a++)
            for (std::size_t b = 0; b < nsym; b++) {
                bool okh = true;
                for (int y = 0; y < BH && okh; y++)
                    for (int x = 1; x < BW && okh; x++)
                        if (cell(blocks[a], x, y) != cell(blocks[b], x - 1, y)) okh = false;
                allowed_h[a][b] = okh;
                bool okv = true;
                for (int y = 1; y < BH && okv; y++)
                    for (int x = 0; x < BW && okv; x++)
                        if (cell(blocks[a], x, y) != cell(blocks[b], x, y - 1)) okv = false;
                allowed_v[a][b] = okv;
            }
    }

    WangConversion out;
    out.alphabet_size = nsym;
    for (std::size_t s = 0; s < nsym; s++) {
        if (!sym_ok[s]) continue;
        for (std::size_t a = 0; a < nsym; a++) {
            if (!sym_ok[a] || !allowed_h[a][s]) continue;
            for (std::size_t b = 0; b < nsym; b++) {
                if (!sym_ok[b] || !allowed_v[b][s]) continue;
                out.tiles.add_tile("h" + std::to_string(a), "h" + std::to_string(s),
                                   "v" + std::to_string(s), "v" + std::to_string(b));
                out.tile_symbol.push_back(static_cast<int>(s));
            }
        }
    }
    require(out.tiles.size() > 0, errkind::contract, MOD,
            "conversion produced an empty tile set");
    return out;
}

TileSet parse_tileset(const std::string& text) {
    TileSet ts;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto field = [&](const std::string& tok, const char* key) {
        require(tok.rfind(key, 0) == 0, errkind::parse, MOD,
                "line " + std::to_string(lineno) + ": expected " + key + "<color>");
        return tok.substr(2);
    };
    while (std::getline(is, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "colors") {
            std::string c;
            while (ls >> c) ts.intern(c);
        } else if (head == "tile") {
            int id;
            std::string l, r, t, b;
            if (!(ls >> id >> l >> r >> t >> b))
                fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": bad tile line");
            require(id == static_cast<int>(ts.size()), errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": tile ids must ascend from 0");
            ts.add_tile(field(l, "l="), field(r, "r="), field(t, "t="), field(b, "b="));
        } else {
            fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": unknown directive");
        }
    }
    require(ts.size() > 0, errkind::parse, MOD, "tile set file declares no tiles");
    return ts;
}

std::string print_tileset(const TileSet& ts) {
    std::ostringstream os;
    os << "colors";
    for (std::size_t c = 0; c < ts.color_count(); c++)
        os << " " << ts.color_name(static_cast<ColorId>(c));
    os << "\n";
    for (std::size_t i = 0; i < ts.size(); i++) {
        const Tile& t = ts.tile(static_cast<int>(i));
        os << "tile " << i << " l=" << ts.color_name(t.left) << " r=" << ts.color_name(t.right)
           << " t=" << ts.color_name(t.top) << " b=" << ts.color_name(t.bottom) << "\n";
    }
    return os.str();
}

MacroMap parse_macro_map(const std::string& text, int n, const TileSet& tau, const TileSet& rho) {
    MacroMap map(rho.size());
    std::vector<char> seen(rho.size(), 0);
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        require(head == "map", errkind::parse, MOD,
                "line " + std::to_string(lineno) + ": expected map lines");
        int rho_id;
        std::string colon;
        require(static_cast<bool>(ls >> rho_id >> colon) && colon == ":", errkind::parse, MOD,
                "line " + std::to_string(lineno) + ": expected 'map <id> : <cells>'");
        require(rho_id >= 0 && rho_id < static_cast<int>(rho.size()), errkind::parse, MOD,
                "line " + std::to_string(lineno) + ": rho id out of range");
        require(!seen[rho_id], errkind::parse, MOD,
                "line " + std::to_string(lineno) + ": duplicate map entry");
        std::vector<int> file_order;
        int v;
        while (ls >> v) {
            require(v >= 0 && v < static_cast<int>(tau.size()), errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": tile id out of range");
            file_order.push_back(v);
        }
        require(file_order.size() == static_cast<std::size_t>(n) * n, errkind::parse, MOD,
                "line " + std::to_string(lineno) + ": expected " + std::to_string(n * n) +
                    " cells");
        // Rows in the file are listed top-first; store bottom-first.
        std::vector<int> cells(file_order.size());
        for (int row = 0; row < n; row++)
            for (int col = 0; col < n; col++)
                cells[static_cast<std::size_t>(n - 1 - row) * n + col] =
                    file_order[static_cast<std::size_t>(row) * n + col];
        map[rho_id] = std::move(cells);
        seen[rho_id] = 1;
    }
    for (std::size_t i = 0; i < rho.size(); i++)
        require(seen[i], errkind::parse, MOD, "map missing entry for tile " + std::to_string(i));
    return map;
}

}  // namespace sz
