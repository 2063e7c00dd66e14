#include "subzero.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <thread>

#include "core/bounds.hpp"
#include "core/freqshift.hpp"
#include "core/gibbs.hpp"
#include "core/pattern.hpp"
#include "core/recode.hpp"
#include "core/schedule.hpp"
#include "core/tmachine.hpp"
#include "core/tmtiles.hpp"
#include "core/wang.hpp"

using namespace sz;

namespace {

thread_local std::string g_last_error;

sz_status status_of(errkind k) {
    switch (k) {
        case errkind::contract: return SZ_ERR_CONTRACT;
        case errkind::parse: return SZ_ERR_PARSE;
        case errkind::cap: return SZ_ERR_CAP;
        case errkind::precision: return SZ_ERR_PRECISION;
        case errkind::io: return SZ_ERR_IO;
    }
    return SZ_ERR_CONTRACT;
}

template <class F>
sz_status wrap(F f) {
    try {
        f();
        g_last_error.clear();
        return SZ_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SZ_ERR_CONTRACT;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<double> parse_betas(const std::string& spec) {
    // "a:b:step" inclusive, or a single value.
    double a = 0, b = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) == 3) {
        require(step > 0 && b >= a, errkind::parse, "cli", "bad beta range " + spec);
        std::vector<double> out;
        long n = static_cast<long>((b - a) / step + 1e-9);
        for (long i = 0; i <= n; i++) out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    try {
        return {std::stod(spec)};
    } catch (...) {
        fail(errkind::parse, "cli", "bad beta specification " + spec);
    }
}

Parity parity_of(char c) {
    require(c == '+' || c == '-', errkind::contract, "subshift-x", "parity must be + or -");
    return c == '+' ? Parity::plus : Parity::minus;
}

// Splits a families file into per-parity pattern lists rendered as
// symbol-index words over the expected alphabet.
void parse_families(const std::string& text, const Alphabet& expect,
                    std::vector<std::vector<uint8_t>>& plus,
                    std::vector<std::vector<uint8_t>>& minus) {
    std::istringstream is(text);
    std::string line, alpha_line, plus_text, minus_text;
    std::string* cur = nullptr;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "alphabet") {
            alpha_line = line + "\n";
        } else if (head == "family") {
            std::string which;
            ls >> which;
            if (which == "plus")
                cur = &plus_text;
            else if (which == "minus")
                cur = &minus_text;
            else
                fail(errkind::parse, "gibbs", "family must be plus or minus");
        } else {
            require(cur != nullptr, errkind::parse, "gibbs", "pattern before a family header");
            *cur += line + "\n";
        }
    }
    require(!alpha_line.empty(), errkind::parse, "gibbs", "families file missing alphabet");
    auto render = [&](const std::string& body, std::vector<std::vector<uint8_t>>& out) {
        if (body.empty()) return;
        ForbiddenSet fs = parse_forbidden(alpha_line + body);
        require(fs.alphabet() == expect, errkind::contract, "gibbs",
                "family alphabet differs from the potential's");
        for (const Pattern& p : fs.patterns()) {
            require(p.window().height() == 1, errkind::contract, "gibbs",
                    "family patterns must be one-dimensional");
            out.push_back(p.symbols());
        }
    };
    render(plus_text, plus);
    render(minus_text, minus);
}

}  // namespace

struct sz_schedule {
    Schedule v;
};
struct sz_tileset {
    TileSet v;
};
struct sz_tm {
    TMSpec v;
};

static Region parse_region_spec(const char* region, const char* wrap_s) {
    int w = 0, h = 0;
    require(std::sscanf(region, "%dx%d", &w, &h) == 2 && w >= 1 && h >= 1, errkind::parse,
            "wang-tiling", std::string("bad region ") + region);
    std::string ws = wrap_s ? wrap_s : "free";
    require(ws == "free" || ws == "torus", errkind::parse, "wang-tiling",
            "wrap must be free or torus");
    return Region(w, h, ws == "torus" ? Wrap::torus : Wrap::free);
}

static std::string render_tiling(const Tiling& t) {
    std::ostringstream os;
    for (int y = t.region.height - 1; y >= 0; y--) {
        if (y != t.region.height - 1) os << " ; ";
        for (int x = 0; x < t.region.width; x++) {
            if (x) os << " ";
            os << t.at(x, y);
        }
    }
    return os.str();
}

extern "C" {

const char* sz_last_error(void) { return g_last_error.c_str(); }

void sz_string_free(char* s) { std::free(s); }

sz_status sz_binary_entropy(const char* t, int precision_bits, char** out) {
    return wrap([&] {
        mpq_class q = parse_rational(t);
        mpfr_prec_t prec = precision_bits > 0 ? precision_bits : 192;
        Ival h = binary_entropy_interval(q, prec);
        *out = dup_string(h.str(20));
    });
}

sz_status sz_binom_partial_sum(uint64_t n, const char* alpha, char** out) {
    return wrap([&] {
        mpz_class s = binom_partial_sum(n, parse_rational(alpha));
        *out = dup_string(s.get_str());
    });
}

sz_status sz_binom_bounds(uint64_t n, const char* alpha, char** out) {
    return wrap([&] {
        BinomBounds b = binom_bounds_check(n, parse_rational(alpha));
        *out = dup_string(b.report());
    });
}

sz_status sz_schedule_parse(const char* text, sz_schedule** out) {
    return wrap([&] { *out = new sz_schedule{parse_schedule(text)}; });
}

sz_status sz_schedule_seed(sz_schedule** out) {
    return wrap([&] { *out = new sz_schedule{Schedule::seed()}; });
}

sz_status sz_schedule_extend(sz_schedule* s, int levels) {
    return wrap([&] {
        require(levels >= 1, errkind::contract, "schedule-bounds", "levels must be >= 1");
        for (int i = 0; i < levels; i++) s->v = extend_schedule(s->v);
    });
}

sz_status sz_schedule_check(const sz_schedule* s, int k, char** out_report) {
    return wrap([&] {
        ConditionReport r = check_conditions(s->v, static_cast<std::size_t>(k));
        *out_report = dup_string(r.print(static_cast<std::size_t>(k)));
    });
}

sz_status sz_schedule_print(const sz_schedule* s, char** out) {
    return wrap([&] { *out = dup_string(s->v.print()); });
}

void sz_schedule_free(sz_schedule* s) { delete s; }

sz_status sz_count_admissible(const char* forbidden_text, uint64_t length, uint64_t state_cap,
                              char** out_count) {
    return wrap([&] {
        ForbiddenSet F = parse_forbidden(forbidden_text);
        mpz_class c = count_admissible_dp(F, length, state_cap);
        *out_count = dup_string(c.get_str());
    });
}

sz_status sz_enumerate_admissible(const char* forbidden_text, const char* shape, uint64_t cap,
                                  char** out_list) {
    return wrap([&] {
        ForbiddenSet F = parse_forbidden(forbidden_text);
        int w = 0, h = 0;
        require(std::sscanf(shape, "%dx%d", &w, &h) == 2 && w >= 1 && h >= 1, errkind::parse,
                "symbolic-core", std::string("bad shape ") + shape);
        bool flat2d = false;
        for (const Pattern& p : F.patterns()) flat2d |= p.window().dimension() == 2;
        Window win = (h == 1 && !flat2d) ? Window::segment(w) : Window::rect(w, h, 2);
        auto pats = enumerate_admissible(F, win, mpz_class(static_cast<unsigned long>(cap)));
        std::ostringstream os;
        os << "count " << pats.size() << "\n";
        for (const Pattern& p : pats) os << p.str() << "\n";
        *out_list = dup_string(os.str());
    });
}

sz_status sz_freq_count(const sz_schedule* s, int level, char parity, uint64_t state_cap,
                        char** out_csv) {
    return wrap([&] {
        Parity p = parity_of(parity);
        std::size_t k = static_cast<std::size_t>(level);
        mpz_class count = count_P(s->v, k, p, state_cap);
        WeightedCount wc =
            weighted_G_count(s->v, k, p, WeightBase::rational(mpq_class(2)), 1, state_cap);
        std::ostringstream os;
        char buf[64];
        os << "level,parity,count,logWeighted,marginBits\n";
        std::snprintf(buf, sizeof buf, "%.12g", wc.logValue.mid_d());
        os << level << "," << parity << "," << count.get_str() << "," << buf << ",0\n";
        *out_csv = dup_string(os.str());
    });
}

sz_status sz_verify_51(const sz_schedule* s, int level, int power, int toy, uint64_t state_cap,
                       char** out_report) {
    return wrap([&] {
        CountChainReport r = verify_count_chain(s->v, static_cast<std::size_t>(level), power,
                                               toy != 0, state_cap);
        *out_report = dup_string(r.print());
    });
}

sz_status sz_verify_52(const sz_schedule* s, int level, int power, const char* base,
                       const char* c, uint64_t state_cap, char** out_report) {
    return wrap([&] {
        WeightBase wb = std::string(base) == "e" ? WeightBase::e()
                                                 : WeightBase::rational(parse_rational(base));
        mpz_class cc(c, 10);
        WeightedChainReport r =
            verify_weighted_chain(s->v, static_cast<std::size_t>(level), power, wb, cc, state_cap);
        *out_report = dup_string(r.print());
    });
}

sz_status sz_tileset_parse(const char* text, sz_tileset** out) {
    return wrap([&] { *out = new sz_tileset{parse_tileset(text)}; });
}

sz_status sz_tileset_coordinate(int n, sz_tileset** out) {
    return wrap([&] { *out = new sz_tileset{coordinate_tileset(n)}; });
}

sz_status sz_tileset_print(const sz_tileset* ts, char** out) {
    return wrap([&] { *out = dup_string(print_tileset(ts->v)); });
}

void sz_tileset_free(sz_tileset* ts) { delete ts; }

sz_status sz_tiles_solve(const sz_tileset* ts, const char* region, const char* wrap_s,
                         uint64_t limit, char** out) {
    return wrap([&] {
        SolveLimits lim;
        if (limit > 0) lim.max_solutions = limit;
        auto sols = solve(ts->v, parse_region_spec(region, wrap_s), lim);
        std::ostringstream os;
        os << "count " << sols.size() << "\n";
        for (std::size_t i = 0; i < sols.size(); i++)
            os << "t" << i << ": " << render_tiling(sols[i]) << "\n";
        *out = dup_string(os.str());
    });
}

sz_status sz_tiles_count(const sz_tileset* ts, const char* region, const char* wrap_s,
                         char** out_count) {
    return wrap([&] {
        mpz_class c = count_by_transfer(ts->v, parse_region_spec(region, wrap_s));
        *out_count = dup_string(c.get_str());
    });
}

sz_status sz_tiles_verify_sim(const sz_tileset* rho, const sz_tileset* tau, int zoom,
                              const char* map_text, int torus_cap, char** out_report) {
    return wrap([&] {
        MacroMap m = parse_macro_map(map_text, zoom, tau->v, rho->v);
        SimulationReport r = verify_simulation(rho->v, tau->v, zoom, m, torus_cap);
        *out_report = dup_string(r.print());
    });
}

sz_status sz_sft_to_wang(const char* forbidden_text, char** out_tileset) {
    return wrap([&] {
        ForbiddenSet F = parse_forbidden(forbidden_text);
        WangConversion wc = sft_to_wang(F);
        *out_tileset = dup_string(print_tileset(wc.tiles));
    });
}

sz_status sz_tm_parse(const char* text, sz_tm** out) {
    return wrap([&] { *out = new sz_tm{TMSpec::parse(text)}; });
}

sz_status sz_tm_print(const sz_tm* tm, char** out) {
    return wrap([&] { *out = dup_string(tm->v.print()); });
}

void sz_tm_free(sz_tm* tm) { delete tm; }

sz_status sz_tm_diagram(const sz_tm* tm, const char* input, int width, int steps, char** out) {
    return wrap([&] {
        SpaceTimeDiagram d = simulate(tm->v, input, width, steps);
        *out = dup_string(d.render(tm->v));
    });
}

sz_status sz_tm_compile(const sz_tm* tm, char** out_tileset) {
    return wrap([&] {
        CompiledTiles ct = compile_tm(tm->v);
        *out_tileset = dup_string(print_tileset(ct.tiles));
    });
}

sz_status sz_tm_fillings(const sz_tm* tm, const char* input, int width, int height,
                         char** out_count) {
    return wrap([&] {
        mpz_class c = count_computation_fillings(tm->v, input, width, height);
        *out_count = dup_string(c.get_str());
    });
}

sz_status sz_tm_independence(const sz_tm* tm, int len_lo, int len_hi, int width, int height,
                             char** out_report) {
    return wrap([&] {
        IndependenceReport r = check_input_independence(tm->v, len_lo, len_hi, width, height);
        *out_report = dup_string(r.print());
    });
}

sz_status sz_tm_macrotile(const sz_tm* checker, int n, const char* io_bottom, const char* io_left,
                          const char* io_top, const char* io_right, int budget,
                          char** out_report) {
    return wrap([&] {
        MacroIO io{io_bottom, io_left, io_top, io_right};
        MacroTileBundle b = assemble_macrotile(n, io, checker->v, budget);
        SolveLimits lim;
        lim.area_cap = static_cast<std::uint64_t>(n) * n;
        auto sols = solve(b.tiles, b.region, lim);
        std::ostringstream os;
        os << "min_n " << b.min_n << "\n";
        os << "tiles " << b.tiles.size() << "\n";
        os << "blocks " << sols.size() << "\n";
        os << "exists " << (sols.empty() ? "no" : "yes") << "\n";
        *out_report = dup_string(os.str());
    });
}

sz_status sz_gibbs_pressure(const char* potential_text, double beta, int strip_height,
                            char** out_report) {
    return wrap([&] {
        Potential p = parse_potential(potential_text);
        GibbsSystem sys(p, beta, strip_height > 0 ? strip_height : 1);
        *out_report = dup_string(sys.report().print());
    });
}

sz_status sz_gibbs_sweep(const char* potential_text, const char* families_text,
                         const char* betas, int threads, char** out_csv) {
    return wrap([&] {
        Potential p = parse_potential(potential_text);
        std::vector<std::vector<uint8_t>> plus, minus;
        if (families_text && families_text[0])
            parse_families(families_text, *p.alphabet, plus, minus);
        std::vector<double> grid = parse_betas(betas);
        struct Row {
            EquilibriumReport rep;
            double mp = 0, mm = 0;
        };
        std::vector<Row> rows(grid.size());
        auto run = [&](std::size_t i) {
            GibbsSystem sys(p, grid[i], 1);
            rows[i].rep = sys.report();
            rows[i].mp = plus.empty() ? 0 : sys.cylinder_mass(plus);
            rows[i].mm = minus.empty() ? 0 : sys.cylinder_mass(minus);
        };
        std::size_t nth = threads > 1 ? static_cast<std::size_t>(threads) : 1;
        if (nth <= 1) {
            for (std::size_t i = 0; i < grid.size(); i++) run(i);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errs(nth);
            for (std::size_t t = 0; t < nth; t++)
                pool.emplace_back([&, t]() {
                    try {
                        for (std::size_t i = t; i < grid.size(); i += nth) run(i);
                    } catch (...) {
                        errs[t] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& e : errs)
                if (e) std::rethrow_exception(e);
        }
        std::ostringstream os;
        os << "beta,pressure,entropy,energy,mass_plus,mass_minus\n";
        char buf[512];
        for (std::size_t i = 0; i < grid.size(); i++) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", grid[i],
                          rows[i].rep.pressure, rows[i].rep.entropy, rows[i].rep.energy,
                          rows[i].mp, rows[i].mm);
            os << buf;
        }
        *out_csv = dup_string(os.str());
    });
}

sz_status sz_gibbs_oscillate(const sz_schedule* s, int levels, const char* betas, double tags,
                             int threads, char** out_csv) {
    return wrap([&] {
        OscillationResult r = oscillation_demo(s->v, static_cast<std::size_t>(levels),
                                               parse_betas(betas), tags, 0.9, threads);
        std::string out = r.csv() + "# " + r.summary() + "\n";
        *out_csv = dup_string(out);
    });
}

sz_status sz_recode_check(const char* potential_text, double beta, int m, char** out_report) {
    return wrap([&] {
        Potential p = parse_potential(potential_text);
        PressureScalingReport r = pressure_scaling_check(p, beta, m);
        *out_report = dup_string(r.print());
    });
}

}  // extern "C"
