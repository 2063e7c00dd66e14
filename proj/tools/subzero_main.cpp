// Command-line front end. Everything goes through the C API in subzero.h;
// this file only parses arguments, reads files, and prints results.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "subzero.h"

namespace {

int exit_code_for(sz_status st) {
    switch (st) {
        case SZ_OK: return 0;
        case SZ_ERR_CAP:
        case SZ_ERR_PRECISION: return 2;
        default: return 1;
    }
}

[[noreturn]] void die(sz_status st) {
    std::cerr << "error: " << sz_last_error() << "\n";
    std::exit(exit_code_for(st));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cli: cannot open " << path << "\n";
        std::exit(1);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const char* text, const std::string& csv_path) {
    std::string body(text);
    if (!body.empty() && body.back() != '\n') body += '\n';
    text = body.c_str();
    if (csv_path.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cli: cannot write " << csv_path << "\n";
            std::exit(1);
        }
        out << text;
    }
}

// Runs a C API call that fills a string, then prints and frees it.
template <class F>
void run(F call, const std::string& csv_path = "") {
    char* out = nullptr;
    sz_status st = call(&out);
    if (st != SZ_OK) die(st);
    emit(out, csv_path);
    sz_string_free(out);
}

struct ScheduleHandle {
    sz_schedule* p = nullptr;
    ~ScheduleHandle() {
        if (p) sz_schedule_free(p);
    }
};

struct TilesetHandle {
    sz_tileset* p = nullptr;
    ~TilesetHandle() {
        if (p) sz_tileset_free(p);
    }
};

struct TmHandle {
    sz_tm* p = nullptr;
    ~TmHandle() {
        if (p) sz_tm_free(p);
    }
};

void load_schedule(const std::string& path, bool seed, int extend, ScheduleHandle& h) {
    sz_status st = seed ? sz_schedule_seed(&h.p) : sz_schedule_parse(slurp(path).c_str(), &h.p);
    if (st != SZ_OK) die(st);
    if (extend > 0) {
        st = sz_schedule_extend(h.p, extend);
        if (st != SZ_OK) die(st);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subzero: subshifts, Wang tilings, and zero-temperature equilibrium states"};
    app.require_subcommand(1);

    std::string csv_path;
    int threads = 1;
    std::uint64_t cap_enum = 1ull << 22, cap_matrix = 1ull << 22;
    int precision = 192;
    app.add_option("--csv", csv_path, "write the result to this file instead of stdout");
    app.add_option("--threads", threads, "worker thread cap for sweeps");
    app.add_option("--cap-enum", cap_enum, "enumeration cap");
    app.add_option("--cap-matrix", cap_matrix, "transfer state-space cap");
    app.add_option("--precision", precision, "interval arithmetic precision in bits");

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "binary entropy and binomial partial sums");
    std::string b_t = "1/2", b_alpha = "1/2";
    std::uint64_t b_n = 4;
    auto* b_entropy = bounds->add_subcommand("entropy", "certified binary entropy");
    b_entropy->add_option("--t", b_t, "rational argument p/q")->required();
    auto* b_binom = bounds->add_subcommand("binom", "partial binomial sum with the sandwich");
    b_binom->add_option("--n", b_n)->required();
    b_binom->add_option("--alpha", b_alpha, "rational threshold p/q")->required();
    auto* b_sum = bounds->add_subcommand("sum", "exact partial binomial sum");
    b_sum->add_option("--n", b_n)->required();
    b_sum->add_option("--alpha", b_alpha)->required();

    // ---- schedule ----
    auto* sched = app.add_subcommand("schedule", "level parameters and growth conditions");
    std::string s_file;
    bool s_seed = false;
    int s_extend = 0, s_level = 1;
    auto* s_ext = sched->add_subcommand("extend", "append levels to a strict schedule");
    s_ext->add_option("--schedule", s_file, "schedule file");
    s_ext->add_flag("--seed", s_seed, "start from the built-in seed");
    s_ext->add_option("--levels", s_extend)->default_val(1);
    auto* s_check = sched->add_subcommand("check", "evaluate the growth conditions at a level");
    s_check->add_option("--schedule", s_file);
    s_check->add_flag("--seed", s_seed);
    s_check->add_option("--level", s_level)->required();
    s_check->add_option("--extend", s_extend, "extend before checking");

    // ---- patterns ----
    auto* pats = app.add_subcommand("patterns", "admissible pattern machinery");
    std::string p_forbidden, p_shape = "3x1", p_parity = "+", p_base = "2", p_c = "1";
    std::uint64_t p_length = 8;
    int p_level = 1, p_power = 10;
    std::string p_mode = "toy";
    auto* p_enum = pats->add_subcommand("enumerate", "list admissible patterns of a shape");
    p_enum->add_option("--forbidden", p_forbidden)->required();
    p_enum->add_option("--shape", p_shape)->required();
    auto* p_dp = pats->add_subcommand("dp-count", "exact admissible string count");
    p_dp->add_option("--forbidden", p_forbidden)->required();
    p_dp->add_option("--length", p_length)->required();
    auto* p_count = pats->add_subcommand("count", "level count of the frequency construction");
    p_count->add_option("--schedule", s_file)->required();
    p_count->add_option("--level", p_level)->required();
    p_count->add_option("--parity", p_parity)->required();
    auto* p_51 = pats->add_subcommand("verify-51", "power-inequality chain report");
    p_51->add_option("--schedule", s_file);
    p_51->add_flag("--seed", s_seed);
    p_51->add_option("--extend", s_extend);
    p_51->add_option("--level", p_level)->required();
    p_51->add_option("--power", p_power)->default_val(10);
    p_51->add_option("--mode", p_mode, "toy or strict")->default_val("toy");
    auto* p_52 = pats->add_subcommand("verify-52", "weighted chain report");
    p_52->add_option("--schedule", s_file)->required();
    p_52->add_option("--level", p_level)->required();
    p_52->add_option("--power", p_power)->default_val(10);
    p_52->add_option("--base", p_base, "2, e, or a rational")->default_val("2");
    p_52->add_option("--c", p_c)->default_val("1");

    // ---- tiles ----
    auto* tiles = app.add_subcommand("tiles", "Wang tile sets and tilings");
    std::string t_file, t_region = "2x2", t_wrap = "free", t_rho, t_tau, t_map;
    std::uint64_t t_limit = 1 << 20;
    int t_n = 2, t_zoom = 2, t_torus_cap = 2;
    auto* t_solve = tiles->add_subcommand("solve", "list legal tilings of a region");
    t_solve->add_option("--tiles", t_file)->required();
    t_solve->add_option("--region", t_region)->required();
    t_solve->add_option("--wrap", t_wrap)->default_val("free");
    t_solve->add_option("--limit", t_limit);
    auto* t_count = tiles->add_subcommand("count", "exact tiling count by transfer");
    t_count->add_option("--tiles", t_file)->required();
    t_count->add_option("--region", t_region)->required();
    t_count->add_option("--wrap", t_wrap)->default_val("free");
    auto* t_coord = tiles->add_subcommand("coordinate", "emit the coordinate tile set");
    t_coord->add_option("--n", t_n)->required();
    auto* t_sim = tiles->add_subcommand("verify-sim", "check a simulation claim");
    t_sim->add_option("--rho", t_rho)->required();
    t_sim->add_option("--tau", t_tau)->required();
    t_sim->add_option("--zoom", t_zoom)->required();
    t_sim->add_option("--map", t_map)->required();
    t_sim->add_option("--torus-cap", t_torus_cap)->default_val(2);
    auto* t_sft = tiles->add_subcommand("from-sft", "convert a forbidden set to tiles");
    t_sft->add_option("--forbidden", p_forbidden)->required();

    // ---- tm ----
    auto* tm = app.add_subcommand("tm", "Turing machines and their tilings");
    std::string m_file, m_input, m_io_b = "0", m_io_l = "0", m_io_t = "0", m_io_r = "0";
    std::string m_lengths = "2..6";
    int m_width = 5, m_steps = 4, m_height = 4, m_n = 12, m_budget = 6;
    auto* m_compile = tm->add_subcommand("compile", "emit the machine's tile set");
    m_compile->add_option("--tm", m_file)->required();
    auto* m_diag = tm->add_subcommand("diagram", "render a run");
    m_diag->add_option("--tm", m_file)->required();
    m_diag->add_option("--input", m_input);
    m_diag->add_option("--width", m_width)->required();
    m_diag->add_option("--steps", m_steps)->required();
    auto* m_ind = tm->add_subcommand("independence", "filling counts across inputs");
    m_ind->add_option("--tm", m_file)->required();
    m_ind->add_option("--lengths", m_lengths, "range lo..hi")->default_val("2..6");
    m_ind->add_option("--width", m_width)->default_val(6);
    m_ind->add_option("--height", m_height)->default_val(4);
    auto* m_fill = tm->add_subcommand("fillings", "filling count for one input");
    m_fill->add_option("--tm", m_file)->required();
    m_fill->add_option("--input", m_input)->required();
    m_fill->add_option("--width", m_width)->required();
    m_fill->add_option("--height", m_height)->required();
    auto* m_macro = tm->add_subcommand("macrotile", "assemble one hierarchy level");
    m_macro->add_option("--tm", m_file)->required();
    m_macro->add_option("--n", m_n)->required();
    m_macro->add_option("--io-bottom", m_io_b)->required();
    m_macro->add_option("--io-left", m_io_l)->required();
    m_macro->add_option("--io-top", m_io_t)->required();
    m_macro->add_option("--io-right", m_io_r)->required();
    m_macro->add_option("--budget", m_budget)->default_val(6);

    // ---- gibbs ----
    auto* gibbs = app.add_subcommand("gibbs", "equilibrium states on chains and strips");
    std::string g_potential, g_families, g_betas = "0:8:1";
    double g_beta = 1.0, g_tags = 2.0;
    int g_strip = 1, g_levels = 2;
    auto* g_press = gibbs->add_subcommand("pressure", "one equilibrium report");
    g_press->add_option("--potential", g_potential)->required();
    g_press->add_option("--beta", g_beta)->required();
    g_press->add_option("--strip", g_strip)->default_val(1);
    auto* g_sweep = gibbs->add_subcommand("sweep", "sweep beta and report family masses");
    g_sweep->add_option("--potential", g_potential)->required();
    g_sweep->add_option("--betas", g_betas)->required();
    g_sweep->add_option("--families", g_families);
    auto* g_osc = gibbs->add_subcommand("oscillate", "union-potential family-mass sweep");
    g_osc->add_option("--schedule", s_file)->required();
    g_osc->add_option("--levels", g_levels)->default_val(2);
    g_osc->add_option("--betas", g_betas)->required();
    g_osc->add_option("--base", g_tags, "zero-symbol multiplicity")->default_val(2.0);

    // ---- recode ----
    auto* recode = app.add_subcommand("recode", "block shift pressure scaling");
    int r_m = 2;
    auto* r_check = recode->add_subcommand("check", "compare block pressure with m * base");
    r_check->add_option("--potential", g_potential)->required();
    r_check->add_option("--beta", g_beta)->default_val(1.0);
    r_check->add_option("--m", r_m)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // --help exits 0; any usage problem exits 1
    }

    if (b_entropy->parsed())
        run([&](char** o) { return sz_binary_entropy(b_t.c_str(), precision, o); }, csv_path);
    if (b_binom->parsed())
        run([&](char** o) { return sz_binom_bounds(b_n, b_alpha.c_str(), o); }, csv_path);
    if (b_sum->parsed())
        run([&](char** o) { return sz_binom_partial_sum(b_n, b_alpha.c_str(), o); }, csv_path);

    if (s_ext->parsed()) {
        ScheduleHandle h;
        load_schedule(s_file, s_seed || s_file.empty(), s_extend, h);
        run([&](char** o) { return sz_schedule_print(h.p, o); }, csv_path);
    }
    if (s_check->parsed()) {
        ScheduleHandle h;
        load_schedule(s_file, s_seed || s_file.empty(), s_extend, h);
        run([&](char** o) { return sz_schedule_check(h.p, s_level, o); }, csv_path);
    }

    if (p_enum->parsed())
        run([&](char** o) {
            return sz_enumerate_admissible(slurp(p_forbidden).c_str(), p_shape.c_str(), cap_enum,
                                           o);
        }, csv_path);
    if (p_dp->parsed())
        run([&](char** o) {
            return sz_count_admissible(slurp(p_forbidden).c_str(), p_length, cap_enum, o);
        }, csv_path);
    if (p_count->parsed()) {
        ScheduleHandle h;
        load_schedule(s_file, false, 0, h);
        run([&](char** o) { return sz_freq_count(h.p, p_level, p_parity[0], cap_enum, o); },
            csv_path);
    }
    if (p_51->parsed()) {
        ScheduleHandle h;
        load_schedule(s_file, s_seed || s_file.empty(), s_extend, h);
        run([&](char** o) {
            return sz_verify_51(h.p, p_level, p_power, p_mode == "toy" ? 1 : 0, cap_enum, o);
        }, csv_path);
    }
    if (p_52->parsed()) {
        ScheduleHandle h;
        load_schedule(s_file, false, 0, h);
        run([&](char** o) {
            return sz_verify_52(h.p, p_level, p_power, p_base.c_str(), p_c.c_str(), cap_enum, o);
        }, csv_path);
    }

    if (t_solve->parsed() || t_count->parsed()) {
        TilesetHandle h;
        sz_status st = sz_tileset_parse(slurp(t_file).c_str(), &h.p);
        if (st != SZ_OK) die(st);
        if (t_solve->parsed())
            run([&](char** o) {
                return sz_tiles_solve(h.p, t_region.c_str(), t_wrap.c_str(), t_limit, o);
            }, csv_path);
        else
            run([&](char** o) {
                return sz_tiles_count(h.p, t_region.c_str(), t_wrap.c_str(), o);
            }, csv_path);
    }
    if (t_coord->parsed()) {
        TilesetHandle h;
        sz_status st = sz_tileset_coordinate(t_n, &h.p);
        if (st != SZ_OK) die(st);
        run([&](char** o) { return sz_tileset_print(h.p, o); }, csv_path);
    }
    if (t_sim->parsed()) {
        TilesetHandle rho, tau;
        sz_status st = sz_tileset_parse(slurp(t_rho).c_str(), &rho.p);
        if (st != SZ_OK) die(st);
        st = sz_tileset_parse(slurp(t_tau).c_str(), &tau.p);
        if (st != SZ_OK) die(st);
        run([&](char** o) {
            return sz_tiles_verify_sim(rho.p, tau.p, t_zoom, slurp(t_map).c_str(), t_torus_cap,
                                       o);
        }, csv_path);
    }
    if (t_sft->parsed())
        run([&](char** o) { return sz_sft_to_wang(slurp(p_forbidden).c_str(), o); }, csv_path);

    if (m_compile->parsed() || m_diag->parsed() || m_ind->parsed() || m_fill->parsed() ||
        m_macro->parsed()) {
        TmHandle h;
        sz_status st = sz_tm_parse(slurp(m_file).c_str(), &h.p);
        if (st != SZ_OK) die(st);
        if (m_compile->parsed())
            run([&](char** o) { return sz_tm_compile(h.p, o); }, csv_path);
        if (m_diag->parsed())
            run([&](char** o) {
                return sz_tm_diagram(h.p, m_input.c_str(), m_width, m_steps, o);
            }, csv_path);
        if (m_ind->parsed()) {
            int lo = 2, hi = 6;
            if (std::sscanf(m_lengths.c_str(), "%d..%d", &lo, &hi) != 2) {
                std::cerr << "error: cli: bad --lengths, expected lo..hi\n";
                return 1;
            }
            run([&](char** o) {
                return sz_tm_independence(h.p, lo, hi, m_width, m_height, o);
            }, csv_path);
        }
        if (m_fill->parsed())
            run([&](char** o) {
                return sz_tm_fillings(h.p, m_input.c_str(), m_width, m_height, o);
            }, csv_path);
        if (m_macro->parsed())
            run([&](char** o) {
                return sz_tm_macrotile(h.p, m_n, m_io_b.c_str(), m_io_l.c_str(), m_io_t.c_str(),
                                       m_io_r.c_str(), m_budget, o);
            }, csv_path);
    }

    if (g_press->parsed())
        run([&](char** o) {
            return sz_gibbs_pressure(slurp(g_potential).c_str(), g_beta, g_strip, o);
        }, csv_path);
    if (g_sweep->parsed())
        run([&](char** o) {
            std::string fams = g_families.empty() ? "" : slurp(g_families);
            return sz_gibbs_sweep(slurp(g_potential).c_str(), fams.c_str(), g_betas.c_str(),
                                  threads, o);
        }, csv_path);
    if (g_osc->parsed()) {
        ScheduleHandle h;
        load_schedule(s_file, false, 0, h);
        run([&](char** o) {
            return sz_gibbs_oscillate(h.p, g_levels, g_betas.c_str(), g_tags, threads, o);
        }, csv_path);
    }

    if (r_check->parsed())
        run([&](char** o) {
            return sz_recode_check(slurp(g_potential).c_str(), g_beta, r_m, o);
        }, csv_path);

    return 0;
}
