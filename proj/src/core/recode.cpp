#include "recode.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sz {

static const char* MOD = "recoding";
static constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

std::size_t BlockCode::block_cells() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; i++) n *= static_cast<std::size_t>(m);
    return n;
}

mpz_class BlockCode::block_alphabet_size() const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base->size(), block_cells());
    return out;
}

AlphabetPtr BlockCode::block_alphabet(std::uint64_t cap) const {
    mpz_class total = block_alphabet_size();
    require(total <= mpz_class(static_cast<unsigned long>(cap)), errkind::cap, MOD,
            "block alphabet of " + total.get_str() + " symbols exceeds cap");
    const std::size_t n = total.get_ui();
    const std::size_t cells = block_cells();
    std::vector<std::string> names(n);
    for (std::size_t code = 0; code < n; code++) {
        std::string name;
        std::size_t c = code;
        std::vector<std::size_t> syms(cells);
        for (std::size_t i = cells; i-- > 0;) {
            syms[i] = c % base->size();
            c /= base->size();
        }
        for (std::size_t i = 0; i < cells; i++) name += base->name(syms[i]);
        names[code] = name;
    }
    return std::make_shared<Alphabet>(std::move(names));
}

Pattern recode_forward(const Pattern& x, const BlockCode& code) {
    require(*x.alphabet_ptr() == *code.base, errkind::contract, MOD,
            "pattern alphabet differs from the code's base alphabet");
    const Window& w = x.window();
    require(w.is_rect(), errkind::contract, MOD, "block recoding needs a box window");
    require(w.dimension() == code.dim, errkind::contract, MOD, "dimension mismatch");
    require(w.width() % code.m == 0 && (code.dim == 1 || w.height() % code.m == 0),
            errkind::contract, MOD, "window extents must be multiples of the block size");
    const int BW = w.width() / code.m;
    const int BH = code.dim == 1 ? 1 : w.height() / code.m;
    AlphabetPtr T = code.block_alphabet();
    Window bw = Window::rect(BW, BH, code.dim);
    std::vector<uint8_t> out(static_cast<std::size_t>(BW) * BH);
    for (int by = 0; by < BH; by++)
        for (int bx = 0; bx < BW; bx++) {
            std::size_t blk = 0;
            // Row-major over the block, matching the window point order.
            int cell_h = code.dim == 1 ? 1 : code.m;
            for (int dy = 0; dy < cell_h; dy++)
                for (int dx = 0; dx < code.m; dx++) {
                    int idx = w.find({bx * code.m + dx, by * code.m + dy});
                    blk = blk * code.base->size() + x.at(static_cast<std::size_t>(idx));
                }
            out[static_cast<std::size_t>(by) * BW + bx] = static_cast<uint8_t>(blk);
        }
    return Pattern(T, bw, std::move(out));
}

Pattern recode_backward(const Pattern& y, const BlockCode& code) {
    const Window& w = y.window();
    require(w.is_rect(), errkind::contract, MOD, "block recoding needs a box window");
    require(w.dimension() == code.dim, errkind::contract, MOD, "dimension mismatch");
    const int BW = w.width(), BH = w.height();
    const int cell_h = code.dim == 1 ? 1 : code.m;
    Window base_w = Window::rect(BW * code.m, code.dim == 1 ? 1 : BH * code.m, code.dim);
    std::vector<uint8_t> out(base_w.size());
    for (int by = 0; by < BH; by++)
        for (int bx = 0; bx < BW; bx++) {
            std::size_t blk = y.at(static_cast<std::size_t>(w.find({bx, by})));
            // Decode row-major, most significant first.
            std::vector<std::size_t> syms(code.block_cells());
            std::size_t c = blk;
            for (std::size_t i = syms.size(); i-- > 0;) {
                syms[i] = c % code.base->size();
                c /= code.base->size();
            }
            std::size_t k = 0;
            for (int dy = 0; dy < cell_h; dy++)
                for (int dx = 0; dx < code.m; dx++) {
                    int idx = base_w.find({bx * code.m + dx, by * code.m + dy});
                    out[static_cast<std::size_t>(idx)] = static_cast<uint8_t>(syms[k++]);
                }
        }
    return Pattern(code.base, base_w, std::move(out));
}

double block_entropy(const mpz_class& vocabulary_size) {
    require(vocabulary_size > 0, errkind::contract, MOD,
            "entropy of an empty block vocabulary");
    long exp2;
    double d = mpz_get_d_2exp(&exp2, vocabulary_size.get_mpz_t());
    return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
}

std::string PressureScalingReport::print() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "m=%d base_pressure=%.12g block_pressure=%.12g ratio=%.12g gap=%.3g %s", m,
                  base_pressure, block_pressure, ratio, gap, holds ? "pass" : "FAIL");
    return buf;
}

PressureScalingReport pressure_scaling_check(const Potential& p, double beta, int m, double tol,
                                             std::uint64_t state_cap) {
    require(p.window.height() == 1, errkind::contract, MOD, "scaling check needs a 1D potential");
    require(m >= 1, errkind::contract, MOD, "block size must be >= 1");
    const std::size_t A = p.alphabet->size();
    const int w0 = p.window.width();

    GibbsSystem base_sys(p, beta, 1, state_cap);

    // Block potential: the Birkhoff sum over one block, tabulated over enough
    // consecutive blocks to cover every shifted window.
    const int span_blocks = 1 + (w0 - 1 + m - 1) / m;
    BlockCode code{p.alphabet, m, 1};
    AlphabetPtr T = code.block_alphabet(state_cap);
    const std::size_t span_cells = static_cast<std::size_t>(span_blocks) * m;
    double tbl_size = std::pow(static_cast<double>(A), static_cast<double>(span_cells));
    require(tbl_size <= static_cast<double>(state_cap), errkind::cap, MOD,
            "block potential table exceeds cap");
    std::size_t codes = Potential::code_count(A, span_cells);
    std::vector<double> table(codes, 0.0);
    for (std::size_t cd = 0; cd < codes; cd++) {
        std::vector<uint8_t> basestr(span_cells);
        std::size_t c = cd;
        for (std::size_t i = span_cells; i-- > 0;) {
            basestr[i] = static_cast<uint8_t>(c % A);
            c /= A;
        }
        double sum = 0;
        for (int i = 0; i < m; i++) {
            std::size_t wincode = 0;
            for (int dx = 0; dx < w0; dx++) wincode = wincode * A + basestr[i + dx];
            double v = p.table[wincode];
            if (v == NEG_INF) {
                sum = NEG_INF;
                break;
            }
            sum += v;
        }
        table[cd] = sum;
    }
    Potential block_pot{T, Window::segment(span_blocks), std::move(table)};
    GibbsSystem block_sys(block_pot, beta, 1, state_cap);

    PressureScalingReport rep;
    rep.m = m;
    rep.base_pressure = base_sys.report().pressure;
    rep.block_pressure = block_sys.report().pressure;
    rep.ratio = rep.block_pressure / rep.base_pressure;
    rep.gap = std::abs(rep.ratio - m);
    rep.holds = rep.gap <= tol;
    return rep;
}

}  // namespace sz
