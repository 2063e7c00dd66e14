#include "gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

namespace sz {

static const char* MOD = "gibbs";
static constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

std::size_t Potential::code_count(std::size_t alphabet_size, std::size_t window_size) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < window_size; i++) n *= alphabet_size;
    return n;
}

static std::size_t pattern_code(const Pattern& p) {
    std::size_t code = 0;
    for (uint8_t s : p.symbols()) code = code * p.alphabet().size() + s;
    return code;
}

static void check_common_shape(const ForbiddenSet& F) {
    require(!F.patterns().empty(), errkind::contract, MOD,
            "forbidden set must be nonempty to define an interaction term");
    for (const Pattern& p : F.patterns())
        require(p.window() == F.patterns()[0].window(), errkind::contract, MOD,
                "forbidden patterns must share one window shape");
}

Interaction interaction_from_forbidden(const ForbiddenSet& F) {
    check_common_shape(F);
    const Window& w = F.patterns()[0].window();
    Interaction phi{F.alphabet_ptr(), w,
                    std::vector<double>(Potential::code_count(F.alphabet().size(), w.size()), 0)};
    for (const Pattern& p : F.patterns())
        phi.table[pattern_code(p)] = -static_cast<double>(w.size());
    return phi;
}

Potential potential_direct(const ForbiddenSet& F) {
    check_common_shape(F);
    const Window& w = F.patterns()[0].window();
    Potential p{F.alphabet_ptr(), w,
                std::vector<double>(Potential::code_count(F.alphabet().size(), w.size()), 0)};
    for (const Pattern& f : F.patterns()) p.table[pattern_code(f)] = -1;
    return p;
}

Potential potential_from_interaction(const Interaction& phi, std::uint64_t table_cap) {
    const std::size_t A = phi.alphabet->size();
    const auto& pts = phi.shape.points();
    // Union of the shape translated by minus each of its points.
    std::vector<Point> raw;
    for (const Point& p : pts)
        for (const Point& q : pts) raw.push_back({q[0] - p[0], q[1] - p[1]});
    int mnx = raw[0][0], mny = raw[0][1];
    for (const Point& r : raw) {
        mnx = std::min(mnx, r[0]);
        mny = std::min(mny, r[1]);
    }
    Window uni(phi.shape.dimension(), raw);
    double sz = std::pow(static_cast<double>(A), static_cast<double>(uni.size()));
    require(sz <= static_cast<double>(table_cap), errkind::cap, MOD,
            "aggregated potential table exceeds cap");
    std::size_t codes = Potential::code_count(A, uni.size());
    Potential out{phi.alphabet, uni, std::vector<double>(codes, 0)};
    std::vector<uint8_t> syms(uni.size(), 0);
    const double inv = 1.0 / static_cast<double>(pts.size());
    for (std::size_t code = 0; code < codes; code++) {
        std::size_t c = code;
        for (std::size_t i = syms.size(); i-- > 0;) {
            syms[i] = static_cast<uint8_t>(c % A);
            c /= A;
        }
        double sum = 0;
        for (const Point& p : pts) {
            std::size_t sub = 0;
            for (const Point& q : pts) {
                int idx = uni.find({q[0] - p[0] - mnx, q[1] - p[1] - mny});
                sub = sub * A + syms[static_cast<std::size_t>(idx)];
            }
            sum += phi.table[sub] * inv;
        }
        out.table[code] = sum;
    }
    return out;
}

Potential parse_potential(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    AlphabetPtr alphabet;
    int W = 0, H = 0;
    double defval = 0;
    bool have_default = false;
    std::vector<std::pair<std::vector<uint8_t>, double>> vals;
    int lineno = 0;
    while (std::getline(is, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "alphabet") {
            std::vector<std::string> syms;
            std::string s;
            while (ls >> s) syms.push_back(s);
            alphabet = std::make_shared<Alphabet>(std::move(syms));
        } else if (head == "window") {
            std::string sz;
            ls >> sz;
            if (std::sscanf(sz.c_str(), "%dx%d", &W, &H) != 2 || W < 1 || H < 1)
                fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": bad window");
        } else if (head == "default") {
            require(static_cast<bool>(ls >> defval), errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": default needs a value");
            have_default = true;
        } else if (head == "val") {
            require(alphabet && W >= 1, errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": val before alphabet/window");
            // Remaining tokens: W*H symbols (rows top-first, ';' separated) then the value.
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            require(toks.size() >= 2, errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": val needs symbols and a value");
            double v = 0;
            try {
                v = std::stod(toks.back());
            } catch (...) {
                fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": bad value");
            }
            toks.pop_back();
            std::string joined;
            for (std::size_t i = 0; i < toks.size(); i++) {
                if (i) joined += " ";
                joined += toks[i];
            }
            std::vector<std::string> rows;
            std::string cur;
            for (char c : joined) {
                if (c == ';') {
                    rows.push_back(cur);
                    cur.clear();
                } else
                    cur += c;
            }
            rows.push_back(cur);
            require(static_cast<int>(rows.size()) == H, errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": expected " + std::to_string(H) +
                        " rows");
            std::vector<uint8_t> syms(static_cast<std::size_t>(W) * H);
            for (int r = 0; r < H; r++) {
                std::istringstream rs(rows[r]);
                std::string stok;
                int x = 0;
                int y = H - 1 - r;
                while (rs >> stok) {
                    require(x < W, errkind::parse, MOD,
                            "line " + std::to_string(lineno) + ": too many symbols in a row");
                    syms[static_cast<std::size_t>(y) * W + x] =
                        static_cast<uint8_t>(alphabet->index(stok));
                    x++;
                }
                require(x == W, errkind::parse, MOD,
                        "line " + std::to_string(lineno) + ": expected " + std::to_string(W) +
                            " symbols per row");
            }
            vals.emplace_back(std::move(syms), v);
        } else {
            fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": unknown directive");
        }
    }
    require(alphabet != nullptr, errkind::parse, MOD, "missing alphabet");
    require(W >= 1, errkind::parse, MOD, "missing window");
    (void)have_default;
    Window win = Window::rect(W, H);
    Potential p{alphabet, win,
                std::vector<double>(Potential::code_count(alphabet->size(), win.size()), defval)};
    for (auto& [syms, v] : vals) {
        std::size_t code = 0;
        for (uint8_t s : syms) code = code * alphabet->size() + s;
        p.table[code] = v;
    }
    return p;
}

std::string print_potential(const Potential& p) {
    std::ostringstream os;
    os << "alphabet";
    for (std::size_t i = 0; i < p.alphabet->size(); i++) os << " " << p.alphabet->name(i);
    os << "\n";
    require(p.window.is_rect(), errkind::contract, MOD,
            "only box windows have a text representation");
    os << "window " << p.window.width() << "x" << p.window.height() << "\n";
    os << "default 0\n";
    char buf[64];
    for (std::size_t code = 0; code < p.table.size(); code++) {
        if (p.table[code] == 0) continue;
        std::vector<uint8_t> syms(p.window.size());
        std::size_t c = code;
        for (std::size_t i = syms.size(); i-- > 0;) {
            syms[i] = static_cast<uint8_t>(c % p.alphabet->size());
            c /= p.alphabet->size();
        }
        Pattern pat(p.alphabet, p.window, syms);
        std::snprintf(buf, sizeof buf, "%.17g", p.table[code]);
        os << "val " << pat.str() << " " << buf << "\n";
    }
    return os.str();
}

std::string EquilibriumReport::print() const {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "beta=%.12g strip=%d pressure=%.12g entropy=%.12g energy=%.12g "
                  "variational_gap=%.3g states=%zu%s",
                  beta, strip_height, pressure, entropy, energy, variational_gap, states,
                  reducible ? " (reducible: leading class used)" : "");
    os << buf;
    return os.str();
}

GibbsSystem::GibbsSystem(const Potential& p, double beta, int strip_height,
                         std::uint64_t state_cap, std::vector<double> symbol_logmult)
    : alphabet_(p.alphabet), h_(strip_height), base_(p.alphabet->size()) {
    require(h_ >= 1, errkind::contract, MOD, "strip height must be >= 1");
    require(beta >= 0, errkind::contract, MOD, "beta must be >= 0");
    const int wW = p.window.width(), wH = p.window.height();
    require(wH <= h_, errkind::contract, MOD,
            "potential window taller than the strip");
    if (symbol_logmult.empty()) symbol_logmult.assign(base_, 0.0);
    require(symbol_logmult.size() == base_, errkind::contract, MOD,
            "one multiplicity per alphabet symbol");

    double cs = std::pow(static_cast<double>(base_), static_cast<double>(h_));
    require(cs <= static_cast<double>(state_cap), errkind::cap, MOD,
            "column alphabet exceeds the state cap");
    col_syms_ = 1;
    for (int i = 0; i < h_; i++) col_syms_ *= base_;

    // Precompute window point offsets in (dx, dy).
    std::vector<Point> offs = p.window.points();
    const std::size_t memory = static_cast<std::size_t>(wW - 1);
    const std::size_t A = base_;
    const int hh = h_;
    const Potential pot = p;  // owned copy for the closure

    auto value = [pot, offs, memory, A, hh](std::size_t u, std::size_t a) -> double {
        // Decode the wW columns of the span: memory old ones from u, then a.
        // Columns are packed most-significant-first in the state.
        const std::size_t wW_ = memory + 1;
        std::vector<std::vector<uint8_t>> cols(wW_, std::vector<uint8_t>(hh));
        std::size_t div = 1;
        std::size_t colspace = 1;
        for (int i = 0; i < hh; i++) colspace *= A;
        for (std::size_t c = 0; c < memory; c++) {
            div = 1;
            for (std::size_t k = c + 1; k < memory; k++) div *= colspace;
            std::size_t code = (u / div) % colspace;
            for (int y = hh; y-- > 0;) {
                cols[c][y] = static_cast<uint8_t>(code % A);
                code /= A;
            }
        }
        {
            std::size_t code = a;
            for (int y = hh; y-- > 0;) {
                cols[memory][y] = static_cast<uint8_t>(code % A);
                code /= A;
            }
        }
        double sum = 0;
        for (int y0 = 0; y0 < hh; y0++) {
            std::size_t code = 0;
            for (const Point& q : offs) {
                int yy = (y0 + q[1]) % hh;
                code = code * A + cols[static_cast<std::size_t>(q[0])][yy];
            }
            double v = pot.table[code];
            if (v == NEG_INF) return NEG_INF;
            sum += v;
        }
        return sum;
    };

    // Column multiplicities add per cell.
    std::vector<double> colmult(col_syms_, 0.0);
    for (std::size_t code = 0; code < col_syms_; code++) {
        std::size_t c = code;
        for (int y = 0; y < h_; y++) {
            colmult[code] += symbol_logmult[c % base_];
            c /= base_;
        }
    }

    chain_ = std::make_unique<TransferChain>(col_syms_, memory, beta, value, colmult, state_cap);
    report_.beta = beta;
    report_.strip_height = h_;
    report_.pressure = chain_->log_lambda() / h_;
    report_.entropy = chain_->entropy() / h_;
    report_.energy = chain_->energy() / h_;
    report_.variational_gap =
        std::abs(chain_->log_lambda() - (chain_->entropy() + beta * chain_->energy())) / h_;
    report_.states = chain_->states();
    report_.reducible = chain_->reducible();
}

double GibbsSystem::cylinder_mass(const std::vector<std::vector<uint8_t>>& words) const {
    require(h_ == 1, errkind::contract, MOD, "cylinder masses are computed on chains");
    double total = 0;
    for (const auto& w : words) {
        std::vector<std::size_t> word(w.begin(), w.end());
        total += chain_->cylinder_mass(word);
    }
    return total;
}

EnergyBound energy_bound_check(const GibbsSystem& sys, std::size_t alphabet_size) {
    require(sys.report().beta > 0, errkind::contract, MOD, "energy bound needs beta > 0");
    if (!sys.zero_energy_nonempty())
        fail(errkind::contract, MOD,
             "energy bound inapplicable: the zero-energy subshift is empty");
    EnergyBound b;
    b.bound = -std::log(static_cast<double>(alphabet_size)) / sys.report().beta;
    b.margin = sys.report().energy - b.bound;
    b.holds = b.margin >= -1e-12;
    return b;
}

namespace {

// Cyclic energy of a full configuration (chain potentials only).
double cyclic_energy(const Potential& p, const std::vector<uint8_t>& cfg) {
    const std::size_t n = cfg.size();
    const std::size_t A = p.alphabet->size();
    double e = 0;
    for (std::size_t i = 0; i < n; i++) {
        std::size_t code = 0;
        for (const Point& q : p.window.points())
            code = code * A + cfg[(i + static_cast<std::size_t>(q[0])) % n];
        double v = p.table[code];
        if (v == NEG_INF) return NEG_INF;
        e += v;
    }
    return e;
}

void check_chain_potential(const Potential& p, int n) {
    require(p.window.height() == 1, errkind::contract, MOD, "cyclic oracle needs a 1D window");
    require(n >= p.window.width(), errkind::contract, MOD, "cycle shorter than the window");
}

}  // namespace

double cyclic_log_partition_bruteforce(const Potential& p, double beta, int n) {
    check_chain_potential(p, n);
    const std::size_t A = p.alphabet->size();
    require(std::pow(static_cast<double>(A), n) <= (1 << 26), errkind::cap, MOD,
            "brute-force cycle too large");
    std::vector<uint8_t> cfg(n, 0);
    double lz = NEG_INF;
    while (true) {
        double e = cyclic_energy(p, cfg);
        if (e != NEG_INF) lz = logsumexp(lz, beta * e);
        int i = n - 1;
        while (i >= 0 && cfg[i] == A - 1) cfg[i--] = 0;
        if (i < 0) break;
        cfg[i]++;
    }
    return lz;
}

double cyclic_marginal_bruteforce(const Potential& p, double beta, int n,
                                  const std::vector<uint8_t>& word) {
    check_chain_potential(p, n);
    require(static_cast<int>(word.size()) <= n, errkind::contract, MOD, "word longer than cycle");
    const std::size_t A = p.alphabet->size();
    std::vector<uint8_t> cfg(n, 0);
    double lz = NEG_INF, lw = NEG_INF;
    while (true) {
        double e = cyclic_energy(p, cfg);
        if (e != NEG_INF) {
            lz = logsumexp(lz, beta * e);
            if (std::equal(word.begin(), word.end(), cfg.begin())) lw = logsumexp(lw, beta * e);
        }
        int i = n - 1;
        while (i >= 0 && cfg[i] == A - 1) cfg[i--] = 0;
        if (i < 0) break;
        cfg[i]++;
    }
    return std::exp(lw - lz);
}

namespace {

// log sum over cyclic transfer paths with the first `fixed` symbols pinned.
double cyclic_transfer_sum(const Potential& p, double beta, int n,
                           const std::vector<uint8_t>& word) {
    const std::size_t A = p.alphabet->size();
    const std::size_t m = static_cast<std::size_t>(p.window.width()) - 1;
    require(word.size() + m <= static_cast<std::size_t>(n), errkind::contract, MOD,
            "word too long for the cyclic transfer oracle");
    std::size_t nstates = 1;
    for (std::size_t i = 0; i < m; i++) nstates *= A;
    auto edge = [&](std::size_t u, std::size_t a) {
        std::size_t code = u * A + a;  // the full window, first point most significant
        double v = p.table[code];
        return v == NEG_INF ? NEG_INF : beta * v;
    };
    double total = NEG_INF;
    for (std::size_t u0 = 0; u0 < nstates; u0++) {
        // State u0 covers positions 0..m-1; pin them against the word.
        bool ok = true;
        std::size_t uu = u0;
        std::vector<uint8_t> first(m);
        for (std::size_t i = m; i-- > 0;) {
            first[i] = static_cast<uint8_t>(uu % A);
            uu /= A;
        }
        for (std::size_t i = 0; i < std::min(word.size(), m); i++)
            if (first[i] != word[i]) ok = false;
        if (!ok) continue;
        std::vector<double> v(nstates, NEG_INF);
        v[u0] = 0;
        for (int stepi = 0; stepi < n; stepi++) {
            std::vector<double> nv(nstates, NEG_INF);
            std::size_t pos = m + static_cast<std::size_t>(stepi);  // absolute position appended
            for (std::size_t u = 0; u < nstates; u++) {
                if (v[u] == NEG_INF) continue;
                for (std::size_t a = 0; a < A; a++) {
                    if (pos < word.size() && a != word[pos]) continue;
                    // Wrapped positions replay the pinned start symbols.
                    if (pos >= static_cast<std::size_t>(n)) {
                        std::size_t wrapped = pos - static_cast<std::size_t>(n);
                        if (wrapped < m && a != first[wrapped]) continue;
                    }
                    double w = edge(u, a);
                    if (w == NEG_INF) continue;
                    std::size_t to = (u * A + a) % nstates;
                    nv[to] = logsumexp(nv[to], v[u] + w);
                }
            }
            v.swap(nv);
        }
        total = logsumexp(total, v[u0]);
    }
    return total;
}

}  // namespace

double cyclic_log_partition_transfer(const Potential& p, double beta, int n) {
    check_chain_potential(p, n);
    return cyclic_transfer_sum(p, beta, n, {});
}

double cyclic_marginal_transfer(const Potential& p, double beta, int n,
                                const std::vector<uint8_t>& word) {
    check_chain_potential(p, n);
    double lw = cyclic_transfer_sum(p, beta, n, word);
    double lz = cyclic_transfer_sum(p, beta, n, {});
    return std::exp(lw - lz);
}

std::string OscillationResult::csv() const {
    std::ostringstream os;
    os << "beta,pressure,entropy,energy,mass_plus,mass_minus\n";
    char buf[512];
    for (const SweepPoint& pt : points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", pt.beta,
                      pt.report.pressure, pt.report.entropy, pt.report.energy, pt.mass_plus,
                      pt.mass_minus);
        os << buf;
    }
    return os.str();
}

std::string OscillationResult::summary() const {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "log weighted counts: plus=%.6g minus=%.6g; first plus-dominant index=%d; "
                  "first minus-dominant index=%d; flip=%s (early=%c late=%c)",
                  log_weighted_plus, log_weighted_minus, first_plus_dominant,
                  first_minus_dominant, flip_found ? "yes" : "no", early_side, late_side);
    os << buf;
    return os.str();
}

OscillationResult oscillation_demo(const Schedule& s, std::size_t K,
                                   const std::vector<double>& betas, double tags,
                                   double threshold, int threads, std::uint64_t state_cap) {
    require(K >= 1 && K <= 3, errkind::contract, MOD, "demo supports up to three levels");
    require(K <= s.levels(), errkind::contract, MOD, "schedule has fewer levels than requested");
    require(tags >= 1, errkind::contract, MOD, "zero multiplicity must be >= 1");
    mpz_class Wz = s.window(K);
    require(Wz.fits_ulong_p() && Wz.get_ui() <= 16, errkind::cap, MOD,
            "demo window too large for the transfer chain");
    const std::size_t W = Wz.get_ui();

    auto alphabet = std::make_shared<Alphabet>(std::vector<std::string>{"-", "0", "+"});
    const std::size_t A = 3;
    std::size_t codes = 1;
    for (std::size_t i = 0; i < W; i++) codes *= A;

    // Classify every window; the potential penalizes windows admissible for
    // neither natural family.
    std::vector<char> plus_ok(codes, 0), minus_ok(codes, 0);
    std::vector<int> zero_count(codes, 0);
    std::vector<double> table(codes, 0.0);
    std::vector<std::vector<uint8_t>> plus_words, minus_words;
    for (std::size_t code = 0; code < codes; code++) {
        SignedString w(W);
        std::vector<uint8_t> word(W);
        std::size_t c = code;
        int zeros = 0;
        for (std::size_t i = W; i-- > 0;) {
            uint8_t sym = static_cast<uint8_t>(c % A);
            c /= A;
            word[i] = sym;
            w[i] = sym == 0 ? Sym(-1) : sym == 1 ? Sym(0) : Sym(1);
            if (sym == 1) zeros++;
        }
        zero_count[code] = zeros;
        bool in_plus_alpha = true, in_minus_alpha = true;
        for (Sym c : w) {
            if (c == -1) in_plus_alpha = false;
            if (c == 1) in_minus_alpha = false;
        }
        bool p = in_plus_alpha && x_admissible(w, Parity::plus, s, K);
        bool m = in_minus_alpha && x_admissible(w, Parity::minus, s, K);
        plus_ok[code] = p;
        minus_ok[code] = m;
        // A parity without any level below K contributes no protected
        // windows: with one level only, the whole opposite sub-alphabet pays.
        bool plus_protects = p;
        bool minus_protects = m && K >= 2;
        if (!plus_protects && !minus_protects) table[code] = -1;
        if (p) plus_words.push_back(word);
        if (m) minus_words.push_back(word);
    }

    Potential pot{alphabet, Window::segment(static_cast<int>(W)), std::move(table)};
    std::vector<double> mult(A, 0.0);
    mult[1] = std::log(tags);

    OscillationResult out;
    // Blown-up window counts with the area weight (each zero repeats down a
    // column of the window's height), log-summed for stability.
    double wp = NEG_INF, wm = NEG_INF;
    double logw = std::log(tags) * static_cast<double>(W);
    for (std::size_t code = 0; code < codes; code++) {
        if (plus_ok[code]) wp = logsumexp(wp, logw * zero_count[code]);
        if (minus_ok[code]) wm = logsumexp(wm, logw * zero_count[code]);
    }
    out.log_weighted_plus = wp;
    out.log_weighted_minus = wm;

    out.points.assign(betas.size(), SweepPoint{});
    auto run_point = [&](std::size_t i) {
        GibbsSystem sys(pot, betas[i], 1, state_cap, mult);
        SweepPoint pt;
        pt.beta = betas[i];
        pt.report = sys.report();
        pt.mass_plus = sys.cylinder_mass(plus_words);
        pt.mass_minus = sys.cylinder_mass(minus_words);
        out.points[i] = pt;
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < betas.size(); i++) run_point(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t nth = std::min<std::size_t>(threads, betas.size());
        std::vector<std::exception_ptr> errs(nth);
        for (std::size_t t = 0; t < nth; t++)
            pool.emplace_back([&, t]() {
                try {
                    for (std::size_t i = t; i < betas.size(); i += nth) run_point(i);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

    char last = '?';
    for (std::size_t i = 0; i < out.points.size(); i++) {
        const SweepPoint& pt = out.points[i];
        char side = '?';
        if (pt.mass_plus > threshold) side = '+';
        if (pt.mass_minus > threshold) side = '-';
        if (side == '+' && out.first_plus_dominant < 0)
            out.first_plus_dominant = static_cast<int>(i);
        if (side == '-' && out.first_minus_dominant < 0)
            out.first_minus_dominant = static_cast<int>(i);
        if (side != '?') {
            if (out.early_side == '?') out.early_side = side;
            last = side;
        }
    }
    out.late_side = last;
    out.flip_found = out.early_side != '?' && out.late_side != '?' &&
                     out.early_side != out.late_side;
    return out;
}

}  // namespace sz
