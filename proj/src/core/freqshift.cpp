#include "freqshift.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "bounds.hpp"

namespace sz {

static const char* MOD = "subshift-x";

mpq_class f0(const SignedString& w) {
    require(!w.empty(), errkind::contract, MOD, "frequency of the empty string");
    std::size_t zeros = std::count(w.begin(), w.end(), Sym(0));
    mpq_class q(static_cast<unsigned long>(zeros), static_cast<unsigned long>(w.size()));
    q.canonicalize();
    return q;
}

static unsigned long window_ul(const Schedule& s, std::size_t k) {
    mpz_class L = s.window(k);
    require(L.fits_ulong_p(), errkind::cap, MOD,
            "window at level " + std::to_string(k) + " too large for direct computation");
    return L.get_ui();
}

mpz_class zero_cutoff(const Schedule& s, std::size_t k) {
    mpz_class L = s.window(k);
    if (s.freq(k) >= 1) return L + 1;  // frequency clause vacuous
    mpq_class t = s.freq(k) * mpq_class(L);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return c;
}

bool in_family(const SignedString& w, std::size_t k, Parity p, const Schedule& s) {
    unsigned long L = window_ul(s, k);
    require(w.size() == L, errkind::contract, MOD,
            "string length " + std::to_string(w.size()) + " does not match level window " +
                std::to_string(L));
    Sym sign = parity_sign(p);
    for (Sym c : w)
        if (c != 0 && c != sign) return true;
    mpz_class zeros(static_cast<unsigned long>(std::count(w.begin(), w.end(), Sym(0))));
    if (zeros >= zero_cutoff(s, k)) return true;
    for (std::size_t j = k; j >= 3;) {
        j -= 2;
        unsigned long Lj = window_ul(s, j);
        for (std::size_t o = 0; o + Lj <= w.size(); o++) {
            SignedString factor(w.begin() + o, w.begin() + o + Lj);
            if (in_family(factor, j, p, s)) return true;
        }
    }
    return false;
}

// Admissibility table over all zero-position masks of the level-j window,
// built bottom-up through the same-parity chain. Sign plays no role over the
// parity sub-alphabet, so one table serves both parities.
static std::vector<bool> window_table(const Schedule& s, std::size_t j, unsigned long state_cap) {
    unsigned long Lj = window_ul(s, j);
    require(Lj < 63 && (1ull << Lj) <= state_cap, errkind::cap, MOD,
            "factor table for level " + std::to_string(j) + " exceeds state cap");
    std::uint64_t n = 1ull << Lj;
    std::vector<bool> adm(n, true);
    mpz_class cutoff = zero_cutoff(s, j);
    std::vector<bool> sub;
    unsigned long Lsub = 0;
    if (j >= 3) {
        sub = window_table(s, j - 2, state_cap);
        Lsub = window_ul(s, j - 2);
    }
    for (std::uint64_t m = 0; m < n; m++) {
        if (mpz_class(static_cast<unsigned long>(std::popcount(m))) >= cutoff) {
            adm[m] = false;
            continue;
        }
        if (j >= 3) {
            std::uint64_t fm = (1ull << Lsub) - 1;
            for (unsigned long o = 0; o + Lsub <= Lj && adm[m]; o++)
                if (!sub[(m >> o) & fm]) adm[m] = false;
        }
    }
    return adm;
}

std::vector<mpz_class> admissible_histogram(const Schedule& s, std::size_t k, Parity p,
                                            unsigned long state_cap) {
    (void)p;  // mirror symmetry: the count is parity-independent
    unsigned long L = window_ul(s, k);
    mpz_class cutoff = zero_cutoff(s, k);
    unsigned long zmax =
        cutoff > L ? L : static_cast<unsigned long>(mpz_class(cutoff - 1).get_ui());

    if (k <= 2) {
        require(static_cast<unsigned long>(zmax) + 1 <= state_cap, errkind::cap, MOD,
                "histogram term count exceeds cap");
        std::vector<mpz_class> hist(L + 1, 0);
        for (unsigned long z = 0; z <= zmax; z++)
            mpz_bin_uiui(hist[z].get_mpz_t(), L, z);
        return hist;
    }

    unsigned long wprev = window_ul(s, k - 2);
    std::vector<bool> table = window_table(s, k - 2, state_cap);
    unsigned long nmask = 1ul << (wprev - 1);
    require(static_cast<unsigned long long>(nmask) * (L + 1) <= state_cap, errkind::cap, MOD,
            "window automaton exceeds state cap");

    // dp[mask * (L+1) + z]: strings so far whose last wprev-1 zero-bits equal
    // mask (oldest at the high bit) and which contain z zeros.
    std::vector<mpz_class> dp(static_cast<std::size_t>(nmask) * (L + 1), 0);
    for (unsigned long m = 0; m < nmask; m++) {
        dp[static_cast<std::size_t>(m) * (L + 1) + std::popcount(m)] = 1;
    }
    std::uint64_t full_mask = (1ull << wprev) - 1;
    for (unsigned long pos = wprev - 1; pos < L; pos++) {
        std::vector<mpz_class> ndp(dp.size(), 0);
        for (unsigned long m = 0; m < nmask; m++) {
            for (int b = 0; b <= 1; b++) {
                std::uint64_t win = ((static_cast<std::uint64_t>(m) << 1) | b) & full_mask;
                if (!table[win]) continue;
                unsigned long nm = static_cast<unsigned long>(win & (nmask - 1));
                for (unsigned long z = 0; z + b <= L; z++) {
                    const mpz_class& v = dp[static_cast<std::size_t>(m) * (L + 1) + z];
                    if (v == 0) continue;
                    ndp[static_cast<std::size_t>(nm) * (L + 1) + z + b] += v;
                }
            }
        }
        dp.swap(ndp);
    }
    std::vector<mpz_class> hist(L + 1, 0);
    for (unsigned long m = 0; m < nmask; m++)
        for (unsigned long z = 0; z <= zmax; z++)
            hist[z] += dp[static_cast<std::size_t>(m) * (L + 1) + z];
    return hist;
}

mpz_class count_P(const Schedule& s, std::size_t k, Parity p, unsigned long state_cap) {
    std::vector<mpz_class> hist = admissible_histogram(s, k, p, state_cap);
    mpz_class total = 0;
    for (const mpz_class& v : hist) total += v;
    return total;
}

mpz_class count_P_formula(const Schedule& s, std::size_t k) {
    require(k <= 2, errkind::contract, MOD,
            "closed-form count only valid for levels without factor constraints");
    unsigned long L = window_ul(s, k);
    mpz_class cutoff = zero_cutoff(s, k);
    mpz_class zmax = cutoff > L ? mpz_class(L) : cutoff - 1;
    mpz_class sum = 0, c;
    for (unsigned long z = 0; mpz_class(z) <= zmax; z++) {
        mpz_bin_uiui(c.get_mpz_t(), L, z);
        sum += c;
    }
    return sum;
}

mpz_class B_set_count(const Schedule& s, std::size_t k, Parity p, unsigned long state_cap) {
    return count_P(s, k, p, state_cap) - 1;
}

static mpz_class ceil_half(const mpz_class& m) { return (m + 1) / 2; }

mpz_class C_count(const Schedule& s, std::size_t k, Parity p, unsigned long state_cap) {
    mpz_class m = s.block_ratio(k);
    mpz_class b = B_set_count(s, k - 1, p, state_cap);
    mpz_class slots = ceil_half(m);
    require(slots.fits_ulong_p(), errkind::cap, MOD, "concatenation slot count too large");
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), slots.get_ui());
    return out;
}

std::string WeightBase::str() const {
    if (is_e) return "e";
    return q.get_str();
}

Ival WeightedSum::log_iv() const {
    if (exact) {
        require(q > 0, errkind::contract, MOD, "log of empty weighted sum");
        return Ival::of_rational(q, iv.prec() ? iv.prec() : 192).log();
    }
    return iv.log();
}

mpz_class blowup_expand(const SignedString& w) {
    unsigned long zeros = std::count(w.begin(), w.end(), Sym(0));
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, zeros);
    return out;
}

// sum over the histogram of (b^L)^z, exact for rational bases.
static WeightedSum weighted_sum(const std::vector<mpz_class>& hist, const WeightBase& b,
                                unsigned long L, mpfr_prec_t prec = 192) {
    WeightedSum out;
    if (!b.is_e) {
        require(b.q > 0, errkind::contract, MOD, "weight base must be positive");
        mpq_class wL;
        mpz_pow_ui(wL.get_num().get_mpz_t(), b.q.get_num().get_mpz_t(), L);
        mpz_pow_ui(wL.get_den().get_mpz_t(), b.q.get_den().get_mpz_t(), L);
        wL.canonicalize();
        mpq_class acc = 0, pw = 1;
        for (std::size_t z = 0; z < hist.size(); z++) {
            if (hist[z] != 0) acc += mpq_class(hist[z]) * pw;
            pw *= wL;
        }
        out.exact = true;
        out.q = acc;
        out.iv = Ival::of_rational(acc, prec);
        return out;
    }
    Ival acc(prec);
    for (std::size_t z = 0; z < hist.size(); z++) {
        if (hist[z] == 0) continue;
        Ival term = Ival::exact_int(static_cast<long>(z * L), prec).exp();
        acc = acc.add(term.mul_z(hist[z]));
    }
    out.exact = false;
    out.iv = acc;
    return out;
}

WeightedCount weighted_G_count(const Schedule& s, std::size_t k, Parity p, const WeightBase& b,
                               const mpz_class& c, unsigned long state_cap) {
    require(c >= 1, errkind::contract, MOD, "computation-layer multiplicity c must be >= 1");
    unsigned long L = window_ul(s, k);
    std::vector<mpz_class> hist = admissible_histogram(s, k, p, state_cap);
    WeightedSum ws = weighted_sum(hist, b, L);
    Ival total = ws.exact ? Ival::of_rational(ws.q * mpq_class(c), 192)
                          : ws.iv.mul_z(c);
    return WeightedCount{total.log(), b};
}

static ChainStep step_from_ivals(const Ival& small, const Ival& big, const std::string& what) {
    ChainStep st;
    Ival diff = big.sub(small);
    st.log_margin = diff.mid_d();
    std::optional<bool> ok = small.le(big);
    st.holds = ok.value_or(false);
    st.detail = what + " margin " + diff.str(6) + (ok.has_value() ? "" : " (undecided)");
    return st;
}

std::string CountChainReport::print() const {
    std::ostringstream os;
    os << "count-chain level=" << level << " power=" << power
       << " mode=" << (strict_mode ? "strict" : "toy") << " blocks=" << block_count.get_str()
       << " free-slots=" << slot_count.get_str() << " (ceil of half)\n";
    auto line = [&](const char* name, const ChainStep& s) {
        os << "  " << name << ": " << (s.holds ? "pass" : "FAIL") << "  " << s.detail << "\n";
    };
    line("count-vs-entropy ", step_count_vs_entropy);
    line("concat-lower     ", step_concat_lower);
    line("s2-closure       ", step_s2_closure);
    line("end-to-end       ", end_to_end);
    os << "  overall: " << (all() ? "pass" : "FAIL") << "\n";
    return os.str();
}

CountChainReport verify_count_chain(const Schedule& s, std::size_t k, int power, bool toy,
                                   unsigned long state_cap, unsigned long term_cap) {
    require(k >= 2, errkind::contract, MOD, "chain verification needs k >= 2");
    require(power >= 1, errkind::contract, MOD, "power must be >= 1");
    CountChainReport rep;
    rep.level = k;
    rep.power = power;
    rep.strict_mode = !toy;
    const mpfr_prec_t prec = 256;

    mpz_class Lz = s.window(k);
    mpz_class m = s.block_ratio(k);
    mpz_class slots = ceil_half(m);
    rep.block_count = m;
    rep.slot_count = slots;
    Parity nat = natural_parity(k);

    // Exact binomial partial sum at the level-k threshold; an upper bound for
    // the admissible count of either parity.
    mpz_class cutoff = zero_cutoff(s, k);
    mpz_class zmax_z = cutoff > Lz ? Lz : cutoff - 1;
    require(zmax_z + 1 <= mpz_class(term_cap), errkind::cap, MOD,
            "partial sum needs " + mpz_class(zmax_z + 1).get_str() + " terms, cap " +
                std::to_string(term_cap));
    require(Lz.fits_ulong_p(), errkind::cap, MOD, "window too large for binomial evaluation");
    unsigned long L = Lz.get_ui();
    mpz_class partial = 0, binc;
    for (unsigned long z = 0; mpz_class(z) <= zmax_z; z++) {
        mpz_bin_uiui(binc.get_mpz_t(), L, z);
        partial += binc;
    }

    // (i): the partial sum is bounded by e^{L H(r_k)}.
    Ival h_rk = binary_entropy_interval(s.freq(k), prec);
    Ival upper_i = h_rk.mul_z(Lz).exp();
    rep.step_count_vs_entropy =
        step_from_ivals(Ival::of_integer(partial, prec).log(), h_rk.mul_z(Lz),
                        "log partial-sum vs L*H(r_k):");
    (void)upper_i;

    // |B| at level k-1 and the concatenation count in the log domain.
    mpz_class B;
    if (toy) {
        B = B_set_count(s, k - 1, nat, state_cap);
    } else {
        require(k - 1 <= 2, errkind::contract, MOD,
                "strict-mode chain supports k <= 3 (closed-form block counts)");
        B = count_P_formula(s, k - 1) - 1;
    }
    require(B >= 1, errkind::contract, MOD, "block set is empty; concatenation count is zero");
    Ival logB = Ival::of_integer(B, prec).log();
    Ival logC = logB.mul_z(slots);

    // (ii): |C| >= e^{L r_{k-1} / 2}.
    mpq_class target_ii = mpq_class(Lz) * s.freq(k - 1) / 2;
    rep.step_concat_lower =
        step_from_ivals(Ival::of_rational(target_ii, prec), logC, "log|C| vs L*r_{k-1}/2:");

    // (iii): power * L * H(r_k) <= (1/2) L r_{k-1} log 2.
    Ival lhs_iii = h_rk.mul_z(Lz).mul_int(power);
    Ival rhs_iii = Ival::of_rational(mpq_class(Lz) * s.freq(k - 1) / 2, prec).mul(
        Ival::log2_const(prec));
    rep.step_s2_closure = step_from_ivals(lhs_iii, rhs_iii, "power*L*H(r_k) vs (L r_{k-1}/2)log2:");

    // End to end: |P|^power <= |C|.
    if (toy) {
        mpz_class P = count_P(s, k, opposite(nat), state_cap);
        mpz_class Ppow;
        mpz_pow_ui(Ppow.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(power));
        mpz_class C = C_count(s, k, nat, state_cap);
        ChainStep st;
        st.holds = Ppow <= C;
        if (P > 0 && C > 0)
            st.log_margin = logC.sub(Ival::of_integer(P, prec).log().mul_int(power)).mid_d();
        st.detail = "count=" + P.get_str() + "^" + std::to_string(power) +
                    " vs concat=" + C.get_str();
        rep.end_to_end = st;
    } else {
        // The partial sum bounds the admissible count, so this certifies the chain.
        Ival lhs = Ival::of_integer(partial, prec).log().mul_int(power);
        rep.end_to_end = step_from_ivals(lhs, logC, "power*log(partial-sum) vs log|C|:");
    }
    return rep;
}

std::string WeightedChainReport::print() const {
    std::ostringstream os;
    os << "weighted-chain level=" << level << " power=" << power << "\n";
    auto line = [&](const char* name, const ChainStep& s) {
        os << "  " << name << ": " << (s.holds ? "pass" : "FAIL") << "  " << s.detail << "\n";
    };
    line("weighted-vs-concat", weighted_vs_concat);
    line("concat-vs-major   ", concat_vs_major);
    line("end-to-end        ", end_to_end);
    os << "  overall: " << (all() ? "pass" : "FAIL") << "\n";
    return os.str();
}

WeightedChainReport verify_weighted_chain(const Schedule& s, std::size_t k, int power, const WeightBase& b,
                           const mpz_class& c, unsigned long state_cap) {
    require(k >= 2, errkind::contract, MOD, "chain verification needs k >= 2");
    require(c >= 1, errkind::contract, MOD, "multiplicity c must be >= 1");
    WeightedChainReport rep;
    rep.level = k;
    rep.power = power;
    const mpfr_prec_t prec = 256;
    unsigned long L = window_ul(s, k);
    Parity nat = natural_parity(k);
    mpz_class slots = ceil_half(s.block_ratio(k));
    require(slots.fits_ulong_p(), errkind::cap, MOD, "slot count too large");

    std::vector<mpz_class> hist_minor = admissible_histogram(s, k, opposite(nat), state_cap);
    std::vector<mpz_class> hist_major = admissible_histogram(s, k, nat, state_cap);
    std::vector<mpz_class> hist_B = admissible_histogram(s, k - 1, nat, state_cap);
    hist_B[0] -= 1;  // drop the all-ones block

    WeightedSum S_minor = weighted_sum(hist_minor, b, L, prec);
    WeightedSum S_major = weighted_sum(hist_major, b, L, prec);
    WeightedSum S_B = weighted_sum(hist_B, b, L, prec);

    auto pow_ws = [&](const WeightedSum& w, unsigned long e) {
        WeightedSum out;
        if (w.exact) {
            out.exact = true;
            mpz_pow_ui(out.q.get_num().get_mpz_t(), w.q.get_num().get_mpz_t(), e);
            mpz_pow_ui(out.q.get_den().get_mpz_t(), w.q.get_den().get_mpz_t(), e);
            out.q.canonicalize();
            out.iv = Ival::of_rational(out.q, prec);
        } else {
            out.exact = false;
            Ival acc = Ival::exact_int(1, prec);
            for (unsigned long i = 0; i < e; i++) acc = acc.mul(w.iv);
            out.iv = acc;
        }
        return out;
    };
    auto scale_ws = [&](const WeightedSum& w, const mpz_class& f) {
        WeightedSum out = w;
        if (w.exact) {
            out.q = w.q * mpq_class(f);
            out.iv = Ival::of_rational(out.q, prec);
        } else {
            out.iv = w.iv.mul_z(f);
        }
        return out;
    };
    auto le_ws = [&](const WeightedSum& a, const WeightedSum& bb) -> std::optional<bool> {
        if (a.exact && bb.exact) return a.q <= bb.q;
        return a.iv.le(bb.iv);
    };

    WeightedSum S_C = pow_ws(S_B, slots.get_ui());
    WeightedSum lhs = pow_ws(scale_ws(S_minor, c), static_cast<unsigned long>(power));
    WeightedSum rhs_end = scale_ws(S_major, c);

    auto mk_step = [&](const WeightedSum& a, const WeightedSum& bb, const std::string& what) {
        ChainStep st;
        std::optional<bool> ok = le_ws(a, bb);
        st.holds = ok.value_or(false);
        Ival diff = bb.log_iv().sub(a.log_iv());
        st.log_margin = diff.mid_d();
        st.detail = what + " log-margin " + diff.str(6);
        return st;
    };
    rep.weighted_vs_concat = mk_step(lhs, S_C, "(c S_minor)^power vs S_C:");
    rep.concat_vs_major = mk_step(S_C, rhs_end, "S_C vs c S_major:");
    rep.end_to_end = mk_step(lhs, rhs_end, "(c S_minor)^power vs c S_major:");
    return rep;
}

bool x_admissible(const SignedString& w, Parity p, const Schedule& s, std::size_t max_level) {
    std::size_t j_star = 0;
    for (std::size_t j = 1; j <= max_level; j++) {
        if (natural_parity(j) != p) continue;
        if (s.window(j) <= mpz_class(static_cast<unsigned long>(w.size()))) j_star = j;
    }
    if (j_star == 0) return true;
    unsigned long Lj = window_ul(s, j_star);
    for (std::size_t o = 0; o + Lj <= w.size(); o++) {
        SignedString factor(w.begin() + o, w.begin() + o + Lj);
        if (in_Fk(factor, j_star, s)) return false;
    }
    return true;
}

SignedString parse_signed(const std::string& text) {
    SignedString out;
    for (char c : text) {
        if (c == '-')
            out.push_back(-1);
        else if (c == '0')
            out.push_back(0);
        else if (c == '+')
            out.push_back(1);
        else
            fail(errkind::parse, MOD, std::string("bad signed symbol: ") + c);
    }
    return out;
}

std::string print_signed(const SignedString& w) {
    std::string out;
    for (Sym c : w) out += (c < 0 ? '-' : c == 0 ? '0' : '+');
    return out;
}

}  // namespace sz
