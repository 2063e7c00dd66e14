#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "interval.hpp"
#include "schedule.hpp"

namespace sz {

// Symbols of the signed alphabet {-1, 0, +1}.
using Sym = int8_t;
using SignedString = std::vector<Sym>;

enum class Parity { plus, minus };
inline Parity natural_parity(std::size_t k) { return k % 2 == 1 ? Parity::plus : Parity::minus; }
inline Parity opposite(Parity p) { return p == Parity::plus ? Parity::minus : Parity::plus; }
inline Sym parity_sign(Parity p) { return p == Parity::plus ? Sym(1) : Sym(-1); }
inline char parity_char(Parity p) { return p == Parity::plus ? '+' : '-'; }

// Exact frequency of 0 in a nonempty string.
mpq_class f0(const SignedString& w);

// Smallest zero count that violates f_0 < r_k at level k; one past the window
// size when the frequency clause is vacuous (r_k >= 1).
mpz_class zero_cutoff(const Schedule& s, std::size_t k);

// Membership in the level-k family of the given parity: wrong sub-alphabet,
// too many zeros, or a contiguous factor of an earlier same-parity level's
// family. The natural assignment is plus <-> odd k.
bool in_family(const SignedString& w, std::size_t k, Parity p, const Schedule& s);
inline bool in_Fk(const SignedString& w, std::size_t k, const Schedule& s) {
    return in_family(w, k, natural_parity(k), s);
}

// Zero-count histogram of the admissible strings of length 2 l_k - 1 over the
// parity sub-alphabet (index = number of zeros). Computed by a window-automaton
// DP; `state_cap` bounds the automaton size.
std::vector<mpz_class> admissible_histogram(const Schedule& s, std::size_t k, Parity p,
                                            unsigned long state_cap = 1ul << 22);

// |admissible strings| at level k. Cross-checked against brute force in tests.
mpz_class count_P(const Schedule& s, std::size_t k, Parity p,
                  unsigned long state_cap = 1ul << 22);

// Closed form for levels without factor constraints (k <= 2): a binomial
// partial sum. Used by the strict-mode chain.
mpz_class count_P_formula(const Schedule& s, std::size_t k);

// count_P minus the all-ones string.
mpz_class B_set_count(const Schedule& s, std::size_t k, Parity p,
                      unsigned long state_cap = 1ul << 22);

// Concatenation count |B_{p,k-1}|^{ceil(m_k / 2)}; requires the block ratio
// m_k to be integral.
mpz_class C_count(const Schedule& s, std::size_t k, Parity p,
                  unsigned long state_cap = 1ul << 22);

// Weight base for the blown-up counts: e, or an exact rational (default 2).
struct WeightBase {
    bool is_e = false;
    mpq_class q = 2;
    static WeightBase e() { return WeightBase{true, 0}; }
    static WeightBase rational(const mpq_class& v) { return WeightBase{false, v}; }
    std::string str() const;
};

// Weighted sum kept exact when the base is rational.
struct WeightedSum {
    bool exact = false;
    mpq_class q;   // valid when exact
    Ival iv;       // enclosure (always valid)
    Ival log_iv() const;
};

// Number of strings over the blow-up alphabet projecting to w: 2^{#zeros}.
mpz_class blowup_expand(const SignedString& w);

struct WeightedCount {
    Ival logValue;     // log of c * sum_w b^{f0(w) (2 l_k - 1)^2}
    WeightBase base;
};

// Weighted pattern count over the level-k admissible set: each zero carries
// weight b^{2 l_k - 1} (the vertical extension repeats a column's symbol).
WeightedCount weighted_G_count(const Schedule& s, std::size_t k, Parity p, const WeightBase& b,
                               const mpz_class& c, unsigned long state_cap = 1ul << 22);

// One certified inequality with log-domain margin (positive = slack).
struct ChainStep {
    bool holds = false;
    double log_margin = 0;
    std::string detail;
};

struct CountChainReport {
    std::size_t level = 0;
    int power = 0;
    bool strict_mode = false;
    mpz_class block_count;  // blocks per concatenation
    mpz_class slot_count;   // free (odd) slots: ceil(block_count / 2)
    ChainStep step_count_vs_entropy;  // (i) partial-sum count bounded by e^{L H(r_k)}
    ChainStep step_concat_lower;      // (ii) |C| >= e^{L r_{k-1} / 2}
    ChainStep step_s2_closure;        // (iii) power L H(r_k) <= (1/2) L r_{k-1} log 2
    ChainStep end_to_end;             // |P|^power <= |C|
    bool all() const {
        return step_count_vs_entropy.holds && step_concat_lower.holds && step_s2_closure.holds &&
               end_to_end.holds;
    }
    std::string print() const;
};

// Verifies the power-inequality chain between the level-k admissible count of
// the non-natural parity and the concatenation count of the natural parity.
// Toy mode uses exact enumerated counts; strict mode uses only the binomial
// partial-sum formulas (valid through level 2) and certified intervals, so it
// works at generated scales where enumeration is impossible.
CountChainReport verify_count_chain(const Schedule& s, std::size_t k, int power, bool toy,
                                   unsigned long state_cap = 1ul << 22,
                                   unsigned long term_cap = 1ul << 20);

struct WeightedChainReport {
    std::size_t level = 0;
    int power = 0;
    ChainStep weighted_vs_concat;  // (c S_minor)^power <= S_C
    ChainStep concat_vs_major;     // S_C <= c S_major
    ChainStep end_to_end;          // (c S_minor)^power <= c S_major
    bool all() const {
        return weighted_vs_concat.holds && concat_vs_major.holds && end_to_end.holds;
    }
    std::string print() const;
};

// The weighted analogue: compares the blown-up count of the non-natural
// parity against the concatenation-restricted weighted sum. Toy mode only.
WeightedChainReport verify_weighted_chain(const Schedule& s, std::size_t k, int power, const WeightBase& b,
                           const mpz_class& c, unsigned long state_cap = 1ul << 22);

// Local admissibility of a string over the full signed alphabet for the
// parity's natural family chain truncated at level <= max_level: no factor of
// the largest applicable level's window length lies in that family.
bool x_admissible(const SignedString& w, Parity p, const Schedule& s, std::size_t max_level);

SignedString parse_signed(const std::string& text);  // characters '-', '0', '+'
std::string print_signed(const SignedString& w);

}  // namespace sz
