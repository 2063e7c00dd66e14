#pragma once
#include <gmpxx.h>

#include <string>

#include "interval.hpp"

namespace sz {

// High-precision value with a certified error radius.
struct EntropyValue {
    Ival interval;
    double width() const { return interval.width_d(); }
};

// -t log t - (1-t) log(1-t) on [0,1], exact 0 at the endpoints. The enclosure
// is tightened by precision doubling until its width is below `tol` (or the
// precision ceiling is hit, which raises a precision error).
EntropyValue binary_entropy(const mpq_class& t, double tol = 1e-24, mpfr_prec_t start_prec = 192);

// floor(alpha * n) as an exact integer.
mpz_class floor_alpha_n(const mpq_class& alpha, const mpz_class& n);

// Exact sum of C(n, r) for r = 0 .. floor(alpha*n). Requires 0 <= alpha <= 1.
mpz_class binom_partial_sum(unsigned long n, const mpq_class& alpha);

struct BinomBounds {
    mpz_class lower;  // 2^floor(alpha n)
    mpz_class sum;    // exact partial sum
    Ival upper;       // enclosure of e^{n H(alpha)}
    bool holds;       // lower <= sum and sum <= sup(upper)
    bool certified;   // stronger: sum <= inf(upper), so the inequality is proven
    std::string report() const;
};

// The partial-sum sandwich for alpha in (0, 1/2].
BinomBounds binom_bounds_check(unsigned long n, const mpq_class& alpha, mpfr_prec_t prec = 192);

// Parses "p/q" or "p" into an exact rational (canonicalized).
mpq_class parse_rational(const std::string& text);

}  // namespace sz
