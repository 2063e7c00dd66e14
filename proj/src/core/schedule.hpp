#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "interval.hpp"

namespace sz {

enum class ScheduleMode { strict, toy };

// The level parameters: lengths l_k (window side is 2 l_k - 1) and dyadic-ish
// frequency thresholds r_k. Strict mode enforces the growth/divisibility
// conditions at construction; toy mode defers them to the operations that
// need them.
class Schedule {
public:
    Schedule(std::vector<mpz_class> lengths, std::vector<mpq_class> freqs, ScheduleMode mode);
    static Schedule seed();  // l_1 = 4, r_1 = 1/2, strict

    std::size_t levels() const { return lengths_.size(); }
    ScheduleMode mode() const { return mode_; }
    const mpz_class& length(std::size_t k) const;      // 1-based
    const mpq_class& freq(std::size_t k) const;        // 1-based
    mpz_class window(std::size_t k) const { return 2 * length(k) - 1; }
    // (2 l_k - 1) / (2 l_{k-1} - 1); schedule error when not integral.
    mpz_class block_ratio(std::size_t k) const;

    std::string print() const;

private:
    std::vector<mpz_class> lengths_;
    std::vector<mpq_class> freqs_;
    ScheduleMode mode_;
};

// One certified condition: pass/fail plus a human-readable margin.
struct ConditionResult {
    bool holds = false;
    std::string margin;
};

// The four growth conditions for the consecutive pair (k, k+1); s1 is
// evaluated at level k itself.
struct ConditionReport {
    ConditionResult s1, s2, s3, s4;
    bool all() const { return s1.holds && s2.holds && s3.holds && s4.holds; }
    std::string print(std::size_t k) const;
};

// Levels k and k+1 must both be present. Exact rational arithmetic where
// possible, certified intervals with precision doubling for the entropy and
// log terms; an undecidable comparison raises a precision error naming the
// condition.
ConditionReport check_conditions(const Schedule& s, std::size_t k, mpfr_prec_t prec = 192);

// (S1) alone at level k (needed for the last level, which no pair covers).
ConditionResult check_s1(const Schedule& s, std::size_t k);

// Appends the minimal l_{k+1} with l_{k+1} >= 2^{4 l_k} and
// (2 l_{k+1} - 1) divisible by (2 l_k - 1), and the maximal dyadic
// r_{k+1} = 2^-m passing (S1)-(S3), found by monotone search on m.
Schedule extend_schedule(const Schedule& s, mpfr_prec_t prec = 192);

// Text format: optional "mode strict|toy" line, then "level <k> l=<int> r=<p>/<q>".
Schedule parse_schedule(const std::string& text);

}  // namespace sz
