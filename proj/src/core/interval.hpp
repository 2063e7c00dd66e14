#pragma once
#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

#include "errors.hpp"

namespace sz {

// Closed interval [lo, hi] with MPFR endpoints rounded outward, so the true
// value of every expression built from exact inputs is always contained.
// Copyable value type; endpoints carry the precision they were created with.
class Ival {
public:
    explicit Ival(mpfr_prec_t prec = 192);
    Ival(const Ival& o);
    Ival(Ival&& o) noexcept;
    Ival& operator=(Ival o);
    ~Ival();

    static Ival exact_int(long v, mpfr_prec_t prec = 192);
    static Ival of_rational(const mpq_class& q, mpfr_prec_t prec = 192);
    static Ival of_integer(const mpz_class& z, mpfr_prec_t prec = 192);
    static Ival log2_const(mpfr_prec_t prec = 192);

    mpfr_prec_t prec() const { return prec_; }

    Ival add(const Ival& o) const;
    Ival sub(const Ival& o) const;
    Ival mul(const Ival& o) const;
    Ival neg() const;
    Ival mul_int(long k) const;
    Ival mul_z(const mpz_class& k) const;
    // Natural log; requires lo > 0.
    Ival log() const;
    Ival exp() const;

    // Three-way comparisons certified by the enclosure. nullopt = undecided.
    std::optional<bool> le(const Ival& o) const;  // this <= o ?
    std::optional<bool> ge(const Ival& o) const { return o.le(*this); }
    // Interval vs exact integer: -1 certainly below, +1 certainly above, 0 straddles.
    int cmp_z(const mpz_class& z) const;

    bool contains_zero() const;
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const;
    // Width as a double rounded up; inf if endpoints are non-finite.
    double width_d() const;
    bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

    std::string str(int digits = 17) const;  // "[lo, hi]"
    std::string str_mid(int digits = 12) const;

    const __mpfr_struct* lo_raw() const { return lo_; }
    const __mpfr_struct* hi_raw() const { return hi_; }

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
    friend Ival ival_from_raw(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);
};

// -t log t - (1-t) log(1-t), exact 0 at the endpoints. Enclosure width shrinks
// as prec grows.
Ival binary_entropy_interval(const mpq_class& t, mpfr_prec_t prec = 192);

// Runs `pred` at doubling precision until it returns a definite answer.
// Throws a precision error naming `what` if still undecided at max_prec.
template <class F>
bool decide_with_precision(F pred, const char* what, mpfr_prec_t start = 192,
                           mpfr_prec_t max_prec = 1 << 14) {
    for (mpfr_prec_t p = start; p <= max_prec; p *= 2) {
        std::optional<bool> r = pred(p);
        if (r.has_value()) return *r;
    }
    fail(errkind::precision, "interval",
         std::string("comparison undecided at maximum precision: ") + what);
}

}  // namespace sz
