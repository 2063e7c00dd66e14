#include "interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace sz {

Ival::Ival(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Ival::Ival(const Ival& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ival::Ival(Ival&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Ival& Ival::operator=(Ival o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Ival::~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Ival Ival::exact_int(long v, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::of_rational(const mpq_class& q, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Ival Ival::of_integer(const mpz_class& z, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Ival Ival::log2_const(mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::add(const Ival& o) const {
    Ival r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::sub(const Ival& o) const {
    Ival r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Ival Ival::mul(const Ival& o) const {
    // General sign handling: min/max over the four endpoint products.
    Ival r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const __mpfr_struct* a[2] = {lo_, hi_};
    const __mpfr_struct* b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Ival Ival::neg() const {
    Ival r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Ival Ival::mul_int(long k) const {
    Ival r(prec_);
    if (k >= 0) {
        mpfr_mul_si(r.lo_, lo_, k, MPFR_RNDD);
        mpfr_mul_si(r.hi_, hi_, k, MPFR_RNDU);
    } else {
        mpfr_mul_si(r.lo_, hi_, k, MPFR_RNDD);
        mpfr_mul_si(r.hi_, lo_, k, MPFR_RNDU);
    }
    return r;
}

Ival Ival::mul_z(const mpz_class& k) const {
    if (sgn(k) >= 0) {
        Ival r(prec_);
        mpfr_mul_z(r.lo_, lo_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, hi_, k.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    Ival r(prec_);
    mpfr_mul_z(r.lo_, hi_, k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, lo_, k.get_mpz_t(), MPFR_RNDU);
    return r;
}

Ival Ival::log() const {
    require(mpfr_sgn(lo_) > 0, errkind::contract, "interval", "log of interval touching zero");
    Ival r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::exp() const {
    Ival r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

std::optional<bool> Ival::le(const Ival& o) const {
    if (mpfr_cmp(hi_, o.lo_) <= 0) return true;
    if (mpfr_cmp(lo_, o.hi_) > 0) return false;
    return std::nullopt;
}

int Ival::cmp_z(const mpz_class& z) const {
    if (mpfr_cmp_z(hi_, z.get_mpz_t()) < 0) return -1;
    if (mpfr_cmp_z(lo_, z.get_mpz_t()) > 0) return 1;
    return 0;
}

bool Ival::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

double Ival::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double v = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return v;
}

double Ival::width_d() const {
    if (!is_finite()) return std::numeric_limits<double>::infinity();
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double v = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return v;
}

static std::string fmt_endpoint(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
    char buf[256];
    std::string f = "%." + std::to_string(digits) + "R*g";
    mpfr_snprintf(buf, sizeof buf, f.c_str(), rnd, x);
    return buf;
}

std::string Ival::str(int digits) const {
    return "[" + fmt_endpoint(lo_, digits, MPFR_RNDD) + ", " + fmt_endpoint(hi_, digits, MPFR_RNDU) +
           "]";
}

std::string Ival::str_mid(int digits) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, mid_d());
    return buf;
}

Ival binary_entropy_interval(const mpq_class& t, mpfr_prec_t prec) {
    require(t >= 0 && t <= 1, errkind::contract, "bounds",
            "binary entropy argument outside [0,1]");
    if (t == 0 || t == 1) return Ival(prec);  // exact zero by the 0 log 0 convention
    mpq_class u = 1 - t;
    Ival it = Ival::of_rational(t, prec);
    Ival iu = Ival::of_rational(u, prec);
    Ival term1 = it.mul(it.log()).neg();
    Ival term2 = iu.mul(iu.log()).neg();
    return term1.add(term2);
}

}  // namespace sz
