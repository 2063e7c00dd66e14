#include "bounds.hpp"

#include <sstream>

namespace sz {

EntropyValue binary_entropy(const mpq_class& t, double tol, mpfr_prec_t start_prec) {
    require(t >= 0 && t <= 1, errkind::contract, "bounds",
            "binary entropy argument outside [0,1]");
    for (mpfr_prec_t p = start_prec; p <= (1 << 14); p *= 2) {
        Ival v = binary_entropy_interval(t, p);
        if (v.width_d() <= tol) return EntropyValue{v};
    }
    fail(errkind::precision, "bounds", "binary entropy enclosure wider than tolerance");
}

mpz_class floor_alpha_n(const mpq_class& alpha, const mpz_class& n) {
    mpq_class prod = alpha * mpq_class(n);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), prod.get_num().get_mpz_t(), prod.get_den().get_mpz_t());
    return q;
}

mpz_class binom_partial_sum(unsigned long n, const mpq_class& alpha) {
    require(n >= 1, errkind::contract, "bounds", "binomial partial sum needs n >= 1");
    require(alpha >= 0 && alpha <= 1, errkind::contract, "bounds", "alpha outside [0,1]");
    mpz_class top = floor_alpha_n(alpha, mpz_class(n));
    unsigned long r_max = top.get_ui();
    mpz_class sum = 0, c;
    for (unsigned long r = 0; r <= r_max; r++) {
        mpz_bin_uiui(c.get_mpz_t(), n, r);
        sum += c;
    }
    return sum;
}

std::string BinomBounds::report() const {
    std::ostringstream os;
    os << "lower=" << lower.get_str() << " sum=" << sum.get_str() << " upper="
       << upper.str_mid(6) << " holds=" << (holds ? "true" : "false");
    return os.str();
}

BinomBounds binom_bounds_check(unsigned long n, const mpq_class& alpha, mpfr_prec_t prec) {
    require(alpha > 0 && alpha <= mpq_class(1, 2), errkind::contract, "bounds",
            "alpha outside (0, 1/2]");
    BinomBounds b;
    mpz_class expn = floor_alpha_n(alpha, mpz_class(n));
    mpz_ui_pow_ui(b.lower.get_mpz_t(), 2, expn.get_ui());
    b.sum = binom_partial_sum(n, alpha);
    Ival h = binary_entropy_interval(alpha, prec);
    b.upper = h.mul_int(static_cast<long>(n)).exp();
    int rel = b.upper.cmp_z(b.sum);  // -1: upper < sum, +1: upper > sum
    b.holds = (b.lower <= b.sum) && rel >= 0;
    b.certified = (b.lower <= b.sum) && rel > 0;
    return b;
}

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        fail(errkind::parse, "bounds", "bad rational literal: " + text);
    q.canonicalize();
    return q;
}

}  // namespace sz
