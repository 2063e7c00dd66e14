#include "schedule.hpp"

#include <sstream>

namespace sz {

static const char* MOD = "schedule-bounds";

Schedule::Schedule(std::vector<mpz_class> lengths, std::vector<mpq_class> freqs, ScheduleMode mode)
    : lengths_(std::move(lengths)), freqs_(std::move(freqs)), mode_(mode) {
    require(!lengths_.empty() && lengths_.size() == freqs_.size(), errkind::contract, MOD,
            "schedule needs matching nonempty length/frequency lists");
    for (std::size_t i = 0; i < lengths_.size(); i++) {
        require(lengths_[i] >= 1, errkind::contract, MOD, "lengths must be >= 1");
        require(freqs_[i] > 0 && freqs_[i] <= 1, errkind::contract, MOD,
                "frequencies must lie in (0, 1]");
        if (i > 0) {
            require(lengths_[i] > lengths_[i - 1], errkind::contract, MOD,
                    "lengths must be strictly increasing");
            require(freqs_[i] < freqs_[i - 1], errkind::contract, MOD,
                    "frequencies must be strictly decreasing");
        }
    }
    if (mode_ == ScheduleMode::strict) {
        for (std::size_t k = 2; k <= levels(); k++)
            block_ratio(k);  // throws when not divisible
        for (std::size_t k = 1; k + 1 <= levels(); k++) {
            ConditionReport r = check_conditions(*this, k);
            require(r.all(), errkind::contract, MOD,
                    "strict schedule fails conditions at level " + std::to_string(k) + ": " +
                        r.print(k));
        }
        ConditionResult last = check_s1(*this, levels());
        require(last.holds, errkind::contract, MOD, "strict schedule fails (S1) at last level");
    }
}

Schedule Schedule::seed() {
    return Schedule({mpz_class(4)}, {mpq_class(1, 2)}, ScheduleMode::strict);
}

const mpz_class& Schedule::length(std::size_t k) const {
    require(k >= 1 && k <= lengths_.size(), errkind::contract, MOD,
            "level " + std::to_string(k) + " not present in schedule");
    return lengths_[k - 1];
}

const mpq_class& Schedule::freq(std::size_t k) const {
    require(k >= 1 && k <= freqs_.size(), errkind::contract, MOD,
            "level " + std::to_string(k) + " not present in schedule");
    return freqs_[k - 1];
}

mpz_class Schedule::block_ratio(std::size_t k) const {
    require(k >= 2, errkind::contract, MOD, "block ratio needs k >= 2");
    mpz_class a = window(k), b = window(k - 1), q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    require(r == 0, errkind::contract, MOD,
            "window " + a.get_str() + " not divisible by " + b.get_str() + " at level " +
                std::to_string(k));
    return q;
}

std::string Schedule::print() const {
    std::ostringstream os;
    os << "mode " << (mode_ == ScheduleMode::strict ? "strict" : "toy") << "\n";
    for (std::size_t k = 1; k <= levels(); k++) {
        os << "level " << k << " l=" << length(k).get_str() << " r=" << freq(k).get_num().get_str()
           << "/" << freq(k).get_den().get_str() << "\n";
    }
    return os.str();
}

ConditionResult check_s1(const Schedule& s, std::size_t k) {
    mpq_class lhs = mpq_class(s.window(k)) * s.freq(k);
    mpq_class margin = lhs - 1;
    return ConditionResult{margin >= 0, margin.get_str()};
}

// Certified comparison lhs >= rhs where both sides are interval-valued
// functions of the working precision.
template <class L, class R>
static ConditionResult certified_ge(L lhs_at, R rhs_at, const char* label) {
    std::string margin;
    bool holds = decide_with_precision(
        [&](mpfr_prec_t p) -> std::optional<bool> {
            Ival lhs = lhs_at(p), rhs = rhs_at(p);
            margin = lhs.sub(rhs).str(8);
            return rhs.le(lhs);
        },
        label);
    return ConditionResult{holds, margin};
}

ConditionReport check_conditions(const Schedule& s, std::size_t k, mpfr_prec_t prec) {
    s.length(k + 1);  // both levels must exist
    ConditionReport rep;
    rep.s1 = check_s1(s, k);

    // (S2): r_k/2 * log 2 >= 10 H(r_{k+1})
    mpq_class half_rk = s.freq(k) / 2;
    mpq_class r_next = s.freq(k + 1);
    rep.s2 = certified_ge(
        [&](mpfr_prec_t p) { return Ival::of_rational(half_rk, p).mul(Ival::log2_const(p)); },
        [&](mpfr_prec_t p) { return binary_entropy_interval(r_next, p).mul_int(10); }, "(S2)");

    // (S3): 1/(4 l_k - 2) >= 10 (r_{k+1} + 2 W^{-2} log W), W = 2 l_{k+1} - 1
    mpz_class W = s.window(k + 1);
    mpq_class lhs3 = mpq_class(1) / mpq_class(4 * s.length(k) - 2);
    mpq_class two_over_W2 = mpq_class(2) / mpq_class(W * W);
    rep.s3 = certified_ge(
        [&](mpfr_prec_t p) { return Ival::of_rational(lhs3, p); },
        [&](mpfr_prec_t p) {
            Ival logW = Ival::of_integer(W, p).log();
            Ival inner = Ival::of_rational(r_next, p).add(Ival::of_rational(two_over_W2, p).mul(logW));
            return inner.mul_int(10);
        },
        "(S3)");

    // (S4): l_{k+1} >= 2^{4 l_k}, decided by bit length so astronomic
    // thresholds never have to be materialized.
    mpz_class bits_next(mpz_sizeinbase(s.length(k + 1).get_mpz_t(), 2));
    mpz_class need = 4 * s.length(k) + 1;
    bool s4 = bits_next >= need;
    std::string margin4;
    if (4 * s.length(k) <= 4096) {
        mpz_class thr;
        mpz_ui_pow_ui(thr.get_mpz_t(), 2, mpz_class(4 * s.length(k)).get_ui());
        margin4 = mpz_class(s.length(k + 1) - thr).get_str();
    } else {
        margin4 = "bitlen " + bits_next.get_str() + " vs required " + need.get_str();
    }
    rep.s4 = ConditionResult{s4, margin4};
    (void)prec;
    return rep;
}

std::string ConditionReport::print(std::size_t k) const {
    std::ostringstream os;
    os << "k=" << k;
    os << " S1=" << (s1.holds ? "pass" : "FAIL") << " margin=" << s1.margin;
    os << " S2=" << (s2.holds ? "pass" : "FAIL") << " margin=" << s2.margin;
    os << " S3=" << (s3.holds ? "pass" : "FAIL") << " margin=" << s3.margin;
    os << " S4=" << (s4.holds ? "pass" : "FAIL") << " margin=" << s4.margin;
    return os.str();
}

Schedule extend_schedule(const Schedule& s, mpfr_prec_t prec) {
    require(s.mode() == ScheduleMode::strict, errkind::contract, MOD,
            "schedule extension requires strict mode");
    std::size_t k = s.levels();
    const mpz_class& lk = s.length(k);
    const mpq_class& rk = s.freq(k);

    // Minimal l >= 2^{4 l_k} with (2l - 1) divisible by M = 2 l_k - 1.
    // 2l == 1 (mod M) means l == (M+1)/2 (mod M) since M is odd.
    mpz_class four_lk = 4 * lk;
    require(four_lk <= 1 << 26, errkind::cap, MOD,
            "next level would need 2^" + four_lk.get_str() + ", beyond representable size");
    mpz_class threshold;
    mpz_ui_pow_ui(threshold.get_mpz_t(), 2, four_lk.get_ui());
    mpz_class M = s.window(k);
    mpz_class residue = (M + 1) / 2;
    mpz_class rem = threshold % M;
    mpz_class delta = (residue - rem) % M;
    if (delta < 0) delta += M;
    mpz_class l_next = threshold + delta;

    mpz_class W = 2 * l_next - 1;
    mpq_class lhs3 = mpq_class(1) / mpq_class(4 * lk - 2);
    mpq_class two_over_W2 = mpq_class(2) / mpq_class(W * W);
    mpq_class half_rk = rk / 2;

    auto s2_s3_pass = [&](unsigned long m) {
        mpq_class r(1);
        r /= mpz_class(1) << m;
        bool s2 = decide_with_precision(
            [&](mpfr_prec_t p) {
                Ival lhs = Ival::of_rational(half_rk, p).mul(Ival::log2_const(p));
                Ival rhs = binary_entropy_interval(r, p).mul_int(10);
                return rhs.le(lhs);
            },
            "(S2) during extension", prec);
        if (!s2) return false;
        return decide_with_precision(
            [&](mpfr_prec_t p) {
                Ival lhs = Ival::of_rational(lhs3, p);
                Ival logW = Ival::of_integer(W, p).log();
                Ival rhs = Ival::of_rational(r, p)
                               .add(Ival::of_rational(two_over_W2, p).mul(logW))
                               .mul_int(10);
                return rhs.le(lhs);
            },
            "(S3) during extension", prec);
    };

    // Smallest exponent keeping r strictly below r_k.
    unsigned long m_lo = 1;
    while (mpq_class(mpz_class(1), mpz_class(1) << m_lo) >= rk) m_lo++;

    // (S2)/(S3) relax as m grows: double until they pass, then bisect for the
    // minimal m (maximal dyadic r).
    unsigned long hi = m_lo;
    const unsigned long m_cap = 1 << 20;
    while (!s2_s3_pass(hi)) {
        hi *= 2;
        require(hi <= m_cap, errkind::cap, MOD, "no dyadic frequency below cap passes (S2)/(S3)");
    }
    unsigned long lo = m_lo;
    while (lo < hi) {
        unsigned long mid = lo + (hi - lo) / 2;
        if (s2_s3_pass(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    unsigned long m = hi;

    // (S1) at the new level: (2 l_{k+1} - 1) 2^-m >= 1, i.e. 2^m <= W.
    mpz_class pow_m = mpz_class(1) << m;
    if (pow_m > W)
        fail(errkind::contract, MOD,
             "infeasible schedule: no dyadic r satisfies (S1) with (S2)/(S3) at level " +
                 std::to_string(k + 1));
    mpq_class r_next(1);
    r_next /= pow_m;

    std::vector<mpz_class> lengths;
    std::vector<mpq_class> freqs;
    for (std::size_t i = 1; i <= s.levels(); i++) {
        lengths.push_back(s.length(i));
        freqs.push_back(s.freq(i));
    }
    lengths.push_back(l_next);
    freqs.push_back(r_next);
    return Schedule(std::move(lengths), std::move(freqs), ScheduleMode::strict);
}

Schedule parse_schedule(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    ScheduleMode mode = ScheduleMode::toy;
    std::vector<mpz_class> lengths;
    std::vector<mpq_class> freqs;
    int lineno = 0;
    while (std::getline(is, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "mode") {
            std::string m;
            ls >> m;
            if (m == "strict")
                mode = ScheduleMode::strict;
            else if (m == "toy")
                mode = ScheduleMode::toy;
            else
                fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": bad mode " + m);
        } else if (head == "level") {
            unsigned long k;
            std::string ltok, rtok;
            if (!(ls >> k >> ltok >> rtok) || ltok.rfind("l=", 0) != 0 || rtok.rfind("r=", 0) != 0)
                fail(errkind::parse, MOD,
                     "line " + std::to_string(lineno) + ": expected 'level k l=<int> r=<p>/<q>'");
            require(k == lengths.size() + 1, errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": levels must be consecutive from 1");
            mpz_class l;
            if (l.set_str(ltok.substr(2), 10) != 0)
                fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": bad length");
            mpq_class r;
            if (r.set_str(rtok.substr(2), 10) != 0)
                fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": bad frequency");
            r.canonicalize();
            lengths.push_back(l);
            freqs.push_back(r);
        } else {
            fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": unknown directive");
        }
    }
    return Schedule(std::move(lengths), std::move(freqs), mode);
}

}  // namespace sz
