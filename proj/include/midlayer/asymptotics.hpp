#pragma once

// High-precision evaluation of the main counting formula, the Stirling
// expansion gap, the entropy bound and composition counts. Every asserted
// inequality here is decided in exact integer arithmetic (denominators
// cleared; certified rational bounds for e), so no rounding mode can flip a
// verdict; MPFR supplies the reported real values only.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <optional>

#include "errors.hpp"
#include "numeric.hpp"

namespace midlayer {

struct LogCountEstimate {
    Real log2_total = 0;        // log2(prefactor) + exponent * log2(e) + linear
    Rational exponent_rational = 0;  // (d-1)^2 C(2d-2,d-1) / 2^{2d-1}
    BigInt linear_term = 0;          // C(2d-2,d-1)
    long long prefactor = 0;         // 2d-1
    unsigned precision_bits = 0;
};

inline Rational main_formula_exponent(long long d) {
    return Rational(BigInt(d - 1) * (d - 1) * binomial(2 * d - 2, d - 1)) /
           Rational(BigInt(1) << unsigned(2 * d - 1));
}

inline LogCountEstimate main_formula_log2(long long d, unsigned precision_bits = 128) {
    require(d >= 2, errc::precondition_failed, "need d >= 2");
    LogCountEstimate out;
    out.exponent_rational = main_formula_exponent(d);
    out.linear_term = binomial(2 * d - 2, d - 1);
    out.prefactor = 2 * d - 1;
    out.precision_bits = precision_bits;
    PrecisionGuard guard(precision_bits + 64);
    Real log2e = 1 / log(Real(2));
    out.log2_total = log2(Real(out.prefactor)) + to_real(out.exponent_rational) * log2e +
                     Real(out.linear_term);
    return out;
}

struct StirlingGap {
    Real exact = 0;             // the exponent as a real number
    Real expansion = 0;         // (d-1)^{3/2}/(2 sqrt(pi)) - (d-1)^{1/2}/(24 sqrt(pi))
    Real gap_times_sqrt_d = 0;  // (exact - expansion) * sqrt(d)
};

inline StirlingGap stirling_gap(long long d, unsigned precision_bits = 128) {
    require(d >= 2, errc::precondition_failed, "need d >= 2");
    PrecisionGuard guard(precision_bits + 64);
    StirlingGap out;
    out.exact = to_real(main_formula_exponent(d));
    Real m = Real(d - 1);
    Real sqrt_pi = sqrt(boost::math::constants::pi<Real>());
    out.expansion = pow(m, Real(3) / 2) / (2 * sqrt_pi) - sqrt(m) / (24 * sqrt_pi);
    out.gap_times_sqrt_d = (out.exact - out.expansion) * sqrt(Real(d));
    return out;
}

struct EntropyReport {
    BigInt lhs = 0;        // sum_{i <= alpha n} C(n,i)
    Real rhs = 0;          // 2^{H(alpha) n}, for display
    bool holds = false;    // exact integer decision of lhs <= rhs
    Rational alpha = 0;
    int n = 0;
};

// lhs <= 2^{H(p/q) n}  <=>  lhs^q p^{pn} (q-p)^{(q-p)n} <= q^{qn}, decided in
// exact integers (both sides positive, q-th powers preserve order).
inline EntropyReport entropy_bound_check(int n, const Rational& alpha) {
    require(alpha >= 0 && alpha <= Rational(1, 2), errc::alpha_out_of_range,
            "alpha must lie in [0, 1/2]");
    require(n >= 1, errc::precondition_failed, "need n >= 1");
    EntropyReport out;
    out.alpha = alpha;
    out.n = n;
    BigInt p = boost::multiprecision::numerator(alpha);
    BigInt q = boost::multiprecision::denominator(alpha);
    long long cutoff = BigInt(p * n / q).convert_to<long long>();  // floor(alpha n)
    for (long long i = 0; i <= cutoff; ++i) out.lhs += binomial(n, i);

    if (p == 0) {
        out.holds = out.lhs <= 1;
        out.rhs = 1;
        return out;
    }
    unsigned long long pn = BigInt(p * n).convert_to<unsigned long long>();
    unsigned long long qn = BigInt(q * n).convert_to<unsigned long long>();
    unsigned long long rn = qn - pn;
    BigInt lhs_pow = bigint_pow(out.lhs, q.convert_to<unsigned long long>()) *
                     bigint_pow(p, pn) * bigint_pow(q - p, rn);
    BigInt rhs_pow = bigint_pow(q, qn);
    out.holds = lhs_pow <= rhs_pow;

    PrecisionGuard guard(128);
    double a = double(to_real(alpha));
    double H = (a <= 0 || a >= 1) ? 0.0 : -a * std::log2(a) - (1 - a) * std::log2(1 - a);
    out.rhs = exp(Real(H * n) * log(Real(2)));
    return out;
}

inline BigInt composition_count(long long n, std::optional<long long> max_parts = std::nullopt) {
    require(n >= 1, errc::precondition_failed, "need n >= 1");
    if (!max_parts) return BigInt(1) << unsigned(n - 1);
    BigInt total = 0;
    for (long long i = 0; i < *max_parts; ++i) total += binomial(n - 1, i);
    return total;
}

struct CompositionBound {
    BigInt lhs = 0;   // compositions with at most b parts
    bool holds = false;  // lhs < (e n / b)^b with a certified rational lower bound of e
};

inline CompositionBound composition_bound_report(long long n, long long b) {
    require(b >= 1 && 2 * b < n, errc::precondition_failed, "bound stated for b < n/2");
    CompositionBound out;
    out.lhs = composition_count(n, b);
    Rational e_lo = euler_lower_bound();
    BigInt num = bigint_pow(boost::multiprecision::numerator(e_lo) * n, std::uint64_t(b));
    BigInt den = bigint_pow(boost::multiprecision::denominator(e_lo) * b, std::uint64_t(b));
    // lhs < e^b (n/b)^b follows from lhs < e_lo^b (n/b)^b.
    out.holds = out.lhs * den < num;
    return out;
}

}  // namespace midlayer
