#pragma once

// Numeric backends: exact big integers and rationals for every asserted
// inequality, arbitrary-precision reals (MPFR) for reported logarithms, and
// the counter-based RNG used by all seeded draws.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace midlayer {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::mpfr_float;

// Sets the global mpfr working precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }

    static unsigned digits10_for_bits(unsigned bits) {
        return unsigned(double(bits) * 0.30103) + 8;
    }

private:
    unsigned saved_;
};

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt factorial(long long n) {
    BigInt r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt bigint_pow(BigInt base, unsigned long long e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rational rational_pow(const Rational& base, unsigned long long e) {
    Rational r = 1, b = base;
    unsigned long long k = e;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline Real to_real(const Rational& q) {
    return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline std::string rational_to_string(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Certified rational bounds for e; enough digits for any desk-scale exponent.
inline Rational euler_lower_bound() {
    return Rational(BigInt("2718281828459045235360287471352662497757"),
                    BigInt("1000000000000000000000000000000000000000"));
}
inline Rational euler_upper_bound() {
    return Rational(BigInt("2718281828459045235360287471352662497758"),
                    BigInt("1000000000000000000000000000000000000000"));
}

// ----------------------------- seeded randomness -----------------------------
// Counter-based: every draw is a pure function of (seed, stream, counter), so
// results are identical across worker counts and schedules.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t rng_mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dull) ^ splitmix64(stream) ^
                      (counter * 0xda942042e4dd58b5ull));
}

inline double rng_uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return double(rng_mix(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Bernoulli(p) draw keyed by (seed, stream, counter).
inline bool rng_bernoulli(double p, std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return rng_uniform01(seed, stream, counter) < p;
}

// Uniform integer in [0, bound) by rejection-free multiply-shift.
inline std::uint64_t rng_below(std::uint64_t bound, std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t counter) {
    return std::uint64_t((__uint128_t(rng_mix(seed, stream, counter)) * bound) >> 64);
}

}  // namespace midlayer
