#include <catch2/catch_amalgamated.hpp>

#include "midlayer/shadows.hpp"

#include <sstream>

using namespace midlayer;

namespace {

// Independent expansion oracle for shadows: per-member element removal into a
// std::set, no reuse of the library's dedup path.
std::vector<Subset> shadow_oracle(const SetFamily& F) {
    std::set<Subset> out;
    for (Subset s : F.members)
        for (int e = 0; e < F.n; ++e)
            if (s & (Subset(1) << e)) out.insert(s ^ (Subset(1) << e));
    return {out.begin(), out.end()};
}

SetFamily random_family(int n, int m, double p, std::uint64_t seed) {
    std::vector<Subset> members;
    Subset top = Subset(1) << n;
    std::uint64_t c = 0;
    for (Subset s = 0; s < top; ++s) {
        if (popcount64(s) != m) continue;
        if (rng_bernoulli(p, seed, 7, c++)) members.push_back(s);
    }
    return SetFamily::make(n, m, std::move(members));
}

}  // namespace

TEST_CASE("shadow examples") {
    auto F = SetFamily::make(3, 2, {0b011, 0b110});
    auto S = shadow(F);
    REQUIRE(S.members == std::vector<Subset>{0b001, 0b010, 0b100});

    std::vector<Subset> full;
    for (Subset s = 0; s < 16; ++s)
        if (popcount64(s) == 2) full.push_back(s);
    auto F4 = SetFamily::make(4, 2, full);
    auto S4 = shadow(F4);
    REQUIRE(S4.members == shadow_oracle(F4));
    REQUIRE(S4.members.size() == 4);

    auto E = SetFamily::make(4, 2, {});
    REQUIRE(shadow(E).members.empty());

    auto Z = SetFamily::make(3, 0, {0});
    REQUIRE_THROWS_MATCHES(shadow(Z), error, Catch::Matchers::Predicate<error>([](const error& e) {
                               return e.code == errc::uniformity_zero;
                           }));
}

TEST_CASE("shift examples, hand-traced") {
    auto F = SetFamily::make(3, 2, {0b011, 0b110});  // {1,2},{2,3}
    auto S = shift(F, 2);
    REQUIRE(S.members == std::vector<Subset>{0b011, 0b101});  // {1,2},{1,3}

    auto F2 = SetFamily::make(3, 2, {0b011, 0b101});  // 1 in every member
    REQUIRE(shift(F2, 2).members == F2.members);

    auto F3 = SetFamily::make(3, 2, {0b110, 0b101});  // {2,3},{1,3}: image collision
    REQUIRE(shift(F3, 2).members == std::vector<Subset>{0b101, 0b110});

    REQUIRE_THROWS_MATCHES(shift(F, 1), error, Catch::Matchers::Predicate<error>([](const error& e) {
                               return e.code == errc::shift_index_out_of_range;
                           }));
    REQUIRE_THROWS_MATCHES(shift(F, 4), error, Catch::Matchers::Predicate<error>([](const error& e) {
                               return e.code == errc::shift_index_out_of_range;
                           }));
}

TEST_CASE("shift preserves cardinality and commutes with shadows contractively") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 220; ++seed) {
        int n = 4 + int(rng_below(9, seed, 1, 0));   // 4..12
        int m = 1 + int(rng_below(std::uint64_t(n), seed, 2, 0));
        auto F = random_family(n, m, 0.35, seed);
        if (F.members.empty()) continue;
        auto dF = shadow(F);
        for (int i = 2; i <= n; ++i) {
            auto SF = shift(F, i);
            REQUIRE(SF.members.size() == F.members.size());
            auto dSF = shadow(SF);
            auto SdF = shift(dF, i);
            for (Subset s : dSF.members) REQUIRE(SdF.contains(s));  // ∂S_i(F) ⊆ S_i(∂F)
            REQUIRE(dSF.members.size() <= dF.members.size());
            ++checked;
        }
    }
    REQUIRE(checked > 500);
}

TEST_CASE("real binomial inverse") {
    REQUIRE(real_binomial_inverse(Rational(6), 2, 1, 10) == Catch::Approx(4.0).margin(1e-9));
    REQUIRE(real_binomial_inverse(Rational(1), 2, 1, 10) == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(real_binomial_inverse(Rational(35), 3, 2, 10) == Catch::Approx(7.0).margin(1e-9));
    REQUIRE_THROWS_MATCHES(real_binomial_inverse(Rational(100), 2, 1, 4), error,
                           Catch::Matchers::Predicate<error>([](const error& e) {
                               return e.code == errc::no_bracket;
                           }));
}

TEST_CASE("Lovász shadow bound reports") {
    std::vector<Subset> full;
    for (Subset s = 0; s < 16; ++s)
        if (popcount64(s) == 2) full.push_back(s);
    auto F4 = SetFamily::make(4, 2, full);
    auto r = shadow_bound_report(F4, 1);
    REQUIRE(r.lhs == 4);
    REQUIRE(std::abs(double(to_real(r.rhs)) - 4.0) < 1e-6);

    auto single = SetFamily::make(4, 2, {0b0011});
    auto r1 = shadow_bound_report(single, 1);
    REQUIRE(r1.lhs == 2);
    REQUIRE(std::abs(double(to_real(r1.rhs)) - 2.0) < 1e-6);

    // |F| = 2 disjoint pairs: x = (1+sqrt(17))/2
    auto two = SetFamily::make(4, 2, {0b0011, 0b1100});
    auto r2 = shadow_bound_report(two, 1);
    REQUIRE(r2.lhs == 4);
    REQUIRE(std::abs(double(to_real(r2.rhs)) - 2.5615528128088303) < 1e-6);
    REQUIRE(r2.slack > 1);
}

TEST_CASE("shadow bound slack stays above the bisection tolerance on random families") {
    for (std::uint64_t seed = 100; seed < 200; ++seed) {
        int n = 4 + int(rng_below(9, seed, 3, 0));
        int m = 1 + int(rng_below(std::uint64_t(n), seed, 4, 0));
        auto F = random_family(n, m, 0.3, seed);
        if (F.members.empty()) continue;
        for (int q = 0; q <= std::min(m, 3); ++q) {
            auto r = shadow_bound_report(F, q);
            REQUIRE(double(to_real(r.slack)) >= -1e-9);
        }
    }
}

TEST_CASE("family file format round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto F = random_family(9, 3, 0.4, seed);
        std::stringstream ss;
        write_family(ss, F);
        auto G = read_family(ss);
        REQUIRE(G.n == F.n);
        REQUIRE(G.m == F.m);
        REQUIRE(G.members == F.members);
    }
}
