#pragma once

// Uniform set families: shadows, the compression shifts S_i, and the Lovász
// form of the Kruskal-Katona bound with its real-x inverse.

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "report.hpp"

namespace midlayer {

struct SetFamily {
    int n = 0;  // ground-set size
    int m = 0;  // uniformity
    std::vector<Subset> members;  // strictly increasing, all popcount m

    std::size_t size() const { return members.size(); }
    bool contains(Subset s) const {
        return std::binary_search(members.begin(), members.end(), s);
    }

    static SetFamily make(int n, int m, std::vector<Subset> sets) {
        SetFamily f;
        f.n = n;
        f.m = m;
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        for (Subset s : sets) {
            require(popcount64(s) == m, errc::precondition_failed, "member has wrong cardinality");
            require(n >= 63 || s < (Subset(1) << n), errc::precondition_failed,
                    "member outside ground set");
        }
        f.members = std::move(sets);
        return f;
    }
};

// All (m-1)-subsets of members of F.
inline SetFamily shadow(const SetFamily& F) {
    require(F.m >= 1, errc::uniformity_zero, "shadow needs uniformity >= 1");
    std::vector<Subset> out;
    out.reserve(F.members.size() * std::size_t(F.m));
    for (Subset s : F.members) {
        Subset rest = s;
        while (rest) {
            Subset bit = rest & (~rest + 1);
            rest ^= bit;
            out.push_back(s ^ bit);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    SetFamily g;
    g.n = F.n;
    g.m = F.m - 1;
    g.members = std::move(out);
    return g;
}

inline SetFamily iterated_shadow(SetFamily F, int q) {
    for (int i = 0; i < q; ++i) F = shadow(F);
    return F;
}

// The shifting function S_i: replace i by 1 memberwise when legal. The
// membership test runs against the original family throughout.
inline SetFamily shift(const SetFamily& F, int i) {
    require(i >= 2 && i <= F.n, errc::shift_index_out_of_range, "need 2 <= i <= n");
    Subset ibit = Subset(1) << (i - 1);
    Subset onebit = 1;
    std::vector<Subset> out;
    out.reserve(F.members.size());
    for (Subset s : F.members) {
        Subset image = (s ^ ibit) | onebit;
        if ((s & ibit) && !(s & onebit) && !F.contains(image)) out.push_back(image);
        else out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    SetFamily g;
    g.n = F.n;
    g.m = F.m;
    g.members = std::move(out);
    return g;
}

// Falling-factorial extension x(x-1)...(x-m+1)/m!.
inline double real_binomial(double x, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= (x - double(i));
    for (int i = 2; i <= m; ++i) r /= double(i);
    return r;
}

// Solves C(x,m) = size by bisection on [max(lo, m-1), hi]; C is increasing
// there. Relative tolerance 1e-9 (the only real number in this module).
inline double real_binomial_inverse(const Rational& size, int m, double lo, double hi) {
    require(size >= 0, errc::no_bracket, "size must be nonnegative");
    double target = double(to_real(size));
    double a = std::max(lo, double(m - 1));
    double b = hi;
    double fa = real_binomial(a, m), fb = real_binomial(b, m);
    double tol = 1e-9 * std::max(1.0, target);
    require(fa <= target + tol && target <= fb + tol, errc::no_bracket,
            "size outside [C(lo,m), C(hi,m)]");
    for (int it = 0; it < 200 && b - a > 0; ++it) {
        double mid = 0.5 * (a + b);
        if (real_binomial(mid, m) < target) a = mid;
        else b = mid;
    }
    return 0.5 * (a + b);
}

// Lovász shadow bound: |∂^q F| >= C(x, m-q) where C(x,m) = |F|.
// lhs = exact shadow size; rhs = C(x, m-q) (rational image of the bisected
// real); slack >= -1e-9 up to the documented bisection tolerance.
inline IsoReport shadow_bound_report(const SetFamily& F, int q) {
    require(q >= 0 && q <= F.m, errc::precondition_failed, "need 0 <= q <= m");
    Rational lhs = BigInt(iterated_shadow(F, q).size());
    double x = real_binomial_inverse(Rational(BigInt(F.size())), F.m, double(F.m - 1), double(F.n));
    Rational rhs(real_binomial(x, F.m - q));
    return IsoReport::make("lovasz-shadow", lhs, rhs);
}

// ------------------------------ file format ------------------------------
// Header "n=<n> m=<m>", then one lowercase hex member mask per line.

inline void write_family(std::ostream& os, const SetFamily& F) {
    os << "n=" << F.n << " m=" << F.m << "\n";
    for (Subset s : F.members) os << subset_to_hex(s) << "\n";
}

inline SetFamily read_family(std::istream& is) {
    std::string header;
    require(bool(std::getline(is, header)), errc::precondition_failed, "empty family file");
    int n = 0, m = 0;
    if (std::sscanf(header.c_str(), "n=%d m=%d", &n, &m) != 2)
        fail(errc::precondition_failed, "bad family header: " + header);
    std::vector<Subset> sets;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        sets.push_back(subset_from_hex(line));
    }
    return SetFamily::make(n, m, std::move(sets));
}

}  // namespace midlayer
