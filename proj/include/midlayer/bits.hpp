#pragma once

// Dynamic bitsets over graph vertices plus small helpers for ground-set masks.
// A Subset is a plain 64-bit mask over the ground set [n] (bit i-1 <-> element i),
// so everything here is branch-free word arithmetic.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace midlayer {

using Subset = std::uint64_t;

inline int popcount64(std::uint64_t x) { return std::popcount(x); }
inline int ctz64(std::uint64_t x) { return std::countr_zero(x); }

// Bitset indexed by global vertex index. Fixed length after construction.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    std::size_t word_count() const { return w_.size(); }
    std::uint64_t word(std::size_t i) const { return w_[i]; }
    std::uint64_t& word(std::size_t i) { return w_[i]; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::size_t(popcount64(x));
        return c;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    int lowest() const {  // -1 if empty
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::size_t(ctz64(w_[i])));
        return -1;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator^=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    VertexSet& and_not(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }
    friend VertexSet minus(VertexSet a, const VertexSet& b) { return a.and_not(b); }

    bool operator==(const VertexSet& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    // Numeric (big-endian word) comparison; gives a deterministic total order.
    bool operator<(const VertexSet& o) const {
        for (std::size_t i = w_.size(); i-- > 0;)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }

    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    std::size_t intersection_count(const VertexSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::size_t(popcount64(w_[i] & o.w_[i]));
        return c;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t x = w_[i];
            while (x) {
                fn(int(i * 64 + std::size_t(ctz64(x))));
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull ^ nbits_;
        for (auto x : w_) h = (h * 0x100000001b3ull) ^ x;
        return h;
    }

    // Hex of the underlying bit-integer, lowercase, no leading zeros ("0" if empty).
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        bool started = false;
        for (std::size_t i = w_.size(); i-- > 0;) {
            for (int nib = 15; nib >= 0; --nib) {
                int v = int((w_[i] >> (4 * nib)) & 0xf);
                if (!started) {
                    if (v == 0) continue;
                    started = true;
                }
                s.push_back(digits[v]);
            }
        }
        if (!started) s = "0";
        return s;
    }

    static VertexSet from_hex(std::size_t nbits, const std::string& hex) {
        VertexSet out(nbits);
        std::size_t bit = 0;
        for (std::size_t i = hex.size(); i-- > 0 && bit < 64 * out.w_.size();) {
            char c = hex[i];
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = 10 + c - 'a';
            else if (c >= 'A' && c <= 'F') v = 10 + c - 'A';
            else fail(errc::precondition_failed, "bad hex digit in vertex set");
            out.w_[bit >> 6] |= std::uint64_t(v) << (bit & 63);
            bit += 4;
        }
        return out;
    }

    static VertexSet full(std::size_t nbits) {
        VertexSet s(nbits);
        for (std::size_t i = 0; i < nbits; ++i) s.set(i);
        return s;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

// Hex for ground-set masks (Subset), same format as VertexSet hex.
inline std::string subset_to_hex(Subset s) {
    static const char* digits = "0123456789abcdef";
    if (s == 0) return "0";
    std::string out;
    while (s) {
        out.push_back(digits[s & 0xf]);
        s >>= 4;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

inline Subset subset_from_hex(const std::string& hex) {
    Subset s = 0;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = 10 + c - 'a';
        else if (c >= 'A' && c <= 'F') v = 10 + c - 'A';
        else fail(errc::precondition_failed, "bad hex digit in subset");
        s = (s << 4) | Subset(v);
    }
    return s;
}

}  // namespace midlayer
