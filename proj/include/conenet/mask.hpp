#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace conenet {

// Fixed-capacity point-subset bitmask. Desk-scale instances stay well under
// the cap; operations are branch-free word ops.
struct SubsetMask {
    static constexpr int kMaxPoints = 256;
    static constexpr int kWords = kMaxPoints / 64;
    std::array<std::uint64_t, kWords> w{};

    void set(int i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }
    bool none() const {
        for (auto x : w) if (x) return false;
        return true;
    }
    bool intersects(const SubsetMask& o) const {
        for (int i = 0; i < kWords; ++i) if (w[i] & o.w[i]) return true;
        return false;
    }
    int first() const {
        for (int i = 0; i < kWords; ++i)
            if (w[i]) return i * 64 + __builtin_ctzll(w[i]);
        return -1;
    }

    SubsetMask operator&(const SubsetMask& o) const {
        SubsetMask r;
        for (int i = 0; i < kWords; ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }
    SubsetMask operator|(const SubsetMask& o) const {
        SubsetMask r;
        for (int i = 0; i < kWords; ++i) r.w[i] = w[i] | o.w[i];
        return r;
    }
    SubsetMask operator~() const {
        SubsetMask r;
        for (int i = 0; i < kWords; ++i) r.w[i] = ~w[i];
        return r;
    }
    SubsetMask& operator|=(const SubsetMask& o) {
        for (int i = 0; i < kWords; ++i) w[i] |= o.w[i];
        return *this;
    }
    SubsetMask& operator&=(const SubsetMask& o) {
        for (int i = 0; i < kWords; ++i) w[i] &= o.w[i];
        return *this;
    }
    bool operator==(const SubsetMask& o) const { return w == o.w; }

    static SubsetMask all(int n) {
        SubsetMask r;
        for (int i = 0; i < n; ++i) r.set(i);
        return r;
    }

    template <typename F> void for_each(F&& f) const {
        for (int i = 0; i < kWords; ++i) {
            std::uint64_t x = w[i];
            while (x) {
                f(i * 64 + __builtin_ctzll(x));
                x &= x - 1;
            }
        }
    }
};

struct SubsetMaskHash {
    std::size_t operator()(const SubsetMask& m) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : m.w) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

} // namespace conenet
