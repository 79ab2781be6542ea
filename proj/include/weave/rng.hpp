// Deterministic random source. One 64-bit root seed; every component derives
// its own stream by splitting with a tag, so draw counts in one component can
// never perturb another. SplitMix64 core — platform-independent, unlike the
// distributions in <random>.
#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace weave {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
inline std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    std::uint64_t s = x;
    return splitmix64(s);
}
}  // namespace detail

class Rng {
public:
    Rng() : Rng(0) {}
    explicit Rng(std::uint64_t seed) : root_(seed), state_(seed) {}

    // Independent stream derived from the immutable root seed and a tag.
    Rng split(std::uint64_t tag) const { return Rng(detail::mix2(root_, tag)); }
    Rng split(std::uint64_t a, std::uint64_t b) const {
        return Rng(detail::mix2(detail::mix2(root_, a), b));
    }

    std::uint64_t root() const { return root_; }

    std::uint64_t next() { return detail::splitmix64(state_); }

    // Uniform in [0, bound), bound >= 1. Rejection-free Lemire reduction with
    // a correction loop for exact uniformity.
    std::uint64_t uniform(std::uint64_t bound) {
        assert(bound >= 1);
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        std::uint64_t lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int uniform_int(int lo, int hi) {  // inclusive range [lo, hi]
        assert(lo <= hi);
        return lo + static_cast<int>(uniform(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double real() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return real() < p; }

    // k distinct values from [0, n), in random order (partial Fisher-Yates).
    std::vector<int> sample_without_replacement(int n, int k) {
        assert(0 <= k && k <= n);
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(uniform(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            int j = static_cast<int>(uniform(static_cast<std::uint64_t>(i) + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t root_;
    std::uint64_t state_;
};

}  // namespace weave
