// Fixed-universe vertex set over 64-bit words. Cardinality is cached and
// recomputed lazily after bulk mutation; the fused intersect+count kernels
// are the hot path of every common-neighborhood computation.
#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace weave {

class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe)
        : n_(universe), w_((universe + 63) / 64, 0), count_(0) {}

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (auto& w : s.w_) w = ~0ULL;
        s.trim();
        s.count_ = universe;
        return s;
    }

    int universe() const { return n_; }

    bool test(int i) const {
        assert(0 <= i && i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1ULL;
    }
    void set(int i) {
        assert(0 <= i && i < n_);
        std::uint64_t& w = w_[i >> 6];
        std::uint64_t bit = 1ULL << (i & 63);
        if (count_ >= 0 && !(w & bit)) ++count_;
        w |= bit;
    }
    void reset(int i) {
        assert(0 <= i && i < n_);
        std::uint64_t& w = w_[i >> 6];
        std::uint64_t bit = 1ULL << (i & 63);
        if (count_ >= 0 && (w & bit)) --count_;
        w &= ~bit;
    }

    int count() const {
        if (count_ < 0) {
            int c = 0;
            for (auto w : w_) c += std::popcount(w);
            count_ = c;
        }
        return count_;
    }
    bool empty() const { return count() == 0; }
    bool any() const { return !empty(); }

    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        count_ = -1;
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        count_ = -1;
        return *this;
    }
    // Set difference: remove o's members.
    VertexSet& operator-=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        count_ = -1;
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }

    // |this ∩ o| without allocating.
    int intersect_count(const VertexSet& o) const {
        assert(n_ == o.n_);
        int c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }
    bool intersects(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool is_subset_of(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // Lowest member, or -1 when empty.
    int first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return static_cast<int>(i * 64) + std::countr_zero(w_[i]);
        return -1;
    }
    // Lowest member > i, or -1.
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        std::size_t word = static_cast<std::size_t>(i) >> 6;
        std::uint64_t w = w_[word] >> (i & 63);
        if (w) return i + std::countr_zero(w);
        for (++word; word < w_.size(); ++word)
            if (w_[word]) return static_cast<int>(word * 64) + std::countr_zero(w_[word]);
        return -1;
    }

    template <typename F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(static_cast<int>(i * 64) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    // k-th smallest member (0-based); k must be < count().
    int kth(int k) const {
        assert(0 <= k && k < count());
        for (std::size_t i = 0; i < w_.size(); ++i) {
            int c = std::popcount(w_[i]);
            if (k < c) {
                std::uint64_t w = w_[i];
                while (k--) w &= w - 1;
                return static_cast<int>(i * 64) + std::countr_zero(w);
            }
            k -= c;
        }
        assert(false);
        return -1;
    }

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (1ULL << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
    mutable int count_ = 0;  // -1 = stale
};

}  // namespace weave
