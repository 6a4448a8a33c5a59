#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace omega {

/// Dynamic set of small non-negative integers (states or transition ids).
///
/// Stored as packed 64-bit words with no trailing zero words, so two sets
/// compare equal iff they hold the same members regardless of the universe
/// they were built for.
class Bitset {
public:
    Bitset() = default;
    Bitset(std::initializer_list<int> items) {
        for (int i : items) insert(i);
    }

    static Bitset full(int n) {
        Bitset b;
        for (int i = 0; i < n; ++i) b.insert(i);
        return b;
    }

    void insert(int i) {
        auto w = static_cast<std::size_t>(i) >> 6;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (i & 63);
    }

    void erase(int i) {
        auto w = static_cast<std::size_t>(i) >> 6;
        if (w >= words_.size()) return;
        words_[w] &= ~(std::uint64_t{1} << (i & 63));
        trim();
    }

    [[nodiscard]] bool contains(int i) const {
        auto w = static_cast<std::size_t>(i) >> 6;
        return w < words_.size() && ((words_[w] >> (i & 63)) & 1U);
    }

    [[nodiscard]] bool empty() const { return words_.empty(); }

    [[nodiscard]] int size() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    [[nodiscard]] bool is_subset_of(const Bitset& other) const {
        if (words_.size() > other.words_.size()) return false;
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~other.words_[i]) != 0) return false;
        return true;
    }

    [[nodiscard]] bool intersects(const Bitset& other) const {
        auto n = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if ((words_[i] & other.words_[i]) != 0) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& other) {
        if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
        for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& other) {
        if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        trim();
        return *this;
    }

    Bitset& operator-=(const Bitset& other) {
        auto n = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
        trim();
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    friend bool operator==(const Bitset&, const Bitset&) = default;

    /// Canonical order: smaller cardinality first, then lexicographic by
    /// ascending member list.
    friend bool operator<(const Bitset& a, const Bitset& b) {
        int sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.members() < b.members();
    }

    /// Members in ascending order.
    [[nodiscard]] std::vector<int> members() const {
        std::vector<int> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                int b = std::countr_zero(bits);
                out.push_back(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Smallest member, or -1 when empty.
    [[nodiscard]] int first() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0) return static_cast<int>(w * 64) + std::countr_zero(words_[w]);
        return -1;
    }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    void trim() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace omega
