#pragma once

// Word-packed bit-vector used for set windows and the shift-and translate
// scan.  Index 0 is the least significant bit of word 0.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace felab {

class BitVec {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVec() = default;

    explicit BitVec(std::size_t n, bool fill = false)
        : words_((n + word_bits - 1) / word_bits, fill ? ~word_type{0} : 0), size_(n) {
        trim();
    }

    // Characters '0'/'1', position 0 first.
    static BitVec from_string(std::string_view s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                v.set(i, true);
            else if (s[i] != '0')
                throw std::invalid_argument("BitVec::from_string: expected '0' or '1'");
        }
        return v;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool get(std::size_t i) const {
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }

    void set(std::size_t i, bool v) {
        word_type& w = words_[i / word_bits];
        word_type m = word_type{1} << (i % word_bits);
        if (v)
            w |= m;
        else
            w &= ~m;
    }

    // [lo, hi) := 1, clamped to size; whole words are filled at once.
    void set_range(std::size_t lo, std::size_t hi) {
        hi = std::min(hi, size_);
        if (lo >= hi) return;
        std::size_t wl = lo / word_bits, wh = (hi - 1) / word_bits;
        word_type ml = ~word_type{0} << (lo % word_bits);
        word_type mh = ~word_type{0} >> (word_bits - 1 - (hi - 1) % word_bits);
        if (wl == wh) {
            words_[wl] |= ml & mh;
            return;
        }
        words_[wl] |= ml;
        for (std::size_t i = wl + 1; i < wh; ++i) words_[i] = ~word_type{0};
        words_[wh] |= mh;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (word_type w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // Number of set bits with index < n.
    std::size_t count_below(std::size_t n) const {
        n = std::min(n, size_);
        std::size_t c = 0, full = n / word_bits;
        for (std::size_t i = 0; i < full; ++i) c += static_cast<std::size_t>(std::popcount(words_[i]));
        std::size_t rem = n % word_bits;
        if (rem) c += static_cast<std::size_t>(std::popcount(words_[full] & ((word_type{1} << rem) - 1)));
        return c;
    }

    std::size_t count_range(std::size_t lo, std::size_t hi) const {
        if (hi <= lo) return 0;
        return count_below(hi) - count_below(lo);
    }

    bool any() const {
        for (word_type w : words_)
            if (w) return true;
        return false;
    }

    bool all() const { return count() == size_; }

    // In place: this &= (other >> k), where >> moves bits toward index 0.
    // Bits of `other` beyond its size read as 0.  Core of the translate scan.
    void and_shifted(const BitVec& other, std::size_t k) {
        std::size_t wk = k / word_bits, bk = k % word_bits;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            word_type lo = (i + wk < other.words_.size()) ? other.words_[i + wk] : 0;
            word_type hi = (i + wk + 1 < other.words_.size()) ? other.words_[i + wk + 1] : 0;
            word_type v = bk ? ((lo >> bk) | (hi << (word_bits - bk))) : lo;
            words_[i] &= v;
        }
        trim();
    }

    std::vector<std::size_t> set_positions() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            word_type w = words_[i];
            while (w) {
                out.push_back(i * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    void trim() {
        std::size_t rem = size_ % word_bits;
        if (rem && !words_.empty()) words_.back() &= (word_type{1} << rem) - 1;
    }

    std::vector<word_type> words_;
    std::size_t size_ = 0;
};

}  // namespace felab
