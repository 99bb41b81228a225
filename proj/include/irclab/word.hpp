#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "irclab/numeric.hpp"

namespace irclab {

// Finite word over the alphabet {0, ..., base-1}. Words serialize as plain
// digit strings, so base is limited to 10.
class Word {
public:
    Word() = default;
    Word(std::vector<uint8_t> symbols, int base);

    static Word parse(std::string_view digits, int base);
    // Word of length `len` whose digits are `rank` written in the given base.
    static Word from_rank(uint64_t rank, size_t len, int base);

    size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    int base() const { return base_; }
    uint8_t operator[](size_t i) const { return symbols_[i]; }
    const std::vector<uint8_t>& symbols() const { return symbols_; }

    Word sub(size_t pos, size_t len) const;
    Word prefix(size_t len) const { return sub(0, len); }
    Word suffix_from(size_t pos) const { return sub(pos, size() - pos); }
    Word concat(const Word& other) const;

    // Lexicographic rank among words of the same length; requires base^size <= 2^63.
    uint64_t rank() const;

    std::string str() const;

    friend bool operator==(const Word& a, const Word& b) {
        return a.base_ == b.base_ && a.symbols_ == b.symbols_;
    }
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.symbols_.size() <=> b.symbols_.size(); c != 0) return c;
        if (auto c = a.symbols_ <=> b.symbols_; c != 0) return c;
        return a.base_ <=> b.base_;
    }

private:
    std::vector<uint8_t> symbols_;
    int base_ = 2;
};

}  // namespace irclab
