#include "irclab/word.hpp"

namespace irclab {

Word::Word(std::vector<uint8_t> symbols, int base) : symbols_(std::move(symbols)), base_(base) {
    if (base < 2 || base > 10) throw ValidationError("Word: base must be in [2, 10]");
    for (uint8_t s : symbols_) {
        if (s >= base) throw ValidationError("Word: symbol out of alphabet");
    }
}

Word Word::parse(std::string_view digits, int base) {
    std::vector<uint8_t> syms;
    syms.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw ValidationError("Word::parse: non-digit character");
        syms.push_back(static_cast<uint8_t>(c - '0'));
    }
    return Word(std::move(syms), base);
}

Word Word::from_rank(uint64_t rank, size_t len, int base) {
    std::vector<uint8_t> syms(len, 0);
    for (size_t i = len; i-- > 0;) {
        syms[i] = static_cast<uint8_t>(rank % static_cast<uint64_t>(base));
        rank /= static_cast<uint64_t>(base);
    }
    if (rank != 0) throw ValidationError("Word::from_rank: rank out of range");
    return Word(std::move(syms), base);
}

Word Word::sub(size_t pos, size_t len) const {
    if (pos + len > symbols_.size()) throw ValidationError("Word::sub: out of range");
    return Word(std::vector<uint8_t>(symbols_.begin() + static_cast<ptrdiff_t>(pos),
                                     symbols_.begin() + static_cast<ptrdiff_t>(pos + len)),
                base_);
}

Word Word::concat(const Word& other) const {
    if (other.base_ != base_) throw ValidationError("Word::concat: base mismatch");
    std::vector<uint8_t> syms = symbols_;
    syms.insert(syms.end(), other.symbols_.begin(), other.symbols_.end());
    return Word(std::move(syms), base_);
}

uint64_t Word::rank() const {
    uint64_t r = 0;
    for (uint8_t s : symbols_) {
        if (r > (~uint64_t{0} >> 1) / static_cast<uint64_t>(base_))
            throw CapExceeded("Word::rank: word table too large");
        r = r * static_cast<uint64_t>(base_) + s;
    }
    return r;
}

std::string Word::str() const {
    std::string s;
    s.reserve(symbols_.size());
    for (uint8_t d : symbols_) s.push_back(static_cast<char>('0' + d));
    return s;
}

}  // namespace irclab
