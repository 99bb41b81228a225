#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irclab/circle.hpp"
#include "irclab/word.hpp"

namespace irclab {

// T_p-invariant compact subset of the circle described by admissible base-p
// digit strings: either a digit whitelist (same allowed digits at every
// position) or a finite list of forbidden words (SFT style).
class DigitSet {
public:
    static DigitSet whitelist(int base, std::vector<int> allowed_digits);
    static DigitSet forbidden(int base, std::vector<std::string> forbidden_words);
    static DigitSet full(int base);

    int base() const { return base_; }
    bool is_full() const;
    std::string describe() const;

    // Number of admissible words of length m (transfer-matrix count).
    Int count_level(int m) const;

    // Sorted values e(w) over admissible words w of length m.
    std::vector<Int> enumerate_level(int m, uint64_t cap) const;

    // Union of closed arcs [e(w)/p^m, (e(w)+1)/p^m]; Hausdorff distance from
    // the underlying compact set at most p^-m.
    IntervalUnion cover(int m, uint64_t cap) const;

    // Shift-invariance certificate on finite levels: suffixes of admissible
    // words are admissible, and every admissible word has an admissible
    // one-digit left extension.
    bool shift_invariant(int depth = 8) const;

private:
    DigitSet() = default;
    bool admissible_extension(const std::vector<uint8_t>& suffix_window, uint8_t digit) const;

    int base_ = 3;
    std::vector<bool> allowed_;               // whitelist mode
    std::vector<std::vector<uint8_t>> forbidden_;  // forbidden-word mode
    bool whitelist_mode_ = true;
};

}  // namespace irclab
