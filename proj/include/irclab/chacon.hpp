#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irclab/level_set.hpp"

namespace irclab {
namespace chacon {

inline constexpr uint64_t kDefaultBlockCap = 10'000'000;

// |b_n| = (3^(n+1) - 1) / 2 without building the block.
Int block_length(int n);

// b_1 = 0010, b_{n+1} = b_n b_n 1 b_n. Cached; throws CapExceeded when the
// block would exceed `cap` symbols.
const std::string& block(int n, uint64_t cap = kDefaultBlockCap);

Word block_word(int n, uint64_t cap = kDefaultBlockCap);

// L = { |b_n| - 1 : 2 <= n <= n_max }, strictly increasing; empty for n_max < 2.
std::vector<int64_t> forbidden_distances(int n_max);

// Subword of b_N of length 2*radius+1 centered at j. The window must lie in
// [0, |b_N|); for out-of-range windows a range error asks the caller to
// raise N (right side) -- the left end is pinned at coordinate 0.
Word orbit_window(int64_t j, int radius, int N, uint64_t cap = kDefaultBlockCap);

// Level-m image of T^j W_c where W_c = { T^l x_C : l among the first l_count
// elements of L }: the (2m+1)-windows of b_N centered at j + l.
LevelSet shifted_y_level_set(int64_t j, int m, int l_count, int N,
                             uint64_t cap = kDefaultBlockCap);
inline LevelSet y_level_set(int m, int l_count, int N, uint64_t cap = kDefaultBlockCap) {
    return shifted_y_level_set(0, m, l_count, N, cap);
}

// All (2m+1)-words of the subshift, found by scanning blocks until the
// subword set stabilizes across two consecutive block levels.
LevelSet language_level_set(int m, uint64_t cap = kDefaultBlockCap);

struct ForbiddenHit {
    int64_t first = 0;
    int64_t second = 0;
    int64_t distance = 0;
    friend bool operator==(const ForbiddenHit&, const ForbiddenHit&) = default;
};

struct OccurrenceReport {
    Word pattern;
    std::vector<int64_t> starts;               // strictly increasing
    std::map<int64_t, uint64_t> gap_counts;    // successive-difference multiset
    std::vector<ForbiddenHit> forbidden_hits;  // pairs of starts at a listed distance
    bool pattern_longer_than_text = false;

    bool gaps_within(const std::vector<int64_t>& allowed) const;
};

// Naive scan; every index i with text[i..i+|pattern|) == pattern.
OccurrenceReport occurrences(const Word& text, const Word& pattern);
OccurrenceReport occurrences(const Word& text, const Word& pattern,
                             const std::vector<int64_t>& distances);

// Occurrence analysis of `pattern` inside b_N, with forbidden distances
// defaulting to L truncated to entries < |b_N|.
OccurrenceReport forbidden_distance_check(int N, const Word& pattern,
                                          std::optional<std::vector<int64_t>> distances = {},
                                          uint64_t cap = kDefaultBlockCap);

}  // namespace chacon
}  // namespace irclab
