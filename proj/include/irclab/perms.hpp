#pragma once

#include <cstdint>
#include <vector>

#include "irclab/level_set.hpp"

namespace irclab {

inline constexpr uint64_t kWordTableCap = 1'000'000;

enum class PermMode { prefix, block_code };

// Element of Sym(n^k) acting on one-sided points by permuting the length-k
// prefix, or of Sym(n^(2k+1)) acting on two-sided points by permuting the
// aligned (2k+1)-blocks.
struct BlockPermutation {
    int n = 2;
    int k = 1;
    PermMode mode = PermMode::prefix;
    std::vector<uint32_t> perm;  // image by lexicographic word rank

    size_t word_length() const {
        return mode == PermMode::prefix ? static_cast<size_t>(k)
                                        : static_cast<size_t>(2 * k + 1);
    }
    void validate() const;
    BlockPermutation inverse() const;
};

BlockPermutation identity_permutation(int n, int k, PermMode mode,
                                      uint64_t cap = kWordTableCap);
BlockPermutation permutation_from_images(int n, int k, PermMode mode,
                                         std::vector<uint32_t> images);

// Uniform element of the relevant symmetric group via a seeded unbiased
// shuffle; identical output for identical seeds.
BlockPermutation random_symmetric_element(int n, int k, PermMode mode, uint64_t seed,
                                          uint64_t cap = kWordTableCap);

// Image level set. Prefix mode needs A.level >= k; block-code mode needs the
// window length 2*A.level+1 to be a multiple of 2k+1 (grid aligned at 0).
LevelSet apply_permutation(const BlockPermutation& g, const LevelSet& a);

enum class TransitivityMode { set, tuple };

// BFS over the action of <generators> on r-subsets (set mode) or ordered
// r-tuples of distinct cells (tuple mode) of {0..kappa-1}; true iff the
// action is transitive there. Generators are permutations of level cells.
bool transitivity_check(uint32_t kappa, const std::vector<std::vector<uint32_t>>& generators,
                        uint32_t r, TransitivityMode mode, uint64_t cap = 10'000'000);

// Generator helpers for the standard checks.
std::vector<uint32_t> transposition(uint32_t kappa, uint32_t a, uint32_t b);
std::vector<uint32_t> full_cycle(uint32_t kappa);
std::vector<std::vector<uint32_t>> symmetric_generators(uint32_t kappa);
std::vector<std::vector<uint32_t>> alternating_generators(uint32_t kappa);

}  // namespace irclab
