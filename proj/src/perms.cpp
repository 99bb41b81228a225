#include "irclab/perms.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "irclab/rng.hpp"

namespace irclab {

namespace {
uint64_t table_size_checked(int n, int k, PermMode mode, uint64_t cap) {
    if (n < 2 || k < 1) throw ValidationError("BlockPermutation: need n >= 2, k >= 1");
    const unsigned len = mode == PermMode::prefix ? static_cast<unsigned>(k)
                                                  : static_cast<unsigned>(2 * k + 1);
    const Int size = pow_int(n, len);
    if (size > cap) throw CapExceeded("BlockPermutation: word table exceeds cap");
    return static_cast<uint64_t>(size);
}
}  // namespace

void BlockPermutation::validate() const {
    std::vector<bool> seen(perm.size(), false);
    for (uint32_t v : perm) {
        if (v >= perm.size() || seen[v]) throw ValidationError("BlockPermutation: not a bijection");
        seen[v] = true;
    }
}

BlockPermutation BlockPermutation::inverse() const {
    BlockPermutation inv{n, k, mode, std::vector<uint32_t>(perm.size())};
    for (uint32_t i = 0; i < perm.size(); ++i) inv.perm[perm[i]] = i;
    return inv;
}

BlockPermutation identity_permutation(int n, int k, PermMode mode, uint64_t cap) {
    const uint64_t size = table_size_checked(n, k, mode, cap);
    BlockPermutation g{n, k, mode, std::vector<uint32_t>(size)};
    for (uint64_t i = 0; i < size; ++i) g.perm[i] = static_cast<uint32_t>(i);
    return g;
}

BlockPermutation permutation_from_images(int n, int k, PermMode mode,
                                         std::vector<uint32_t> images) {
    const uint64_t size = table_size_checked(n, k, mode, kWordTableCap);
    if (images.size() != size) throw ValidationError("BlockPermutation: image table has wrong size");
    BlockPermutation g{n, k, mode, std::move(images)};
    g.validate();
    return g;
}

BlockPermutation random_symmetric_element(int n, int k, PermMode mode, uint64_t seed,
                                          uint64_t cap) {
    BlockPermutation g = identity_permutation(n, k, mode, cap);
    Rng rng(seed);
    rng.shuffle(g.perm);
    return g;
}

LevelSet apply_permutation(const BlockPermutation& g, const LevelSet& a) {
    a.validate();
    if (a.base != g.n) throw ValidationError("apply_permutation: alphabet mismatch");
    const size_t block_len = g.word_length();
    LevelSet out{a.base, a.sided, a.level, {}};
    if (g.mode == PermMode::prefix) {
        if (a.sided != Sided::one)
            throw ValidationError("apply_permutation: prefix mode acts on one-sided sets");
        if (static_cast<size_t>(a.level) < block_len)
            throw ValidationError("apply_permutation: level below the prefix length");
        for (const Word& w : a.cells) {
            const Word pre = w.prefix(block_len);
            const Word img = Word::from_rank(g.perm[pre.rank()], block_len, g.n);
            out.cells.insert(img.concat(w.suffix_from(block_len)));
        }
    } else {
        if (a.sided != Sided::two)
            throw ValidationError("apply_permutation: block-code mode acts on two-sided sets");
        const size_t window = a.word_length();
        if (window % block_len != 0)
            throw ValidationError("apply_permutation: window is not a whole number of blocks");
        for (const Word& w : a.cells) {
            Word img(std::vector<uint8_t>{}, g.n);
            for (size_t pos = 0; pos < window; pos += block_len) {
                const Word blk = w.sub(pos, block_len);
                img = img.concat(Word::from_rank(g.perm[blk.rank()], block_len, g.n));
            }
            out.cells.insert(img);
        }
    }
    return out;
}

namespace {

std::string encode_state(const std::vector<uint32_t>& state) {
    std::string s;
    s.reserve(state.size() * 4);
    for (uint32_t v : state) {
        for (int b = 0; b < 4; ++b) s.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    }
    return s;
}

}  // namespace

bool transitivity_check(uint32_t kappa, const std::vector<std::vector<uint32_t>>& generators,
                        uint32_t r, TransitivityMode mode, uint64_t cap) {
    if (r < 1 || r > kappa) throw ValidationError("transitivity_check: need 1 <= r <= kappa");
    for (const auto& g : generators) {
        if (g.size() != kappa) throw ValidationError("transitivity_check: generator size mismatch");
    }
    const Int total = mode == TransitivityMode::set ? binomial(Int(kappa), Int(r))
                                                    : falling_factorial(Int(kappa), Int(r));
    if (total > cap) throw CapExceeded("transitivity_check: orbit space exceeds cap");

    std::vector<uint32_t> start(r);
    for (uint32_t t = 0; t < r; ++t) start[t] = t;

    std::unordered_set<std::string> seen;
    std::deque<std::vector<uint32_t>> queue;
    seen.insert(encode_state(start));
    queue.push_back(start);
    while (!queue.empty()) {
        const std::vector<uint32_t> cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            std::vector<uint32_t> img(r);
            for (uint32_t t = 0; t < r; ++t) img[t] = g[cur[t]];
            if (mode == TransitivityMode::set) std::sort(img.begin(), img.end());
            if (seen.insert(encode_state(img)).second) queue.push_back(std::move(img));
        }
    }
    return Int(seen.size()) == total;
}

std::vector<uint32_t> transposition(uint32_t kappa, uint32_t a, uint32_t b) {
    if (a >= kappa || b >= kappa) throw ValidationError("transposition: index out of range");
    std::vector<uint32_t> g(kappa);
    for (uint32_t i = 0; i < kappa; ++i) g[i] = i;
    std::swap(g[a], g[b]);
    return g;
}

std::vector<uint32_t> full_cycle(uint32_t kappa) {
    std::vector<uint32_t> g(kappa);
    for (uint32_t i = 0; i < kappa; ++i) g[i] = (i + 1) % kappa;
    return g;
}

std::vector<std::vector<uint32_t>> symmetric_generators(uint32_t kappa) {
    if (kappa < 2) throw ValidationError("symmetric_generators: kappa must be >= 2");
    return {transposition(kappa, 0, 1), full_cycle(kappa)};
}

std::vector<std::vector<uint32_t>> alternating_generators(uint32_t kappa) {
    if (kappa < 3) throw ValidationError("alternating_generators: kappa must be >= 3");
    // 3-cycle (0 1 2) together with an even long cycle: (0 1 ... kappa-1) for
    // odd kappa, (1 2 ... kappa-1) fixing 0 for even kappa.
    std::vector<uint32_t> c3(kappa);
    for (uint32_t i = 0; i < kappa; ++i) c3[i] = i;
    c3[0] = 1;
    c3[1] = 2;
    c3[2] = 0;
    std::vector<uint32_t> cyc(kappa);
    if (kappa % 2 == 1) {
        for (uint32_t i = 0; i < kappa; ++i) cyc[i] = (i + 1) % kappa;
    } else {
        cyc[0] = 0;
        for (uint32_t i = 1; i < kappa; ++i) cyc[i] = i % (kappa - 1) + 1;
    }
    return {c3, cyc};
}

}  // namespace irclab
