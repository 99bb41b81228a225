#include "irclab/chacon.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace irclab {
namespace chacon {

Int block_length(int n) {
    if (n < 1) throw ValidationError("chacon: block index must be >= 1");
    return (pow_int(3, static_cast<unsigned>(n + 1)) - 1) / 2;
}

const std::string& block(int n, uint64_t cap) {
    if (n < 1) throw ValidationError("chacon: block index must be >= 1");
    if (block_length(n) > cap) throw CapExceeded("chacon: block length exceeds cap");
    static std::mutex mu;
    static std::vector<std::string> cache{"0010"};  // cache[i] = b_{i+1}
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() < static_cast<size_t>(n)) {
        const std::string& prev = cache.back();
        std::string next;
        next.reserve(prev.size() * 3 + 1);
        next += prev;
        next += prev;
        next += '1';
        next += prev;
        cache.push_back(std::move(next));
    }
    return cache[static_cast<size_t>(n - 1)];
}

Word block_word(int n, uint64_t cap) { return Word::parse(block(n, cap), 2); }

std::vector<int64_t> forbidden_distances(int n_max) {
    std::vector<int64_t> out;
    for (int n = 2; n <= n_max; ++n) out.push_back(static_cast<int64_t>(block_length(n)) - 1);
    return out;
}

Word orbit_window(int64_t j, int radius, int N, uint64_t cap) {
    if (radius < 0) throw ValidationError("orbit_window: radius must be >= 0");
    const std::string& b = block(N, cap);
    const int64_t lo = j - radius, hi = j + radius;
    if (lo < 0 || hi >= static_cast<int64_t>(b.size()))
        throw ValidationError("orbit_window: window out of range (raise N, or move the center right)");
    return Word::parse(std::string_view(b).substr(static_cast<size_t>(lo),
                                                  static_cast<size_t>(2 * radius + 1)),
                       2);
}

LevelSet shifted_y_level_set(int64_t j, int m, int l_count, int N, uint64_t cap) {
    if (l_count < 1) throw ValidationError("y_level_set: empty truncation is not a LevelSet");
    if (m < 1) throw ValidationError("y_level_set: level must be >= 1");
    const auto L = forbidden_distances(l_count + 1);
    LevelSet ls{2, Sided::two, m, {}};
    for (int64_t l : L) ls.cells.insert(orbit_window(j + l, m, N, cap));
    return ls;
}

LevelSet language_level_set(int m, uint64_t cap) {
    if (m < 1) throw ValidationError("language_level_set: level must be >= 1");
    const size_t len = static_cast<size_t>(2 * m + 1);
    std::set<std::string> words, prev;
    for (int N = 1;; ++N) {
        if (block_length(N) > cap)
            throw CapExceeded("language_level_set: window length needs blocks beyond the cap");
        const std::string& b = block(N, cap);
        if (b.size() < len) continue;
        prev = words;
        for (size_t i = 0; i + len <= b.size(); ++i) words.insert(b.substr(i, len));
        if (!prev.empty() && prev == words) break;  // stabilized across two block levels
    }
    LevelSet ls{2, Sided::two, m, {}};
    for (const auto& w : words) ls.cells.insert(Word::parse(w, 2));
    return ls;
}

bool OccurrenceReport::gaps_within(const std::vector<int64_t>& allowed) const {
    for (const auto& [gap, cnt] : gap_counts) {
        if (std::find(allowed.begin(), allowed.end(), gap) == allowed.end()) return false;
    }
    return true;
}

OccurrenceReport occurrences(const Word& text, const Word& pattern) {
    return occurrences(text, pattern, {});
}

OccurrenceReport occurrences(const Word& text, const Word& pattern,
                             const std::vector<int64_t>& distances) {
    OccurrenceReport rep;
    rep.pattern = pattern;
    if (pattern.empty()) throw ValidationError("occurrences: empty pattern");
    if (pattern.size() > text.size()) {
        rep.pattern_longer_than_text = true;
        return rep;
    }
    const auto& t = text.symbols();
    const auto& p = pattern.symbols();
    for (size_t i = 0; i + p.size() <= t.size(); ++i) {
        if (std::equal(p.begin(), p.end(), t.begin() + static_cast<ptrdiff_t>(i)))
            rep.starts.push_back(static_cast<int64_t>(i));
    }
    for (size_t i = 0; i + 1 < rep.starts.size(); ++i)
        ++rep.gap_counts[rep.starts[i + 1] - rep.starts[i]];
    if (!distances.empty()) {
        for (int64_t s : rep.starts) {
            for (int64_t d : distances) {
                if (std::binary_search(rep.starts.begin(), rep.starts.end(), s + d))
                    rep.forbidden_hits.push_back({s, s + d, d});
            }
        }
    }
    return rep;
}

OccurrenceReport forbidden_distance_check(int N, const Word& pattern,
                                          std::optional<std::vector<int64_t>> distances,
                                          uint64_t cap) {
    const Word text = block_word(N, cap);
    std::vector<int64_t> dists;
    if (distances) {
        dists = *distances;
    } else {
        for (int64_t l : forbidden_distances(N)) {
            if (l < static_cast<int64_t>(text.size())) dists.push_back(l);
        }
    }
    return occurrences(text, pattern, dists);
}

}  // namespace chacon
}  // namespace irclab
