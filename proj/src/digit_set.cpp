#include "irclab/digit_set.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace irclab {

DigitSet DigitSet::whitelist(int base, std::vector<int> allowed_digits) {
    if (base < 2) throw ValidationError("DigitSet: base must be >= 2");
    if (allowed_digits.empty()) throw ValidationError("DigitSet: empty digit whitelist");
    DigitSet d;
    d.base_ = base;
    d.whitelist_mode_ = true;
    d.allowed_.assign(static_cast<size_t>(base), false);
    for (int a : allowed_digits) {
        if (a < 0 || a >= base) throw ValidationError("DigitSet: digit out of range");
        d.allowed_[static_cast<size_t>(a)] = true;
    }
    return d;
}

DigitSet DigitSet::forbidden(int base, std::vector<std::string> forbidden_words) {
    if (base < 2) throw ValidationError("DigitSet: base must be >= 2");
    DigitSet d;
    d.base_ = base;
    d.whitelist_mode_ = false;
    for (const auto& s : forbidden_words) {
        if (s.empty()) throw ValidationError("DigitSet: empty forbidden word");
        const Word w = Word::parse(s, base);
        d.forbidden_.push_back(w.symbols());
    }
    size_t longest = 2;
    for (const auto& f : d.forbidden_) longest = std::max(longest, f.size());
    if (d.count_level(static_cast<int>(longest)) == 0)
        throw ValidationError("DigitSet: forbidden words leave no admissible word");
    return d;
}

DigitSet DigitSet::full(int base) {
    std::vector<int> all(static_cast<size_t>(base));
    for (int i = 0; i < base; ++i) all[static_cast<size_t>(i)] = i;
    return whitelist(base, all);
}

bool DigitSet::is_full() const {
    if (whitelist_mode_)
        return std::all_of(allowed_.begin(), allowed_.end(), [](bool b) { return b; });
    return forbidden_.empty();
}

std::string DigitSet::describe() const {
    std::string s = "base " + std::to_string(base_);
    if (whitelist_mode_) {
        s += " digits {";
        bool first = true;
        for (int d = 0; d < base_; ++d) {
            if (allowed_[static_cast<size_t>(d)]) {
                if (!first) s += ",";
                s += std::to_string(d);
                first = false;
            }
        }
        s += "}";
    } else {
        s += " forbidding {";
        for (size_t i = 0; i < forbidden_.size(); ++i) {
            if (i) s += ",";
            for (uint8_t c : forbidden_[i]) s += static_cast<char>('0' + c);
        }
        s += "}";
    }
    return s;
}

bool DigitSet::admissible_extension(const std::vector<uint8_t>& suffix_window,
                                    uint8_t digit) const {
    if (whitelist_mode_) return allowed_[digit];
    // suffix_window holds the most recent digits; appending `digit` must not
    // complete any forbidden word.
    for (const auto& f : forbidden_) {
        if (f.size() > suffix_window.size() + 1) continue;
        if (f.back() != digit) continue;
        bool match = true;
        for (size_t t = 0; t + 1 < f.size(); ++t) {
            if (suffix_window[suffix_window.size() - (f.size() - 1) + t] != f[t]) {
                match = false;
                break;
            }
        }
        if (match) return false;
    }
    return true;
}

Int DigitSet::count_level(int m) const {
    if (m < 0) throw ValidationError("count_level: negative level");
    if (m == 0) return 1;
    if (whitelist_mode_) {
        Int per = 0;
        for (bool b : allowed_) per += b ? 1 : 0;
        return pow_int(per, static_cast<unsigned>(m));
    }
    // Transfer count on suffix windows of length (longest forbidden word - 1).
    size_t window = 0;
    for (const auto& f : forbidden_) window = std::max(window, f.size());
    if (window > 0) --window;
    std::map<std::vector<uint8_t>, Int> states;
    states[{}] = 1;
    for (int step = 0; step < m; ++step) {
        std::map<std::vector<uint8_t>, Int> next;
        for (const auto& [suffix, cnt] : states) {
            for (int d = 0; d < base_; ++d) {
                if (!admissible_extension(suffix, static_cast<uint8_t>(d))) continue;
                std::vector<uint8_t> ns = suffix;
                ns.push_back(static_cast<uint8_t>(d));
                if (ns.size() > window) ns.erase(ns.begin(), ns.end() - static_cast<ptrdiff_t>(window));
                next[ns] += cnt;
            }
        }
        states = std::move(next);
    }
    Int total = 0;
    for (const auto& [suffix, cnt] : states) total += cnt;
    return total;
}

std::vector<Int> DigitSet::enumerate_level(int m, uint64_t cap) const {
    if (m < 1) throw ValidationError("enumerate_level: level must be >= 1");
    if (count_level(m) > cap)
        throw CapExceeded("DigitSet: admissible word count exceeds cap at level " + std::to_string(m));
    std::vector<Int> out;
    std::vector<uint8_t> stackw;
    std::function<void(const Int&)> dfs = [&](const Int& value) {
        if (stackw.size() == static_cast<size_t>(m)) {
            out.push_back(value);
            return;
        }
        for (int d = 0; d < base_; ++d) {
            if (!admissible_extension(stackw, static_cast<uint8_t>(d))) continue;
            stackw.push_back(static_cast<uint8_t>(d));
            dfs(value * base_ + d);
            stackw.pop_back();
        }
    };
    dfs(0);
    return out;  // DFS in digit order == increasing e(w)
}

IntervalUnion DigitSet::cover(int m, uint64_t cap) const {
    const auto es = enumerate_level(m, cap);
    const Int den = pow_int(base_, static_cast<unsigned>(m));
    std::vector<Arc> arcs;
    arcs.reserve(es.size());
    for (const Int& e : es) arcs.push_back(Arc{Rat(e, den), Rat(e + 1, den)});
    return IntervalUnion::from_arcs(std::move(arcs));
}

bool DigitSet::shift_invariant(int depth) const {
    for (int m = 2; m <= depth; ++m) {
        const auto words = enumerate_level(m, 1u << 22);
        std::set<Int> level_set(words.begin(), words.end());
        const auto prev = enumerate_level(m - 1, 1u << 22);
        std::set<Int> prev_set(prev.begin(), prev.end());
        const Int shift_den = pow_int(base_, static_cast<unsigned>(m - 1));
        for (const Int& e : words) {
            // Suffix of an admissible word stays admissible.
            if (!prev_set.count(e % shift_den)) return false;
        }
        for (const Int& e : prev) {
            // Every admissible word has an admissible one-digit left extension.
            bool extendable = false;
            for (int d = 0; d < base_ && !extendable; ++d)
                extendable = level_set.count(Int(d) * shift_den + e) > 0;
            if (!extendable) return false;
        }
    }
    return true;
}

}  // namespace irclab
