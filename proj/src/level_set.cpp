#include "irclab/level_set.hpp"

#include <algorithm>
#include <cmath>

namespace irclab {

double DyadicDistance::value() const { return zero ? 0.0 : std::ldexp(1.0, -exponent); }

std::string DyadicDistance::str() const {
    if (zero) return "0";
    if (exponent == 0) return "1";
    return "2^-" + std::to_string(exponent);
}

void LevelSet::validate() const {
    if (level < 1) throw ValidationError("LevelSet: level must be >= 1");
    if (cells.empty()) throw ValidationError("LevelSet: empty cell set (K(X) excludes the empty set)");
    for (const Word& w : cells) {
        if (w.base() != base || w.size() != word_length())
            throw ValidationError("LevelSet: cell label has wrong base or length");
    }
}

LevelSet make_level_set(int base, Sided sided, int level, const std::vector<std::string>& labels) {
    LevelSet ls{base, sided, level, {}};
    for (const auto& s : labels) ls.cells.insert(Word::parse(s, base));
    ls.validate();
    return ls;
}

LevelSet full_level_set(int base, Sided sided, int level, uint64_t cap) {
    LevelSet ls{base, sided, level, {}};
    const size_t len = ls.word_length();
    Int total = pow_int(base, static_cast<unsigned>(len));
    if (total > cap) throw CapExceeded("full_level_set: cell count exceeds cap");
    const uint64_t n = static_cast<uint64_t>(total);
    for (uint64_t rank = 0; rank < n; ++rank) ls.cells.insert(Word::from_rank(rank, len, base));
    return ls;
}

DyadicDistance cell_distance(const LevelSet& ctx, const Word& a, const Word& b) {
    if (a == b) return DyadicDistance::dist_zero();
    const size_t len = ctx.word_length();
    if (ctx.sided == Sided::one) {
        for (size_t i = 0; i < len; ++i) {
            if (a[i] != b[i]) return DyadicDistance::from_exponent(static_cast<int>(i) + 1);
        }
    } else {
        const int m = ctx.level;
        for (int s = 0; s <= m; ++s) {
            if (a[static_cast<size_t>(m + s)] != b[static_cast<size_t>(m + s)] ||
                a[static_cast<size_t>(m - s)] != b[static_cast<size_t>(m - s)])
                return DyadicDistance::from_exponent(s);
        }
    }
    throw ValidationError("cell_distance: distinct cells with equal labels");
}

DyadicDistance hausdorff_at_level(const LevelSet& a, const LevelSet& b) {
    if (a.base != b.base || a.sided != b.sided) throw ValidationError("hausdorff_at_level: space mismatch");
    if (a.level != b.level) throw ValidationError("hausdorff_at_level: level mismatch");
    a.validate();
    b.validate();
    auto one_side = [&](const LevelSet& from, const LevelSet& to) {
        DyadicDistance sup = DyadicDistance::dist_zero();
        for (const Word& u : from.cells) {
            if (to.cells.count(u)) continue;  // distance 0 to its own cell
            DyadicDistance best{false, -1};
            bool first = true;
            for (const Word& v : to.cells) {
                DyadicDistance d = cell_distance(from, u, v);
                if (first || d < best) {
                    best = d;
                    first = false;
                }
                if (best.zero) break;
            }
            if (sup < best) sup = best;
        }
        return sup;
    };
    DyadicDistance d1 = one_side(a, b), d2 = one_side(b, a);
    return d1 < d2 ? d2 : d1;
}

LevelSet project(const LevelSet& a) {
    a.validate();
    if (a.level < 2) throw ValidationError("project: level-1 set has no parent level");
    LevelSet out{a.base, a.sided, a.level - 1, {}};
    for (const Word& w : a.cells) {
        if (a.sided == Sided::one)
            out.cells.insert(w.prefix(w.size() - 1));
        else
            out.cells.insert(w.sub(1, w.size() - 2));
    }
    return out;
}

LevelSet project_to(const LevelSet& a, int level) {
    if (level < 1 || level > a.level) throw ValidationError("project_to: bad target level");
    LevelSet out = a;
    while (out.level > level) out = project(out);
    return out;
}

LevelSet refine(const LevelSet& a, int level, uint64_t cap) {
    a.validate();
    if (level < a.level) throw ValidationError("refine: target level is coarser");
    if (level == a.level) return a;
    const int extra = a.sided == Sided::one ? level - a.level : 2 * (level - a.level);
    Int ext = pow_int(a.base, static_cast<unsigned>(extra));
    if (Int(a.cells.size()) * ext > cap) throw CapExceeded("refine: cell count exceeds cap");
    const uint64_t n_ext = static_cast<uint64_t>(ext);
    const size_t half = static_cast<size_t>(a.sided == Sided::one ? 0 : level - a.level);
    LevelSet out{a.base, a.sided, level, {}};
    for (const Word& w : a.cells) {
        for (uint64_t rank = 0; rank < n_ext; ++rank) {
            Word e = Word::from_rank(rank, static_cast<size_t>(extra), a.base);
            if (a.sided == Sided::one) {
                out.cells.insert(w.concat(e));
            } else {
                Word left = e.prefix(half);
                Word right = e.suffix_from(half);
                out.cells.insert(left.concat(w).concat(right));
            }
        }
    }
    return out;
}

FiniteDistance dist_to_finite(const LevelSet& a, uint64_t r) {
    a.validate();
    if (r == 0) throw ValidationError("dist_to_finite: r must be >= 1");
    if (a.cells.size() <= r) {
        return FiniteDistance{DyadicDistance::from_exponent(a.level + 1), false, a.level};
    }
    // Scan projections downward; counts are nonincreasing.
    LevelSet cur = a;
    int mstar;
    if (a.sided == Sided::one) {
        mstar = 0;  // the level-0 projection is the single root cell
        while (cur.level >= 2) {
            LevelSet p = project(cur);
            if (p.cells.size() <= r) {
                mstar = p.level;
                break;
            }
            cur = std::move(p);
        }
    } else {
        mstar = -1;  // two-sided distances can reach 2^0 = 1
        std::set<uint8_t> centers;
        for (const Word& w : a.cells) centers.insert(w[static_cast<size_t>(a.level)]);
        while (cur.level >= 2) {
            LevelSet p = project(cur);
            if (p.cells.size() <= r) {
                mstar = p.level;
                break;
            }
            cur = std::move(p);
        }
        if (mstar == -1 && centers.size() <= r) mstar = 0;
    }
    return FiniteDistance{DyadicDistance::from_exponent(mstar + 1), true, mstar};
}

}  // namespace irclab
