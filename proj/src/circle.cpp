#include "irclab/circle.hpp"

#include <algorithm>

namespace irclab {

Rat mod1(const Rat& x) {
    const Int num = numerator(x), den = denominator(x);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;  // floor division
    return x - q;
}

Rat circle_distance_to_zero(const Rat& x) {
    const Rat f = mod1(x);
    const Rat g = 1 - f;
    return f < g ? f : g;
}

IntervalUnion IntervalUnion::full_circle() {
    IntervalUnion u;
    u.arcs_ = {Arc{Rat(0), Rat(1)}};
    return u;
}

IntervalUnion IntervalUnion::from_arcs(std::vector<Arc> raw) {
    std::vector<Arc> flat;
    flat.reserve(raw.size() + 4);
    for (Arc& a : raw) {
        Rat len = a.hi - a.lo;
        if (len < 0) throw ValidationError("IntervalUnion: arc with negative length");
        if (len >= 1) return full_circle();
        Rat lo = mod1(a.lo);
        Rat hi = lo + len;
        if (hi > 1) {
            flat.push_back(Arc{lo, Rat(1)});
            flat.push_back(Arc{Rat(0), hi - 1});
        } else {
            flat.push_back(Arc{lo, hi});
        }
    }
    if (flat.empty()) throw ValidationError("IntervalUnion: empty union");
    std::sort(flat.begin(), flat.end(),
              [](const Arc& x, const Arc& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });
    IntervalUnion u;
    for (const Arc& a : flat) {
        if (!u.arcs_.empty() && a.lo <= u.arcs_.back().hi) {
            if (a.hi > u.arcs_.back().hi) u.arcs_.back().hi = a.hi;
        } else {
            u.arcs_.push_back(a);
        }
    }
    // Circular closure: arcs touching through 0 == 1 stay separate in the
    // list; gap queries treat the wrap correctly. A union covering [0,1]
    // collapses to the full circle.
    if (u.arcs_.size() == 1 && u.arcs_.front().lo == 0 && u.arcs_.front().hi == 1) {
        return full_circle();
    }
    return u;
}

IntervalUnion IntervalUnion::from_points(const std::vector<Rat>& points) {
    std::vector<Arc> arcs;
    arcs.reserve(points.size());
    for (const Rat& p : points) {
        const Rat q = mod1(p);
        arcs.push_back(Arc{q, q});
    }
    return from_arcs(std::move(arcs));
}

bool IntervalUnion::is_full() const {
    return arcs_.size() == 1 && arcs_.front().lo == 0 && arcs_.front().hi == 1;
}

Rat IntervalUnion::total_length() const {
    Rat sum = 0;
    for (const Arc& a : arcs_) sum += a.length();
    // The representation splits wrap arcs, so lengths never double count.
    return sum;
}

bool IntervalUnion::contains(const Rat& x) const {
    const Rat q = mod1(x);
    for (const Arc& a : arcs_) {
        if (a.lo <= q && q <= a.hi) return true;
        // q == 0 also matches an arc ending at 1.
        if (q == 0 && a.hi == 1) return true;
    }
    return false;
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
    for (const Arc& a : arcs_) {
        bool covered = false;
        for (const Arc& b : other.arcs_) {
            if (b.lo <= a.lo && a.hi <= b.hi) {
                covered = true;
                break;
            }
        }
        // An arc through the wrap of `other` is split there, so direct
        // containment in one piece is the only case left.
        if (!covered) return false;
    }
    return true;
}

Rat IntervalUnion::max_gap() const {
    if (arcs_.empty()) throw ValidationError("max_gap: empty union");
    if (is_full()) return Rat(0);
    Rat gap = 0;
    for (size_t i = 0; i + 1 < arcs_.size(); ++i) {
        const Rat hole = arcs_[i + 1].lo - arcs_[i].hi;
        if (hole > gap) gap = hole;
    }
    const Rat wrap = arcs_.front().lo + 1 - arcs_.back().hi;
    if (wrap > gap) gap = wrap;
    return gap;
}

IntervalUnion IntervalUnion::dilate(const Int& n) const {
    if (n < 1) throw ValidationError("dilate: n must be >= 1");
    if (arcs_.empty()) throw ValidationError("dilate: empty union");
    if (is_full()) return full_circle();
    std::vector<Arc> out;
    out.reserve(arcs_.size());
    for (const Arc& a : arcs_) {
        const Rat len = Rat(n) * a.length();
        if (len >= 1) return full_circle();
        const Rat lo = mod1(Rat(n) * a.lo);
        out.push_back(Arc{lo, lo + len});
    }
    return from_arcs(std::move(out));
}

std::vector<std::string> IntervalUnion::endpoint_strings() const {
    std::vector<std::string> out;
    out.reserve(arcs_.size());
    for (const Arc& a : arcs_) out.push_back("[" + rat_to_string(a.lo) + "," + rat_to_string(a.hi) + "]");
    return out;
}

DensityCheck eps_dense(const IntervalUnion& u, const Rat& eps) {
    if (eps <= 0) throw ValidationError("eps_dense: eps must be positive");
    DensityCheck res;
    res.max_gap = u.max_gap();
    res.dense = res.max_gap < 2 * eps;
    return res;
}

}  // namespace irclab
