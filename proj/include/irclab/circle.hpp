#pragma once

#include <string>
#include <vector>

#include "irclab/numeric.hpp"

namespace irclab {

// x mod 1 as an exact rational in [0, 1).
Rat mod1(const Rat& x);

// Circle distance to 0: min(frac(x), 1 - frac(x)).
Rat circle_distance_to_zero(const Rat& x);

// Closed arc [lo, hi] with 0 <= lo <= hi <= 1; degenerate arcs are points.
struct Arc {
    Rat lo, hi;
    Rat length() const { return hi - lo; }
    friend bool operator==(const Arc&, const Arc&) = default;
};

// Finite union of closed arcs on the circle, kept sorted, disjoint and
// merged (touching arcs are joined; [0,1] is the full circle).
class IntervalUnion {
public:
    IntervalUnion() = default;

    static IntervalUnion full_circle();
    // Arcs are reduced mod 1 (an arc of length >= 1 covers the circle) and
    // may wrap; the result is normalized.
    static IntervalUnion from_arcs(std::vector<Arc> raw);
    static IntervalUnion from_points(const std::vector<Rat>& points);

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    bool is_full() const;
    size_t size() const { return arcs_.size(); }

    Rat total_length() const;
    bool contains(const Rat& x) const;
    bool subset_of(const IntervalUnion& other) const;

    // Largest circular gap between consecutive arcs (0 for the full circle).
    Rat max_gap() const;

    // Exact image {n x mod 1 : x in U}, merged.
    IntervalUnion dilate(const Int& n) const;

    std::vector<std::string> endpoint_strings() const;

private:
    std::vector<Arc> arcs_;
};

struct DensityCheck {
    bool dense = false;  // every circle point strictly within eps of the set
    Rat max_gap;
};

// eps-density: max gap < 2*eps (strict).
DensityCheck eps_dense(const IntervalUnion& u, const Rat& eps);

}  // namespace irclab
