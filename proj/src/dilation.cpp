#include "irclab/dilation.hpp"

#include <algorithm>
#include <map>

#include "irclab/parallel.hpp"

namespace irclab {

std::vector<Int> first_primes(int count) {
    std::vector<Int> primes;
    for (int candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
        bool is_prime = true;
        for (int d = 2; d * d <= candidate; ++d) {
            if (candidate % d == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(candidate);
    }
    return primes;
}

FolnerSet folner_mult(int m, std::optional<std::vector<Int>> primes, uint64_t cap) {
    if (m < 1) throw ValidationError("folner_mult: m must be >= 1");
    FolnerSet f;
    f.m = m;
    f.primes = primes ? std::move(*primes) : first_primes(m);
    if (static_cast<int>(f.primes.size()) != m)
        throw ValidationError("folner_mult: need exactly m primes");
    Int size = 1;
    for (int j = 0; j < m; ++j) {
        size *= m + 1;
        if (size > cap) throw CapExceeded("folner_mult: (m+1)^m exceeds cap");
    }
    std::vector<Int> elems{Int(1)};
    for (const Int& p : f.primes) {
        std::vector<Int> next;
        next.reserve(elems.size() * static_cast<size_t>(m + 1));
        for (const Int& e : elems) {
            Int v = e;
            for (int i = 0; i <= m; ++i) {
                next.push_back(v);
                if (i < m) v *= p;
            }
        }
        elems = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw ValidationError("folner_mult: repeated elements (primes not distinct?)");
    f.elements = std::move(elems);
    return f;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::dense: return "dense";
        case Verdict::not_dense: return "not-dense";
        case Verdict::ambiguous: return "ambiguous";
    }
    return "?";
}

namespace {

// Max circular gap of { q e + [0, q] : e in cover residues } / p^m', exact,
// in units of p^-m'. Uses uint64 when everything fits, else big integers.
Int dilated_cover_gap_scaled(const std::vector<Int>& es, const Int& q, const Int& modulus) {
    if (q >= modulus) return 0;
    const bool small = modulus <= Int(uint64_t{1} << 62) &&
                       q * (modulus - 1) <= Int(uint64_t{1} << 62);
    Int best = 0;
    if (small) {
        const uint64_t mod = static_cast<uint64_t>(modulus);
        const uint64_t qq = static_cast<uint64_t>(q);
        std::vector<uint64_t> residues;
        residues.reserve(es.size());
        for (const Int& e : es) residues.push_back(static_cast<uint64_t>(qq * static_cast<uint64_t>(e) % mod));
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        uint64_t gap = 0;
        for (size_t i = 0; i + 1 < residues.size(); ++i) {
            const uint64_t hole = residues[i + 1] - residues[i];
            if (hole > qq) gap = std::max(gap, hole - qq);
        }
        const uint64_t wrap = residues.front() + mod - residues.back();
        if (wrap > qq) gap = std::max(gap, wrap - qq);
        best = gap;
    } else {
        std::vector<Int> residues;
        residues.reserve(es.size());
        for (const Int& e : es) residues.push_back(q * e % modulus);
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        for (size_t i = 0; i + 1 < residues.size(); ++i) {
            const Int hole = residues[i + 1] - residues[i] - q;
            if (hole > best) best = hole;
        }
        const Int wrap = residues.front() + modulus - residues.back() - q;
        if (wrap > best) best = wrap;
    }
    return best;
}

struct GapData {
    Int q;
    int m_prime;
    Rat gap;
    Rat slack;
};

GapData dilation_gap(const DigitSet& y, const Int& n, const DilationPolicy& policy) {
    if (n < 1) throw ValidationError("dilation: n must be >= 1");
    Int q = n;
    if (policy.reduce_by_invariance) {
        while (q % y.base() == 0) q /= y.base();
    }
    const int m_prime = ceil_log(q, y.base()) + policy.margin;
    const auto es = y.enumerate_level(m_prime, policy.word_cap);
    const Int modulus = pow_int(y.base(), static_cast<unsigned>(m_prime));
    const Int g = dilated_cover_gap_scaled(es, q, modulus);
    GapData out;
    out.q = q;
    out.m_prime = m_prime;
    out.gap = Rat(g, modulus);
    out.slack = Rat(2 * q, modulus);
    return out;
}

}  // namespace

DilationVerdict dilation_verdict(const DigitSet& y, const Int& n, const Rat& eps,
                                 const DilationPolicy& policy) {
    if (eps <= 0) throw ValidationError("dilation_verdict: eps must be positive");
    const GapData g = dilation_gap(y, n, policy);
    DilationVerdict v;
    v.n = n;
    v.q = g.q;
    v.m_prime = g.m_prime;
    v.gap = g.gap;
    v.slack = g.slack;
    if (g.gap >= 2 * eps)
        v.verdict = Verdict::not_dense;
    else if (g.gap + g.slack < 2 * eps)
        v.verdict = Verdict::dense;
    else
        v.verdict = Verdict::ambiguous;
    return v;
}

Rat gap_upper_bound(const DigitSet& y, const Int& n, const DilationPolicy& policy) {
    const GapData g = dilation_gap(y, n, policy);
    return g.gap + g.slack;
}

std::vector<DensityReport> dilation_density(const DigitSet& y, int m_max, const Rat& eps,
                                            const DilationPolicy& policy) {
    if (m_max < 1) throw ValidationError("dilation_density: m_max must be >= 1");
    const FolnerSet top = folner_mult(m_max);
    std::vector<DilationVerdict> verdicts(top.elements.size());
    // Memoize by reduced q: many n share the same p-free part.
    std::vector<size_t> rep(top.elements.size());
    std::map<Int, size_t> first_with_q;
    std::vector<size_t> heads;
    for (size_t i = 0; i < top.elements.size(); ++i) {
        Int q = top.elements[i];
        if (policy.reduce_by_invariance) {
            while (q % y.base() == 0) q /= y.base();
        }
        auto [it, inserted] = first_with_q.emplace(q, i);
        rep[i] = it->second;
        if (inserted) heads.push_back(i);
    }
    parallel_for(heads.size(), policy.workers, [&](uint64_t t) {
        const size_t i = heads[t];
        verdicts[i] = dilation_verdict(y, top.elements[i], eps, policy);
    });
    for (size_t i = 0; i < verdicts.size(); ++i) {
        if (rep[i] != i) {
            verdicts[i] = verdicts[rep[i]];
            verdicts[i].n = top.elements[i];
        }
    }
    std::map<Int, const DilationVerdict*> by_n;
    for (const auto& v : verdicts) by_n[v.n] = &v;

    std::vector<DensityReport> reports;
    for (int m = 1; m <= m_max; ++m) {
        const FolnerSet f = folner_mult(m);
        DensityReport rep_m;
        rep_m.m = m;
        rep_m.eps = eps;
        for (const Int& n : f.elements) {
            const DilationVerdict& v = *by_n.at(n);
            rep_m.table.push_back(v);
            switch (v.verdict) {
                case Verdict::dense: ++rep_m.dense; break;
                case Verdict::not_dense: ++rep_m.not_dense; break;
                case Verdict::ambiguous: ++rep_m.ambiguous; break;
            }
        }
        rep_m.fraction = Rat(Int(rep_m.dense), Int(f.elements.size()));
        reports.push_back(std::move(rep_m));
    }
    return reports;
}

JReport extract_j(const DigitSet& y, int horizon, int r_max, const DilationPolicy& policy) {
    if (horizon < 1 || r_max < 1) throw ValidationError("extract_j: bad horizon or r_max");
    JReport rep;
    rep.horizon = horizon;
    rep.r_max = r_max;
    const FolnerSet top = folner_mult(horizon);
    rep.universe = top.elements;
    rep.ell_upper.resize(rep.universe.size());
    // Memoized certified gap bounds, as in dilation_density.
    {
        std::map<Int, size_t> first_with_q;
        std::vector<size_t> repidx(rep.universe.size());
        std::vector<size_t> heads;
        for (size_t i = 0; i < rep.universe.size(); ++i) {
            Int q = rep.universe[i];
            if (policy.reduce_by_invariance) {
                while (q % y.base() == 0) q /= y.base();
            }
            auto [it, inserted] = first_with_q.emplace(q, i);
            repidx[i] = it->second;
            if (inserted) heads.push_back(i);
        }
        parallel_for(heads.size(), policy.workers, [&](uint64_t t) {
            const size_t i = heads[t];
            rep.ell_upper[i] = gap_upper_bound(y, rep.universe[i], policy);
        });
        for (size_t i = 0; i < rep.universe.size(); ++i) rep.ell_upper[i] = rep.ell_upper[repidx[i]];
    }
    auto index_of = [&](const Int& n) {
        return static_cast<size_t>(std::lower_bound(rep.universe.begin(), rep.universe.end(), n) -
                                   rep.universe.begin());
    };
    // Folner memberships per level.
    std::vector<std::vector<size_t>> level_indices(static_cast<size_t>(horizon) + 1);
    for (int m = 1; m <= horizon; ++m) {
        for (const Int& n : folner_mult(m).elements) level_indices[static_cast<size_t>(m)].push_back(index_of(n));
    }
    auto density = [&](int r, int m) {
        uint64_t cnt = 0;
        const auto& idx = level_indices[static_cast<size_t>(m)];
        for (size_t i : idx) {
            if (rep.ell_upper[i] < Rat(1, r)) ++cnt;
        }
        return Rat(Int(cnt), Int(idx.size()));
    };
    // I_r: first m such that the E_r density exceeds 1 - 2^-r for every
    // computed level from m to the horizon; nondecreasing in r.
    rep.I_r.assign(static_cast<size_t>(r_max) + 1, 0);
    int prev = 1;
    for (int r = 1; r <= r_max; ++r) {
        int found = 0;
        for (int m = prev; m <= horizon && !found; ++m) {
            bool ok = true;
            for (int mm = m; mm <= horizon && ok; ++mm)
                ok = density(r, mm) > 1 - Rat(1, pow_int(2, static_cast<unsigned>(r)));
            if (ok) found = m;
        }
        rep.I_r[static_cast<size_t>(r)] = found;
        if (!found) {
            rep.truncated = true;
            break;
        }
        prev = found;
    }
    rep.r_of_m.assign(static_cast<size_t>(horizon) + 1, 0);
    for (int m = 1; m <= horizon; ++m) {
        for (int r = 1; r <= r_max; ++r) {
            if (rep.I_r[static_cast<size_t>(r)] != 0 && rep.I_r[static_cast<size_t>(r)] <= m)
                rep.r_of_m[static_cast<size_t>(m)] = r;
        }
    }
    // J_m = E_{r(m)} cap F_m; J = union of J_m.
    rep.in_j.assign(rep.universe.size(), 0);
    rep.j_m_fraction.assign(static_cast<size_t>(horizon) + 1, Rat(0));
    rep.sup_ell_on_j_m.assign(static_cast<size_t>(horizon) + 1, Rat(-1));
    for (int m = 1; m <= horizon; ++m) {
        const int r = rep.r_of_m[static_cast<size_t>(m)];
        if (r == 0) continue;
        const auto& idx = level_indices[static_cast<size_t>(m)];
        uint64_t cnt = 0;
        Rat sup(-1);
        for (size_t i : idx) {
            if (rep.ell_upper[i] < Rat(1, r)) {
                rep.in_j[i] = 1;
                ++cnt;
                sup = std::max(sup, rep.ell_upper[i]);
            }
        }
        rep.j_m_fraction[static_cast<size_t>(m)] = Rat(Int(cnt), Int(idx.size()));
        rep.sup_ell_on_j_m[static_cast<size_t>(m)] = sup;
    }
    rep.trace.assign(static_cast<size_t>(horizon) + 1, Rat(0));
    for (int m = 1; m <= horizon; ++m) {
        const auto& idx = level_indices[static_cast<size_t>(m)];
        uint64_t cnt = 0;
        for (size_t i : idx) cnt += rep.in_j[i];
        rep.trace[static_cast<size_t>(m)] = Rat(Int(cnt), Int(idx.size()));
    }
    return rep;
}

Int folner_max(int k) {
    const auto primes = first_primes(k);
    Int m = 1;
    for (const Int& p : primes) m *= pow_int(p, static_cast<unsigned>(k));
    return m;
}

std::vector<Rat> BerendPeresSet::truncated_points(int t) const {
    if (t < 1 || t > static_cast<int>(Q.size()))
        throw ValidationError("BerendPeres: truncation index out of range");
    std::vector<Rat> pts{Rat(0)};
    for (int l = 0; l < t; ++l) {
        const size_t sz = pts.size();
        for (size_t i = 0; i < sz; ++i) pts.push_back(pts[i] + Rat(1, Q[static_cast<size_t>(l)]));
    }
    return pts;
}

Rat BerendPeresSet::condensation_distance(const Int& n, int t) const {
    Rat worst = 0;
    for (const Rat& y : truncated_points(t)) worst = std::max(worst, circle_distance_to_zero(Rat(n) * y));
    return worst;
}

Rat BerendPeresSet::condensation_fraction(int m, const Rat& delta, int t) const {
    const FolnerSet f = folner_mult(m);
    uint64_t cnt = 0;
    for (const Int& n : f.elements) {
        if (condensation_distance(n, t) < delta) ++cnt;
    }
    return Rat(Int(cnt), Int(f.elements.size()));
}

BerendPeresSet berend_peres(int i_max, bool scaled_rule, uint64_t bit_cap) {
    if (i_max < 1) throw ValidationError("berend_peres: i_max must be >= 1");
    BerendPeresSet set;
    set.scaled = scaled_rule;
    if (scaled_rule) {
        // Qualitative stand-in: Q(i+1) = 4 Q(i) p_{i+1}; flagged, not used
        // for the exact implication checks.
        Int q = 2;
        set.Q.push_back(q);
        const auto primes = first_primes(i_max + 1);
        for (int i = 1; i < i_max; ++i) {
            q = 4 * q * primes[static_cast<size_t>(i)];
            set.Q.push_back(q);
        }
        return set;
    }
    // True growth rule: Q(i) = p_1 ... p_{m_i} with
    // Q(i+1) > max(4 M_{2 m_i} Q(i), 2^{i+2} M_{2 m_i}), m_i minimal.
    int m_i = 1;
    Int q = 2;
    set.m_index.push_back(m_i);
    set.Q.push_back(q);
    std::vector<Int> primes = first_primes(64);
    for (int i = 1; i < i_max; ++i) {
        const Int m_big = folner_max(2 * m_i);
        Int need = std::max(Int(4) * m_big * q, pow_int(2, static_cast<unsigned>(i + 2)) * m_big);
        if (msb(need) + 1 > bit_cap)
            throw CapExceeded("berend_peres: true growth rule exceeds the bit cap; use the scaled rule");
        int m_next = m_i;
        Int q_next = q;
        while (q_next <= need) {
            ++m_next;
            while (static_cast<int>(primes.size()) < m_next) primes = first_primes(m_next + 16);
            q_next *= primes[static_cast<size_t>(m_next) - 1];
        }
        m_i = m_next;
        q = q_next;
        set.m_index.push_back(m_i);
        set.Q.push_back(q);
    }
    return set;
}

Rat divisibility_fraction_formula(int m, int s) {
    if (s < 0 || s > m) throw ValidationError("divisibility_fraction: need 0 <= s <= m");
    return pow_rat(Rat(m, m + 1), static_cast<unsigned>(s));
}

Rat divisibility_fraction_count(int m, int s) {
    if (s < 0 || s > m) throw ValidationError("divisibility_fraction: need 0 <= s <= m");
    const FolnerSet f = folner_mult(m);
    Int divisor = 1;
    const auto primes = first_primes(s);
    for (const Int& p : primes) divisor *= p;
    uint64_t cnt = 0;
    for (const Int& n : f.elements) {
        if (n % divisor == 0) ++cnt;
    }
    return Rat(Int(cnt), Int(f.elements.size()));
}

}  // namespace irclab
