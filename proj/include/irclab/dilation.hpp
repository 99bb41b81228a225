#pragma once

#include <optional>

#include "irclab/digit_set.hpp"

namespace irclab {

// Multiplicative Folner set F_m = { p_1^{i_1} ... p_m^{i_m} : 0 <= i_j <= m },
// primes defaulting to the first m primes. (m+1)^m elements.
struct FolnerSet {
    int m = 1;
    std::vector<Int> primes;
    std::vector<Int> elements;  // sorted, distinct
};
FolnerSet folner_mult(int m, std::optional<std::vector<Int>> primes = {},
                      uint64_t cap = 10'000'000);

std::vector<Int> first_primes(int count);

// Resolution policy: level m'(n) = ceil(log_p n) + margin, which keeps the
// cover slack n * p^-m' at most p^-margin.
struct DilationPolicy {
    int margin = 6;
    uint64_t word_cap = uint64_t{1} << 24;
    // Reduce n by its p-part first (exact when T_p Y = Y, since then p^a Y = Y).
    bool reduce_by_invariance = true;
    int workers = 1;
};

enum class Verdict { dense, not_dense, ambiguous };
std::string verdict_name(Verdict v);

struct DilationVerdict {
    Int n;
    Int q;            // n with the p-part removed (== n when not reduced)
    int m_prime = 0;  // cover level used
    Rat gap;          // exact max gap of q * cover(Y, m')
    Rat slack;        // 2 q p^-m': the true nY gap lies in [gap, gap + slack]
    Verdict verdict = Verdict::ambiguous;
};

// Exact verdict for one dilation against the threshold 2*eps.
DilationVerdict dilation_verdict(const DigitSet& y, const Int& n, const Rat& eps,
                                 const DilationPolicy& policy = {});

// Certified upper bound gap + slack on the true max gap of nY.
Rat gap_upper_bound(const DigitSet& y, const Int& n, const DilationPolicy& policy = {});

struct DensityReport {
    int m = 1;
    Rat eps;
    uint64_t dense = 0, not_dense = 0, ambiguous = 0;
    Rat fraction;  // certified-dense count / |F_m|
    std::vector<DilationVerdict> table;
};

// Per-level density reports for F_1..F_m_max (tables shared across levels).
std::vector<DensityReport> dilation_density(const DigitSet& y, int m_max, const Rat& eps,
                                            const DilationPolicy& policy = {});

// J-set extraction over a finite Folner horizon: gap thresholds E_r built
// from the certified upper bounds, first-density indices I_r, r(m), and the
// density trace of J = union of J_m.
struct JReport {
    int horizon = 1;
    int r_max = 1;
    std::vector<Int> universe;          // elements of F_horizon, sorted
    std::vector<Rat> ell_upper;         // certified gap upper bound per element
    std::vector<int> I_r;               // 1-based by r; 0 = undefined at this horizon
    std::vector<int> r_of_m;            // 1-based by m; 0 = undefined
    std::vector<Rat> trace;             // |J cap F_m| / |F_m|
    std::vector<Rat> j_m_fraction;      // |J_m| / |F_m|
    std::vector<Rat> sup_ell_on_j_m;    // sup over J_m of the gap bound (-1 when empty)
    std::vector<uint8_t> in_j;          // indicator over `universe`
    bool truncated = false;             // some I_r undefined at this horizon
};
JReport extract_j(const DigitSet& y, int horizon, int r_max, const DilationPolicy& policy = {});

// Condensation example: Q(i) products of initial primes growing fast enough
// that dilations by multiples of Q(i) pin the whole set near 0.
struct BerendPeresSet {
    bool scaled = false;
    std::vector<int> m_index;  // m_i per i (true rule; empty when scaled)
    std::vector<Int> Q;        // Q[i-1] = Q(i)

    // Y_t: all subset sums of {1/Q(1), ..., 1/Q(t)} as exact circle points.
    std::vector<Rat> truncated_points(int t) const;
    // d_H(n Y_t, {0}) as an exact rational.
    Rat condensation_distance(const Int& n, int t) const;
    // Fraction of n in F_m with d_H(n Y_t, {0}) < delta.
    Rat condensation_fraction(int m, const Rat& delta, int t) const;
};
BerendPeresSet berend_peres(int i_max, bool scaled_rule = false, uint64_t bit_cap = 4096);

// max F_k for the default primes: prod_{j<=k} p_j^k.
Int folner_max(int k);

// Divisibility statistics over F_m: the closed form (m/(m+1))^s and the
// direct count of elements divisible by p_1 ... p_s.
Rat divisibility_fraction_formula(int m, int s);
Rat divisibility_fraction_count(int m, int s);

}  // namespace irclab
