#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irclab/numeric.hpp"

namespace irclab {

enum class SeqKind { naturals, squares, custom };

// Dilation multiplier alpha; named irrationals are evaluated to 50 decimal
// digits. Rational and decimal inputs are accepted but flagged, since
// equidistribution fails for them.
struct AlphaSpec {
    enum class Kind { sqrt_int, golden, rational } kind = Kind::sqrt_int;
    Int sqrt_of = 2;   // sqrt_int
    Rat value;         // rational / decimal
    bool is_rational() const { return kind == Kind::rational; }

    static AlphaSpec sqrt(Int v);
    static AlphaSpec golden_conjugate();
    static AlphaSpec rational(const Rat& v);
    // "sqrt:2", "golden", "rat:3/7", or a decimal string (flagged rational).
    static AlphaSpec parse(const std::string& s);
    std::string describe() const;
};

struct WeylReport {
    uint64_t n_points = 0;
    std::vector<double> coord_dstar;  // star discrepancy per coordinate
    double dstar = 0;                 // coord 0 (scalar alpha) / max over coords
    bool rational_flag = false;
    // Crude multi-d product-box estimate from sampled corners (d >= 2 only).
    std::optional<double> product_box;
};

// Star discrepancy of { s_i * alpha mod 1 : i <= N } along the sequence;
// computed in 50-digit floats (error well below the 1e-9 slack used by the
// verification suite).
WeylReport weyl_discrepancy(SeqKind seq, const std::vector<AlphaSpec>& alpha, uint64_t n_points,
                            uint64_t cap = 10'000'000);
WeylReport weyl_discrepancy_custom(const std::vector<Int>& seq, const std::vector<AlphaSpec>& alpha);

}  // namespace irclab
