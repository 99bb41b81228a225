#include "irclab/weyl.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace irclab {

namespace {
using F50 = boost::multiprecision::cpp_bin_float_50;

F50 alpha_value(const AlphaSpec& a) {
    switch (a.kind) {
        case AlphaSpec::Kind::sqrt_int:
            return sqrt(F50(a.sqrt_of));
        case AlphaSpec::Kind::golden:
            return (sqrt(F50(5)) - 1) / 2;
        case AlphaSpec::Kind::rational:
            return F50(numerator(a.value)) / F50(denominator(a.value));
    }
    throw ValidationError("alpha_value: unknown kind");
}

double star_discrepancy(std::vector<double>& xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double up = static_cast<double>(i + 1) / n - xs[i];
        const double down = xs[i] - static_cast<double>(i) / n;
        d = std::max({d, up, down});
    }
    return d;
}
}  // namespace

AlphaSpec AlphaSpec::sqrt(Int v) {
    if (v < 2) throw ValidationError("AlphaSpec: sqrt argument must be >= 2");
    AlphaSpec a;
    a.kind = Kind::sqrt_int;
    a.sqrt_of = std::move(v);
    return a;
}

AlphaSpec AlphaSpec::golden_conjugate() {
    AlphaSpec a;
    a.kind = Kind::golden;
    return a;
}

AlphaSpec AlphaSpec::rational(const Rat& v) {
    AlphaSpec a;
    a.kind = Kind::rational;
    a.value = v;
    return a;
}

AlphaSpec AlphaSpec::parse(const std::string& s) {
    if (s == "golden") return golden_conjugate();
    if (s.rfind("sqrt:", 0) == 0) return sqrt(parse_int(s.substr(5)));
    if (s.rfind("rat:", 0) == 0) return rational(parse_rat(s.substr(4)));
    // Decimal string -> exact rational, flagged.
    const auto dot = s.find('.');
    if (dot == std::string::npos) return rational(parse_rat(s));
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const size_t places = s.size() - dot - 1;
    return rational(Rat(parse_int(digits), pow_int(10, static_cast<unsigned>(places))));
}

std::string AlphaSpec::describe() const {
    switch (kind) {
        case Kind::sqrt_int: return "sqrt(" + sqrt_of.str() + ")";
        case Kind::golden: return "golden-conjugate";
        case Kind::rational: return "rational " + rat_to_string(value);
    }
    return "?";
}

WeylReport weyl_discrepancy(SeqKind seq, const std::vector<AlphaSpec>& alpha, uint64_t n_points,
                            uint64_t cap) {
    if (seq == SeqKind::custom)
        throw ValidationError("weyl_discrepancy: pass the custom sequence explicitly");
    if (n_points == 0) throw ValidationError("weyl_discrepancy: need at least one point");
    if (n_points > cap) throw CapExceeded("weyl_discrepancy: N exceeds cap");
    std::vector<Int> s;
    s.reserve(n_points);
    for (uint64_t i = 1; i <= n_points; ++i)
        s.push_back(seq == SeqKind::naturals ? Int(i) : Int(i) * Int(i));
    return weyl_discrepancy_custom(s, alpha);
}

WeylReport weyl_discrepancy_custom(const std::vector<Int>& seq,
                                   const std::vector<AlphaSpec>& alpha) {
    if (alpha.empty()) throw ValidationError("weyl_discrepancy: alpha must be nonempty");
    if (seq.empty()) throw ValidationError("weyl_discrepancy: empty sequence");
    WeylReport rep;
    rep.n_points = seq.size();
    std::vector<std::vector<double>> coords(alpha.size());
    for (size_t c = 0; c < alpha.size(); ++c) {
        if (alpha[c].is_rational()) rep.rational_flag = true;
        const F50 av = alpha_value(alpha[c]);
        auto& xs = coords[c];
        xs.reserve(seq.size());
        for (const Int& s : seq) {
            const F50 v = F50(s) * av;
            xs.push_back(static_cast<double>(v - floor(v)));
        }
    }
    std::vector<std::vector<double>> sorted = coords;
    for (size_t c = 0; c < alpha.size(); ++c) {
        rep.coord_dstar.push_back(star_discrepancy(sorted[c]));
    }
    rep.dstar = *std::max_element(rep.coord_dstar.begin(), rep.coord_dstar.end());
    if (alpha.size() >= 2) {
        // Corner-sampled estimate of sup |F_hat([0,z)) - prod z_c|.
        const size_t corners = std::min<size_t>(seq.size(), 512);
        double worst = 0;
        for (size_t t = 0; t < corners; ++t) {
            const size_t pick = t * seq.size() / corners;
            double volume = 1;
            for (size_t c = 0; c < alpha.size(); ++c) volume *= coords[c][pick];
            uint64_t below = 0;
            for (size_t i = 0; i < seq.size(); ++i) {
                bool in = true;
                for (size_t c = 0; c < alpha.size() && in; ++c) in = coords[c][i] < coords[c][pick];
                below += in ? 1 : 0;
            }
            worst = std::max(worst, std::fabs(static_cast<double>(below) /
                                                  static_cast<double>(seq.size()) -
                                              volume));
        }
        rep.product_box = worst;
    }
    return rep;
}

}  // namespace irclab
