#include "irclab/numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace irclab {

Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n || n < 0) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int r = 1;
    for (Int i = 1; i <= kk; ++i) {
        r *= n - kk + i;
        r /= i;
    }
    return r;
}

Int falling_factorial(const Int& n, const Int& k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (Int i = 0; i < k; ++i) r *= n - i;
    return r;
}

Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

int ceil_log(const Int& q, int base) {
    if (q < 1) throw ValidationError("ceil_log: q must be >= 1");
    if (base < 2) throw ValidationError("ceil_log: base must be >= 2");
    int m = 0;
    Int v = 1;
    while (v < q) {
        v *= base;
        ++m;
    }
    return m;
}

std::string rat_to_string(const Rat& r) {
    const Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Int parse_int(const std::string& s) {
    // cpp_int would read a leading 0 as an octal prefix; force base 10.
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t.erase(0, 1);
    }
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("parse_int: cannot parse '" + s + "'");
    t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));
    Int v(t);
    return neg ? -v : v;
}

Rat parse_rat(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    const Int num = parse_int(s.substr(0, slash));
    const Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ValidationError("parse_rat: zero denominator");
    return Rat(num, den);
}

double rat_to_double(const Rat& r) {
    using F = boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(F(numerator(r)) / F(denominator(r)));
}

}  // namespace irclab
