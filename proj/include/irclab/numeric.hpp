#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace irclab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown on bad parameters / violated preconditions; CLI maps this to exit 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a configured size cap would be exceeded; CLI maps this to exit 3.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int pow_int(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned exp) {
    Rat r = 1;
    Rat b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

// Exact binomial coefficient; 0 when k < 0 or k > n.
Int binomial(const Int& n, const Int& k);

// Falling factorial n(n-1)...(n-k+1).
Int falling_factorial(const Int& n, const Int& k);

Int factorial(unsigned n);

// Smallest m >= 0 with base^m >= q (q >= 1).
int ceil_log(const Int& q, int base);

// "p/q" (or "p" when q == 1); exact round trip with parse_rat.
Int parse_int(const std::string& s);
std::string rat_to_string(const Rat& r);
Rat parse_rat(const std::string& s);

// Nearest double, for display only.
double rat_to_double(const Rat& r);

}  // namespace irclab
