#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace quadrisig {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Invalid parameters or out-of-contract arguments (CLI exit code 2).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A size guard was exceeded without an explicit override.
struct SizeGuardError : ParamError {
    using ParamError::ParamError;
};

/// Internal consistency failure that must never occur on valid inputs
/// (e.g. a non-constant cyclotomic residue, or a lemma violation).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::gcd(a, std::gcd(b, c));
}

inline bool is_odd(std::int64_t x) { return (x & 1) != 0; }

/// x^e for exact rationals, e >= 0.
inline Rat rat_pow(const Rat& x, std::uint64_t e) {
    Rat acc = 1;
    Rat base = x;
    while (e != 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline std::string rat_to_string(const Rat& x) {
    std::string out = numerator(x).str();
    if (denominator(x) != 1) {
        out += "/";
        out += denominator(x).str();
    }
    return out;
}

}  // namespace quadrisig
