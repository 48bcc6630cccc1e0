#ifndef HDB_RATIONAL_HPP
#define HDB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hdb {

// Exact rational coefficients. All identity checks in this library are
// bit-exact, so there is no floating point anywhere in the kernel.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

inline std::string rat_to_string(const Rational& r) {
    return r.str();
}

// Parses "p" or "p/q" with optional leading '-'. Throws on malformed input.
inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

inline Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    Integer b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return Rational(b);
}

}  // namespace hdb

#endif
