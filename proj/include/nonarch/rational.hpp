#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "errors.hpp"

namespace nonarch {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

// Two-argument construction with sign normalization (boost::rational over
// cpp_int rejects negative denominators outright).
inline Rat make_rat(Int n, Int d) {
    if (d == 0) throw domain_error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    return Rat(std::move(n), std::move(d));
}

inline Rat rat(long long n, long long d = 1) { return make_rat(Int(n), Int(d)); }

// Floor of a rational number.
inline Int rat_floor(const Rat& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator()) q -= 1;
    return q;
}

// Representative of r mod 1 in [0, 1).
inline Rat rat_mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

inline bool rat_is_integer(const Rat& r) { return r.denominator() == 1; }

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

} // namespace nonarch
