#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oscillab {

// ~100 decimal digits for production paths, ~200 for cross-checking oracles.
using real_hp = boost::multiprecision::cpp_bin_float_100;
using real_hp2 =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

// Values passed around as 60-significant-digit strings so both precisions
// parse the same literal.
inline constexpr const char* sqrt2_60 =
    "1.41421356237309504880168872420969807856967187537694807317667";
inline constexpr const char* golden_60 =
    "1.61803398874989484820458683436563811772030917980576286213544";

template <class R> inline R frac(const R& x) {
    R f = x - boost::multiprecision::floor(x);
    if (f < 0) f += 1;
    if (f >= 1) f -= 1; // guard against rounding at the boundary
    return f;
}

} // namespace oscillab
