#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cyclodense {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Wide = __int128;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline bool fits_int64(const BigInt& v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

inline bool fits_uint64(const BigInt& v) {
    return v >= 0 && v <= std::numeric_limits<std::uint64_t>::max();
}

inline BigInt to_big(Wide v) {
    bool neg = v < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi = static_cast<std::uint64_t>(mag >> 64);
    BigInt out = (hi << 64) + static_cast<std::uint64_t>(mag);
    return neg ? BigInt(-out) : out;
}

// Caller guarantees |v| < 2^126.
inline Wide to_wide(const BigInt& v) {
    BigInt mag = boost::multiprecision::abs(v);
    auto lo = static_cast<std::uint64_t>(mag & std::numeric_limits<std::uint64_t>::max());
    auto hi = static_cast<std::uint64_t>(mag >> 64);
    Wide out = (static_cast<Wide>(hi) << 64) | static_cast<Wide>(lo);
    return v < 0 ? -out : out;
}

} // namespace cyclodense
