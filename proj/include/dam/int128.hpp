#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dam {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 i128_abs(i128 v) { return v < 0 ? -v : v; }

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, 48 - pos);
    return neg ? "-" + s : s;
}

// (base)^exp with overflow detection; throws if the result exceeds i128.
inline i128 checked_pow_i128(i128 base, int exp) {
    constexpr u128 limit = ~u128{0} >> 1;  // max signed value
    if (base < 0) throw std::invalid_argument("checked_pow_i128: negative base");
    u128 acc = 1;
    u128 b = static_cast<u128>(base);
    for (int k = 0; k < exp; ++k) {
        if (b != 0 && acc > limit / b) throw std::overflow_error("i128 pow overflow");
        acc *= b;
    }
    return static_cast<i128>(acc);
}

inline i128 checked_mul_i128(i128 a, i128 b) {
    constexpr u128 limit = ~u128{0} >> 1;
    if (a < 0 || b < 0) throw std::invalid_argument("checked_mul_i128: negative operand");
    u128 ua = static_cast<u128>(a), ub = static_cast<u128>(b);
    if (ua != 0 && ub > limit / ua) throw std::overflow_error("i128 mul overflow");
    return static_cast<i128>(ua * ub);
}

}  // namespace dam
