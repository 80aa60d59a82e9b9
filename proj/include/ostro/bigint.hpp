#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ostro {

using BigInt = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::pow;

inline BigInt bigint_from_decimal(const std::string& s) { return BigInt(s); }
inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// Number of bits in |v|; 0 for v == 0.
inline std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

/// floor(a / b) for b > 0 (C++ integer division truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b) != 0 && ((a < 0) == (b < 0))) ++q;
    return q;
}

/// 2^n as a BigInt.
inline BigInt pow2(std::size_t n) { return BigInt(1) << n; }

}  // namespace ostro
