#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "ostro/bigint.hpp"
#include "ostro/errors.hpp"

namespace ostro {

/// Exact rational number. Always stored in lowest terms, denominator > 0,
/// zero canonically 0/1. The value type for everything the library treats
/// as exact: expansion remainders, partial sums, cylinder masses,
/// enclosure endpoints.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(unchecked, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt l = a.num_ * b.den_;
        BigInt r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational reciprocal() const {
        if (num_ == 0) throw Error("Rational: reciprocal of zero");
        return Rational(unchecked, num_ < 0 ? -den_ : den_,
                        num_ < 0 ? -num_ : num_);
    }

    BigInt floor() const { return floor_div(num_, den_); }
    BigInt ceil() const { return ceil_div(num_, den_); }

    /// Reciprocal of a positive integer, the ubiquitous 1/q_k term.
    static Rational inv(const BigInt& q) { return Rational(unchecked, 1, q); }

    /// Parse "num/den" or a bare integer (decimal strings, unbounded).
    static Rational from_string(const std::string& s);
    /// "num/den" when den != 1, else just the integer.
    std::string to_string() const;

    /// Deterministic decimal rendering with `digits` significant digits,
    /// round half away from zero. Exact values that terminate earlier are
    /// printed exactly.
    std::string to_decimal(std::size_t digits = 12) const;

    double to_double() const;

private:
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};
    Rational(unchecked_t, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize();

    BigInt num_;
    BigInt den_;
};

inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace ostro
