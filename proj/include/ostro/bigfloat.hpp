#pragma once

#include <cstdint>
#include <string>

#include "ostro/bigint.hpp"
#include "ostro/errors.hpp"
#include "ostro/rational.hpp"

namespace ostro {

enum class Round { Down, Up };  // toward -infinity / +infinity

inline Round opposite(Round r) { return r == Round::Down ? Round::Up : Round::Down; }

/// Dyadic floating-point value mant * 2^exp with an arbitrary-precision
/// mantissa and directed rounding. Every operation takes the target
/// precision in bits and a rounding direction; Down results never exceed
/// the exact value and Up results never fall below it, which is what the
/// interval layer builds on.
class BigFloat {
public:
    BigFloat() : mant_(0), exp_(0) {}
    explicit BigFloat(BigInt m, long e = 0) : mant_(std::move(m)), exp_(e) { normalize(); }
    static BigFloat from_long(long v) { return BigFloat(BigInt(v)); }

    const BigInt& mantissa() const { return mant_; }
    long exponent() const { return exp_; }

    bool is_zero() const { return mant_ == 0; }
    int sign() const { return mant_ == 0 ? 0 : (mant_ < 0 ? -1 : 1); }

    /// floor(log2 |v|) + 1, i.e. |v| in [2^(top-1), 2^top); 0 is LONG_MIN.
    long top_exponent() const;

    BigFloat negated() const {
        BigFloat r = *this;
        r.mant_ = -r.mant_;
        return r;
    }

    /// Keep at most `bits` significant bits, rounding in direction `dir`.
    BigFloat rounded(unsigned bits, Round dir) const;

    /// One unit in the last place at precision `bits`, relative to |*this|.
    BigFloat ulp(unsigned bits) const;

    static BigFloat add(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir);
    static BigFloat sub(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir) {
        return add(a, b.negated(), bits, dir);
    }
    static BigFloat mul(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir);
    static BigFloat div(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir);
    static BigFloat sqrt(const BigFloat& a, unsigned bits, Round dir);
    static BigFloat from_rational(const Rational& r, unsigned bits, Round dir);

    /// Exact comparison.
    int compare(const BigFloat& o) const;
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.compare(b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.compare(b) == 0; }

    /// Exact conversion; mantissa * 2^exp is always rational.
    Rational to_rational() const;

    double to_double() const;
    std::string to_decimal(std::size_t digits = 12) const;

private:
    void normalize();  // strip trailing zero bits into the exponent

    BigInt mant_;
    long exp_;
};

}  // namespace ostro
