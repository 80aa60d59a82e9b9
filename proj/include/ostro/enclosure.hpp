#pragma once

#include <span>
#include <string>
#include <vector>

#include "ostro/bigfloat.hpp"
#include "ostro/rational.hpp"
#include "ostro/real_interval.hpp"

namespace ostro {

/// Certified enclosure [lo, hi] with exact rational endpoints. Operations
/// on enclosures produce enclosures of the exact result; irrational
/// quantities (tail sums, CDF values, characteristic-function values)
/// travel exclusively in this form or as RealInterval.
struct IntervalEnclosure {
    Rational lo;
    Rational hi;

    IntervalEnclosure() = default;
    IntervalEnclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("IntervalEnclosure: lo > hi");
    }

    static IntervalEnclosure point(Rational v) { return IntervalEnclosure(v, v); }

    Rational width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const IntervalEnclosure& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const IntervalEnclosure& o) const { return !(hi < o.lo || o.hi < lo); }

    /// +1 strictly positive, -1 strictly negative, 0 otherwise.
    int sign() const {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }

    IntervalEnclosure operator-() const { return IntervalEnclosure(-hi, -lo); }

    friend IntervalEnclosure operator+(const IntervalEnclosure& a, const IntervalEnclosure& b) {
        return IntervalEnclosure(a.lo + b.lo, a.hi + b.hi);
    }
    friend IntervalEnclosure operator-(const IntervalEnclosure& a, const IntervalEnclosure& b) {
        return IntervalEnclosure(a.lo - b.hi, a.hi - b.lo);
    }
    friend IntervalEnclosure operator+(const IntervalEnclosure& a, const Rational& b) {
        return IntervalEnclosure(a.lo + b, a.hi + b);
    }
    friend IntervalEnclosure operator-(const IntervalEnclosure& a, const Rational& b) {
        return IntervalEnclosure(a.lo - b, a.hi - b);
    }
    friend IntervalEnclosure operator*(const IntervalEnclosure& a, const IntervalEnclosure& b) {
        Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        Rational mn = c[0], mx = c[0];
        for (int i = 1; i < 4; ++i) {
            if (c[i] < mn) mn = c[i];
            if (c[i] > mx) mx = c[i];
        }
        return IntervalEnclosure(mn, mx);
    }
    friend IntervalEnclosure operator*(const IntervalEnclosure& a, const Rational& c) {
        return c.sign() >= 0 ? IntervalEnclosure(a.lo * c, a.hi * c)
                             : IntervalEnclosure(a.hi * c, a.lo * c);
    }

    /// Exact conversion of a dyadic interval.
    static IntervalEnclosure from_real(const RealInterval& r) {
        return IntervalEnclosure(r.lo.to_rational(), r.hi.to_rational());
    }
    RealInterval to_real(unsigned bits) const {
        return RealInterval(BigFloat::from_rational(lo, bits, Round::Down),
                            BigFloat::from_rational(hi, bits, Round::Up));
    }

    /// Strict certified comparisons against an exact rational.
    bool certainly_less_than(const Rational& v) const { return hi < v; }
    bool certainly_greater_than(const Rational& v) const { return lo > v; }
};

/// Sign-and-log representation for quantities whose exact values overflow
/// any fixed precision (covering counts, alpha-volumes, deep denominators).
/// Used for reporting and trend inspection only, never for certified
/// comparisons.
struct LogMagnitude {
    int sign = 0;       // -1, 0, +1
    BigFloat log_abs;   // natural log of |value|; ignored when sign == 0

    static LogMagnitude zero() { return LogMagnitude{0, BigFloat()}; }
    static LogMagnitude one() { return LogMagnitude{1, BigFloat()}; }
    static LogMagnitude from_log(int sign, BigFloat l) { return LogMagnitude{sign, std::move(l)}; }
    static LogMagnitude from_rational(const Rational& v, unsigned bits = 128);

    bool is_zero() const { return sign == 0; }

    /// Decimal rendering like "4.99e-10" (midpoint, for reports).
    std::string magnitude_decimal(unsigned bits = 128) const;

    double log10_value() const;
};

/// Product of log-magnitudes: signs multiply, logs add. The empty product
/// is 1. Default precision 128 bits.
LogMagnitude log_product(std::span<const LogMagnitude> factors, unsigned bits = 128);
inline LogMagnitude log_product(const std::vector<LogMagnitude>& factors, unsigned bits = 128) {
    return log_product(std::span<const LogMagnitude>(factors.data(), factors.size()), bits);
}

}  // namespace ostro
