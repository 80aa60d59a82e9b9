#pragma once

#include <map>
#include <utility>

#include "ostro/bigfloat.hpp"
#include "ostro/rational.hpp"

namespace ostro {

/// Closed interval [lo, hi] of dyadic floats. All operations round
/// outward, so intervals always contain the exact result of the operation
/// applied to any points of the inputs.
struct RealInterval {
    BigFloat lo;
    BigFloat hi;

    RealInterval() = default;
    RealInterval(BigFloat l, BigFloat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("RealInterval: lo > hi");
    }

    static RealInterval point(BigFloat v) { return RealInterval(v, v); }
    static RealInterval of_long(long v) { return point(BigFloat::from_long(v)); }
    static RealInterval of_rational(const Rational& r, unsigned bits) {
        return RealInterval(BigFloat::from_rational(r, bits, Round::Down),
                            BigFloat::from_rational(r, bits, Round::Up));
    }

    bool is_point() const { return lo == hi; }
    /// +1 strictly positive, -1 strictly negative, 0 when the interval
    /// touches or straddles zero.
    int sign() const {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

    BigFloat width(unsigned bits) const { return BigFloat::sub(hi, lo, bits, Round::Up); }
    BigFloat mid(unsigned bits) const {
        BigFloat s = BigFloat::add(lo, hi, bits + 2, Round::Down);
        return BigFloat::mul(s, BigFloat(BigInt(1), -1), bits, Round::Down);
    }

    RealInterval negated() const { return RealInterval(hi.negated(), lo.negated()); }

    /// Widen by +-err (err >= 0).
    RealInterval padded(const BigFloat& err, unsigned bits) const {
        return RealInterval(BigFloat::sub(lo, err, bits, Round::Down),
                            BigFloat::add(hi, err, bits, Round::Up));
    }

    static RealInterval hull(const RealInterval& a, const RealInterval& b) {
        return RealInterval(a.lo <= b.lo ? a.lo : b.lo, a.hi >= b.hi ? a.hi : b.hi);
    }
    bool intersects(const RealInterval& o) const { return !(hi < o.lo || o.hi < lo); }
    bool contains(const RealInterval& o) const { return lo <= o.lo && o.hi <= hi; }
};

RealInterval ri_add(const RealInterval& a, const RealInterval& b, unsigned bits);
RealInterval ri_sub(const RealInterval& a, const RealInterval& b, unsigned bits);
RealInterval ri_mul(const RealInterval& a, const RealInterval& b, unsigned bits);
/// Division; b must not contain zero.
RealInterval ri_div(const RealInterval& a, const RealInterval& b, unsigned bits);
RealInterval ri_square(const RealInterval& a, unsigned bits);
/// sqrt; negative parts (from outward rounding of provably nonnegative
/// quantities) are clipped at zero.
RealInterval ri_sqrt(const RealInterval& a, unsigned bits);
RealInterval ri_abs(const RealInterval& a);
RealInterval ri_scale(const RealInterval& a, const Rational& c, unsigned bits);
RealInterval ri_scale_int(const RealInterval& a, const BigInt& c, unsigned bits);

/// pi and ln 2 as certified enclosures (cached per precision).
RealInterval pi_interval(unsigned bits);
RealInterval ln2_interval(unsigned bits);

/// atanh on |z| <= 1/2 (the caller certifies the range).
RealInterval atanh_small(const RealInterval& z, unsigned bits);

/// Natural log; argument must be strictly positive.
RealInterval ln_point(const BigFloat& x, unsigned bits);
RealInterval ln_interval(const RealInterval& x, unsigned bits);
RealInterval ln_rational(const Rational& x, unsigned bits);

/// exp on moderate arguments (|x| < 2^24).
RealInterval exp_interval(const RealInterval& x, unsigned bits);

/// sin/cos for |theta| <= 8 (one period with slack); wider inputs must be
/// reduced first.
RealInterval sin_small(const RealInterval& theta, unsigned bits);
RealInterval cos_small(const RealInterval& theta, unsigned bits);

/// Reduce c modulo 2 into (-1, 1] exactly; the angle c*pi maps to c'*pi.
Rational reduce_mod2(const Rational& c);

/// sin/cos of c*pi with exact modular reduction of c.
RealInterval sin_pi_multiple(const Rational& c, unsigned bits);
RealInterval cos_pi_multiple(const Rational& c, unsigned bits);

/// sin/cos of a plain rational angle, reduced modulo 2*pi internally.
RealInterval sin_of_rational(const Rational& t, unsigned bits);
RealInterval cos_of_rational(const Rational& t, unsigned bits);

/// Incrementally cached logs of positive integers. Nearby queries reuse
/// the closest cached value through ln n = ln m + 2 atanh((n-m)/(n+m)),
/// which converges in a handful of terms on consecutive-integer sweeps.
class IntegerLn {
public:
    explicit IntegerLn(unsigned bits) : bits_(bits) {}
    RealInterval get(const BigInt& n);
    unsigned bits() const { return bits_; }

private:
    unsigned bits_;
    std::map<BigInt, RealInterval> cache_;
};

}  // namespace ostro
