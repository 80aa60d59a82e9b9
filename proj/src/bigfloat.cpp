#include "ostro/bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace ostro {

namespace {

BigInt abs_big(const BigInt& v) { return boost::multiprecision::abs(v); }

}  // namespace

void BigFloat::normalize() {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    std::size_t tz = boost::multiprecision::lsb(abs_big(mant_));
    if (tz > 0) {
        mant_ >>= tz;
        exp_ += static_cast<long>(tz);
    }
}

long BigFloat::top_exponent() const {
    if (mant_ == 0) return LONG_MIN;
    return exp_ + static_cast<long>(bit_length(mant_));
}

BigFloat BigFloat::rounded(unsigned bits, Round dir) const {
    if (mant_ == 0 || bits == 0) return *this;
    std::size_t len = bit_length(mant_);
    if (len <= bits) return *this;
    std::size_t s = len - bits;
    BigInt mag = abs_big(mant_);
    BigInt q = mag >> s;
    bool inexact = (mag & (pow2(s) - 1)) != 0;
    bool neg = mant_ < 0;
    if (inexact && ((dir == Round::Up && !neg) || (dir == Round::Down && neg))) ++q;
    BigFloat r;
    r.mant_ = neg ? BigInt(-q) : q;
    r.exp_ = exp_ + static_cast<long>(s);
    r.normalize();
    return r;
}

BigFloat BigFloat::ulp(unsigned bits) const {
    if (mant_ == 0) return BigFloat(BigInt(1), -static_cast<long>(bits));
    return BigFloat(BigInt(1), top_exponent() - static_cast<long>(bits));
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir) {
    if (a.mant_ == 0) return b.rounded(bits, dir);
    if (b.mant_ == 0) return a.rounded(bits, dir);
    const BigFloat* big = &a;
    const BigFloat* small = &b;
    if (b.top_exponent() > a.top_exponent()) std::swap(big, small);
    long gap = big->top_exponent() - small->top_exponent();
    if (gap > static_cast<long>(bits) + 4) {
        // The small operand is far below one ulp of the result; absorb it
        // into a directed one-ulp nudge instead of shifting exactly.
        BigFloat r = big->rounded(bits, dir);
        if (dir == Round::Down && small->mant_ < 0)
            r = add(r, r.ulp(bits).negated(), bits + 8, Round::Down);
        else if (dir == Round::Up && small->mant_ > 0)
            r = add(r, r.ulp(bits), bits + 8, Round::Up);
        return r.rounded(bits, dir);
    }
    long e = std::min(a.exp_, b.exp_);
    BigInt m = (a.mant_ << static_cast<std::size_t>(a.exp_ - e)) +
               (b.mant_ << static_cast<std::size_t>(b.exp_ - e));
    return BigFloat(std::move(m), e).rounded(bits, dir);
}

BigFloat BigFloat::mul(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir) {
    BigFloat r;
    r.mant_ = a.mant_ * b.mant_;
    r.exp_ = a.exp_ + b.exp_;
    if (r.mant_ == 0) r.exp_ = 0;
    r.normalize();
    return r.rounded(bits, dir);
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, unsigned bits, Round dir) {
    if (b.mant_ == 0) throw Error("BigFloat: division by zero");
    if (a.mant_ == 0) return BigFloat();
    BigInt A = abs_big(a.mant_);
    BigInt B = abs_big(b.mant_);
    long la = static_cast<long>(bit_length(A));
    long lb = static_cast<long>(bit_length(B));
    long s = static_cast<long>(bits) + 3 + lb - la;
    if (s < 0) s = 0;
    BigInt q = (A << static_cast<std::size_t>(s)) / B;
    bool inexact = (A << static_cast<std::size_t>(s)) % B != 0;
    bool neg = (a.mant_ < 0) != (b.mant_ < 0);
    if (inexact && ((dir == Round::Up && !neg) || (dir == Round::Down && neg))) ++q;
    BigFloat r;
    r.mant_ = neg ? BigInt(-q) : q;
    r.exp_ = a.exp_ - b.exp_ - s;
    r.normalize();
    return r.rounded(bits, dir);
}

BigFloat BigFloat::sqrt(const BigFloat& a, unsigned bits, Round dir) {
    if (a.mant_ < 0) throw Error("BigFloat: sqrt of negative value");
    if (a.mant_ == 0) return BigFloat();
    BigInt m = a.mant_;
    long e = a.exp_;
    if (e % 2 != 0) {
        m <<= 1;
        --e;
    }
    long have = static_cast<long>((bit_length(m) + 1) / 2);
    long t = std::max<long>(0, static_cast<long>(bits) + 2 - have);
    m <<= static_cast<std::size_t>(2 * t);
    BigInt root = boost::multiprecision::sqrt(m);
    bool inexact = root * root != m;
    if (inexact && dir == Round::Up) ++root;
    BigFloat r;
    r.mant_ = root;
    r.exp_ = e / 2 - t;
    r.normalize();
    return r.rounded(bits, dir);
}

BigFloat BigFloat::from_rational(const Rational& r, unsigned bits, Round dir) {
    return div(BigFloat(r.num()), BigFloat(r.den()), bits, dir);
}

int BigFloat::compare(const BigFloat& o) const {
    int sa = sign(), sb = o.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    long ta = top_exponent(), tb = o.top_exponent();
    if (ta != tb) {
        int mag = ta < tb ? -1 : 1;
        return sa > 0 ? mag : -mag;
    }
    long e = std::min(exp_, o.exp_);
    BigInt l = mant_ << static_cast<std::size_t>(exp_ - e);
    BigInt r = o.mant_ << static_cast<std::size_t>(o.exp_ - e);
    if (l < r) return -1;
    if (l > r) return 1;
    return 0;
}

Rational BigFloat::to_rational() const {
    if (mant_ == 0) return Rational(0);
    if (exp_ >= 0) return Rational(mant_ << static_cast<std::size_t>(exp_));
    return Rational(mant_, pow2(static_cast<std::size_t>(-exp_)));
}

double BigFloat::to_double() const {
    if (mant_ == 0) return 0.0;
    long top = top_exponent();
    if (top > 1020) return mant_ < 0 ? -HUGE_VAL : HUGE_VAL;
    if (top < -1020) return 0.0;
    // 64 leading bits + exponent
    BigFloat t = rounded(64, Round::Down);
    double m = t.mant_.convert_to<double>();
    return std::ldexp(m, static_cast<int>(t.exp_));
}

std::string BigFloat::to_decimal(std::size_t digits) const {
    long top = top_exponent();
    if (mant_ != 0 && (top > (1L << 22) || top < -(1L << 22)))
        throw Error("BigFloat::to_decimal: exponent out of printable range");
    return to_rational().to_decimal(digits);
}

}  // namespace ostro
