#include "ostro/real_interval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace ostro {

RealInterval ri_add(const RealInterval& a, const RealInterval& b, unsigned bits) {
    return RealInterval(BigFloat::add(a.lo, b.lo, bits, Round::Down),
                        BigFloat::add(a.hi, b.hi, bits, Round::Up));
}

RealInterval ri_sub(const RealInterval& a, const RealInterval& b, unsigned bits) {
    return ri_add(a, b.negated(), bits);
}

RealInterval ri_mul(const RealInterval& a, const RealInterval& b, unsigned bits) {
    // sign-definite fast paths (two corner products instead of eight)
    if (a.lo.sign() >= 0 && b.lo.sign() >= 0)
        return RealInterval(BigFloat::mul(a.lo, b.lo, bits, Round::Down),
                            BigFloat::mul(a.hi, b.hi, bits, Round::Up));
    if (a.hi.sign() <= 0 && b.hi.sign() <= 0)
        return RealInterval(BigFloat::mul(a.hi, b.hi, bits, Round::Down),
                            BigFloat::mul(a.lo, b.lo, bits, Round::Up));
    if (a.lo.sign() >= 0 && b.hi.sign() <= 0)
        return RealInterval(BigFloat::mul(a.hi, b.lo, bits, Round::Down),
                            BigFloat::mul(a.lo, b.hi, bits, Round::Up));
    if (a.hi.sign() <= 0 && b.lo.sign() >= 0)
        return RealInterval(BigFloat::mul(a.lo, b.hi, bits, Round::Down),
                            BigFloat::mul(a.hi, b.lo, bits, Round::Up));
    // mixed signs: all four corner products with both roundings
    const BigFloat* as[2] = {&a.lo, &a.hi};
    const BigFloat* bs[2] = {&b.lo, &b.hi};
    BigFloat lo, hi;
    bool first = true;
    for (auto* x : as)
        for (auto* y : bs) {
            BigFloat dn = BigFloat::mul(*x, *y, bits, Round::Down);
            BigFloat up = BigFloat::mul(*x, *y, bits, Round::Up);
            if (first) {
                lo = dn;
                hi = up;
                first = false;
            } else {
                if (dn < lo) lo = dn;
                if (up > hi) hi = up;
            }
        }
    return RealInterval(lo, hi);
}

RealInterval ri_div(const RealInterval& a, const RealInterval& b, unsigned bits) {
    if (b.contains_zero()) throw Error("RealInterval: division by interval containing zero");
    if (b.lo.sign() > 0) {
        if (a.lo.sign() >= 0)
            return RealInterval(BigFloat::div(a.lo, b.hi, bits, Round::Down),
                                BigFloat::div(a.hi, b.lo, bits, Round::Up));
        if (a.hi.sign() <= 0)
            return RealInterval(BigFloat::div(a.lo, b.lo, bits, Round::Down),
                                BigFloat::div(a.hi, b.hi, bits, Round::Up));
        return RealInterval(BigFloat::div(a.lo, b.lo, bits, Round::Down),
                            BigFloat::div(a.hi, b.lo, bits, Round::Up));
    }
    // b strictly negative
    if (a.lo.sign() >= 0)
        return RealInterval(BigFloat::div(a.hi, b.hi, bits, Round::Down),
                            BigFloat::div(a.lo, b.lo, bits, Round::Up));
    if (a.hi.sign() <= 0)
        return RealInterval(BigFloat::div(a.hi, b.lo, bits, Round::Down),
                            BigFloat::div(a.lo, b.hi, bits, Round::Up));
    return RealInterval(BigFloat::div(a.hi, b.hi, bits, Round::Down),
                        BigFloat::div(a.lo, b.hi, bits, Round::Up));
}

RealInterval ri_square(const RealInterval& a, unsigned bits) {
    if (a.contains_zero()) {
        BigFloat m = a.lo.negated() > a.hi ? a.lo.negated() : a.hi;
        return RealInterval(BigFloat(), BigFloat::mul(m, m, bits, Round::Up));
    }
    return ri_mul(a, a, bits);
}

RealInterval ri_sqrt(const RealInterval& a, unsigned bits) {
    BigFloat lo = a.lo.sign() <= 0 ? BigFloat() : BigFloat::sqrt(a.lo, bits, Round::Down);
    if (a.hi.sign() < 0) throw Error("RealInterval: sqrt of negative interval");
    BigFloat hi = BigFloat::sqrt(a.hi, bits, Round::Up);
    return RealInterval(lo, hi);
}

RealInterval ri_abs(const RealInterval& a) {
    if (a.lo.sign() >= 0) return a;
    if (a.hi.sign() <= 0) return a.negated();
    return RealInterval(BigFloat(), a.lo.negated() > a.hi ? a.lo.negated() : a.hi);
}

RealInterval ri_scale(const RealInterval& a, const Rational& c, unsigned bits) {
    return ri_mul(a, RealInterval::of_rational(c, bits + 4), bits);
}

RealInterval ri_scale_int(const RealInterval& a, const BigInt& c, unsigned bits) {
    RealInterval ci = RealInterval::point(BigFloat(c));
    return ri_mul(a, ci, bits);
}

namespace {

// Alternating series sum_{j>=0} (-1)^j / ((2j+1) m^(2j+1)), i.e. atan(1/m).
RealInterval atan_recip(unsigned long m, unsigned bits) {
    const unsigned wb = bits + 24;
    RealInterval x = ri_div(RealInterval::of_long(1), RealInterval::of_long(static_cast<long>(m)), wb);
    RealInterval x2 = ri_square(x, wb);
    RealInterval power = x;  // x^(2j+1)
    RealInterval sum;
    long j = 0;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    while (true) {
        RealInterval term = ri_div(power, RealInterval::of_long(2 * j + 1), wb);
        if (j % 2 == 0)
            sum = ri_add(sum, term, wb);
        else
            sum = ri_sub(sum, term, wb);
        power = ri_mul(power, x2, wb);
        ++j;
        // Bound on the next (first omitted) term; terms strictly decrease.
        BigFloat next_bound = BigFloat::div(power.hi, BigFloat::from_long(2 * j + 1), wb, Round::Up);
        if (next_bound < eps) {
            sum = sum.padded(next_bound, wb);
            break;
        }
    }
    return RealInterval(sum.lo.rounded(bits, Round::Down), sum.hi.rounded(bits, Round::Up));
}

// atanh(1/m) = sum_{j>=0} 1 / ((2j+1) m^(2j+1)) for m >= 2.
RealInterval atanh_recip(unsigned long m, unsigned bits) {
    const unsigned wb = bits + 24;
    RealInterval x = ri_div(RealInterval::of_long(1), RealInterval::of_long(static_cast<long>(m)), wb);
    RealInterval x2 = ri_square(x, wb);
    RealInterval power = x;
    RealInterval sum;
    long j = 0;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    while (true) {
        RealInterval term = ri_div(power, RealInterval::of_long(2 * j + 1), wb);
        sum = ri_add(sum, term, wb);
        power = ri_mul(power, x2, wb);
        ++j;
        BigFloat next_bound = BigFloat::div(power.hi, BigFloat::from_long(2 * j + 1), wb, Round::Up);
        // Geometric tail: next * 1/(1 - 1/m^2) <= next * 2 for m >= 2.
        BigFloat tail = BigFloat::mul(next_bound, BigFloat::from_long(2), wb, Round::Up);
        if (tail < eps) {
            sum = RealInterval(sum.lo, BigFloat::add(sum.hi, tail, wb, Round::Up));
            break;
        }
    }
    return RealInterval(sum.lo.rounded(bits, Round::Down), sum.hi.rounded(bits, Round::Up));
}

std::mutex g_const_mutex;

}  // namespace

RealInterval pi_interval(unsigned bits) {
    static std::map<unsigned, RealInterval> cache;
    std::lock_guard<std::mutex> lock(g_const_mutex);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    const unsigned wb = bits + 16;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    RealInterval a = ri_scale_int(atan_recip(5, wb), BigInt(16), wb);
    RealInterval b = ri_scale_int(atan_recip(239, wb), BigInt(4), wb);
    RealInterval pi = ri_sub(a, b, wb);
    pi = RealInterval(pi.lo.rounded(bits, Round::Down), pi.hi.rounded(bits, Round::Up));
    cache.emplace(bits, pi);
    return pi;
}

RealInterval ln2_interval(unsigned bits) {
    static std::map<unsigned, RealInterval> cache;
    std::lock_guard<std::mutex> lock(g_const_mutex);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    RealInterval v = ri_scale_int(atanh_recip(3, bits + 8), BigInt(2), bits);
    cache.emplace(bits, v);
    return v;
}

RealInterval ln_point(const BigFloat& x, unsigned bits) {
    if (x.sign() <= 0) throw Error("ln: argument must be positive");
    const unsigned wb = bits + 24;
    // x = m * 2^k with m in [1, 2)
    long k = x.top_exponent() - 1;
    BigFloat m(x.mantissa(), x.exponent() - k);
    // ln m = 2 atanh(z), z = (m-1)/(m+1) in [0, 1/3)
    RealInterval mi = RealInterval::point(m);
    RealInterval z = ri_div(ri_sub(mi, RealInterval::of_long(1), wb),
                            ri_add(mi, RealInterval::of_long(1), wb), wb);
    RealInterval z2 = ri_square(z, wb);
    RealInterval power = z;
    RealInterval sum;
    long j = 0;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    while (true) {
        RealInterval term = ri_div(power, RealInterval::of_long(2 * j + 1), wb);
        sum = ri_add(sum, term, wb);
        power = ri_mul(power, z2, wb);
        ++j;
        BigFloat next_bound = BigFloat::div(power.hi, BigFloat::from_long(2 * j + 1), wb, Round::Up);
        BigFloat tail = BigFloat::mul(next_bound, BigFloat::from_long(2), wb, Round::Up);
        if (tail < eps || next_bound.is_zero()) {
            sum = RealInterval(sum.lo, BigFloat::add(sum.hi, tail, wb, Round::Up));
            break;
        }
    }
    RealInterval lnm = ri_scale_int(sum, BigInt(2), wb);
    RealInterval result = ri_add(lnm, ri_scale_int(ln2_interval(wb), BigInt(k), wb), wb);
    return RealInterval(result.lo.rounded(bits, Round::Down), result.hi.rounded(bits, Round::Up));
}

RealInterval ln_interval(const RealInterval& x, unsigned bits) {
    if (x.lo.sign() <= 0) throw Error("ln: interval must be strictly positive");
    return RealInterval(ln_point(x.lo, bits).lo, ln_point(x.hi, bits).hi);
}

RealInterval ln_rational(const Rational& x, unsigned bits) {
    if (x.sign() <= 0) throw Error("ln: argument must be positive");
    return ln_interval(RealInterval::of_rational(x, bits + 8), bits);
}

RealInterval exp_interval(const RealInterval& x, unsigned bits) {
    if (!x.lo.is_zero() && x.lo.top_exponent() > 24)
        throw Error("exp: argument out of supported range");
    if (!x.hi.is_zero() && x.hi.top_exponent() > 24)
        throw Error("exp: argument out of supported range");
    // the Taylor tail bound below needs |r| <= 1, so the input must leave
    // room for reduction into that window
    if (x.width(32) > BigFloat::from_long(1))
        throw Error("exp: interval too wide to reduce soundly");
    const unsigned wb = bits + 24;
    RealInterval l2 = ln2_interval(wb);
    // Split x = k*ln2 + r with |r| <= 1.
    double mid = x.mid(53).to_double();
    long k = std::lround(mid / 0.6931471805599453);
    RealInterval r = ri_sub(x, ri_scale_int(l2, BigInt(k), wb), wb);
    for (int guard = 0; r.hi > BigFloat::from_long(1) && guard < 128; ++guard) {
        ++k;
        r = ri_sub(x, ri_scale_int(l2, BigInt(k), wb), wb);
    }
    for (int guard = 0; r.lo < BigFloat::from_long(-1) && guard < 128; ++guard) {
        --k;
        r = ri_sub(x, ri_scale_int(l2, BigInt(k), wb), wb);
    }
    if (r.hi > BigFloat::from_long(1) || r.lo < BigFloat::from_long(-1))
        throw Error("exp: argument reduction failed");
    // exp(r) = sum r^j / j!
    RealInterval sum = RealInterval::of_long(1);
    RealInterval term = RealInterval::of_long(1);
    long j = 0;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    while (true) {
        ++j;
        term = ri_div(ri_mul(term, r, wb), RealInterval::of_long(j), wb);
        sum = ri_add(sum, term, wb);
        BigFloat tb = ri_abs(term).hi;
        // |r| <= 1 so the remaining tail is < |term| * 1/(1 - 1/(j+1)) <= 2|term| once j >= 1.
        BigFloat tail = BigFloat::mul(tb, BigFloat::from_long(2), wb, Round::Up);
        if (tail < eps) {
            sum = sum.padded(tail, wb);
            break;
        }
    }
    // scale by 2^k
    BigFloat lo(sum.lo.mantissa(), sum.lo.exponent() + k);
    BigFloat hi(sum.hi.mantissa(), sum.hi.exponent() + k);
    return RealInterval(lo.rounded(bits, Round::Down), hi.rounded(bits, Round::Up));
}

namespace {

// Shared Taylor loop for sin/cos on |theta| <= 8.
RealInterval sincos_series(const RealInterval& theta, unsigned bits, bool is_sin) {
    if (ri_abs(theta).hi > BigFloat::from_long(8))
        throw Error("sin/cos: angle must be reduced to |theta| <= 8");
    const unsigned wb = bits + 24;
    RealInterval t2 = ri_square(theta, wb);
    RealInterval term = is_sin ? theta : RealInterval::of_long(1);
    RealInterval sum = term;
    long j = 0;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    while (true) {
        ++j;
        long d = is_sin ? (2 * j) * (2 * j + 1) : (2 * j - 1) * (2 * j);
        term = ri_div(ri_mul(term, t2, wb), RealInterval::of_long(d), wb);
        if (j % 2 == 1)
            sum = ri_sub(sum, term, wb);
        else
            sum = ri_add(sum, term, wb);
        BigFloat tb = ri_abs(term).hi;
        // Once 64 = 8^2 < next divisor the terms decrease geometrically (ratio < 1/2).
        long next_d = is_sin ? (2 * j + 2) * (2 * j + 3) : (2 * j + 1) * (2 * j + 2);
        if (next_d > 128 && tb < eps) {
            sum = sum.padded(tb, wb);  // alternating, decreasing: remainder < last term
            break;
        }
    }
    // Clamp to [-1, 1]: sound since |sin|,|cos| <= 1.
    BigFloat one = BigFloat::from_long(1);
    BigFloat lo = sum.lo < one.negated() ? one.negated() : sum.lo;
    BigFloat hi = sum.hi > one ? one : sum.hi;
    if (lo > hi) lo = hi;  // degenerate from clamping; keep a valid interval
    return RealInterval(lo.rounded(bits, Round::Down), hi.rounded(bits, Round::Up));
}

}  // namespace

RealInterval sin_small(const RealInterval& theta, unsigned bits) {
    return sincos_series(theta, bits, true);
}

RealInterval cos_small(const RealInterval& theta, unsigned bits) {
    return sincos_series(theta, bits, false);
}

Rational reduce_mod2(const Rational& c) {
    // c' = c - 2*floor((c+1)/2) in (-1, 1]
    Rational shifted = (c + Rational(1)) / Rational(2);
    BigInt f = shifted.floor();
    Rational r = c - Rational(2 * f);
    if (r == Rational(-1)) r = Rational(1);  // (c+1)/2 integral lands on the closed end
    return r;
}

RealInterval sin_pi_multiple(const Rational& c, unsigned bits) {
    Rational cr = reduce_mod2(c);
    RealInterval theta = ri_scale(pi_interval(bits + 16), cr, bits + 16);
    return sin_small(theta, bits);
}

RealInterval cos_pi_multiple(const Rational& c, unsigned bits) {
    Rational cr = reduce_mod2(c);
    RealInterval theta = ri_scale(pi_interval(bits + 16), cr, bits + 16);
    return cos_small(theta, bits);
}

namespace {

RealInterval reduce_mod_2pi(const Rational& t, unsigned bits) {
    const unsigned wb = bits + 24;
    RealInterval two_pi = ri_scale_int(pi_interval(wb), BigInt(2), wb);
    double approx = t.to_double() / 6.283185307179586;
    if (!std::isfinite(approx))
        throw Error("angle reduction: rational angle too large; use a pi-multiple argument");
    BigInt n(static_cast<long long>(std::llround(approx)));
    RealInterval theta = ri_sub(RealInterval::of_rational(t, wb), ri_scale_int(two_pi, n, wb), wb);
    BigFloat four = BigFloat::from_long(4);
    while (theta.lo > four) {
        ++n;
        theta = ri_sub(RealInterval::of_rational(t, wb), ri_scale_int(two_pi, n, wb), wb);
    }
    while (theta.hi < four.negated()) {
        --n;
        theta = ri_sub(RealInterval::of_rational(t, wb), ri_scale_int(two_pi, n, wb), wb);
    }
    return theta;
}

}  // namespace

RealInterval sin_of_rational(const Rational& t, unsigned bits) {
    return sin_small(reduce_mod_2pi(t, bits), bits);
}

RealInterval cos_of_rational(const Rational& t, unsigned bits) {
    return cos_small(reduce_mod_2pi(t, bits), bits);
}

RealInterval atanh_small(const RealInterval& z, unsigned bits) {
    if (ri_abs(z).hi > BigFloat::from_rational(Rational(BigInt(1), BigInt(2)), 16, Round::Up))
        throw Error("atanh_small: |z| must be <= 1/2");
    const unsigned wb = bits + 16;
    RealInterval z2 = ri_square(z, wb);
    RealInterval power = z;
    RealInterval sum;
    long j = 0;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    while (true) {
        sum = ri_add(sum, ri_div(power, RealInterval::of_long(2 * j + 1), wb), wb);
        power = ri_mul(power, z2, wb);
        ++j;
        BigFloat next = BigFloat::div(ri_abs(power).hi, BigFloat::from_long(2 * j + 1), wb, Round::Up);
        // geometric tail with ratio z^2 <= 1/4: remainder < next * 4/3 < 2 next
        BigFloat tail = BigFloat::mul(next, BigFloat::from_long(2), wb, Round::Up);
        if (tail < eps || next.is_zero()) {
            sum = sum.padded(tail, wb);
            break;
        }
    }
    return RealInterval(sum.lo.rounded(bits, Round::Down), sum.hi.rounded(bits, Round::Up));
}

RealInterval IntegerLn::get(const BigInt& n) {
    if (n <= 0) throw Error("IntegerLn: argument must be positive");
    if (n == 1) return RealInterval();
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    // nearest cached neighbor
    const BigInt* best = nullptr;
    const RealInterval* best_ln = nullptr;
    auto ub = cache_.lower_bound(n);
    if (ub != cache_.end()) {
        best = &ub->first;
        best_ln = &ub->second;
    }
    if (ub != cache_.begin()) {
        auto prev = std::prev(ub);
        if (!best || n - prev->first < *best - n) {
            best = &prev->first;
            best_ln = &prev->second;
        }
    }
    RealInterval result;
    if (best && boost::multiprecision::abs(BigInt(n - *best)) * 4 <= n + *best) {
        // ln n = ln m + 2 atanh((n-m)/(n+m)), |z| <= 1/4
        Rational z(n - *best, n + *best);
        RealInterval a = atanh_small(RealInterval::of_rational(z, bits_ + 8), bits_ + 8);
        result = ri_add(*best_ln, ri_scale_int(a, BigInt(2), bits_), bits_);
    } else {
        result = ln_point(BigFloat(n), bits_);
    }
    cache_.emplace(n, result);
    return result;
}

}  // namespace ostro
