#include "ostro/enclosure.hpp"

#include <cmath>
#include <sstream>

namespace ostro {

LogMagnitude LogMagnitude::from_rational(const Rational& v, unsigned bits) {
    if (v.is_zero()) return zero();
    RealInterval l = ln_rational(v.abs(), bits);
    return LogMagnitude{v.sign(), l.mid(bits)};
}

double LogMagnitude::log10_value() const {
    if (sign == 0) return -HUGE_VAL;
    return log_abs.to_double() / 2.302585092994045684;
}

std::string LogMagnitude::magnitude_decimal(unsigned bits) const {
    if (sign == 0) return "0";
    // |v| = 10^L with L = log_abs / ln 10; split L into integer exponent
    // and mantissa 10^frac in [1, 10).
    RealInterval ln10 = ln_rational(Rational(10), bits);
    RealInterval L = ri_div(RealInterval::point(log_abs), ln10, bits);
    double approx = L.mid(53).to_double();
    if (std::abs(approx) > 4.5e15) {
        // beyond exact double integers: exponent only, no mantissa digits
        std::ostringstream out;
        if (sign < 0) out << '-';
        out << "10^(" << L.mid(64).to_rational().to_decimal(18) << ")";
        return out.str();
    }
    long e = static_cast<long>(std::floor(approx));
    RealInterval frac = ri_sub(L, RealInterval::of_long(e), bits);
    // frac may fall slightly outside [0,1) near integer boundaries; renormalize.
    while (frac.lo > BigFloat::from_long(1)) {
        ++e;
        frac = ri_sub(frac, RealInterval::of_long(1), bits);
    }
    while (frac.hi < BigFloat()) {
        --e;
        frac = ri_add(frac, RealInterval::of_long(1), bits);
    }
    RealInterval mant = exp_interval(ri_mul(frac, ln10, bits), bits);
    Rational m = mant.mid(bits).to_rational();
    std::ostringstream out;
    if (sign < 0) out << '-';
    out << m.to_decimal(3) << 'e' << e;
    return out.str();
}

LogMagnitude log_product(std::span<const LogMagnitude> factors, unsigned bits) {
    int sign = 1;
    BigFloat acc;
    for (const auto& f : factors) {
        if (f.sign == 0) return LogMagnitude::zero();
        sign *= f.sign;
        acc = BigFloat::add(acc, f.log_abs, bits, Round::Down);
    }
    return LogMagnitude{sign, acc};
}

}  // namespace ostro
