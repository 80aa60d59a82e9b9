#include "ostro/rational.hpp"

#include <cmath>
#include <sstream>

#include "ostro/bigfloat.hpp"

namespace ostro {

double Rational::to_double() const {
    if (num_ == 0) return 0.0;
    // route through the dyadic type; direct num/den overflows past 1e308
    return BigFloat::from_rational(*this, 64, Round::Down).to_double();
}

void Rational::normalize() {
    if (den_ == 0) throw Error("Rational: zero denominator");
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = gcd(boost::multiprecision::abs(num_), den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    // scientific notation: mantissa e exponent, both exact
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        Rational mant = from_string(s.substr(0, epos));
        long exp10 = std::stol(s.substr(epos + 1));
        BigInt scale = pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
        return exp10 >= 0 ? mant * Rational(scale) : mant / Rational(scale);
    }
    // plain decimals like "0.3" are exact tenths
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) return Rational(BigInt(head));
    bool neg = !head.empty() && head[0] == '-';
    BigInt ipart = head.empty() || head == "-" ? BigInt(0) : BigInt(head);
    BigInt scale = pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt num = boost::multiprecision::abs(ipart) * scale + BigInt(frac);
    if (neg || ipart < 0) num = -num;
    return Rational(num, scale);
}

std::string Rational::to_string() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

std::string Rational::to_decimal(std::size_t digits) const {
    if (num_ == 0) return "0";
    if (digits == 0) digits = 1;
    const BigInt n = boost::multiprecision::abs(num_);

    // Exponent e with 10^(e-1) <= n/den < 10^e, estimated from bit lengths
    // and then fixed up exactly.
    constexpr double kLog10Of2 = 0.30102999566398119521;
    long e = static_cast<long>(std::floor(
        (static_cast<double>(bit_length(n)) - static_cast<double>(bit_length(den_))) *
        kLog10Of2));
    auto value_ge_pow10 = [&](long k) {
        if (k >= 0) return n >= den_ * pow(BigInt(10), static_cast<unsigned>(k));
        return n * pow(BigInt(10), static_cast<unsigned>(-k)) >= den_;
    };
    while (value_ge_pow10(e)) ++e;
    while (!value_ge_pow10(e - 1)) --e;

    // round(n/den * 10^(digits-e)), half away from zero
    long shift = static_cast<long>(digits) - e;
    BigInt snum = n, sden = den_;
    if (shift >= 0)
        snum *= pow(BigInt(10), static_cast<unsigned>(shift));
    else
        sden *= pow(BigInt(10), static_cast<unsigned>(-shift));
    BigInt q = snum / sden;
    BigInt r = snum % sden;
    if (2 * r >= sden) ++q;
    std::string ds = q.str();
    if (ds.size() > digits) {  // 9.99... rounded up into a new leading digit
        ++e;
        ds.pop_back();
    }
    while (ds.size() > 1 && ds.back() == '0') ds.pop_back();

    std::ostringstream out;
    if (num_ < 0) out << '-';
    if (e >= 1 && e <= static_cast<long>(ds.size())) {
        out << ds.substr(0, static_cast<std::size_t>(e));
        if (e < static_cast<long>(ds.size()))
            out << '.' << ds.substr(static_cast<std::size_t>(e));
    } else if (e >= 1 && e <= 18) {
        out << ds << std::string(static_cast<std::size_t>(e) - ds.size(), '0');
    } else if (e <= 0 && e >= -5) {
        out << "0." << std::string(static_cast<std::size_t>(-e), '0') << ds;
    } else {
        out << ds.substr(0, 1);
        if (ds.size() > 1) out << '.' << ds.substr(1);
        out << 'e' << (e - 1);
    }
    return out.str();
}

}  // namespace ostro
