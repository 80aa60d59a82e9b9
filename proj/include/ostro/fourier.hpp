#pragma once

#include <string>
#include <vector>

#include "ostro/enclosure.hpp"
#include "ostro/measures.hpp"
#include "ostro/real_interval.hpp"

namespace ostro {

/// Rectangular complex enclosure.
struct ComplexEnclosure {
    RealInterval re;
    RealInterval im;

    static ComplexEnclosure one() {
        return ComplexEnclosure{RealInterval::of_long(1), RealInterval()};
    }
    ComplexEnclosure conjugate() const { return ComplexEnclosure{re, im.negated()}; }
    ComplexEnclosure mul(const ComplexEnclosure& o, unsigned bits) const {
        return ComplexEnclosure{
            ri_sub(ri_mul(re, o.re, bits), ri_mul(im, o.im, bits), bits),
            ri_add(ri_mul(re, o.im, bits), ri_mul(im, o.re, bits), bits)};
    }
    RealInterval modulus(unsigned bits) const {
        return ri_sqrt(ri_add(ri_square(re, bits), ri_square(im, bits), bits), bits);
    }
    bool contains(const Rational& real_part, const Rational& imag_part) const {
        return re.lo.to_rational() <= real_part && real_part <= re.hi.to_rational() &&
               im.lo.to_rational() <= imag_part && imag_part <= im.hi.to_rational();
    }
};

/// Exact representation of evaluation points t: either a plain rational or
/// a rational multiple of pi. Keeping pi symbolic lets factor angles reduce
/// modulo 2 pi as exact rationals, so astronomically large t (e.g. 2 pi
/// lcm(q_1..q_n)) never reaches a floating sine.
struct TrigArgument {
    Rational coeff;
    bool times_pi = false;

    static TrigArgument plain(Rational t) { return TrigArgument{std::move(t), false}; }
    static TrigArgument pi_multiple(Rational c) { return TrigArgument{std::move(c), true}; }
    static TrigArgument zero() { return TrigArgument{Rational(0), false}; }

    bool is_zero() const { return coeff.is_zero(); }
    RealInterval abs_enclosure(unsigned bits) const;
    std::string to_string() const;
};

struct CfOptions {
    unsigned start_bits = 256;
    unsigned max_bits = 1u << 14;
};

/// Characteristic-function product over the first n_terms digit factors
/// p0k + p1k exp((-1)^(k-1) i t / q_k), with a certified multiplicative
/// tail for the omitted factors (|f_k - 1| <= |t|/q_k, summed via the tail
/// bound 2|t|/q_{n+1}). Enclosure width <= tol or PrecisionBudgetError.
ComplexEnclosure cf_eval(const MeasureModel& model, const TrigArgument& t, std::size_t n_terms,
                         const Rational& tol, const CfOptions& opts = {});

/// |f(t)| via the real product of sqrt(1 - 4 p0k p1k sin^2(t / 2 q_k)).
IntervalEnclosure cf_modulus(const MeasureModel& model, const TrigArgument& t,
                             std::size_t n_terms, const Rational& tol,
                             const CfOptions& opts = {});

/// Fourier-Stieltjes coefficient c_m = f(2 pi m), with the truncation depth
/// chosen automatically so the tail fits inside tol.
ComplexEnclosure fs_coefficient(const MeasureModel& model, const BigInt& m, const Rational& tol,
                                const CfOptions& opts = {});

/// Exact lcm(q_1, ..., q_n).
BigInt lcm_subsequence(const OstroSequence& seq, std::size_t n);

/// Enclosure of (1 - 2 pi/7)(1 - pi/6), the universal lower bound for the
/// probed coefficient moduli.
IntervalEnclosure coefficient_lower_bound_constant(unsigned bits = 128);

struct ProbeRow {
    std::size_t n = 0;
    BigInt k_n;
    IntervalEnclosure modulus;
};

struct CoefficientProbeReport {
    std::vector<ProbeRow> rows;
    IntervalEnclosure theorem_bound;  // (1 - 2 pi/7)(1 - pi/6)

    /// True when every probed |c_{k_n}| is certified above the bound.
    bool all_above_bound() const {
        for (const auto& r : rows)
            if (!(r.modulus.lo > theorem_bound.hi)) return false;
        return true;
    }
};

/// |c_{k_n}| for n in [n_lo, n_hi], k_n = lcm(q_1..q_n). Factors with
/// k <= n are exactly 1 (q_k divides k_n); later factors reduce the angle
/// exactly before evaluation.
CoefficientProbeReport coefficient_probe(const MeasureModel& model, std::size_t n_lo,
                                         std::size_t n_hi, const Rational& tol,
                                         const CfOptions& opts = {});

struct LBoundReport {
    IntervalEnclosure lower_bound;  // [max probed modulus lo, 1]
    std::vector<std::pair<std::size_t, Rational>> lcm_ratios;  // lcm(q_1..q_n)/q_{n+1}
    bool limit_one_certified = false;  // liminf ratio = 0 known analytically
    std::string note;
};

/// Certified lower bound for limsup_{|t|->inf} |f(t)| from a probe report,
/// plus the lcm ratio diagnostics for the limit-1 condition.
LBoundReport l_lower_bound(const MeasureModel& model, const CoefficientProbeReport& probe);

}  // namespace ostro
