#include "ostro/fourier.hpp"

#include <algorithm>

namespace ostro {

RealInterval TrigArgument::abs_enclosure(unsigned bits) const {
    RealInterval c = RealInterval::of_rational(coeff.abs(), bits);
    if (!times_pi) return c;
    return ri_mul(c, pi_interval(bits), bits);
}

std::string TrigArgument::to_string() const {
    if (!times_pi) return coeff.to_string();
    return coeff.to_string() + "*pi";
}

namespace {

// sin/cos of (-1)^(k-1) t / q_k with exact modular reduction.
struct FactorAngle {
    RealInterval sin_v;
    RealInterval cos_v;
    RealInterval sin_half;  // sin(t / (2 q_k)), sign-independent use
};

FactorAngle factor_angle(const TrigArgument& t, const BigInt& q_k, bool negate, unsigned bits) {
    FactorAngle out;
    Rational c = t.coeff / Rational(q_k);
    if (negate) c = -c;
    if (t.times_pi) {
        out.sin_v = sin_pi_multiple(c, bits);
        out.cos_v = cos_pi_multiple(c, bits);
        out.sin_half = sin_pi_multiple(c / Rational(2), bits);
    } else {
        out.sin_v = sin_of_rational(c, bits);
        out.cos_v = cos_of_rational(c, bits);
        out.sin_half = sin_of_rational(c / Rational(2), bits);
    }
    return out;
}

// Multiplicative tail bound: prod_{k>n} f_k(t) = 1 + delta with
// |delta| <= e^s - 1, s = |t| sum_{k>n} 1/q_k <= 2|t|/q_{n+1}.
// Returns the upper bound for |delta|, or nothing if q_{n+1} is out of
// reach.
std::optional<BigFloat> tail_delta_bound(const MeasureModel& model, const TrigArgument& t,
                                         std::size_t n_terms, unsigned bits) {
    const OstroSequence& seq = *model.seq;
    if (!seq.can_materialize(n_terms + 1)) return std::nullopt;
    RealInterval abs_t = t.abs_enclosure(bits);
    BigFloat q(seq.q(n_terms + 1));
    BigFloat s_hi = BigFloat::div(BigFloat::mul(abs_t.hi, BigFloat::from_long(2), bits, Round::Up),
                                  q, bits, Round::Up);
    if (s_hi > BigFloat::from_long(16)) return std::nullopt;  // useless bound
    RealInterval es = exp_interval(RealInterval(s_hi, s_hi), bits);
    return BigFloat::sub(es.hi, BigFloat::from_long(1), bits, Round::Up);
}

ComplexEnclosure cf_eval_at_bits(const MeasureModel& model, const TrigArgument& t,
                                 std::size_t n_terms, unsigned bits, bool& tail_ok) {
    const OstroSequence& seq = *model.seq;
    const ProbabilityKernel& K = model.kernel;
    ComplexEnclosure acc = ComplexEnclosure::one();
    for (std::size_t k = 1; k <= n_terms; ++k) {
        FactorAngle ang = factor_angle(t, seq.q(k), k % 2 == 0, bits);
        RealInterval p0 = K.p0_enclosure(k, bits);
        RealInterval p1 = K.p1_enclosure(k, bits);
        ComplexEnclosure f{ri_add(p0, ri_mul(p1, ang.cos_v, bits), bits),
                           ri_mul(p1, ang.sin_v, bits)};
        acc = acc.mul(f, bits);
    }
    auto delta = tail_delta_bound(model, t, n_terms, bits);
    tail_ok = delta.has_value();
    if (tail_ok && delta->sign() > 0) {
        RealInterval dbox(delta->negated(), *delta);
        ComplexEnclosure tail{ri_add(RealInterval::of_long(1), dbox, bits), dbox};
        acc = acc.mul(tail, bits);
    }
    return acc;
}

IntervalEnclosure cf_modulus_at_bits(const MeasureModel& model, const TrigArgument& t,
                                     std::size_t n_terms, unsigned bits, bool& tail_ok) {
    const OstroSequence& seq = *model.seq;
    const ProbabilityKernel& K = model.kernel;
    RealInterval acc = RealInterval::of_long(1);
    for (std::size_t k = 1; k <= n_terms; ++k) {
        FactorAngle ang = factor_angle(t, seq.q(k), k % 2 == 0, bits);
        RealInterval p0 = K.p0_enclosure(k, bits);
        RealInterval p1 = K.p1_enclosure(k, bits);
        RealInterval four_pq = ri_scale_int(ri_mul(p0, p1, bits), BigInt(4), bits);
        RealInterval inner = ri_sub(RealInterval::of_long(1),
                                    ri_mul(four_pq, ri_square(ang.sin_half, bits), bits), bits);
        acc = ri_mul(acc, ri_sqrt(inner, bits), bits);
    }
    auto delta = tail_delta_bound(model, t, n_terms, bits);
    tail_ok = delta.has_value();
    if (tail_ok && delta->sign() > 0) {
        BigFloat lo_f = BigFloat::sub(BigFloat::from_long(1), *delta, bits, Round::Down);
        if (lo_f.sign() < 0) lo_f = BigFloat();
        acc = ri_mul(acc, RealInterval(lo_f, BigFloat::add(BigFloat::from_long(1), *delta, bits,
                                                           Round::Up)),
                     bits);
    }
    // |f| <= 1 always
    BigFloat one = BigFloat::from_long(1);
    return IntervalEnclosure::from_real(RealInterval(
        acc.lo.sign() < 0 ? BigFloat() : acc.lo, acc.hi > one ? one : acc.hi));
}

}  // namespace

ComplexEnclosure cf_eval(const MeasureModel& model, const TrigArgument& t, std::size_t n_terms,
                         const Rational& tol, const CfOptions& opts) {
    if (n_terms < 1) throw Error("cf_eval: n_terms must be >= 1");
    if (tol.sign() <= 0) throw Error("cf_eval: tol must be positive");
    if (t.is_zero()) return ComplexEnclosure::one();
    for (unsigned bits = opts.start_bits; bits <= opts.max_bits; bits *= 2) {
        bool tail_ok = false;
        ComplexEnclosure v = cf_eval_at_bits(model, t, n_terms, bits, tail_ok);
        if (!tail_ok)
            throw PrecisionBudgetError("cf_eval: tail factor unbounded at n_terms = " +
                                       std::to_string(n_terms) + "; increase n_terms");
        Rational w_re = v.re.width(64).to_rational();
        Rational w_im = v.im.width(64).to_rational();
        if (w_re <= tol && w_im <= tol) return v;
    }
    throw PrecisionBudgetError("cf_eval: width above tol at max precision; tail from n_terms = " +
                               std::to_string(n_terms) + " may dominate");
}

IntervalEnclosure cf_modulus(const MeasureModel& model, const TrigArgument& t,
                             std::size_t n_terms, const Rational& tol, const CfOptions& opts) {
    if (n_terms < 1) throw Error("cf_modulus: n_terms must be >= 1");
    if (tol.sign() <= 0) throw Error("cf_modulus: tol must be positive");
    if (t.is_zero()) return IntervalEnclosure::point(Rational(1));
    for (unsigned bits = opts.start_bits; bits <= opts.max_bits; bits *= 2) {
        bool tail_ok = false;
        IntervalEnclosure v = cf_modulus_at_bits(model, t, n_terms, bits, tail_ok);
        if (!tail_ok)
            throw PrecisionBudgetError("cf_modulus: tail factor unbounded at n_terms = " +
                                       std::to_string(n_terms) + "; increase n_terms");
        if (v.width() <= tol) return v;
    }
    throw PrecisionBudgetError("cf_modulus: width above tol at max precision; tail from n_terms = " +
                               std::to_string(n_terms) + " may dominate");
}

namespace {

// smallest truncation depth whose tail bound is comfortably inside tol
std::size_t auto_terms(const MeasureModel& model, const TrigArgument& t, const Rational& tol) {
    const OstroSequence& seq = *model.seq;
    const unsigned bits = 128;
    for (std::size_t n = 1;; ++n) {
        if (!seq.can_materialize(n + 1))
            throw PrecisionBudgetError(
                "characteristic function: tail cannot be brought below tol within the "
                "materializable depth");
        auto delta = tail_delta_bound(model, t, n, bits);
        if (delta && delta->to_rational() <= tol / Rational(4)) return n;
    }
}

}  // namespace

ComplexEnclosure fs_coefficient(const MeasureModel& model, const BigInt& m, const Rational& tol,
                                const CfOptions& opts) {
    if (m < 0) throw Error("fs_coefficient: m must be >= 0");
    if (m == 0) return ComplexEnclosure::one();
    TrigArgument t = TrigArgument::pi_multiple(Rational(2 * m));
    std::size_t n = auto_terms(model, t, tol);
    return cf_eval(model, t, n, tol, opts);
}

BigInt lcm_subsequence(const OstroSequence& seq, std::size_t n) {
    BigInt acc(1);
    for (std::size_t k = 1; k <= n; ++k) acc = lcm(acc, seq.q(k));
    return acc;
}

IntervalEnclosure coefficient_lower_bound_constant(unsigned bits) {
    RealInterval pi = pi_interval(bits + 8);
    RealInterval a = ri_sub(RealInterval::of_long(1),
                            ri_scale(pi, Rational(BigInt(2), BigInt(7)), bits + 8), bits + 8);
    RealInterval b = ri_sub(RealInterval::of_long(1),
                            ri_scale(pi, Rational(BigInt(1), BigInt(6)), bits + 8), bits + 8);
    return IntervalEnclosure::from_real(ri_mul(a, b, bits));
}

CoefficientProbeReport coefficient_probe(const MeasureModel& model, std::size_t n_lo,
                                         std::size_t n_hi, const Rational& tol,
                                         const CfOptions& opts) {
    if (n_lo < 1 || n_lo > n_hi) throw Error("coefficient_probe: invalid n range");
    CoefficientProbeReport rep;
    rep.theorem_bound = coefficient_lower_bound_constant();
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        ProbeRow row;
        row.n = n;
        row.k_n = lcm_subsequence(*model.seq, n);
        TrigArgument t = TrigArgument::pi_multiple(Rational(2 * row.k_n));
        std::size_t terms = auto_terms(model, t, tol);
        row.modulus = cf_modulus(model, t, terms, tol, opts);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

LBoundReport l_lower_bound(const MeasureModel& model, const CoefficientProbeReport& probe) {
    if (probe.rows.empty()) throw Error("l_lower_bound: probe report is empty");
    LBoundReport out;
    Rational best(0);
    for (const auto& r : probe.rows) best = std::max(best, r.modulus.lo);
    out.lower_bound = IntervalEnclosure(best, Rational(1));

    const OstroSequence& seq = *model.seq;
    for (const auto& r : probe.rows) {
        if (!seq.can_materialize(r.n + 1)) break;
        out.lcm_ratios.emplace_back(r.n, Rational(r.k_n, seq.q(r.n + 1)));
    }
    if (seq.rule() && seq.rule()->kind == RuleKind::Power) {
        out.limit_one_certified = true;
        out.note =
            "power rule: lcm(q_1..q_n) = q_n and q_n/q_{n+1} = s^(-(m_n+1)) -> 0, so the "
            "limsup of |c_k| is 1";
    } else {
        bool decreasing = true;
        for (std::size_t i = 1; i < out.lcm_ratios.size(); ++i)
            if (!(out.lcm_ratios[i].second < out.lcm_ratios[i - 1].second)) decreasing = false;
        out.note = out.lcm_ratios.size() < 2 ? "insufficient ratio data"
                   : decreasing ? "lcm ratios strictly decreasing over the probed range"
                                : "lcm ratios not monotone over the probed range";
    }
    return out;
}

}  // namespace ostro
