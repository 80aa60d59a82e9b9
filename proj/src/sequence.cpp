#include "ostro/sequence.hpp"

#include <sstream>

namespace ostro {

namespace {

void check_defining_condition(const std::vector<BigInt>& q) {
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 1) {
            std::ostringstream msg;
            msg << "sequence term q_" << (i + 1) << " = " << q[i] << " is not positive";
            throw InvalidSequenceError(msg.str(), i + 1);
        }
        if (i + 1 < q.size() && q[i + 1] < q[i] * (q[i] + 1)) {
            std::ostringstream msg;
            msg << "q_" << (i + 2) << " = " << q[i + 1] << " < q_" << (i + 1) << "(q_"
                << (i + 1) << "+1) = " << q[i] * (q[i] + 1);
            throw InvalidSequenceError(msg.str(), i + 2);
        }
    }
}

BigInt next_term(const GeneratorRule& rule, const std::vector<BigInt>& q) {
    switch (rule.kind) {
        case RuleKind::Sylvester: {
            if (q.empty()) return rule.param;
            const BigInt& last = q.back();
            return last * (last + 1);
        }
        case RuleKind::Power: {
            // q_k = s^(m_k), m_1 = 1, m_{k+1} = 2 m_k + 1, i.e. m_k = 2^k - 1.
            std::size_t k = q.size() + 1;
            BigInt m = pow2(k) - 1;
            if (m > (1L << 26))
                throw DepthOverflowError("power rule: q_" + std::to_string(k) +
                                         " too large to materialize exactly");
            return pow(rule.param, m.convert_to<unsigned>());
        }
        case RuleKind::PrimeChain: {
            if (q.empty()) return BigInt(2);
            const BigInt& last = q.back();
            return next_prime_at_least(last * (last + 1), rule.primality);
        }
        case RuleKind::Explicit:
            break;
    }
    throw Error("explicit sequences cannot be extended");
}

}  // namespace

std::string rule_kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::Explicit: return "explicit";
        case RuleKind::Sylvester: return "sylvester";
        case RuleKind::Power: return "power";
        case RuleKind::PrimeChain: return "prime_chain";
    }
    return "?";
}

OstroSequence OstroSequence::from_prefix(std::vector<BigInt> prefix) {
    check_defining_condition(prefix);
    OstroSequence s;
    s.exact_ = std::move(prefix);
    s.max_exact_depth_ = std::max(kDefaultMaxExactDepth, s.exact_.size());
    return s;
}

OstroSequence OstroSequence::generate(const GeneratorRule& rule, std::size_t depth,
                                      std::size_t max_exact_depth) {
    if (depth < 1) throw Error("generate: depth must be >= 1");
    if (rule.kind == RuleKind::Explicit)
        throw Error("generate: explicit rule carries no generator");
    if (rule.kind == RuleKind::Sylvester && rule.param < 1)
        throw Error("generate: sylvester q1 must be >= 1");
    if (rule.kind == RuleKind::Power && rule.param < 2)
        throw Error("generate: power base must be >= 2");
    if (depth > max_exact_depth)
        throw DepthOverflowError("generate: requested exact depth " + std::to_string(depth) +
                                 " exceeds max_exact_depth " + std::to_string(max_exact_depth));
    OstroSequence s;
    s.rule_ = rule;
    s.max_exact_depth_ = max_exact_depth;
    s.exact_.reserve(depth);
    for (std::size_t i = 0; i < depth; ++i) s.exact_.push_back(next_term(rule, s.exact_));
    check_defining_condition(s.exact_);
    return s;
}

bool OstroSequence::can_materialize(std::size_t k) const {
    if (k == 0) return false;
    if (k <= exact_.size()) return true;
    return rule_.has_value() && k <= max_exact_depth_;
}

const BigInt& OstroSequence::q(std::size_t k) const {
    if (k == 0) throw Error("sequence indices are 1-based");
    if (k <= exact_.size()) return exact_[k - 1];
    if (!rule_)
        throw InsufficientDepthError("q_" + std::to_string(k) + " requested but only " +
                                     std::to_string(exact_.size()) + " terms are available");
    if (k > max_exact_depth_)
        throw DepthOverflowError("q_" + std::to_string(k) + " exceeds max_exact_depth " +
                                 std::to_string(max_exact_depth_) +
                                 "; use log_q for deeper terms");
    while (exact_.size() < k) exact_.push_back(next_term(*rule_, exact_));
    return exact_[k - 1];
}

RealInterval OstroSequence::log_q(std::size_t k, unsigned bits) const {
    if (k == 0) throw Error("sequence indices are 1-based");
    if (can_materialize(k)) return ln_rational(Rational(q(k)), bits);
    if (!rule_)
        throw InsufficientDepthError("log_q_" + std::to_string(k) +
                                     " requested beyond an explicit prefix");
    const unsigned wb = bits + 16;
    if (rule_->kind == RuleKind::Power) {
        BigInt m = pow2(k) - 1;
        return ri_scale_int(ln_rational(Rational(rule_->param), wb), m, bits);
    }
    // Walk the recurrence from the deepest exact term.
    std::size_t base = std::min(exact_.size() > 0 ? exact_.size() : 1, max_exact_depth_);
    q(base);  // materialize
    RealInterval L = ln_rational(Rational(exact_[base - 1]), wb);
    const BigFloat tiny(BigInt(1), -60);  // > ln(1 + 1/q) for the huge q past exact depth
    RealInterval ln2 = ln2_interval(wb);
    for (std::size_t i = base; i < k; ++i) {
        // sylvester: ln q_{i+1} = 2 ln q_i + ln(1 + 1/q_i)
        // prime_chain: q_i(q_i+1) <= q_{i+1} < 2 q_i(q_i+1)  (Bertrand)
        BigFloat lo = BigFloat::mul(L.lo, BigFloat::from_long(2), wb, Round::Down);
        BigFloat hi = BigFloat::add(BigFloat::mul(L.hi, BigFloat::from_long(2), wb, Round::Up),
                                    tiny, wb, Round::Up);
        if (rule_->kind == RuleKind::PrimeChain)
            hi = BigFloat::add(hi, ln2.hi, wb, Round::Up);
        L = RealInterval(lo, hi);
    }
    return RealInterval(L.lo.rounded(bits, Round::Down), L.hi.rounded(bits, Round::Up));
}

IntervalEnclosure enclose_tail(const OstroSequence& seq, std::size_t n,
                               std::size_t extra_terms) {
    if (!seq.can_materialize(n + extra_terms + 1))
        throw InsufficientDepthError(
            "enclose_tail: needs q_" + std::to_string(n + extra_terms + 1));
    Rational partial(0);
    for (std::size_t i = n + 1; i <= n + extra_terms; ++i) partial += seq.term(i);
    Rational bound = Rational(2) * seq.term(n + extra_terms + 1);
    return IntervalEnclosure(partial, partial + bound);
}

Rational reconstruct(const OstroSequence& seq, std::size_t n) {
    Rational sum(0);
    for (std::size_t k = 1; k <= n; ++k) {
        Rational t = seq.term(k);
        sum += (k % 2 == 1) ? t : -t;
    }
    return sum;
}

ExpansionResult expand(const Rational& x, std::size_t max_terms) {
    if (x.sign() <= 0 || x > Rational(1))
        throw NotInRangeError("expand: x must lie in (0, 1], got " + x.to_string());
    ExpansionResult res;
    // 1 = q_1 x + beta_1 with 0 <= beta_1 < x
    BigInt product(1);  // q_1 q_2 ... q_k after step k
    Rational lhs(1);
    Rational beta = x;  // divisor in the upcoming step
    for (std::size_t step = 1; step <= max_terms; ++step) {
        // lhs = q * beta + next_beta, 0 <= next_beta < beta
        Rational ratio = lhs / beta;
        BigInt qk = ratio.floor();
        Rational next_beta = lhs - Rational(qk) * beta;
        res.denominators.push_back(qk);
        product *= qk;
        bool terminated = next_beta.is_zero();
        res.trace.push_back(ExpansionState{step, qk, next_beta, terminated});
        if (terminated) {
            res.terminated = true;
            break;
        }
        lhs = Rational(product);
        beta = next_beta;
    }
    check_defining_condition(res.denominators);
    return res;
}

namespace {

const char* kP1 = "1:ratio-bound";
const char* kP2 = "2:ratio-vanishes";
const char* kP3 = "3:factorial-lower-bound";
const char* kP4 = "4:quadratic-growth-chain";
const char* kP5 = "5:doubly-exponential-floor";
const char* kP6 = "6:tail-bound";
const char* kP7 = "7:product-ratio-bound";
const char* kP8 = "8:term-dominates-tail";

PropertyCheck make(const char* prop, std::size_t idx, CheckStatus st, std::string detail = {}) {
    return PropertyCheck{prop, idx, st, std::move(detail)};
}

}  // namespace

ValidationReport validate(const OstroSequence& seq) {
    const std::size_t d = seq.exact_size();
    if (d < 2) throw Error("validate: need at least 2 terms");
    check_defining_condition(seq.prefix());

    ValidationReport rep;
    rep.depth = d;
    auto add = [&rep](PropertyCheck c) { rep.checks.push_back(std::move(c)); };

    // 1: q_n / q_{n+1} <= 1/(q_n + 1) < 1/q_n
    for (std::size_t n = 1; n + 1 <= d; ++n) {
        bool ok = seq.q(n) * (seq.q(n) + 1) <= seq.q(n + 1);
        add(make(kP1, n, ok ? CheckStatus::Pass : CheckStatus::Fail));
    }
    // 2: q_n / q_{n+1} -> 0, certified by the strictly decreasing bound 1/(q_n+1)
    for (std::size_t n = 1; n + 1 <= d; ++n) {
        bool shrinking = n == 1 || seq.q(n) > seq.q(n - 1);
        bool ok = shrinking && seq.q(n) * (seq.q(n) + 1) <= seq.q(n + 1);
        add(make(kP2, n, ok ? CheckStatus::Pass : CheckStatus::Fail,
                 "bound 1/(q_n+1) = " + (Rational(1) / Rational(seq.q(n) + 1)).to_string()));
    }
    // 3: q_n >= n!
    {
        BigInt fact(1);
        for (std::size_t n = 1; n <= d; ++n) {
            fact *= static_cast<unsigned long>(n);
            add(make(kP3, n, seq.q(n) >= fact ? CheckStatus::Pass : CheckStatus::Fail));
        }
    }
    // 4: q_{n+1} > q_n^2 > q_{n-1}^4 > ... > q_1^(2^n). Adjacent strict
    // links imply the full chain; deep links are still checked directly
    // while the exponentiation stays affordable.
    for (std::size_t n = 1; n + 1 <= d; ++n) {
        bool ok = true;
        for (std::size_t j = 1; j <= n && j <= 24 && ok; ++j) {
            unsigned long e = pow2(j).convert_to<unsigned long>();
            if (e * bit_length(seq.q(n + 1 - j)) > (1UL << 24)) break;
            ok = seq.q(n + 1) > pow(seq.q(n + 1 - j), static_cast<unsigned>(e));
        }
        add(make(kP4, n, ok ? CheckStatus::Pass : CheckStatus::Fail));
    }
    // 5: q_{n+1} > q_2^(2^(n-1)) >= 2^(2^(n-1)), applicable from n = 2
    for (std::size_t n = 1; n + 1 <= d; ++n) {
        if (n < 2) {
            add(make(kP5, n, CheckStatus::NotApplicable, "chain needs n >= 2"));
            continue;
        }
        unsigned long e = pow2(n - 1).convert_to<unsigned long>();
        bool ok = seq.q(n + 1) > pow(seq.q(2), static_cast<unsigned>(e)) && seq.q(2) >= 2;
        add(make(kP5, n, ok ? CheckStatus::Pass : CheckStatus::Fail));
    }
    // 6: r_n < 2/q_{n+1}, decided through the certified tail enclosure.
    // extra_terms = 1 always separates strictly; at the prefix edge only
    // the coarse e = 0 enclosure exists and the comparison is reported
    // NotApplicable.
    for (std::size_t n = 1; n + 1 <= d; ++n) {
        Rational bound = Rational(2) * seq.term(n + 1);
        std::size_t e = std::min<std::size_t>(2, d - n - 1);
        IntervalEnclosure r = enclose_tail(seq, n, e);
        CheckStatus st = CheckStatus::NotApplicable;
        if (r.certainly_less_than(bound))
            st = CheckStatus::Pass;
        else if (bound <= r.lo)
            st = CheckStatus::Fail;
        add(make(kP6, n, st));
    }
    // 7: q_1...q_n / q_{n+1} <= 2/7 (n >= 3) and <= 1/(q_1+1) (all n)
    {
        BigInt prod(1);
        const Rational two_sevenths(BigInt(2), BigInt(7));
        for (std::size_t n = 1; n + 1 <= d; ++n) {
            prod *= seq.q(n);
            Rational lhs(prod, seq.q(n + 1));
            Rational alt = Rational(1) / Rational(seq.q(1) + 1);
            bool ok_alt = lhs <= alt;
            if (n < 3) {
                add(make(kP7, n,
                         ok_alt ? CheckStatus::Pass : CheckStatus::Fail,
                         "2/7 form needs n >= 3; checked <= 1/(q_1+1)"));
            } else {
                bool ok = lhs <= two_sevenths && ok_alt;
                add(make(kP7, n, ok ? CheckStatus::Pass : CheckStatus::Fail,
                         "lhs = " + lhs.to_string()));
            }
        }
    }
    // 8: a_n > r_n via certified enclosures
    for (std::size_t n = 1; n + 1 <= d; ++n) {
        Rational a_n = seq.term(n);
        CheckStatus st = CheckStatus::NotApplicable;
        std::string detail;
        for (std::size_t e = 0; n + e + 1 <= d && e <= 4; ++e) {
            IntervalEnclosure r = enclose_tail(seq, n, e);
            if (r.certainly_less_than(a_n)) {
                st = CheckStatus::Pass;
                detail = "decided with extra_terms = " + std::to_string(e);
                break;
            }
            if (a_n <= r.lo) {  // provably violated
                st = CheckStatus::Fail;
                break;
            }
        }
        add(make(kP8, n, st, detail));
    }
    return rep;
}

}  // namespace ostro
