#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ostro/bigint.hpp"
#include "ostro/enclosure.hpp"
#include "ostro/errors.hpp"
#include "ostro/primes.hpp"
#include "ostro/rational.hpp"

namespace ostro {

enum class RuleKind { Explicit, Sylvester, Power, PrimeChain };

std::string rule_kind_name(RuleKind k);

/// Closed-form generators for denominator sequences satisfying
/// q_{k+1} >= q_k (q_k + 1).
struct GeneratorRule {
    RuleKind kind = RuleKind::Explicit;
    BigInt param;  // sylvester: q_1; power: base s
    PrimalityConfig primality;

    static GeneratorRule sylvester(BigInt q1) {
        return GeneratorRule{RuleKind::Sylvester, std::move(q1), {}};
    }
    static GeneratorRule power(BigInt s) {
        return GeneratorRule{RuleKind::Power, std::move(s), {}};
    }
    static GeneratorRule prime_chain(PrimalityConfig cfg = {}) {
        return GeneratorRule{RuleKind::PrimeChain, BigInt(0), cfg};
    }
};

inline constexpr std::size_t kDefaultMaxExactDepth = 20;
inline constexpr unsigned kDefaultLogBits = 128;

/// A validated denominator sequence q_1, q_2, ... Exact terms are
/// materialized lazily up to max_exact_depth (they roughly square at each
/// step, so exact storage is infeasible far beyond ~25 for fast rules);
/// past that only enclosures of ln q_k are available, which is enough for
/// dimension profiles and covering volumes.
///
/// The materialization cache is append-only: concurrent readers of already
/// materialized terms are fine, but calls that extend the cache must be
/// serialized externally.
class OstroSequence {
public:
    /// Explicit finite sequence; throws InvalidSequenceError pinpointing
    /// the first index violating q_{k+1} >= q_k (q_k + 1) or positivity.
    static OstroSequence from_prefix(std::vector<BigInt> prefix);

    /// First `depth` terms of a rule-driven sequence.
    static OstroSequence generate(const GeneratorRule& rule, std::size_t depth,
                                  std::size_t max_exact_depth = kDefaultMaxExactDepth);

    std::size_t exact_size() const { return exact_.size(); }
    std::size_t max_exact_depth() const { return max_exact_depth_; }
    const std::optional<GeneratorRule>& rule() const { return rule_; }
    const std::vector<BigInt>& prefix() const { return exact_; }

    /// Can q_k be materialized exactly (1-based k)?
    bool can_materialize(std::size_t k) const;

    /// q_k, materializing through k if a rule is present. Throws
    /// DepthOverflowError past max_exact_depth, InsufficientDepthError
    /// past the prefix of a rule-less sequence.
    const BigInt& q(std::size_t k) const;

    /// Certified enclosure of ln q_k at any depth the rule supports.
    RealInterval log_q(std::size_t k, unsigned bits = kDefaultLogBits) const;

    /// 1/q_k as an exact rational.
    Rational term(std::size_t k) const { return Rational::inv(q(k)); }

private:
    OstroSequence() = default;

    mutable std::vector<BigInt> exact_;  // append-only materialization cache
    std::optional<GeneratorRule> rule_;
    std::size_t max_exact_depth_ = kDefaultMaxExactDepth;
};

/// Enclosure of the tail r_n = sum_{i>n} 1/q_i:
/// [P, P + 2/q_{n+extra_terms+1}] with P the exact partial sum of the
/// first extra_terms tail terms.
IntervalEnclosure enclose_tail(const OstroSequence& seq, std::size_t n,
                               std::size_t extra_terms);

/// Exact alternating partial sum sum_{k<=n} (-1)^(k+1)/q_k.
Rational reconstruct(const OstroSequence& seq, std::size_t n);

struct ExpansionState {
    std::size_t step = 0;
    BigInt q;
    Rational beta;
    bool terminated = false;
};

struct ExpansionResult {
    std::vector<BigInt> denominators;
    bool terminated = false;
    std::vector<ExpansionState> trace;

    OstroSequence to_sequence() const { return OstroSequence::from_prefix(denominators); }
};

/// Expansion of a rational x in (0, 1] into its canonical (terminating)
/// representation: q_1 from 1 = q_1 x + beta_1 (0 <= beta_1 < x), then
/// q_k ... q_1 = q_{k+1} beta_k + beta_{k+1}. Throws NotInRangeError for
/// x outside (0, 1]. If max_terms is hit with beta != 0 the partial result
/// is returned with terminated == false.
ExpansionResult expand(const Rational& x, std::size_t max_terms = 64);

enum class CheckStatus { Pass, Fail, NotApplicable };

struct PropertyCheck {
    std::string property;
    std::size_t index = 0;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string detail;
};

struct ValidationReport {
    std::vector<PropertyCheck> checks;
    std::size_t depth = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
    std::size_t count(CheckStatus s) const {
        std::size_t n = 0;
        for (const auto& c : checks)
            if (c.status == s) ++n;
        return n;
    }
};

/// Exact per-index checks of the eight denominator properties over the
/// materialized prefix. Indices whose check would need terms beyond the
/// prefix are reported NotApplicable rather than materialized (rule-driven
/// growth is doubly exponential, so one extra level can be very costly).
/// Throws InvalidSequenceError if the defining condition fails.
ValidationReport validate(const OstroSequence& seq);

}  // namespace ostro
