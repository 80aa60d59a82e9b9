#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ostro/primes.hpp"
#include "ostro/sequence.hpp"

using namespace ostro;

namespace {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

std::vector<BigInt> prefix_of(const OstroSequence& s, std::size_t n) {
    std::vector<BigInt> out;
    for (std::size_t k = 1; k <= n; ++k) out.push_back(s.q(k));
    return out;
}

// Random valid prefix in canonical form: every step leaves strict slack at
// the last digit so the expansion algorithm reproduces it exactly.
std::vector<BigInt> random_canonical_prefix(Rng& rng, std::size_t max_depth, long max_q1) {
    std::size_t depth = static_cast<std::size_t>(rng.range(1, static_cast<long>(max_depth)));
    std::vector<BigInt> q;
    q.push_back(BigInt(rng.range(1, max_q1)));
    for (std::size_t k = 1; k < depth; ++k) {
        BigInt floor_next = q.back() * (q.back() + 1);
        q.push_back(floor_next + static_cast<unsigned long>(rng.range(0, 7)));
    }
    if (q.size() >= 2 && q.back() == q[q.size() - 2] * (q[q.size() - 2] + 1))
        q.back() += 1;  // minimal last digit has the shorter twin representation
    return q;
}

}  // namespace

TEST_CASE("generator rules reproduce the reference prefixes") {
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(1)), 5);
    CHECK(prefix_of(syl, 5) == std::vector<BigInt>{1, 2, 6, 42, 1806});

    auto pw = OstroSequence::generate(GeneratorRule::power(BigInt(2)), 5);
    CHECK(prefix_of(pw, 5) == std::vector<BigInt>{2, 8, 128, 32768, BigInt("2147483648")});

    auto pc = OstroSequence::generate(GeneratorRule::prime_chain(), 4);
    CHECK(prefix_of(pc, 4) == std::vector<BigInt>{2, 7, 59, 3541});
}

TEST_CASE("prime chain extends with the minimal prime (trial-division oracle)") {
    auto pc = OstroSequence::generate(GeneratorRule::prime_chain(), 5);
    BigInt expected = BigInt(3541) * 3542;  // 12542222
    // independent oracle: first prime >= 12542222 by pure trial division
    auto is_prime_td = [](const BigInt& n) {
        for (BigInt d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    while (!is_prime_td(expected)) ++expected;
    CHECK(pc.q(5) == expected);
}

TEST_CASE("materialization limits") {
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(2)), 5, 10);
    CHECK(syl.q(10) > 0);
    CHECK_THROWS_AS(syl.q(11), DepthOverflowError);
    CHECK_THROWS_AS(OstroSequence::generate(GeneratorRule::sylvester(BigInt(2)), 11, 10),
                    DepthOverflowError);

    auto ex = OstroSequence::from_prefix({2, 7, 59});
    CHECK_THROWS_AS(ex.q(4), InsufficientDepthError);
    CHECK_THROWS_AS(enclose_tail(ex, 3, 0), InsufficientDepthError);
}

TEST_CASE("invalid sequences are pinpointed") {
    CHECK_THROWS_AS(OstroSequence::from_prefix({2, 5}), InvalidSequenceError);
    try {
        OstroSequence::from_prefix({2, 5});
    } catch (const InvalidSequenceError& e) {
        CHECK(e.index() == 2);
    }
    CHECK_THROWS_AS(OstroSequence::from_prefix({0, 3}), InvalidSequenceError);
}

TEST_CASE("enclose_tail reference values") {
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(1)), 8);
    // n=3, extra=2: [1/42 + 1/1806, 1/42 + 1/1806 + 2/3263442]
    IntervalEnclosure t = enclose_tail(syl, 3, 2);
    Rational p = Rational(BigInt(1), BigInt(42)) + Rational(BigInt(1), BigInt(1806));
    CHECK(t.lo == p);
    CHECK(t.hi == p + Rational(BigInt(2), BigInt(3263442)));
    CHECK(t.lo.to_decimal(5) == "0.024363");

    // n=3, extra=0: [0, 2/42] = [0, 1/21]
    IntervalEnclosure t0 = enclose_tail(syl, 3, 0);
    CHECK(t0.lo == Rational(0));
    CHECK(t0.hi == Rational(BigInt(1), BigInt(21)));

    auto pw = OstroSequence::generate(GeneratorRule::power(BigInt(2)), 5);
    IntervalEnclosure t1 = enclose_tail(pw, 1, 1);
    CHECK(t1.lo == Rational(BigInt(1), BigInt(8)));
    CHECK(t1.hi == Rational(BigInt(1), BigInt(8)) + Rational(BigInt(2), BigInt(128)));
}

TEST_CASE("enclosure soundness and convergence under widening") {
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(1)), 12);
    for (std::size_t n = 1; n <= 4; ++n) {
        IntervalEnclosure prev = enclose_tail(syl, n, 0);
        for (std::size_t e = 1; n + e + 1 <= 12; ++e) {
            IntervalEnclosure cur = enclose_tail(syl, n, e);
            CHECK(cur.lo >= prev.lo);       // lo never moves down
            CHECK(cur.hi <= prev.hi);       // hi never moves up
            CHECK(cur.intersects(prev));    // same r_n: always intersecting
            CHECK(cur.width() <= Rational(2) * syl.term(n + e + 1));
            CHECK(cur.width() < prev.width());
            prev = cur;
        }
    }
}

TEST_CASE("expand reference values") {
    auto r1 = expand(Rational(BigInt(2), BigInt(3)));
    CHECK(r1.terminated);
    CHECK(r1.denominators == std::vector<BigInt>{1, 3});

    auto r2 = expand(Rational(BigInt(5), BigInt(7)));
    CHECK(r2.terminated);
    CHECK(r2.denominators == std::vector<BigInt>{1, 3, 21});

    auto r3 = expand(Rational(BigInt(1), BigInt(2)));
    CHECK(r3.terminated);
    CHECK(r3.denominators == std::vector<BigInt>{2});

    auto r4 = expand(Rational(1));  // x = 1 yields the single term 1/1
    CHECK(r4.terminated);
    CHECK(r4.denominators == std::vector<BigInt>{1});

    CHECK_THROWS_AS(expand(Rational(0)), NotInRangeError);
    CHECK_THROWS_AS(expand(Rational(BigInt(-1), BigInt(2))), NotInRangeError);
    CHECK_THROWS_AS(expand(Rational(BigInt(3), BigInt(2))), NotInRangeError);
}

TEST_CASE("expand flags a hit term budget instead of failing") {
    auto res = expand(Rational(BigInt(5), BigInt(7)), 2);
    CHECK(!res.terminated);
    CHECK(res.denominators == std::vector<BigInt>{1, 3});
    CHECK(res.trace.back().beta == Rational(BigInt(1), BigInt(7)));
    // partial result still satisfies the growth condition and reconstructs
    // with the beta correction
    Rational partial = Rational(1) - Rational(BigInt(1), BigInt(3));
    CHECK(partial + res.trace.back().beta / Rational(3) == Rational(BigInt(5), BigInt(7)));
}

TEST_CASE("expand partial-sum identity and remainder monotonicity") {
    Rng rng(123);
    for (int i = 0; i < 100; ++i) {
        Rational x(BigInt(rng.range(1, 999)), BigInt(1000));
        auto res = expand(x, 64);
        REQUIRE(res.terminated);
        // x = sum_{k<=n} (-1)^{k+1}/q_k + (-1)^n beta_n / (q_1...q_n) at every step
        Rational sum(0);
        BigInt prod(1);
        for (std::size_t k = 0; k < res.denominators.size(); ++k) {
            Rational term = Rational(BigInt(1), res.denominators[k]);
            sum += (k % 2 == 0) ? term : -term;
            prod *= res.denominators[k];
            Rational corr = res.trace[k].beta / Rational(prod);
            Rational recon = (k % 2 == 0) ? sum - corr : sum + corr;
            CHECK(recon == x);
            if (k > 0) CHECK(res.trace[k].beta < res.trace[k - 1].beta);
        }
    }
}

TEST_CASE("round-trip: canonical prefixes re-expand to themselves") {
    Rng rng(2024);
    int done = 0;
    while (done < 60) {
        auto prefix = random_canonical_prefix(rng, 6, 5);
        auto seq = OstroSequence::from_prefix(prefix);
        Rational x = reconstruct(seq, prefix.size());
        auto back = expand(x, 64);
        REQUIRE(back.terminated);
        CHECK(back.denominators == prefix);
        ++done;
    }
}

TEST_CASE("reconstruct reference values") {
    auto s = OstroSequence::from_prefix({1, 3, 21});
    CHECK(reconstruct(s, 3) == Rational(BigInt(5), BigInt(7)));
    CHECK(reconstruct(s, 0) == Rational(0));
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(1)), 4);
    CHECK(reconstruct(syl, 2) == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("validate passes the generated families at depth 12") {
    for (auto rule : {GeneratorRule::sylvester(BigInt(1)), GeneratorRule::sylvester(BigInt(2)),
                      GeneratorRule::power(BigInt(2))}) {
        auto seq = OstroSequence::generate(rule, 12);
        auto rep = validate(seq);
        CHECK(rep.all_pass());
        CHECK(rep.count(CheckStatus::Pass) > 50);
    }
}

TEST_CASE("validate details") {
    auto s = OstroSequence::from_prefix({2, 8, 128});
    auto rep = validate(s);
    CHECK(rep.all_pass());
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.property == "3:factorial-lower-bound" && c.index == 3) {
            found = true;
            CHECK(c.status == CheckStatus::Pass);  // 128 >= 3! = 6
        }
    CHECK(found);
    auto s2 = OstroSequence::from_prefix({1, 2, 6, 42});
    CHECK(validate(s2).all_pass());
}

TEST_CASE("log growth: ln q_{n+1} > 2 ln q_n for sylvester(2)") {
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(2)), 12);
    for (std::size_t n = 2; n < 12; ++n) {
        RealInterval a = syl.log_q(n, 96);
        RealInterval b = syl.log_q(n + 1, 96);
        CHECK(b.lo.to_double() > 2 * a.hi.to_double() * 0.999);
        CHECK(b.lo.to_double() > a.hi.to_double());
    }
}

TEST_CASE("log_q continues past the exact depth consistently") {
    auto syl = OstroSequence::generate(GeneratorRule::sylvester(BigInt(2)), 8, 10);
    // within exact range: direct log
    double l10 = syl.log_q(10, 96).mid(64).to_double();
    // beyond: recurrence, still roughly doubling
    double l12 = syl.log_q(12, 96).mid(64).to_double();
    CHECK(l12 > 3.9 * l10);
    CHECK(l12 < 4.1 * l10);

    auto pw = OstroSequence::generate(GeneratorRule::power(BigInt(2)), 5, 10);
    // ln q_k = (2^k - 1) ln 2 exactly
    double expect = (std::pow(2.0, 40) - 1) * 0.6931471805599453;
    double got = pw.log_q(40, 96).mid(64).to_double();
    CHECK(std::abs(got / expect - 1.0) < 1e-12);

    auto pc = OstroSequence::generate(GeneratorRule::prime_chain(), 6, 8);
    RealInterval l20 = pc.log_q(20, 96);
    CHECK(l20.lo.to_double() > 0);
    CHECK(l20.hi.to_double() < 2e7);
    CHECK(l20.lo.to_double() < l20.hi.to_double());
}

TEST_CASE("primality helpers") {
    CHECK(is_prime(BigInt(2)));
    CHECK(is_prime(BigInt(3541)));
    CHECK(!is_prime(BigInt(3540)));
    CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK(!is_prime(BigInt("170141183460469231731687303715884105725")));
    CHECK(next_prime_at_least(BigInt(6)) == 7);
    CHECK(next_prime_at_least(BigInt(3540)) == 3541);
    CHECK(next_prime_at_least(BigInt(7)) == 7);
}
