#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>

#include "doctest.h"
#include "ostro/measures.hpp"

using namespace ostro;

namespace {

std::shared_ptr<const OstroSequence> sylvester1(std::size_t depth = 14) {
    return std::make_shared<OstroSequence>(
        OstroSequence::generate(GeneratorRule::sylvester(BigInt(1)), depth));
}

const Rational kTol{BigInt(1), pow(BigInt(10), 12)};

MeasureModel uniform_model(std::shared_ptr<const OstroSequence> seq) {
    return MeasureModel{std::move(seq), ProbabilityKernel::family(KernelFamilyKind::Uniform)};
}

// Brute-force oracle: total mass of depth-`d` words whose cylinder lies
// certainly left of x; the straddle count must be zero for gap points.
std::pair<Rational, int> mass_left_of(const MeasureModel& model, const Rational& x,
                                      std::size_t d) {
    auto cov = cover_set(model.seq, d, Rational(BigInt(1), pow(BigInt(10), 25)));
    Rational below(0);
    int straddle = 0;
    for (const auto& c : cov) {
        if (c.right.hi < x)
            below += cylinder_mass(model, c.word);
        else if (!(c.left.lo > x))
            ++straddle;
    }
    return {below, straddle};
}

}  // namespace

TEST_CASE("kernel entries from families") {
    auto u = ProbabilityKernel::family(KernelFamilyKind::Uniform);
    CHECK(u.p0(7) == Rational(BigInt(1), BigInt(2)));

    auto inv = ProbabilityKernel::family(KernelFamilyKind::InvLinear);
    CHECK(inv.p0(1) == Rational(BigInt(1), BigInt(2)));
    CHECK(inv.p0(5) == Rational(BigInt(1), BigInt(10)));

    auto sq = ProbabilityKernel::family(KernelFamilyKind::HalfMinusInvSqrt);
    CHECK(sq.p0(4) == Rational(BigInt(3), BigInt(8)));  // 1/2 - 1/8
    CHECK(!sq.entry_is_exact(3));
    CHECK_THROWS_AS(sq.p0(3), Error);
    RealInterval p3 = sq.p0_enclosure(3, 96);
    CHECK(p3.lo.to_double() > 0.355);
    CHECK(p3.hi.to_double() < 0.3557);

    auto alt = ProbabilityKernel::family(KernelFamilyKind::AlternatingHalfQuarter);
    CHECK(alt.p0(1) == Rational(BigInt(1), BigInt(2)));   // 1/(2k), k=1
    CHECK(alt.p0(4) == Rational(BigInt(3), BigInt(8)));   // 1/2 - 1/(4k), k=2
    CHECK(alt.p0(3) == Rational(BigInt(1), BigInt(4)));   // 1/(2k), k=2

    auto pw = ProbabilityKernel::family(KernelFamilyKind::Pow2Support);
    CHECK(pw.p0(4) == Rational(BigInt(1), BigInt(2)));
    CHECK(pw.p0(5).is_zero());
    CHECK(pw.degenerate(5));
    CHECK(pw.forced_bit(5) == 1);

    auto geo = ProbabilityKernel::preset("half-minus-geometric");
    CHECK(geo.p0(1).is_zero());
    CHECK(geo.degenerate(1));
    CHECK(geo.p0(2) == Rational(BigInt(1), BigInt(4)));

    CHECK(ProbabilityKernel::preset("const:0.3").p0(9) == Rational(BigInt(3), BigInt(10)));
    CHECK_THROWS_AS(ProbabilityKernel::preset("nope"), Error);
    CHECK_THROWS_AS(
        ProbabilityKernel::from_table({{Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(3))}}),
        Error);
}

TEST_CASE("cylinder_mass reference values") {
    auto model = uniform_model(sylvester1());
    CHECK(cylinder_mass(model, Word::from_string("101")) == Rational(BigInt(1), BigInt(8)));
    CHECK(cylinder_mass(model, Word{}) == Rational(1));

    auto inv = ProbabilityKernel::family(KernelFamilyKind::InvLinear);
    CHECK(cylinder_mass(inv, Word::from_string("00")) == Rational(BigInt(1), BigInt(8)));
}

TEST_CASE("mass additivity and total mass") {
    auto seq = sylvester1();
    for (auto kernel : {ProbabilityKernel::family(KernelFamilyKind::Uniform),
                        ProbabilityKernel::family(KernelFamilyKind::InvLinear),
                        ProbabilityKernel::family(KernelFamilyKind::Pow2Support)}) {
        MeasureModel model{seq, kernel};
        // additivity at assorted words
        for (const char* ws : {"", "1", "10", "0110", "1010101"}) {
            Word w = Word::from_string(ws);
            CHECK(cylinder_mass(model, w) ==
                  cylinder_mass(model, w.child(0)) + cylinder_mass(model, w.child(1)));
        }
        // total mass 1 at rank 10
        Rational total(0);
        for (std::uint32_t i = 0; i < 1024; ++i) {
            Word w;
            for (int k = 9; k >= 0; --k) w.bits.push_back((i >> k) & 1);
            total += cylinder_mass(model, w);
        }
        CHECK(total == Rational(1));
    }
}

TEST_CASE("continuity_test verdicts") {
    auto cont = continuity_test(ProbabilityKernel::family(KernelFamilyKind::Uniform), 64);
    CHECK(cont.verdict == Verdict::Continuous);
    CHECK(cont.basis == VerdictBasis::AnalyticCertificate);
    // D_n = 2^-n at the checkpoints
    CHECK(cont.evidence.back().exact.has_value());
    CHECK(*cont.evidence.back().exact == Rational(BigInt(1), pow2(64)));

    auto atoms = continuity_test(ProbabilityKernel::family(KernelFamilyKind::OneMinusInvSquare), 64);
    CHECK(atoms.verdict == Verdict::DiscreteAtoms);
    // partial products telescope: D_n = (n+2)/(2(n+1))
    for (const auto& cp : atoms.evidence) {
        REQUIRE(cp.exact.has_value());
        CHECK(*cp.exact == Rational(BigInt(cp.n + 2), BigInt(2 * (cp.n + 1))));
    }

    auto table = continuity_test(
        ProbabilityKernel::from_table({{Rational(BigInt(1), BigInt(3)), Rational(BigInt(2), BigInt(3))},
                                       {Rational(BigInt(1), BigInt(4)), Rational(BigInt(3), BigInt(4))}}),
        8);
    CHECK(table.verdict == Verdict::Undetermined);
}

TEST_CASE("kakutani_classify verdicts") {
    auto sing = kakutani_classify(ProbabilityKernel::family(KernelFamilyKind::HalfMinusInvSqrt), 256);
    CHECK(sing.verdict == Verdict::Singular);
    CHECK(sing.basis == VerdictBasis::AnalyticCertificate);

    auto equiv = kakutani_classify(ProbabilityKernel::family(KernelFamilyKind::HalfMinusGeometric), 64);
    CHECK(equiv.verdict == Verdict::Equivalent);
    // partial sums: sum_{k=2}^n 4^(1-k) stays below the geometric limit 1/3... times 4/3:
    // sum_{k>=2} 4^(1-k) = 1/3; check the deepest checkpoint is below 1/3
    REQUIRE(equiv.evidence.back().exact.has_value());
    CHECK(*equiv.evidence.back().exact < Rational(BigInt(1), BigInt(3)));

    auto c3 = kakutani_classify(ProbabilityKernel::preset("const:3/10"), 64);
    CHECK(c3.verdict == Verdict::Singular);
    // constant terms: S_n = n (1 - 3/5)^2 = n * 4/25
    REQUIRE(c3.evidence.back().exact.has_value());
    CHECK(*c3.evidence.back().exact == Rational(BigInt(64 * 4), BigInt(25)));

    auto undet = kakutani_classify(
        ProbabilityKernel::from_table({{Rational(BigInt(2), BigInt(5)), Rational(BigInt(3), BigInt(5))}}), 4);
    CHECK(undet.verdict == Verdict::Undetermined);
}

TEST_CASE("uniformized kernel") {
    auto c = ProbabilityKernel::preset("const:3/10");
    auto u = c.uniformized();
    for (std::size_t k : {1u, 2u, 17u}) CHECK(u.p0(k) == Rational(BigInt(1), BigInt(2)));
    // idempotent
    auto uu = u.uniformized();
    CHECK(uu.p0(5) == u.p0(5));

    // zero/one pattern preserved
    auto pw = ProbabilityKernel::family(KernelFamilyKind::Pow2Support).uniformized();
    CHECK(pw.p0(4) == Rational(BigInt(1), BigInt(2)));
    CHECK(pw.p0(5).is_zero());

    // fixed point: uniform kernel unchanged
    auto un = ProbabilityKernel::family(KernelFamilyKind::Uniform).uniformized();
    CHECK(un.p0(3) == Rational(BigInt(1), BigInt(2)));

    // half-minus-geometric keeps its degenerate first digit
    auto geo = ProbabilityKernel::preset("half-minus-geometric").uniformized();
    CHECK(geo.p0(1).is_zero());
    CHECK(geo.p0(2) == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("cdf at the extremes") {
    auto model = uniform_model(sylvester1());
    IntervalEnclosure lo = cdf(model, Rational(-1), kTol);
    CHECK(lo.lo == Rational(0));
    CHECK(lo.hi == Rational(0));
    IntervalEnclosure hi = cdf(model, Rational(2), kTol);
    CHECK(hi.lo == Rational(1));
    CHECK(hi.hi == Rational(1));
}

TEST_CASE("cdf gap point is exactly 1/2 and matches enumeration") {
    auto model = uniform_model(sylvester1());
    Rational x(BigInt(3), BigInt(10));  // inside the rank-1 gap of the shifted tree
    IntervalEnclosure F = cdf(model, x, kTol);
    CHECK(F.lo == Rational(BigInt(1), BigInt(2)));
    CHECK(F.hi == Rational(BigInt(1), BigInt(2)));

    auto [below, straddle] = mass_left_of(model, x, 6);
    CHECK(straddle == 0);
    CHECK(below == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("cdf monotone in x") {
    // Interior points need walk depth ~ log2(1/tol); denominators square
    // at each step, so only a moderate tol is reachable there.
    const Rational tol{BigInt(1), pow(BigInt(10), 4)};
    auto model = uniform_model(sylvester1());
    Rational prev_lo(-1), prev_hi(-1);
    for (int i = -6; i <= 12; ++i) {
        Rational x(BigInt(i), BigInt(10));
        IntervalEnclosure F = cdf(model, x, tol);
        CHECK(F.hi >= prev_hi - tol);
        CHECK(F.lo >= prev_lo - tol);
        prev_lo = F.lo;
        prev_hi = F.hi;
    }
    // unreachable tolerance at an interior point is an explicit error
    auto shallow = std::make_shared<const OstroSequence>(
        OstroSequence::from_prefix({1, 2, 6, 42, 1806}));
    MeasureModel m2{shallow, ProbabilityKernel::family(KernelFamilyKind::Uniform)};
    // x = 0 lies in the set itself (all-zero digits), so the walk cannot
    // stop early and runs out of materializable terms
    CHECK_THROWS_AS(cdf(m2, Rational(0), kTol), PrecisionBudgetError);
}

TEST_CASE("cdf brackets cylinder masses between gap points") {
    auto model = uniform_model(sylvester1());
    auto cov = cover_set(model.seq, 3, Rational(BigInt(1), pow(BigInt(10), 25)));
    std::sort(cov.begin(), cov.end(),
              [](const Cylinder& a, const Cylinder& b) { return a.left.lo < b.left.lo; });
    for (std::size_t i = 0; i + 1 < cov.size(); ++i)
        REQUIRE(cov[i].right.hi < cov[i + 1].left.lo);
    // gap midpoints flanking each interior cylinder
    for (std::size_t i = 1; i + 1 < cov.size(); ++i) {
        Rational left_pt = (cov[i - 1].right.hi + cov[i].left.lo) / Rational(2);
        Rational right_pt = (cov[i].right.hi + cov[i + 1].left.lo) / Rational(2);
        IntervalEnclosure Fl = cdf(model, left_pt, kTol);
        IntervalEnclosure Fr = cdf(model, right_pt, kTol);
        Rational mass = cylinder_mass(model, cov[i].word);
        CHECK(Fr.lo - Fl.hi <= mass);
        CHECK(Fr.hi - Fl.lo >= mass);
    }
}

TEST_CASE("gauge functions: h1 = h2 for the uniform kernel") {
    auto model = uniform_model(sylvester1());
    for (int i : {-2, 1, 3, 7}) {
        Rational t(BigInt(i), BigInt(10));
        IntervalEnclosure h1 = gauge_eval(model, t, GaugeFunction::H1, kTol);
        IntervalEnclosure h2 = gauge_eval(model, t, GaugeFunction::H2, kTol);
        CHECK(h1.intersects(h2));
        CHECK((h1.hi - h2.hi).abs() <= kTol);
    }
}

TEST_CASE("gauge functions differ with degenerate digits (enumeration oracle)") {
    auto seq = sylvester1();
    // digits are forced from k = 3 on except at powers of two, so h1 and h2
    // split at rank-3 gaps
    MeasureModel model{seq, ProbabilityKernel::family(KernelFamilyKind::Pow2Support)};
    auto cov = cover_set(seq, 3, Rational(BigInt(1), pow(BigInt(10), 25)));
    std::sort(cov.begin(), cov.end(),
              [](const Cylinder& a, const Cylinder& b) { return a.left.lo < b.left.lo; });
    MeasureModel m1{seq, model.kernel.uniformized()};
    MeasureModel m2{seq, ProbabilityKernel::family(KernelFamilyKind::Uniform)};
    bool found_difference = false;
    for (std::size_t i = 0; i + 1 < cov.size() && !found_difference; ++i) {
        REQUIRE(cov[i].right.hi < cov[i + 1].left.lo);
        Rational x = (cov[i].right.hi + cov[i + 1].left.lo) / Rational(2);
        auto [below1, s1] = mass_left_of(m1, x, 6);
        auto [below2, s2] = mass_left_of(m2, x, 6);
        CHECK(s1 == 0);
        CHECK(s2 == 0);
        IntervalEnclosure h1 = gauge_eval(model, x, GaugeFunction::H1, kTol);
        IntervalEnclosure h2 = gauge_eval(model, x, GaugeFunction::H2, kTol);
        CHECK(h1.contains(below1));
        CHECK(h2.contains(below2));
        if (below1 != below2) found_difference = true;
    }
    CHECK(found_difference);
}

TEST_CASE("sampling: degenerate kernels and determinism") {
    auto seq = sylvester1();
    MeasureModel zero{seq, ProbabilityKernel::family(KernelFamilyKind::PointMassZero)};
    for (const auto& v : sample(zero, 6, 7, 20)) CHECK(v.is_zero());

    MeasureModel one{seq, ProbabilityKernel::family(KernelFamilyKind::PointMassOne)};
    Rational full = reconstruct(*seq, 6);
    for (const auto& v : sample(one, 6, 7, 20)) CHECK(v == full);

    MeasureModel u = uniform_model(seq);
    auto a = sample(u, 8, 123, 50);
    auto b = sample(u, 8, 123, 50);
    CHECK(a == b);
    auto c = sample(u, 8, 124, 50);
    CHECK(a != c);
}

TEST_CASE("sampling tracks the cdf (coarse sup-distance)") {
    auto model = uniform_model(sylvester1());
    const std::size_t n = 4000;
    auto xs = sample(model, 10, 2026, n);
    std::sort(xs.begin(), xs.end());
    // compare empirical and exact CDF at rank-5 gap midpoints
    auto cov = cover_set(model.seq, 5, Rational(BigInt(1), pow(BigInt(10), 25)));
    std::sort(cov.begin(), cov.end(),
              [](const Cylinder& a, const Cylinder& b) { return a.left.lo < b.left.lo; });
    double worst = 0;
    for (std::size_t i = 0; i + 1 < cov.size(); i += 3) {
        Rational pt = (cov[i].right.hi + cov[i + 1].left.lo) / Rational(2);
        auto it = std::lower_bound(xs.begin(), xs.end(), pt);
        double emp = static_cast<double>(it - xs.begin()) / static_cast<double>(n);
        IntervalEnclosure F = cdf(model, pt, kTol);
        worst = std::max(worst, std::abs(emp - F.lo.to_double()));
    }
    CHECK(worst < 0.05);
}
