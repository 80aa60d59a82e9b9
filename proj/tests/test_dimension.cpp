#include <cmath>

#include "doctest.h"
#include "ostro/dimension.hpp"

using namespace ostro;

namespace {

double mid(const Checkpoint& cp) {
    return cp.exact ? cp.exact->to_double() : cp.approx.mid(64).to_double();
}

}  // namespace

TEST_CASE("entropy profile: uniform kernel") {
    auto pr = entropy_profile(ProbabilityKernel::family(KernelFamilyKind::Uniform), 32);
    for (auto k : pr.kinds) CHECK(k == EntropyTermKind::Ln2);
    CHECK(pr.g(32) == 32);
    // H_32 = 32 ln 2
    double h = pr.H(32).mid(64).to_double();
    CHECK(std::abs(h - 32 * 0.6931471805599453) < 1e-12);
    CHECK(*pr.ratio_star(32).exact == Rational(1));
    CHECK(*pr.ratio_r(17).exact == Rational(1));
}

TEST_CASE("entropy profile: degenerate and general kernels") {
    auto pz = entropy_profile(ProbabilityKernel::family(KernelFamilyKind::PointMassZero), 8);
    CHECK(pz.g(8) == 0);
    CHECK(pz.H(8).hi.is_zero());

    auto c3 = entropy_profile(ProbabilityKernel::preset("const:3/10"), 4);
    // h(0.3) = 0.61086430205489...
    RealInterval h1 = c3.h[0];
    CHECK(h1.lo.to_double() < 0.6108643020549);
    CHECK(h1.hi.to_double() > 0.6108643020548);
    CHECK(h1.width(64).to_double() < 1e-20);
    CHECK(c3.g(4) == 4);
}

TEST_CASE("h bounds: 0 <= h <= ln 2 with equality only at 1/2") {
    // symbolic at p = 1/2
    auto u = entropy_profile(ProbabilityKernel::family(KernelFamilyKind::Uniform), 2);
    CHECK(u.kinds[0] == EntropyTermKind::Ln2);
    // numeric elsewhere
    for (const char* preset : {"const:1/10", "const:2/5", "const:9/10"}) {
        auto pr = entropy_profile(ProbabilityKernel::preset(preset), 2);
        CHECK(pr.kinds[0] == EntropyTermKind::General);
        CHECK(pr.h[0].lo.to_double() >= 0.0);
        CHECK(pr.h[0].hi.to_double() < 0.6931471805599453);
    }
}

TEST_CASE("spectrum dimension profile collapses to zero") {
    auto seq = OstroSequence::generate(GeneratorRule::sylvester(BigInt(1)), 12);
    auto rep = spectrum_dim_profile(seq, 2, 11);
    REQUIRE(rep.checkpoints.size() == 10);
    // k = 8 entry: 8 ln 2 / (-ln r_8) <= 0.05
    const Checkpoint& k8 = rep.checkpoints[6];
    REQUIRE(k8.n == 8);
    CHECK(k8.approx.hi.to_double() <= 0.05);
    const Checkpoint& k11 = rep.checkpoints[9];
    REQUIRE(k11.n == 11);
    CHECK(k11.approx.hi.to_double() <= 0.02);
    REQUIRE(rep.analytic_limit.has_value());
    CHECK(rep.analytic_limit->value == Rational(0));
    CHECK(rep.trend == Trend::Decreasing);

    // deep checkpoints use the log continuation
    auto deep = spectrum_dim_profile(seq, 30, 34);
    CHECK(deep.checkpoints.back().approx.hi.to_double() < 1e-6);
}

TEST_CASE("dim w.r.t. nu*: reference kernels") {
    // p0 = 1/(2k): checkpoint at 10^4 at most 0.01, limit 0
    auto inv = dim_mu_nu_star(ProbabilityKernel::family(KernelFamilyKind::InvLinear), 10000);
    CHECK(inv.last().approx.hi.to_double() <= 0.01);
    REQUIRE(inv.analytic_limit.has_value());
    CHECK(inv.analytic_limit->value == Rational(0));

    // p0 = 1/2 - 1/(4 sqrt k): checkpoint at 10^4 at least 0.999, limit 1
    auto sq = dim_mu_nu_star(ProbabilityKernel::family(KernelFamilyKind::HalfMinusInvSqrt), 10000);
    CHECK(sq.last().approx.lo.to_double() >= 0.999);
    REQUIRE(sq.analytic_limit.has_value());
    CHECK(sq.analytic_limit->value == Rational(1));

    // alternating: within 0.05 of 1/2 at 10^4, limit 1/2
    auto alt =
        dim_mu_nu_star(ProbabilityKernel::family(KernelFamilyKind::AlternatingHalfQuarter), 10000);
    CHECK(std::abs(mid(alt.last()) - 0.5) <= 0.05);
    REQUIRE(alt.analytic_limit.has_value());
    CHECK(alt.analytic_limit->value == Rational(BigInt(1), BigInt(2)));

    // uniform: exactly 1 at every checkpoint
    auto u = dim_mu_nu_star(ProbabilityKernel::family(KernelFamilyKind::Uniform), 64);
    for (const auto& cp : u.checkpoints) {
        REQUIRE(cp.exact.has_value());
        CHECK(*cp.exact == Rational(1));
    }

    CHECK_THROWS_AS(dim_mu_nu_star(ProbabilityKernel::family(KernelFamilyKind::PointMassZero), 16),
                    DegenerateKernelError);
}

TEST_CASE("uniformized kernels have dimension exactly 1 at every checkpoint") {
    for (const char* preset : {"const:3/10", "inv-linear", "half-minus-quarter-sqrt",
                               "pow2-support", "half-minus-geometric"}) {
        auto rep = dim_mu_nu_star(ProbabilityKernel::preset(preset).uniformized(), 256);
        for (const auto& cp : rep.checkpoints) {
            REQUIRE(cp.exact.has_value());
            CHECK(*cp.exact == Rational(1));
        }
    }
}

TEST_CASE("dim w.r.t. nu_r: reference kernels") {
    auto u = dim_mu_nu_r(ProbabilityKernel::family(KernelFamilyKind::Uniform), 64);
    for (const auto& cp : u.checkpoints) {
        REQUIRE(cp.exact.has_value());
        CHECK(*cp.exact == Rational(1));
    }

    // pow2 support: H_n = (floor(log2 n)+1) ln 2, ratio -> 0
    auto pw = dim_mu_nu_r(ProbabilityKernel::family(KernelFamilyKind::Pow2Support), 1024);
    REQUIRE(pw.last().exact.has_value());
    CHECK(*pw.last().exact == Rational(BigInt(11), BigInt(1024)));
    REQUIRE(pw.analytic_limit.has_value());
    CHECK(pw.analytic_limit->value == Rational(0));

    // const 0.3: ratio ~ h(0.3)/ln 2 = 0.88129...
    auto c3 = dim_mu_nu_r(ProbabilityKernel::preset("const:3/10"), 256);
    CHECK(std::abs(mid(c3.last()) - 0.8812908992306927) < 1e-9);
    REQUIRE(c3.analytic_limit.has_value());
    double lim = c3.analytic_limit->enclosure(128).mid(64).to_double();
    CHECK(std::abs(lim - 0.8812908992306927) < 1e-12);
}

TEST_CASE("spectrum dimension w.r.t. nu_r") {
    auto all = dim_spectrum_nu_r(ProbabilityKernel::family(KernelFamilyKind::Uniform), 64);
    for (const auto& cp : all.checkpoints) CHECK(*cp.exact == Rational(1));

    auto pw = dim_spectrum_nu_r(ProbabilityKernel::family(KernelFamilyKind::Pow2Support), 16);
    REQUIRE(pw.last().exact.has_value());
    CHECK(*pw.last().exact == Rational(BigInt(5), BigInt(16)));  // k in {1,2,4,8,16}
    REQUIRE(pw.analytic_limit.has_value());
    CHECK(pw.analytic_limit->value == Rational(0));

    // alternating degenerate/nondegenerate bits: N_k/k -> 1/2
    std::vector<std::pair<Rational, Rational>> entries;
    for (int k = 1; k <= 32; ++k) {
        if (k % 2 == 1)
            entries.emplace_back(Rational(1), Rational(0));  // forced digit
        else
            entries.emplace_back(Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(2)));
    }
    auto alt = dim_spectrum_nu_r(ProbabilityKernel::from_table(std::move(entries)), 32);
    CHECK(*alt.last().exact == Rational(BigInt(1), BigInt(2)));
    CHECK(!alt.analytic_limit.has_value());  // table kernels carry no certificate
}

TEST_CASE("relation H_n/(n ln2) = H_n/(g_n ln2) * g_n/n") {
    for (const char* preset : {"uniform", "pow2-support", "const:3/10", "half-minus-geometric"}) {
        auto pr = entropy_profile(ProbabilityKernel::preset(preset), 128);
        for (std::size_t n : {1u, 2u, 17u, 128u}) {
            auto r = pr.ratio_r(n);
            auto s = pr.ratio_star(n);
            Rational gn(BigInt(pr.g(n)), BigInt(n));
            if (r.exact && s.exact) {
                CHECK(*r.exact == *s.exact * gn);
            } else {
                RealInterval rhs = ri_scale(s.approx, gn, 128);
                CHECK(r.approx.intersects(rhs));
            }
        }
    }
}

TEST_CASE("preservation criterion") {
    auto u = preservation_check(ProbabilityKernel::family(KernelFamilyKind::Uniform),
                                Rational(BigInt(2), BigInt(5)), 64);
    CHECK(u.classification.verdict == Verdict::Preserves);
    CHECK(u.hypothesis_violations.empty());

    auto c3 = preservation_check(ProbabilityKernel::preset("const:3/10"),
                                 Rational(BigInt(1), BigInt(4)), 64);
    CHECK(c3.classification.verdict == Verdict::NotPreserves);
    CHECK(c3.hypothesis_violations.empty());
    REQUIRE(c3.criterion_limit.has_value());
    double lim = c3.criterion_limit->enclosure(128).mid(64).to_double();
    CHECK(std::abs(lim - 0.8813) < 1e-3);

    auto sq = preservation_check(ProbabilityKernel::family(KernelFamilyKind::HalfMinusInvSqrt),
                                 Rational(BigInt(1), BigInt(5)), 256);
    CHECK(sq.classification.verdict == Verdict::Preserves);
    CHECK(sq.hypothesis_violations.empty());

    // hypothesis violations are reported separately from the criterion
    auto tiny = preservation_check(ProbabilityKernel::preset("const:1/10"),
                                   Rational(BigInt(1), BigInt(4)), 16);
    CHECK(!tiny.hypothesis_violations.empty());
    CHECK(tiny.classification.verdict == Verdict::NotPreserves);

    CHECK_THROWS_AS(preservation_check(ProbabilityKernel::preset("uniform"),
                                       Rational(BigInt(3), BigInt(5)), 8),
                    Error);
}
