#include "ostro/dimension.hpp"

#include <algorithm>

namespace ostro {

std::string trend_name(Trend t) {
    switch (t) {
        case Trend::Decreasing: return "decreasing";
        case Trend::Increasing: return "increasing";
        case Trend::Oscillating: return "oscillating";
        case Trend::Constant: return "constant";
    }
    return "?";
}

RealInterval EntropyProfile::H(std::size_t n) const {
    RealInterval ln2 = ln2_interval(bits);
    RealInterval base = ri_scale_int(ln2, BigInt(static_cast<unsigned long>(ln2_prefix[n - 1])), bits);
    return ri_add(base, general_prefix[n - 1], bits);
}

Checkpoint EntropyProfile::ratio_star(std::size_t n) const {
    Checkpoint cp;
    cp.n = n;
    std::size_t gn = g(n);
    if (gn == 0) {
        cp.exact = Rational(0);
        cp.approx = RealInterval();
        return cp;
    }
    if (general_prefix[n - 1].hi.is_zero()) {
        cp.exact = Rational(BigInt(ln2_prefix[n - 1]), BigInt(gn));
        cp.approx = RealInterval::of_rational(*cp.exact, bits);
        return cp;
    }
    RealInterval denom = ri_scale_int(ln2_interval(bits), BigInt(static_cast<unsigned long>(gn)), bits);
    cp.approx = ri_div(H(n), denom, bits);
    return cp;
}

Checkpoint EntropyProfile::ratio_r(std::size_t n) const {
    Checkpoint cp;
    cp.n = n;
    if (general_prefix[n - 1].hi.is_zero()) {
        cp.exact = Rational(BigInt(ln2_prefix[n - 1]), BigInt(n));
        cp.approx = RealInterval::of_rational(*cp.exact, bits);
        return cp;
    }
    RealInterval denom = ri_scale_int(ln2_interval(bits), BigInt(static_cast<unsigned long>(n)), bits);
    cp.approx = ri_div(H(n), denom, bits);
    return cp;
}

Checkpoint EntropyProfile::ratio_spectrum(std::size_t n) const {
    Checkpoint cp;
    cp.n = n;
    cp.exact = Rational(BigInt(N(n)), BigInt(n));
    cp.approx = RealInterval::of_rational(*cp.exact, bits);
    return cp;
}

namespace {

// Entropy of a digit with p = 1/2 - eps through the even series
// h = ln 2 - sum_{j>=1} w^j / (2j (2j-1)), w = (2 eps)^2. Only even powers
// of eps appear, so irrational eps with rational eps^2 (e.g. 1/(4 sqrt k))
// needs no transcendental evaluation at all.
RealInterval entropy_near_half(const Rational& w, unsigned bits) {
    if (w.sign() < 0 || w >= Rational(1)) throw Error("entropy_near_half: need 0 <= w < 1");
    const unsigned wb = bits + 16;
    RealInterval wi = RealInterval::of_rational(w, wb);
    RealInterval power = wi;
    RealInterval sum;
    long j = 1;
    const BigFloat eps(BigInt(1), -static_cast<long>(wb));
    // ratio of consecutive terms is < w <= 1/4 for all supported families
    while (true) {
        sum = ri_add(sum, ri_div(power, RealInterval::of_long(2 * j * (2 * j - 1)), wb), wb);
        power = ri_mul(power, wi, wb);
        ++j;
        BigFloat next = BigFloat::div(power.hi, BigFloat::from_long(2 * j * (2 * j - 1)), wb,
                                      Round::Up);
        BigFloat tail = BigFloat::mul(next, BigFloat::from_long(2), wb, Round::Up);
        if (tail < eps || next.is_zero()) {
            sum = RealInterval(sum.lo, BigFloat::add(sum.hi, tail, wb, Round::Up));
            break;
        }
    }
    return ri_sub(ln2_interval(wb), sum, bits);
}

// (2 eps)^2 for the built-in p = 1/2 - eps families; nullopt otherwise.
std::optional<Rational> near_half_w(const ProbabilityKernel& kernel, std::size_t k) {
    if (kernel.is_uniformized_view() || !kernel.family_info()) return std::nullopt;
    switch (kernel.family_info()->kind) {
        case KernelFamilyKind::HalfMinusInvSqrt:
            // eps = 1/(4 sqrt k): w = 1/(4k)
            return Rational(BigInt(1), BigInt(4) * static_cast<unsigned long>(k));
        case KernelFamilyKind::HalfMinusGeometric:
            // eps = 2^-k: w = 4^(1-k)
            return Rational(BigInt(4), pow2(2 * k));
        case KernelFamilyKind::AlternatingHalfQuarter:
            // even k: eps = 1/(2k): w = 1/k^2
            if (k % 2 == 0)
                return Rational(BigInt(1), BigInt(static_cast<unsigned long>(k)) *
                                               static_cast<unsigned long>(k));
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

}  // namespace

EntropyProfile entropy_profile(const ProbabilityKernel& kernel, std::size_t n_max,
                               unsigned bits) {
    if (n_max < 1) throw Error("entropy_profile: n_max must be >= 1");
    if (n_max > kernel.entry_limit())
        throw Error("entropy_profile: kernel table ends before n_max");
    EntropyProfile pr;
    pr.n_max = n_max;
    pr.bits = bits;
    pr.kinds.reserve(n_max);
    pr.h.reserve(n_max);
    RealInterval ln2 = ln2_interval(bits);
    RealInterval general_sum;
    std::size_t g = 0, c2 = 0;
    const Rational half{BigInt(1), BigInt(2)};
    IntegerLn ln_table(bits + 8);
    std::optional<RealInterval> constant_h;  // constant families repeat one value

    auto general_entropy = [&](std::size_t k) -> RealInterval {
        if (auto w = near_half_w(kernel, k)) return entropy_near_half(*w, bits);
        bool is_const = kernel.family_info() &&
                        kernel.family_info()->kind == KernelFamilyKind::Constant &&
                        !kernel.is_uniformized_view();
        if (is_const && constant_h) return *constant_h;
        RealInterval term;
        if (kernel.entry_is_exact(k)) {
            // h = ln b - (a ln a + c ln c)/b for p = a/b, c = b - a
            Rational p = kernel.p0(k);
            const BigInt& a = p.num();
            const BigInt& b = p.den();
            BigInt c = b - a;
            RealInterval contrib = ri_add(ri_mul(RealInterval::point(BigFloat(a)),
                                                 ln_table.get(a), bits),
                                          ri_mul(RealInterval::point(BigFloat(c)),
                                                 ln_table.get(c), bits),
                                          bits);
            term = ri_sub(ln_table.get(b),
                          ri_div(contrib, RealInterval::point(BigFloat(b)), bits), bits);
        } else {
            RealInterval p = kernel.p0_enclosure(k, bits);
            RealInterval q = kernel.p1_enclosure(k, bits);
            term = ri_add(ri_mul(p, ln_interval(p, bits), bits),
                          ri_mul(q, ln_interval(q, bits), bits), bits)
                       .negated();
        }
        if (is_const) constant_h = term;
        return term;
    };

    for (std::size_t k = 1; k <= n_max; ++k) {
        EntropyTermKind kind;
        RealInterval hk;
        if (kernel.degenerate(k)) {
            kind = EntropyTermKind::Zero;  // 0 ln 0 = 0 convention
            hk = RealInterval();
        } else if (kernel.entry_is_exact(k) && kernel.p0(k) == half) {
            kind = EntropyTermKind::Ln2;
            hk = ln2;
            ++g;
            ++c2;
        } else {
            kind = EntropyTermKind::General;
            RealInterval term = general_entropy(k);
            // clamp to the theoretical range [0, ln 2]
            BigFloat lo = term.lo.sign() < 0 ? BigFloat() : term.lo;
            BigFloat hi = term.hi > ln2.hi ? ln2.hi : term.hi;
            if (lo > hi) lo = hi;
            hk = RealInterval(lo, hi);
            general_sum = ri_add(general_sum, hk, bits);
            ++g;
        }
        pr.kinds.push_back(kind);
        pr.h.push_back(hk);
        pr.g_prefix.push_back(g);
        pr.ln2_prefix.push_back(c2);
        pr.general_prefix.push_back(general_sum);
    }
    return pr;
}

namespace {

std::vector<std::size_t> geometric_ns(std::size_t n_max) {
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n < n_max; n *= 2) ns.push_back(n);
    ns.push_back(n_max);
    return ns;
}

Trend classify_trend(const std::vector<Checkpoint>& cps) {
    if (cps.size() < 2) return Trend::Constant;
    bool any_up = false, any_down = false;
    for (std::size_t i = 1; i < cps.size(); ++i) {
        const Checkpoint& a = cps[i - 1];
        const Checkpoint& b = cps[i];
        if (a.exact && b.exact) {
            if (*b.exact > *a.exact) any_up = true;
            if (*b.exact < *a.exact) any_down = true;
        } else {
            // compare certified: b above a when b.lo > a.hi
            if (b.approx.lo > a.approx.hi) any_up = true;
            if (b.approx.hi < a.approx.lo) any_down = true;
        }
    }
    if (any_up && any_down) return Trend::Oscillating;
    if (any_up) return Trend::Increasing;
    if (any_down) return Trend::Decreasing;
    return Trend::Constant;
}

void flag_out_of_range(DimensionReport& rep) {
    for (const auto& cp : rep.checkpoints) {
        bool above = cp.exact ? *cp.exact > Rational(1)
                              : cp.approx.lo > BigFloat::from_long(1);
        bool below = cp.exact ? *cp.exact < Rational(0) : cp.approx.hi.sign() < 0;
        if (above || below) {
            rep.flags.push_back("checkpoint n = " + std::to_string(cp.n) +
                                " lies outside the theoretical range [0, 1]");
        }
    }
}

}  // namespace

DimensionReport spectrum_dim_profile(const OstroSequence& seq, std::size_t k_lo,
                                     std::size_t k_hi, unsigned bits) {
    if (k_lo < 1 || k_lo > k_hi) throw Error("spectrum_dim_profile: bad k range");
    DimensionReport rep;
    RealInterval ln2 = ln2_interval(bits);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        // r_k in [1/q_{k+1}, 2/q_{k+1}] => -ln r_k in [ln q_{k+1} - ln 2, ln q_{k+1}]
        RealInterval lq = seq.log_q(k + 1, bits);
        RealInterval neg_ln_r(BigFloat::sub(lq.lo, ln2.hi, bits, Round::Down), lq.hi);
        if (neg_ln_r.lo.sign() <= 0)
            throw Error("spectrum_dim_profile: k too small for a meaningful ratio");
        Checkpoint cp;
        cp.n = k;
        cp.approx = ri_div(ri_scale_int(ln2, BigInt(static_cast<unsigned long>(k)), bits),
                           neg_ln_r, bits);
        rep.checkpoints.push_back(std::move(cp));
    }
    rep.trend = classify_trend(rep.checkpoints);
    ProbabilityKernel::AnalyticLimit limit;
    limit.kind = ProbabilityKernel::AnalyticLimit::Kind::ExactRational;
    limit.value = Rational(0);
    limit.certificate =
        "r_k < 2/q_{k+1} < 2^(1 - 2^(k-1)), so k ln 2 / (-ln r_k) is squeezed to 0";
    rep.analytic_limit = limit;
    flag_out_of_range(rep);
    return rep;
}

DimensionReport dim_mu_nu_star(const ProbabilityKernel& kernel, std::size_t n_max,
                               unsigned bits) {
    EntropyProfile pr = entropy_profile(kernel, n_max, bits);
    if (pr.g(n_max) == 0)
        throw DegenerateKernelError(
            "dim_mu_nu_star: kernel is a point mass up to n_max (g_n = 0)");
    DimensionReport rep;
    for (std::size_t n : geometric_ns(n_max)) {
        if (pr.g(n) == 0) continue;  // ratio undefined before the first nondegenerate digit
        rep.checkpoints.push_back(pr.ratio_star(n));
    }
    rep.trend = classify_trend(rep.checkpoints);
    rep.analytic_limit = kernel.dim_star_limit();
    flag_out_of_range(rep);
    return rep;
}

DimensionReport dim_mu_nu_r(const ProbabilityKernel& kernel, std::size_t n_max, unsigned bits) {
    EntropyProfile pr = entropy_profile(kernel, n_max, bits);
    DimensionReport rep;
    for (std::size_t n : geometric_ns(n_max)) rep.checkpoints.push_back(pr.ratio_r(n));
    rep.trend = classify_trend(rep.checkpoints);
    rep.analytic_limit = kernel.dim_r_limit();
    flag_out_of_range(rep);
    return rep;
}

DimensionReport dim_spectrum_nu_r(const ProbabilityKernel& kernel, std::size_t k_max) {
    if (k_max < 1) throw Error("dim_spectrum_nu_r: k_max must be >= 1");
    if (k_max > kernel.entry_limit())
        throw Error("dim_spectrum_nu_r: kernel table ends before k_max");
    DimensionReport rep;
    std::size_t count = 0, next = 0;
    auto ns = geometric_ns(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (!kernel.degenerate(k)) ++count;
        if (next < ns.size() && k == ns[next]) {
            Checkpoint cp;
            cp.n = k;
            cp.exact = Rational(BigInt(count), BigInt(k));
            cp.approx = RealInterval::of_rational(*cp.exact, 96);
            rep.checkpoints.push_back(std::move(cp));
            ++next;
        }
    }
    rep.trend = classify_trend(rep.checkpoints);
    rep.analytic_limit = kernel.spectrum_r_limit();
    flag_out_of_range(rep);
    return rep;
}

PreservationReport preservation_check(const ProbabilityKernel& kernel, const Rational& p_floor,
                                      std::size_t n_max, unsigned bits) {
    if (p_floor.sign() <= 0 || p_floor > Rational(BigInt(1), BigInt(2)))
        throw Error("preservation_check: p_floor must lie in (0, 1/2]");
    PreservationReport out;
    std::size_t limit = std::min(n_max, kernel.entry_limit());
    for (std::size_t k = 1; k <= limit; ++k) {
        bool ok;
        if (kernel.entry_is_exact(k)) {
            Rational p = kernel.p0(k);
            ok = p >= p_floor && (Rational(1) - p) >= p_floor;
        } else {
            RealInterval p = kernel.p0_enclosure(k, bits);
            RealInterval q = kernel.p1_enclosure(k, bits);
            Rational lo = p.lo.to_rational();
            Rational qlo = q.lo.to_rational();
            ok = lo >= p_floor && qlo >= p_floor;
        }
        if (!ok) out.hypothesis_violations.push_back(k);
    }

    EntropyProfile pr = entropy_profile(kernel, limit, bits);
    out.criterion_at_n_max = pr.ratio_star(limit);
    out.criterion_limit = kernel.dim_star_limit();

    ClassificationVerdict v;
    if (out.criterion_limit) {
        v.basis = VerdictBasis::AnalyticCertificate;
        v.certificate = out.criterion_limit->certificate;
        using Kind = ProbabilityKernel::AnalyticLimit::Kind;
        if (out.criterion_limit->kind == Kind::ExactRational) {
            v.verdict = out.criterion_limit->value == Rational(1) ? Verdict::Preserves
                                                                  : Verdict::NotPreserves;
        } else {
            // entropy ratio h(p)/ln 2 equals 1 only at p = 1/2
            v.verdict = out.criterion_limit->value == Rational(BigInt(1), BigInt(2))
                            ? Verdict::Preserves
                            : Verdict::NotPreserves;
        }
    } else {
        v.verdict = Verdict::Undetermined;
        v.basis = VerdictBasis::NumericTrend;
        v.notes.push_back("no analytic certificate for the liminf; checkpoint reported");
    }
    if (!out.hypothesis_violations.empty())
        v.notes.push_back("hypothesis p_ik >= p_floor fails at " +
                          std::to_string(out.hypothesis_violations.size()) +
                          " indices (first: " +
                          std::to_string(out.hypothesis_violations.front()) + ")");
    v.evidence.push_back(out.criterion_at_n_max);
    out.classification = std::move(v);
    return out;
}

}  // namespace ostro
