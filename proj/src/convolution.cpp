#include "ostro/convolution.hpp"

#include <algorithm>

namespace ostro {

namespace {

// log of (count) * (length)^alpha from log count and log length
LogMagnitude alpha_volume_log(const RealInterval& log_count, const RealInterval& log_length,
                              const Rational& alpha, unsigned bits) {
    RealInterval v = ri_add(log_count, ri_scale(log_length, alpha, bits), bits);
    return LogMagnitude::from_log(1, v.mid(bits));
}

}  // namespace

CoverReport autoconv_cover(const MeasureModel& model, std::size_t m, std::size_t n,
                           const std::vector<Rational>& alphas, unsigned bits) {
    if (m < 1 || n < 1) throw Error("autoconv_cover: need m >= 1 and n >= 1");
    const OstroSequence& seq = *model.seq;
    CoverReport rep;
    rep.components = m;
    rep.rank = n;

    RealInterval ln_m1 = ln_rational(Rational(BigInt(m + 1)), bits);
    RealInterval log_count = ri_scale_int(ln_m1, BigInt(static_cast<unsigned long>(n)), bits);
    rep.count = LogMagnitude::from_log(1, log_count.mid(bits));
    if (n <= 512) rep.count_exact = pow(BigInt(m + 1), static_cast<unsigned>(n));

    // length = 4m / q_{n+1}
    RealInterval ln_4m = ln_rational(Rational(BigInt(4 * m)), bits);
    RealInterval log_len = ri_sub(ln_4m, seq.log_q(n + 1, bits), bits);
    rep.length = LogMagnitude::from_log(1, log_len.mid(bits));
    if (seq.can_materialize(n + 1))
        rep.length_exact = Rational(BigInt(4 * m), seq.q(n + 1));

    RealInterval log_len_prev =
        n >= 2 ? ri_sub(ln_4m, seq.log_q(n, bits), bits) : log_len;
    for (const Rational& a : alphas) {
        if (a.sign() <= 0) throw Error("autoconv_cover: alpha must be positive");
        AlphaVolume av;
        av.alpha = a;
        av.volume = alpha_volume_log(log_count, log_len, a, bits);
        if (n >= 2) {
            RealInterval prev_count =
                ri_scale_int(ln_m1, BigInt(static_cast<unsigned long>(n - 1)), bits);
            RealInterval prev = ri_add(prev_count, ri_scale(log_len_prev, a, bits), bits);
            RealInterval cur = ri_add(log_count, ri_scale(log_len, a, bits), bits);
            av.conclusive = cur.hi < prev.lo;  // certified decrease at this rank
        }
        rep.volumes.push_back(std::move(av));
    }
    return rep;
}

CoverReport genconv_cover(const std::vector<MeasureModel>& models, std::size_t n,
                          const std::vector<Rational>& alphas, unsigned bits) {
    if (models.empty() || n < 1) throw Error("genconv_cover: need components and n >= 1");
    const std::size_t m = models.size();
    CoverReport rep;
    rep.components = m;
    rep.rank = n;

    RealInterval ln2 = ln2_interval(bits);
    RealInterval log_count =
        ri_scale_int(ln2, BigInt(static_cast<unsigned long>(m * n)), bits);
    rep.count = LogMagnitude::from_log(1, log_count.mid(bits));
    if (m * n <= 4096) rep.count_exact = pow2(m * n);

    // uniform length bound 4m / 2^(2^(n-1))
    BigInt exponent = pow2(n - 1);
    RealInterval ln_4m = ln_rational(Rational(BigInt(4 * m)), bits);
    RealInterval log_len = ri_sub(ln_4m, ri_scale_int(ln2, exponent, bits), bits);
    rep.length = LogMagnitude::from_log(1, log_len.mid(bits));
    if (exponent <= 4096)
        rep.length_exact = Rational(BigInt(4 * m), pow2(exponent.convert_to<std::size_t>()));

    for (const Rational& a : alphas) {
        if (a.sign() <= 0) throw Error("genconv_cover: alpha must be positive");
        AlphaVolume av;
        av.alpha = a;
        av.volume = alpha_volume_log(log_count, log_len, a, bits);
        if (n >= 2) {
            RealInterval prev_count =
                ri_scale_int(ln2, BigInt(static_cast<unsigned long>(m * (n - 1))), bits);
            RealInterval prev_len = ri_sub(ln_4m, ri_scale_int(ln2, pow2(n - 2), bits), bits);
            RealInterval prev = ri_add(prev_count, ri_scale(prev_len, a, bits), bits);
            RealInterval cur = ri_add(log_count, ri_scale(log_len, a, bits), bits);
            av.conclusive = cur.hi < prev.lo;
        }
        rep.volumes.push_back(std::move(av));
    }
    return rep;
}

ComplexEnclosure conv_cf(const std::vector<MeasureModel>& models, const TrigArgument& t,
                         std::size_t n_terms, const Rational& tol, const CfOptions& opts) {
    if (models.empty()) throw Error("conv_cf: need at least one component");
    Rational per = tol / Rational(BigInt(2 * models.size()));
    ComplexEnclosure acc = ComplexEnclosure::one();
    for (const auto& m : models) acc = acc.mul(cf_eval(m, t, n_terms, per, opts), 192);
    return acc;
}

// --- infinite families --------------------------------------------------

namespace {

ProbabilityKernel geometric_component_kernel(std::size_t j, std::size_t k_max) {
    // p0_(j,k) = 1 - 2^-(j+k), tabulated to k_max
    std::vector<std::pair<Rational, Rational>> entries;
    entries.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        Rational defect(BigInt(1), pow2(j + k));
        entries.emplace_back(Rational(1) - defect, defect);
    }
    return ProbabilityKernel::from_table(std::move(entries));
}

}  // namespace

ConvolutionFamily ConvolutionFamily::geometric_discrete() {
    ConvolutionFamily f;
    f.kind = ConvFamilyKind::GeometricDiscrete;
    f.nested_kernel = ProbabilityKernel::family(KernelFamilyKind::Uniform);
    f.summability_certificate = "sum_j 1/q_1^(j) = sum_j 2^-j = 1";
    return f;
}

ConvolutionFamily ConvolutionFamily::dyadic_uniform() {
    ConvolutionFamily f;
    f.kind = ConvFamilyKind::DyadicUniform;
    f.nested_kernel = ProbabilityKernel::family(KernelFamilyKind::Uniform);
    f.summability_certificate = "sum_j 1/q_1^(j) = sum_j 2^-j = 1";
    return f;
}

ConvolutionFamily ConvolutionFamily::nested(std::shared_ptr<const OstroSequence> base,
                                            ProbabilityKernel kernel) {
    if (!base) throw Error("nested family needs a base sequence");
    ConvolutionFamily f;
    f.kind = ConvFamilyKind::Nested;
    f.nested_base = std::move(base);
    f.nested_kernel = std::move(kernel);
    f.summability_certificate =
        "sum_j 1/q_1^(j) = sum_j 1/q_{1+j} = r_1 < 2/q_2 (tail bound)";
    return f;
}

std::string ConvolutionFamily::name() const {
    switch (kind) {
        case ConvFamilyKind::GeometricDiscrete: return "geometric-discrete";
        case ConvFamilyKind::DyadicUniform: return "dyadic-uniform";
        case ConvFamilyKind::Nested: return "nested";
    }
    return "?";
}

BigInt ConvolutionFamily::first_denominator(std::size_t j) const {
    switch (kind) {
        case ConvFamilyKind::GeometricDiscrete:
        case ConvFamilyKind::DyadicUniform:
            return pow2(j);
        case ConvFamilyKind::Nested:
            return nested_base->q(1 + j);
    }
    throw Error("unreachable");
}

MeasureModel ConvolutionFamily::component(std::size_t j, std::size_t depth) const {
    if (j < 1) throw Error("component indices are 1-based");
    switch (kind) {
        case ConvFamilyKind::GeometricDiscrete: {
            auto seq = std::make_shared<OstroSequence>(
                OstroSequence::generate(GeneratorRule::sylvester(pow2(j)), depth));
            return MeasureModel{std::move(seq), geometric_component_kernel(j, depth + 64)};
        }
        case ConvFamilyKind::DyadicUniform: {
            auto seq = std::make_shared<OstroSequence>(
                OstroSequence::generate(GeneratorRule::sylvester(pow2(j)), depth));
            return MeasureModel{std::move(seq),
                                ProbabilityKernel::family(KernelFamilyKind::Uniform)};
        }
        case ConvFamilyKind::Nested: {
            std::vector<BigInt> prefix;
            prefix.reserve(depth);
            for (std::size_t k = 1; k <= depth; ++k) prefix.push_back(nested_base->q(k + j));
            auto seq = std::make_shared<OstroSequence>(OstroSequence::from_prefix(std::move(prefix)));
            return MeasureModel{std::move(seq), nested_kernel};
        }
    }
    throw Error("unreachable");
}

ClassificationVerdict infinite_conv_classify(const ConvolutionFamily& family, std::size_t j_max,
                                             std::size_t k_max) {
    if (j_max < 1 || k_max < 1) throw Error("infinite_conv_classify: need j_max, k_max >= 1");
    if (family.summability_certificate.empty())
        throw SummabilityViolatedError(
            "infinite convolution: no certificate that sum_j 1/q_1^(j) converges");

    ClassificationVerdict out;
    out.notes.push_back("summability: " + family.summability_certificate);

    // summability partial sums (reported, not the deciding evidence)
    {
        Rational s(0);
        std::size_t cap = std::min<std::size_t>(j_max, 24);
        for (std::size_t j = 1; j <= cap; ++j) s += Rational(BigInt(1), family.first_denominator(j));
        Checkpoint cp;
        cp.n = cap;
        cp.exact = s;
        cp.approx = RealInterval::of_rational(s, 96);
        out.evidence.push_back(std::move(cp));
        out.notes.push_back("evidence[0]: partial sum of 1/q_1^(j) to j = " +
                            std::to_string(cap));
    }

    // double partial products prod_j prod_k max{p0, p1}
    {
        Rational prod(1);
        std::size_t jcap = std::min<std::size_t>(j_max, 12);
        std::size_t kcap = std::min<std::size_t>(k_max, 24);
        for (std::size_t j = 1; j <= jcap; ++j) {
            MeasureModel comp = family.component(j, 2);
            for (std::size_t k = 1; k <= kcap; ++k) {
                Rational p0 = comp.kernel.p0(k);
                Rational p1 = Rational(1) - p0;
                prod *= p0 >= p1 ? p0 : p1;
            }
        }
        Checkpoint cp;
        cp.n = jcap;
        cp.exact = prod;
        cp.approx = RealInterval::of_rational(prod, 96);
        out.evidence.push_back(std::move(cp));
        out.notes.push_back("evidence[1]: prod_{j<=" + std::to_string(jcap) + "} prod_{k<=" +
                            std::to_string(kcap) + "} max{p0,p1}");
    }

    out.basis = VerdictBasis::AnalyticCertificate;
    switch (family.kind) {
        case ConvFamilyKind::GeometricDiscrete:
            out.verdict = Verdict::DiscreteAtoms;
            out.certificate =
                "sum_j sum_k (1 - max{p0,p1}) = sum 2^-(j+k) = 1 < inf, so the double product "
                "of maximal atoms stays positive";
            break;
        case ConvFamilyKind::DyadicUniform:
            out.verdict = Verdict::Continuous;
            out.certificate =
                "every component has maximal-atom product D_j <= 1/2, so prod_j D_j = 0; the "
                "first digits sum to the uniform distribution on [0,1], giving absolute "
                "continuity";
            out.notes.push_back("not discrete; absolutely continuous");
            break;
        case ConvFamilyKind::Nested:
            out.verdict = Verdict::Singular;
            out.certificate =
                "finite nested convolutions carry anomalously fractal coverings at every rank; "
                "the tail only shrinks them";
            out.notes.push_back("spectrum of zero Hausdorff dimension (anomalously fractal)");
            break;
    }

    // coherence guard: a component certified continuous forbids a discrete verdict
    if (out.verdict == Verdict::DiscreteAtoms) {
        for (std::size_t j = 1; j <= std::min<std::size_t>(j_max, 4); ++j) {
            auto cert = family.component(j, 2).kernel.continuity_D_is_zero();
            if (cert && cert->value)
                throw Error("infinite_conv_classify: inconsistent certificates (component " +
                            std::to_string(j) + " is continuous)");
        }
    }
    return out;
}

}  // namespace ostro
