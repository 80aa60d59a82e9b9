#include "ostro/measures.hpp"

#include <algorithm>
#include <sstream>

namespace ostro {

namespace {

bool is_power_of_two(std::size_t k) { return k > 0 && (k & (k - 1)) == 0; }

BigInt isqrt_floor(std::size_t k) { return boost::multiprecision::sqrt(BigInt(k)); }

bool is_perfect_square(std::size_t k) {
    BigInt r = isqrt_floor(k);
    return r * r == k;
}

const Rational kHalf{BigInt(1), BigInt(2)};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string kernel_family_name(KernelFamilyKind kind) {
    switch (kind) {
        case KernelFamilyKind::Uniform: return "uniform";
        case KernelFamilyKind::Constant: return "const";
        case KernelFamilyKind::InvLinear: return "inv-linear";
        case KernelFamilyKind::HalfMinusInvSqrt: return "half-minus-quarter-sqrt";
        case KernelFamilyKind::HalfMinusGeometric: return "half-minus-geometric";
        case KernelFamilyKind::AlternatingHalfQuarter: return "alternating-half-quarter";
        case KernelFamilyKind::Pow2Support: return "pow2-support";
        case KernelFamilyKind::OneMinusInvSquare: return "one-minus-inv-square";
        case KernelFamilyKind::PointMassZero: return "point-zero";
        case KernelFamilyKind::PointMassOne: return "point-one";
    }
    return "?";
}

ProbabilityKernel ProbabilityKernel::family(KernelFamilyKind kind, Rational param) {
    if (kind == KernelFamilyKind::Constant && (param < Rational(0) || param > Rational(1)))
        throw Error("constant kernel parameter must lie in [0, 1]");
    ProbabilityKernel k;
    k.family_ = KernelFamily{kind, std::move(param)};
    return k;
}

ProbabilityKernel ProbabilityKernel::from_table(
    std::vector<std::pair<Rational, Rational>> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [p0, p1] = entries[i];
        if (p0 + p1 != Rational(1) || p0 < Rational(0) || p1 < Rational(0))
            throw Error("kernel entry " + std::to_string(i + 1) +
                        " must satisfy p0 + p1 = 1 with p0, p1 >= 0");
    }
    ProbabilityKernel k;
    k.table_ = std::move(entries);
    return k;
}

ProbabilityKernel ProbabilityKernel::preset(const std::string& name) {
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    if (head == "uniform") return family(KernelFamilyKind::Uniform);
    if (head == "const") {
        if (colon == std::string::npos) throw Error("const kernel needs a parameter, e.g. const:3/10");
        return family(KernelFamilyKind::Constant, Rational::from_string(name.substr(colon + 1)));
    }
    if (head == "inv-linear") return family(KernelFamilyKind::InvLinear);
    if (head == "half-minus-quarter-sqrt") return family(KernelFamilyKind::HalfMinusInvSqrt);
    if (head == "half-minus-geometric") return family(KernelFamilyKind::HalfMinusGeometric);
    if (head == "alternating-half-quarter") return family(KernelFamilyKind::AlternatingHalfQuarter);
    if (head == "pow2-support") return family(KernelFamilyKind::Pow2Support);
    if (head == "one-minus-inv-square") return family(KernelFamilyKind::OneMinusInvSquare);
    if (head == "point-zero") return family(KernelFamilyKind::PointMassZero);
    if (head == "point-one") return family(KernelFamilyKind::PointMassOne);
    throw Error("unknown kernel preset: " + name);
}

std::size_t ProbabilityKernel::entry_limit() const {
    return family_ ? SIZE_MAX : table_.size();
}

Rational ProbabilityKernel::base_p0(std::size_t k) const {
    if (k == 0) throw Error("kernel indices are 1-based");
    if (!family_) {
        if (k > table_.size())
            throw Error("kernel table has " + std::to_string(table_.size()) +
                        " entries; entry " + std::to_string(k) + " requested");
        return table_[k - 1].first;
    }
    switch (family_->kind) {
        case KernelFamilyKind::Uniform: return kHalf;
        case KernelFamilyKind::Constant: return family_->param;
        case KernelFamilyKind::InvLinear:
            return Rational(BigInt(1), BigInt(2) * static_cast<unsigned long>(k));
        case KernelFamilyKind::HalfMinusInvSqrt: {
            if (!is_perfect_square(k))
                throw Error("p0_" + std::to_string(k) +
                            " of half-minus-quarter-sqrt is irrational; use the enclosure");
            return kHalf - Rational(BigInt(1), BigInt(4) * isqrt_floor(k));
        }
        case KernelFamilyKind::HalfMinusGeometric:
            return kHalf - Rational(BigInt(1), pow2(k));
        case KernelFamilyKind::AlternatingHalfQuarter: {
            if (k % 2 == 0) return kHalf - Rational(BigInt(1), BigInt(2) * static_cast<unsigned long>(k));
            return Rational(BigInt(1), BigInt(static_cast<unsigned long>(k) + 1));
        }
        case KernelFamilyKind::Pow2Support:
            return is_power_of_two(k) ? kHalf : Rational(0);
        case KernelFamilyKind::OneMinusInvSquare: {
            BigInt d = BigInt(static_cast<unsigned long>(k) + 1);
            return Rational(1) - Rational(BigInt(1), d * d);
        }
        case KernelFamilyKind::PointMassZero: return Rational(1);
        case KernelFamilyKind::PointMassOne: return Rational(0);
    }
    throw Error("unreachable");
}

bool ProbabilityKernel::base_exact(std::size_t k) const {
    if (!family_) return true;
    if (family_->kind == KernelFamilyKind::HalfMinusInvSqrt) return is_perfect_square(k);
    return true;
}

bool ProbabilityKernel::entry_is_exact(std::size_t k) const {
    if (uniformized_) return true;  // p* entries are 0, 1/2 or 1
    return base_exact(k);
}

bool ProbabilityKernel::degenerate(std::size_t k) const {
    if (base_exact(k)) {
        Rational p = base_p0(k);
        return p.is_zero() || p == Rational(1);
    }
    return false;  // irrational entries lie strictly inside (0,1)
}

int ProbabilityKernel::forced_bit(std::size_t k) const {
    if (!degenerate(k)) throw Error("forced_bit: entry " + std::to_string(k) + " not degenerate");
    return base_p0(k) == Rational(1) ? 0 : 1;
}

Rational ProbabilityKernel::p0(std::size_t k) const {
    if (uniformized_) return degenerate(k) ? base_p0(k) : kHalf;
    return base_p0(k);
}

RealInterval ProbabilityKernel::p0_enclosure(std::size_t k, unsigned bits) const {
    if (entry_is_exact(k)) return RealInterval::of_rational(p0(k), bits);
    // 1/2 - 1/(4 sqrt k)
    RealInterval rk = ri_sqrt(RealInterval::of_long(static_cast<long>(k)), bits + 8);
    RealInterval quarter = ri_div(RealInterval::of_long(1),
                                  ri_scale_int(rk, BigInt(4), bits + 8), bits + 8);
    return ri_sub(RealInterval::of_rational(kHalf, bits + 8), quarter, bits);
}

RealInterval ProbabilityKernel::p1_enclosure(std::size_t k, unsigned bits) const {
    if (entry_is_exact(k)) return RealInterval::of_rational(p1(k), bits);
    return ri_sub(RealInterval::of_long(1), p0_enclosure(k, bits + 4), bits);
}

ProbabilityKernel ProbabilityKernel::uniformized() const {
    ProbabilityKernel k = *this;
    k.uniformized_ = true;
    return k;
}

std::string ProbabilityKernel::describe() const {
    std::string base = family_ ? kernel_family_name(family_->kind) : "table";
    if (family_ && family_->kind == KernelFamilyKind::Constant)
        base += ":" + family_->param.to_string();
    if (!family_) base += "[" + std::to_string(table_.size()) + "]";
    if (uniformized_) base = "uniformized(" + base + ")";
    return base;
}

// --- analytic certificates -------------------------------------------------

namespace {

bool family_infinitely_many_nondegenerate(const KernelFamily& f) {
    switch (f.kind) {
        case KernelFamilyKind::PointMassZero:
        case KernelFamilyKind::PointMassOne:
            return false;
        case KernelFamilyKind::Constant:
            return f.param > Rational(0) && f.param < Rational(1);
        default:
            return true;  // incl. Pow2Support (powers of two) and HalfMinusGeometric (k >= 2)
    }
}

}  // namespace

std::optional<ProbabilityKernel::BoolCertificate> ProbabilityKernel::continuity_D_is_zero()
    const {
    if (!family_) return std::nullopt;
    if (uniformized_) {
        if (family_infinitely_many_nondegenerate(*family_))
            return BoolCertificate{true, "infinitely many factors equal 1/2"};
        return BoolCertificate{false, "finitely many nondegenerate digits"};
    }
    switch (family_->kind) {
        case KernelFamilyKind::Uniform:
            return BoolCertificate{true, "every factor is 1/2 < 1"};
        case KernelFamilyKind::Constant: {
            const Rational& c = family_->param;
            if (c.is_zero() || c == Rational(1))
                return BoolCertificate{false, "degenerate digits: D = 1"};
            return BoolCertificate{true, "constant factor max(c, 1-c) < 1"};
        }
        case KernelFamilyKind::InvLinear:
            return BoolCertificate{true, "log D = sum log(1 - 1/(2k)) diverges (harmonic)"};
        case KernelFamilyKind::HalfMinusInvSqrt:
            return BoolCertificate{true, "every factor is at most 3/4"};
        case KernelFamilyKind::HalfMinusGeometric:
            return BoolCertificate{true, "factors at most 3/4 from k = 2 on"};
        case KernelFamilyKind::AlternatingHalfQuarter:
            return BoolCertificate{true, "odd factors 1 - 1/(k+1) drive the product to 0"};
        case KernelFamilyKind::Pow2Support:
            return BoolCertificate{true, "infinitely many factors equal 1/2"};
        case KernelFamilyKind::OneMinusInvSquare:
            return BoolCertificate{false, "telescoping product (m+1)/(2m) -> 1/2 > 0"};
        case KernelFamilyKind::PointMassZero:
        case KernelFamilyKind::PointMassOne:
            return BoolCertificate{false, "all digits degenerate: D = 1"};
    }
    return std::nullopt;
}

std::optional<Rational> ProbabilityKernel::continuity_D_value() const {
    if (!family_ || uniformized_) return std::nullopt;
    switch (family_->kind) {
        case KernelFamilyKind::OneMinusInvSquare: return Rational(kHalf);
        case KernelFamilyKind::PointMassZero:
        case KernelFamilyKind::PointMassOne: return Rational(1);
        case KernelFamilyKind::Constant:
            if (family_->param.is_zero() || family_->param == Rational(1)) return Rational(1);
            return std::nullopt;
        default: return std::nullopt;
    }
}

std::optional<ProbabilityKernel::BoolCertificate> ProbabilityKernel::kakutani_series_converges()
    const {
    if (!family_) return std::nullopt;
    if (uniformized_) return BoolCertificate{true, "all nondegenerate terms vanish"};
    switch (family_->kind) {
        case KernelFamilyKind::Uniform:
            return BoolCertificate{true, "all terms vanish"};
        case KernelFamilyKind::Constant: {
            const Rational& c = family_->param;
            if (c.is_zero() || c == Rational(1))
                return BoolCertificate{true, "empty sum (no nondegenerate digits)"};
            if (c == kHalf) return BoolCertificate{true, "all terms vanish"};
            return BoolCertificate{false, "constant positive terms (1-2c)^2"};
        }
        case KernelFamilyKind::InvLinear:
            return BoolCertificate{false, "terms (1 - 1/k)^2 tend to 1"};
        case KernelFamilyKind::HalfMinusInvSqrt:
            return BoolCertificate{false, "terms 1/(4k) form a divergent harmonic series"};
        case KernelFamilyKind::HalfMinusGeometric:
            return BoolCertificate{true, "terms 4^(1-k) form a convergent geometric series"};
        case KernelFamilyKind::AlternatingHalfQuarter:
            return BoolCertificate{false, "odd-index terms tend to 1"};
        case KernelFamilyKind::Pow2Support:
            return BoolCertificate{true, "all nondegenerate terms vanish"};
        case KernelFamilyKind::OneMinusInvSquare:
            return BoolCertificate{false, "terms tend to 1"};
        case KernelFamilyKind::PointMassZero:
        case KernelFamilyKind::PointMassOne:
            return BoolCertificate{true, "empty sum (no nondegenerate digits)"};
    }
    return std::nullopt;
}

RealInterval ProbabilityKernel::AnalyticLimit::enclosure(unsigned bits) const {
    if (kind == Kind::ExactRational) return RealInterval::of_rational(value, bits);
    // h(p) / ln 2 with h(p) = -(p ln p + (1-p) ln(1-p))
    const unsigned wb = bits + 16;
    RealInterval p = RealInterval::of_rational(value, wb);
    RealInterval q = RealInterval::of_rational(Rational(1) - value, wb);
    RealInterval h = ri_add(ri_mul(p, ln_rational(value, wb), wb),
                            ri_mul(q, ln_rational(Rational(1) - value, wb), wb), wb)
                         .negated();
    return ri_div(h, ln2_interval(wb), bits);
}

std::string ProbabilityKernel::AnalyticLimit::decimal(unsigned bits) const {
    if (kind == Kind::ExactRational) return value.to_string();
    return enclosure(bits).mid(bits).to_decimal(12);
}

std::optional<ProbabilityKernel::AnalyticLimit> ProbabilityKernel::dim_star_limit() const {
    using AL = AnalyticLimit;
    if (!family_) return std::nullopt;
    if (uniformized_)
        return AL{AL::Kind::ExactRational, Rational(1), "all nondegenerate digits carry probability 1/2"};
    switch (family_->kind) {
        case KernelFamilyKind::Uniform:
            return AL{AL::Kind::ExactRational, Rational(1), "h_k = ln 2 for every k"};
        case KernelFamilyKind::Constant: {
            const Rational& c = family_->param;
            if (c.is_zero() || c == Rational(1)) return std::nullopt;
            return AL{AL::Kind::EntropyRatio, c, "constant per-digit entropy h(c)/ln 2"};
        }
        case KernelFamilyKind::InvLinear:
            return AL{AL::Kind::ExactRational, Rational(0), "h_k -> 0, so the Cesaro mean vanishes"};
        case KernelFamilyKind::HalfMinusInvSqrt:
            return AL{AL::Kind::ExactRational, Rational(1), "h_k = ln 2 - O(1/k), deficit sums to O(log n)"};
        case KernelFamilyKind::HalfMinusGeometric:
            return AL{AL::Kind::ExactRational, Rational(1), "h_k -> ln 2 geometrically fast"};
        case KernelFamilyKind::AlternatingHalfQuarter:
            return AL{AL::Kind::ExactRational, kHalf,
                      "odd digits contribute vanishing entropy, even digits approach ln 2"};
        case KernelFamilyKind::Pow2Support:
            return AL{AL::Kind::ExactRational, Rational(1), "every nondegenerate digit has probability 1/2"};
        case KernelFamilyKind::OneMinusInvSquare:
            return AL{AL::Kind::ExactRational, Rational(0), "entropies are summable, H_n stays bounded"};
        default:
            return std::nullopt;
    }
}

std::optional<ProbabilityKernel::AnalyticLimit> ProbabilityKernel::dim_r_limit() const {
    using AL = AnalyticLimit;
    if (!family_) return std::nullopt;
    if (uniformized_) {
        auto spec = spectrum_r_limit();
        if (!spec) return std::nullopt;
        return AL{spec->kind, spec->value, "H_n = g_n ln 2 under the uniformized kernel"};
    }
    switch (family_->kind) {
        case KernelFamilyKind::Uniform:
            return AL{AL::Kind::ExactRational, Rational(1), "h_k = ln 2 for every k"};
        case KernelFamilyKind::Constant: {
            const Rational& c = family_->param;
            if (c.is_zero() || c == Rational(1))
                return AL{AL::Kind::ExactRational, Rational(0), "zero entropy digits"};
            return AL{AL::Kind::EntropyRatio, c, "constant per-digit entropy h(c)/ln 2"};
        }
        case KernelFamilyKind::InvLinear:
            return AL{AL::Kind::ExactRational, Rational(0), "h_k -> 0"};
        case KernelFamilyKind::HalfMinusInvSqrt:
            return AL{AL::Kind::ExactRational, Rational(1), "h_k -> ln 2"};
        case KernelFamilyKind::HalfMinusGeometric:
            return AL{AL::Kind::ExactRational, Rational(1), "h_k -> ln 2"};
        case KernelFamilyKind::AlternatingHalfQuarter:
            return AL{AL::Kind::ExactRational, kHalf, "alternating 0 / ln 2 entropy pattern"};
        case KernelFamilyKind::Pow2Support:
            return AL{AL::Kind::ExactRational, Rational(0), "H_n = (floor(log2 n)+1) ln 2 = o(n)"};
        case KernelFamilyKind::OneMinusInvSquare:
            return AL{AL::Kind::ExactRational, Rational(0), "H_n bounded"};
        case KernelFamilyKind::PointMassZero:
        case KernelFamilyKind::PointMassOne:
            return AL{AL::Kind::ExactRational, Rational(0), "zero entropy digits"};
    }
    return std::nullopt;
}

std::optional<ProbabilityKernel::AnalyticLimit> ProbabilityKernel::spectrum_r_limit() const {
    using AL = AnalyticLimit;
    if (!family_) return std::nullopt;
    const KernelFamily& f = *family_;
    switch (f.kind) {
        case KernelFamilyKind::Uniform:
        case KernelFamilyKind::InvLinear:
        case KernelFamilyKind::HalfMinusInvSqrt:
        case KernelFamilyKind::AlternatingHalfQuarter:
        case KernelFamilyKind::OneMinusInvSquare:
            return AL{AL::Kind::ExactRational, Rational(1), "every digit is nondegenerate"};
        case KernelFamilyKind::Constant:
            if (f.param.is_zero() || f.param == Rational(1))
                return AL{AL::Kind::ExactRational, Rational(0), "no nondegenerate digits"};
            return AL{AL::Kind::ExactRational, Rational(1), "every digit is nondegenerate"};
        case KernelFamilyKind::HalfMinusGeometric:
            return AL{AL::Kind::ExactRational, Rational(1), "all digits from k = 2 on are nondegenerate"};
        case KernelFamilyKind::Pow2Support:
            return AL{AL::Kind::ExactRational, Rational(0), "N_k = floor(log2 k) + 1 = o(k)"};
        case KernelFamilyKind::PointMassZero:
        case KernelFamilyKind::PointMassOne:
            return AL{AL::Kind::ExactRational, Rational(0), "no nondegenerate digits"};
    }
    return std::nullopt;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Singular: return "singular";
        case Verdict::DiscreteAtoms: return "discrete_atoms";
        case Verdict::Continuous: return "continuous";
        case Verdict::Undetermined: return "undetermined";
        case Verdict::Preserves: return "preserves";
        case Verdict::NotPreserves: return "not-preserves";
    }
    return "?";
}

std::string Checkpoint::render(std::size_t digits) const {
    if (exact) return exact->to_string();
    return approx.mid(128).to_decimal(digits);
}

// --- cylinder mass -----------------------------------------------------------

Rational cylinder_mass(const ProbabilityKernel& kernel, const Word& word) {
    Rational mass(1);
    for (std::size_t j = 1; j <= word.rank(); ++j) {
        if (!kernel.entry_is_exact(j))
            throw Error("cylinder_mass: kernel entry " + std::to_string(j) +
                        " is not an exact rational");
        mass *= word.bits[j - 1] ? kernel.p1(j) : kernel.p0(j);
    }
    return mass;
}

Rational cylinder_mass(const MeasureModel& model, const Word& word) {
    return cylinder_mass(model.kernel, word);
}

// --- classification ----------------------------------------------------------

namespace {

std::vector<std::size_t> geometric_checkpoints(std::size_t depth) {
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n < depth; n *= 2) ns.push_back(n);
    ns.push_back(depth);
    return ns;
}

}  // namespace

ClassificationVerdict continuity_test(const ProbabilityKernel& kernel, std::size_t depth) {
    if (depth < 1) throw Error("continuity_test: depth must be >= 1");
    depth = std::min(depth, kernel.entry_limit());
    ClassificationVerdict out;

    bool exact_all = true;
    Rational d_exact(1);
    RealInterval d_approx = RealInterval::of_long(1);
    const unsigned bits = 128;
    std::size_t next_cp = 0;
    auto cps = geometric_checkpoints(depth);
    for (std::size_t k = 1; k <= depth; ++k) {
        if (exact_all && kernel.entry_is_exact(k)) {
            Rational p = kernel.p0(k);
            Rational mx = p >= kHalf ? p : Rational(1) - p;
            d_exact *= mx;
        } else {
            if (exact_all) {
                d_approx = RealInterval::of_rational(d_exact, bits);
                exact_all = false;
            }
            RealInterval p = kernel.p0_enclosure(k, bits);
            RealInterval q = ri_sub(RealInterval::of_long(1), p, bits);
            RealInterval mx(p.lo >= q.lo ? p.lo : q.lo, p.hi >= q.hi ? p.hi : q.hi);
            d_approx = ri_mul(d_approx, mx, bits);
        }
        if (next_cp < cps.size() && k == cps[next_cp]) {
            Checkpoint cp;
            cp.n = k;
            if (exact_all) {
                cp.exact = d_exact;
                cp.approx = RealInterval::of_rational(d_exact, bits);
            } else {
                cp.approx = d_approx;
            }
            out.evidence.push_back(std::move(cp));
            ++next_cp;
        }
    }

    auto cert = kernel.continuity_D_is_zero();
    if (cert) {
        out.basis = VerdictBasis::AnalyticCertificate;
        out.certificate = cert->reason;
        out.verdict = cert->value ? Verdict::Continuous : Verdict::DiscreteAtoms;
        if (auto dv = kernel.continuity_D_value())
            out.notes.push_back("D = " + dv->to_string() + " exactly");
    } else {
        out.verdict = Verdict::Undetermined;
        out.basis = VerdictBasis::NumericTrend;
        out.notes.push_back("no family certificate; partial products reported to depth " +
                            std::to_string(depth));
    }
    return out;
}

ClassificationVerdict kakutani_classify(const ProbabilityKernel& kernel, std::size_t depth) {
    if (depth < 1) throw Error("kakutani_classify: depth must be >= 1");
    depth = std::min(depth, kernel.entry_limit());
    ClassificationVerdict out;

    bool exact_all = true;
    Rational s_exact(0);
    RealInterval s_approx;
    const unsigned bits = 128;
    std::size_t next_cp = 0;
    auto cps = geometric_checkpoints(depth);
    for (std::size_t k = 1; k <= depth; ++k) {
        if (kernel.degenerate(k)) {
            // excluded from the sum
        } else if (exact_all && kernel.entry_is_exact(k)) {
            Rational t = Rational(1) - Rational(2) * kernel.p0(k);
            s_exact += t * t;
        } else {
            if (exact_all) {
                s_approx = RealInterval::of_rational(s_exact, bits);
                exact_all = false;
            }
            RealInterval t = ri_sub(RealInterval::of_long(1),
                                    ri_scale_int(kernel.p0_enclosure(k, bits), BigInt(2), bits),
                                    bits);
            s_approx = ri_add(s_approx, ri_square(t, bits), bits);
        }
        if (next_cp < cps.size() && k == cps[next_cp]) {
            Checkpoint cp;
            cp.n = k;
            if (exact_all) {
                cp.exact = s_exact;
                cp.approx = RealInterval::of_rational(s_exact, bits);
            } else {
                cp.approx = s_approx;
            }
            out.evidence.push_back(std::move(cp));
            ++next_cp;
        }
    }

    auto series = kernel.kakutani_series_converges();
    if (!series) {
        out.verdict = Verdict::Undetermined;
        out.basis = VerdictBasis::NumericTrend;
        out.notes.push_back("no family certificate; partial sums reported");
        return out;
    }
    out.basis = VerdictBasis::AnalyticCertificate;
    if (series->value) {
        out.verdict = Verdict::Equivalent;
        out.certificate = series->reason;
        out.notes.push_back(
            "absolute continuity w.r.t. nu* upgrades to mutual equivalence on the common spectrum");
        return out;
    }
    auto dzero = kernel.continuity_D_is_zero();
    if (dzero && dzero->value) {
        out.verdict = Verdict::Singular;
        out.certificate = series->reason + "; D = 0";
    } else if (dzero && !dzero->value) {
        out.verdict = Verdict::Singular;
        out.certificate = series->reason + "; D > 0";
        out.notes.push_back("mu is purely atomic while nu* is continuous, hence mutually singular");
    } else {
        out.verdict = Verdict::Undetermined;
        out.basis = VerdictBasis::NumericTrend;
    }
    return out;
}

// --- CDF ---------------------------------------------------------------------

namespace {

// Deep walks touch denominators with 10^4+ digits; exact rational sums
// would spend all their time in gcd normalization. The walk geometry
// therefore runs in certified dyadic intervals (masses stay exact).
struct WalkGeometry {
    const OstroSequence& seq;
    unsigned bits;
    std::size_t shift_cutoff;
    std::vector<std::size_t> taken;  // indices with digit 1 (value consumed)
    RealInterval x_iv;
    RealInterval shift_iv;     // sum of even-index 1/q_k (full tail)
    RealInterval consumed_iv;  // sum of 1/q_i over taken
    const Rational& x;

    mutable std::vector<RealInterval> term_cache;

    WalkGeometry(const OstroSequence& s, const Rational& x0, unsigned b, std::size_t cutoff)
        : seq(s), bits(b), shift_cutoff(cutoff), x(x0) {
        recompute();
    }

    RealInterval term_iv(std::size_t k) const {
        if (k <= term_cache.size() && !term_cache[k - 1].hi.is_zero()) return term_cache[k - 1];
        BigFloat q(seq.q(k));
        RealInterval t(BigFloat::div(BigFloat::from_long(1), q, bits, Round::Down),
                       BigFloat::div(BigFloat::from_long(1), q, bits, Round::Up));
        if (k > term_cache.size()) term_cache.resize(k);
        term_cache[k - 1] = t;
        return t;
    }

    void recompute() {
        term_cache.clear();
        x_iv = RealInterval::of_rational(x, bits);
        RealInterval s;
        for (std::size_t k = 2; k <= shift_cutoff; k += 2) s = ri_add(s, term_iv(k), bits);
        BigFloat bound = BigFloat::div(BigFloat::from_long(2), BigFloat(seq.q(shift_cutoff + 1)),
                                       bits, Round::Up);
        shift_iv = RealInterval(s.lo, BigFloat::add(s.hi, bound, bits, Round::Up));
        consumed_iv = RealInterval();
        for (std::size_t i : taken) consumed_iv = ri_add(consumed_iv, term_iv(i), bits);
    }

    void take(std::size_t k) {
        taken.push_back(k);
        consumed_iv = ri_add(consumed_iv, term_iv(k), bits);
    }

    // Separations at step k live at the scale of 1/q_{k+2}; jump straight
    // to a precision that resolves them instead of laddering up.
    bool refine(std::size_t step) {
        bool changed = false;
        if (seq.can_materialize(shift_cutoff + 2)) {
            ++shift_cutoff;
            changed = true;
        }
        std::size_t probe = step + 2;
        while (probe > step && !seq.can_materialize(probe)) --probe;
        unsigned target = bits * 2;
        if (probe > step)
            target = std::max<unsigned>(
                target, static_cast<unsigned>(bit_length(seq.q(probe))) + 128);
        if (target > bits && target <= (1u << 22)) {
            bits = target;
            changed = true;
        }
        if (changed) recompute();
        return changed;
    }

    RealInterval rem() const {
        return ri_sub(ri_add(x_iv, shift_iv, bits), consumed_iv, bits);
    }

    // enclosure of r_n = sum_{i>n} 1/q_i
    RealInterval tail(std::size_t n, std::size_t extra) const {
        while (extra > 0 && !seq.can_materialize(n + extra + 1)) --extra;
        RealInterval s;
        for (std::size_t i = n + 1; i <= n + extra; ++i) s = ri_add(s, term_iv(i), bits);
        BigFloat bound = BigFloat::div(BigFloat::from_long(2), BigFloat(seq.q(n + extra + 1)),
                                       bits, Round::Up);
        return RealInterval(s.lo, BigFloat::add(s.hi, bound, bits, Round::Up));
    }
};

}  // namespace

IntervalEnclosure cdf(const MeasureModel& model, const Rational& x, const Rational& tol,
                      const CdfOptions& opts, CdfStats* stats) {
    if (tol.sign() <= 0) throw Error("cdf: tol must be positive");
    const OstroSequence& seq = *model.seq;
    const ProbabilityKernel& K = model.kernel;

    // Working precision: enough that neither kernel-entry imprecision nor
    // dyadic geometry can dominate tol over the whole walk.
    long tol_bits = static_cast<long>(bit_length(tol.den())) - static_cast<long>(bit_length(tol.num()));
    const unsigned ebits =
        std::max<unsigned>(opts.entry_bits, static_cast<unsigned>(std::max(0L, tol_bits)) + 96);

    auto eta_p = [&](std::size_t k) -> std::pair<IntervalEnclosure, IntervalEnclosure> {
        // returns (P(eta_k = 0), P(eta_k = 1)); eta swaps the digit at even k
        IntervalEnclosure p0e, p1e;
        if (K.entry_is_exact(k)) {
            Rational p0v = K.p0(k);
            p0e = IntervalEnclosure::point(p0v);
            p1e = IntervalEnclosure::point(Rational(1) - p0v);
        } else {
            p0e = IntervalEnclosure::from_real(K.p0_enclosure(k, ebits));
            p1e = IntervalEnclosure::from_real(K.p1_enclosure(k, ebits));
        }
        if (k % 2 == 1) return {p0e, p1e};
        return {p1e, p0e};
    };

    try {
        std::size_t cutoff = 8;
        while (!seq.can_materialize(cutoff + 1) && cutoff > 1) --cutoff;
        WalkGeometry geo(seq, x, ebits, cutoff);

        IntervalEnclosure mass(Rational(0), Rational(0));
        IntervalEnclosure prefix(Rational(1), Rational(1));

        auto finish = [&](IntervalEnclosure extra) {
            Rational lo = mass.lo + extra.lo;
            Rational hi = mass.hi + extra.hi;
            if (lo < Rational(0)) lo = Rational(0);
            if (hi > Rational(1)) hi = Rational(1);
            if (lo > hi) lo = hi;
            return IntervalEnclosure(lo, hi);
        };

        for (std::size_t k = 1; k <= opts.max_walk_depth; ++k) {
            if (stats) stats->depth_used = k;
            // tolerance stop: undecided mass is at most prefix.hi
            if (mass.width() + prefix.hi <= tol)
                return finish(IntervalEnclosure(Rational(0), prefix.hi));
            if (prefix.hi.is_zero()) return finish(IntervalEnclosure(Rational(0), Rational(0)));
            if (!seq.can_materialize(k + 1))
                throw PrecisionBudgetError(
                    "cdf: walk needs q_" + std::to_string(k + 1) +
                    " which cannot be materialized; tol = " + tol.to_string() + " unreachable");

            auto [p_zero, p_one] = eta_p(k);

            std::size_t tail_extra = 1;
            for (unsigned attempt = 0;; ++attempt) {
                RealInterval a_k = geo.term_iv(k);
                RealInterval rem = geo.rem();
                if (rem.hi.sign() <= 0)
                    return finish(IntervalEnclosure(Rational(0), Rational(0)));

                RealInterval r_k = geo.tail(k, tail_extra);
                RealInterval big = ri_add(r_k, a_k, geo.bits);  // R_k = a_k + r_k
                if (rem.lo > big.hi) return finish(prefix);     // everything lies below x

                if (rem.lo > a_k.hi) {  // digit 1: the whole 0-branch is below
                    mass = mass + prefix * p_zero;
                    prefix = prefix * p_one;
                    geo.take(k);
                    break;
                }
                if (rem.hi < a_k.lo) {  // digit 0 side
                    if (rem.lo > r_k.hi) {
                        // gap: the whole 0-branch is below and nothing else is
                        if (stats) stats->exact_gap_stop = true;
                        return finish(prefix * p_zero);
                    }
                    if (rem.hi < r_k.lo || attempt >= 6) {
                        prefix = prefix * p_zero;
                        break;  // descend 0 (self-corrects next step if rem was in the gap)
                    }
                } else if (attempt >= opts.max_refinements) {
                    throw PrecisionBudgetError(
                        "cdf: could not separate the walk value from 1/q_" + std::to_string(k) +
                        " within the refinement budget");
                }
                if (seq.can_materialize(k + tail_extra + 2)) ++tail_extra;
                if (!geo.refine(k) && attempt >= 2)
                    throw PrecisionBudgetError(
                        "cdf: sequence cannot be materialized deep enough for tol = " +
                        tol.to_string());
            }
        }
        if (mass.width() + prefix.hi <= tol)
            return finish(IntervalEnclosure(Rational(0), prefix.hi));
        throw PrecisionBudgetError("cdf: walk depth limit reached before width <= tol");
    } catch (const InsufficientDepthError& e) {
        throw PrecisionBudgetError(std::string("cdf: ") + e.what());
    } catch (const DepthOverflowError& e) {
        throw PrecisionBudgetError(std::string("cdf: ") + e.what());
    }
}

IntervalEnclosure gauge_eval(const MeasureModel& model, const Rational& t, GaugeFunction which,
                             const Rational& tol, const CdfOptions& opts) {
    MeasureModel m{model.seq, which == GaugeFunction::H1
                                  ? model.kernel.uniformized()
                                  : ProbabilityKernel::family(KernelFamilyKind::Uniform)};
    return cdf(m, t, tol, opts);
}

// --- sampling ---------------------------------------------------------------

std::vector<Rational> sample(const MeasureModel& model, std::size_t depth, std::uint64_t seed,
                             std::size_t count) {
    if (depth < 1) throw Error("sample: depth must be >= 1");
    const OstroSequence& seq = *model.seq;
    const ProbabilityKernel& K = model.kernel;

    // Precompute digit thresholds: digit = 1 iff u < p1 * 2^64 (u uniform in
    // [0, 2^64)). Irrational entries use a 128-bit midpoint approximation of
    // p1; the induced bias per digit is below 2^-64 regardless.
    std::vector<BigInt> thresholds(depth);
    const BigInt two64 = pow2(64);
    for (std::size_t k = 1; k <= depth; ++k) {
        if (K.entry_is_exact(k)) {
            Rational p1 = K.p1(k);
            thresholds[k - 1] = (p1.num() * two64) / p1.den();
        } else {
            RealInterval p1 = K.p1_enclosure(k, 128);
            Rational mid = p1.mid(128).to_rational();
            thresholds[k - 1] = (mid.num() * two64) / mid.den();
        }
    }
    std::vector<Rational> terms(depth);
    for (std::size_t k = 1; k <= depth; ++k)
        terms[k - 1] = (k % 2 == 1) ? seq.term(k) : -seq.term(k);

    constexpr std::uint64_t kC1 = 0x9e3779b97f4a7c15ULL;
    constexpr std::uint64_t kC2 = 0xc2b2ae3d27d4eb4fULL;
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t base = splitmix64(seed ^ (kC1 * static_cast<std::uint64_t>(i + 1)));
        Rational v(0);
        for (std::size_t k = 1; k <= depth; ++k) {
            std::uint64_t u = splitmix64(base ^ (kC2 * static_cast<std::uint64_t>(k)));
            if (BigInt(u) < thresholds[k - 1]) v += terms[k - 1];
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace ostro
