#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ostro/cylinders.hpp"
#include "ostro/enclosure.hpp"
#include "ostro/sequence.hpp"

namespace ostro {

/// Built-in digit-probability families. Each carries closed forms for its
/// entries plus analytic certificates for the asymptotic classifications
/// (products/series convergence) that no finite computation can decide.
enum class KernelFamilyKind {
    Uniform,                 // p0_k = 1/2
    Constant,                // p0_k = c
    InvLinear,               // p0_k = 1/(2k)
    HalfMinusInvSqrt,        // p0_k = 1/2 - 1/(4 sqrt k)
    HalfMinusGeometric,      // p0_k = 1/2 - 2^-k
    AlternatingHalfQuarter,  // p0_{2k} = 1/2 - 1/(4k), p0_{2k-1} = 1/(2k)
    Pow2Support,             // p0_k = 1/2 if k = 2^m, else 0
    OneMinusInvSquare,       // p0_k = 1 - 1/(k+1)^2
    PointMassZero,           // p0_k = 1  (digit always 0)
    PointMassOne,            // p1_k = 1  (digit always 1)
};

std::string kernel_family_name(KernelFamilyKind kind);

struct KernelFamily {
    KernelFamilyKind kind;
    Rational param;  // Constant: the value of p0
};

/// Digit distribution {p_{0k}, p_{1k}} with p0 + p1 = 1. Entries come from
/// a closed-form family or an explicit rational table; raw float tables are
/// not representable, which keeps the asymptotic verdicts honest
/// (table-only kernels always classify as undetermined).
class ProbabilityKernel {
public:
    /// Empty table kernel; useful only as a placeholder before assignment.
    ProbabilityKernel() = default;

    static ProbabilityKernel family(KernelFamilyKind kind, Rational param = Rational(0));
    static ProbabilityKernel from_table(std::vector<std::pair<Rational, Rational>> entries);
    /// Parse preset names like "uniform", "const:3/10", "inv-linear",
    /// "half-minus-quarter-sqrt", ...
    static ProbabilityKernel preset(const std::string& name);

    const std::optional<KernelFamily>& family_info() const { return family_; }
    bool is_uniformized_view() const { return uniformized_; }
    const std::vector<std::pair<Rational, Rational>>& table() const { return table_; }

    /// Number of entries available (SIZE_MAX for family kernels).
    std::size_t entry_limit() const;

    bool entry_is_exact(std::size_t k) const;
    Rational p0(std::size_t k) const;  // throws when the entry is irrational
    Rational p1(std::size_t k) const { return Rational(1) - p0(k); }
    RealInterval p0_enclosure(std::size_t k, unsigned bits) const;
    RealInterval p1_enclosure(std::size_t k, unsigned bits) const;

    /// p0_k in {0, 1} exactly.
    bool degenerate(std::size_t k) const;
    /// The forced digit when degenerate.
    int forced_bit(std::size_t k) const;

    /// The nu* kernel: entries in (0,1) map to 1/2, degenerate entries are
    /// preserved. Idempotent.
    ProbabilityKernel uniformized() const;

    std::string describe() const;

    // -- analytic certificates ------------------------------------------
    struct BoolCertificate {
        bool value;
        std::string reason;
    };
    /// Is D = prod max{p0k, p1k} zero? (Levy continuity criterion.)
    std::optional<BoolCertificate> continuity_D_is_zero() const;
    /// Exact value of D when it is a known positive rational.
    std::optional<Rational> continuity_D_value() const;
    /// Does sum_{p0k p1k > 0} (1 - 2 p0k)^2 converge?
    std::optional<BoolCertificate> kakutani_series_converges() const;

    struct AnalyticLimit {
        enum class Kind { ExactRational, EntropyRatio };  // EntropyRatio: h(p)/ln 2
        Kind kind = Kind::ExactRational;
        Rational value;  // the limit, or p for EntropyRatio
        std::string certificate;

        RealInterval enclosure(unsigned bits) const;
        std::string decimal(unsigned bits = 96) const;
    };
    std::optional<AnalyticLimit> dim_star_limit() const;      // liminf H_n/(g_n ln2)
    std::optional<AnalyticLimit> dim_r_limit() const;         // liminf H_n/(n ln2)
    std::optional<AnalyticLimit> spectrum_r_limit() const;    // liminf N_k/k

private:
    std::optional<KernelFamily> family_;
    std::vector<std::pair<Rational, Rational>> table_;
    bool uniformized_ = false;

    Rational base_p0(std::size_t k) const;
    bool base_exact(std::size_t k) const;
};

/// A denominator sequence together with digit probabilities: the data of
/// the random series sum (-1)^(k+1) xi_k / q_k.
struct MeasureModel {
    std::shared_ptr<const OstroSequence> seq;
    ProbabilityKernel kernel;
};

enum class Verdict {
    Equivalent,
    Singular,
    DiscreteAtoms,
    Continuous,
    Undetermined,
    Preserves,
    NotPreserves,
};
std::string verdict_name(Verdict v);

enum class VerdictBasis { AnalyticCertificate, NumericTrend };

struct Checkpoint {
    std::size_t n = 0;
    std::optional<Rational> exact;  // set when the value is exactly rational
    RealInterval approx;

    std::string render(std::size_t digits = 12) const;
};

struct ClassificationVerdict {
    Verdict verdict = Verdict::Undetermined;
    VerdictBasis basis = VerdictBasis::NumericTrend;
    std::string certificate;  // analytic reason when basis is certificate
    std::vector<Checkpoint> evidence;
    std::vector<std::string> notes;
};

/// Exact product of digit probabilities along a word: the measure of the
/// cylinder with that base.
Rational cylinder_mass(const MeasureModel& model, const Word& word);
Rational cylinder_mass(const ProbabilityKernel& kernel, const Word& word);

/// Levy continuity: continuous iff D = prod max{p0k,p1k} = 0. Partial
/// products at geometric checkpoints; verdict only with a certificate.
ClassificationVerdict continuity_test(const ProbabilityKernel& kernel, std::size_t depth);

/// Kakutani-type classification of mu against nu*: equivalent iff
/// sum (1-2 p0k)^2 over nondegenerate k converges; singular (continuous)
/// iff it diverges and D = 0.
ClassificationVerdict kakutani_classify(const ProbabilityKernel& kernel, std::size_t depth);

/// Free-function spelling of ProbabilityKernel::uniformized.
inline ProbabilityKernel uniformized_kernel(const ProbabilityKernel& k) {
    return k.uniformized();
}

struct CdfOptions {
    std::size_t max_walk_depth = 200;
    unsigned max_refinements = 48;
    unsigned entry_bits = 192;  // precision for irrational kernel entries
};

struct CdfStats {
    std::size_t depth_used = 0;
    bool exact_gap_stop = false;
};

/// Enclosure of F(x) = mu((-inf, x)) of width <= tol. Walks digits in the
/// shifted (all-positive) coordinates where word order is value order;
/// terminates exactly when x falls into a digit gap, otherwise when the
/// undecided mass drops below tol.
IntervalEnclosure cdf(const MeasureModel& model, const Rational& x, const Rational& tol,
                      const CdfOptions& opts = {}, CdfStats* stats = nullptr);

enum class GaugeFunction { H1, H2 };  // h1 = F_{nu*}, h2 = F_{nu_r}

/// h1: CDF under the uniformized kernel; h2: CDF under the all-1/2 kernel
/// on the same sequence.
IntervalEnclosure gauge_eval(const MeasureModel& model, const Rational& t, GaugeFunction which,
                             const Rational& tol, const CdfOptions& opts = {});

/// RNG identifier recorded in sampling reports.
inline constexpr const char* kSamplerAlgorithm = "splitmix64-counter-v1";

/// n truncated realizations sum_{k<=depth} (-1)^(k+1) xi_k / q_k as exact
/// rationals. Deterministic in (seed, sample index); digit k of sample i
/// uses the counter value splitmix64(splitmix64(seed ^ (i+1)*C1) ^ (k+1)*C2).
std::vector<Rational> sample(const MeasureModel& model, std::size_t depth, std::uint64_t seed,
                             std::size_t count);

}  // namespace ostro
