#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ostro/measures.hpp"
#include "ostro/sequence.hpp"

namespace ostro {

enum class EntropyTermKind { Zero, Ln2, General };

/// Per-digit entropies h_k = -(p0k ln p0k + p1k ln p1k) with their prefix
/// data. Terms that are exactly 0 (degenerate digit) or exactly ln 2
/// (p = 1/2) are tracked symbolically, so ratios built purely from them
/// stay exact rationals.
struct EntropyProfile {
    std::size_t n_max = 0;
    unsigned bits = 128;
    std::vector<EntropyTermKind> kinds;        // per k
    std::vector<RealInterval> h;               // enclosure per k
    std::vector<std::size_t> g_prefix;         // g_n = #{k <= n : h_k > 0}
    std::vector<std::size_t> ln2_prefix;       // #{k <= n : h_k = ln 2 exactly}
    std::vector<RealInterval> general_prefix;  // sum of General h_k over k <= n

    std::size_t g(std::size_t n) const { return g_prefix[n - 1]; }
    std::size_t N(std::size_t n) const { return g_prefix[n - 1]; }  // g_n = N_n
    RealInterval H(std::size_t n) const;

    /// H_n / (g_n ln 2); exact when no General term occurs up to n.
    Checkpoint ratio_star(std::size_t n) const;
    /// H_n / (n ln 2).
    Checkpoint ratio_r(std::size_t n) const;
    /// N_n / n, always exact.
    Checkpoint ratio_spectrum(std::size_t n) const;
};

EntropyProfile entropy_profile(const ProbabilityKernel& kernel, std::size_t n_max,
                               unsigned bits = 128);

enum class Trend { Decreasing, Increasing, Oscillating, Constant };
std::string trend_name(Trend t);

/// Finite-depth profile of a liminf-defined quantity: checkpoint values,
/// the observed trend, and the analytic limit when the kernel family
/// certifies one. Values outside the theoretical range are flagged, never
/// clipped.
struct DimensionReport {
    std::vector<Checkpoint> checkpoints;
    Trend trend = Trend::Constant;
    std::optional<ProbabilityKernel::AnalyticLimit> analytic_limit;
    std::vector<std::string> flags;

    const Checkpoint& last() const { return checkpoints.back(); }
};

/// k ln 2 / (-ln r_k) for k in [k_lo, k_hi], using ln q_{k+1} enclosures
/// (log form past the exact depth). The analytic limit 0 is always
/// attached: r_k < 2/q_{k+1} < 2^(1 - 2^(k-1)) collapses the ratio.
DimensionReport spectrum_dim_profile(const OstroSequence& seq, std::size_t k_lo,
                                     std::size_t k_hi, unsigned bits = 128);

/// liminf H_n/(g_n ln 2) profile at geometric checkpoints.
/// Throws DegenerateKernelError when g_{n_max} = 0.
DimensionReport dim_mu_nu_star(const ProbabilityKernel& kernel, std::size_t n_max,
                               unsigned bits = 128);

/// liminf H_n/(n ln 2) profile.
DimensionReport dim_mu_nu_r(const ProbabilityKernel& kernel, std::size_t n_max,
                            unsigned bits = 128);

/// liminf N_k/k profile (exact rational checkpoints).
DimensionReport dim_spectrum_nu_r(const ProbabilityKernel& kernel, std::size_t k_max);

struct PreservationReport {
    ClassificationVerdict classification;  // Preserves / NotPreserves / Undetermined
    std::vector<std::size_t> hypothesis_violations;  // indices with p_ik < p_floor
    Checkpoint criterion_at_n_max;
    std::optional<ProbabilityKernel::AnalyticLimit> criterion_limit;
};

/// Dimension-preservation criterion for the distribution function: under
/// the hypothesis p_ik >= p_floor > 0, preservation holds iff
/// liminf H_n/(g_n ln 2) = 1. Hypothesis violations are reported
/// separately from the criterion value.
PreservationReport preservation_check(const ProbabilityKernel& kernel, const Rational& p_floor,
                                      std::size_t n_max, unsigned bits = 128);

}  // namespace ostro
