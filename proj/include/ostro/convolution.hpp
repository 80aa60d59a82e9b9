#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ostro/enclosure.hpp"
#include "ostro/fourier.hpp"
#include "ostro/measures.hpp"

namespace ostro {

struct AlphaVolume {
    Rational alpha;
    LogMagnitude volume;   // (count) * (length)^alpha, carried in log space
    bool conclusive = true;  // volume shrinking at this rank
};

/// Covering data for convolution spectra: interval count, interval length,
/// and alpha-volumes, all exactly in log space (counts and lengths overflow
/// or underflow any fixed precision long before the conclusion shows).
struct CoverReport {
    std::size_t components = 1;  // m
    std::size_t rank = 0;        // n
    LogMagnitude count;
    LogMagnitude length;
    std::optional<Rational> length_exact;  // when materializable
    std::optional<BigInt> count_exact;     // when small enough to hold
    std::vector<AlphaVolume> volumes;
};

/// m-fold autoconvolution of one model: the spectrum is covered by
/// (m+1)^n intervals of length 4m/q_{n+1}.
CoverReport autoconv_cover(const MeasureModel& model, std::size_t m, std::size_t n,
                           const std::vector<Rational>& alphas, unsigned bits = 128);

/// Convolution of m distinct models: 2^(mn) intervals with the uniform
/// length bound 4m/2^(2^(n-1)).
CoverReport genconv_cover(const std::vector<MeasureModel>& models, std::size_t n,
                          const std::vector<Rational>& alphas, unsigned bits = 128);

/// Characteristic function of the finite convolution: product of the
/// component characteristic functions.
ComplexEnclosure conv_cf(const std::vector<MeasureModel>& models, const TrigArgument& t,
                         std::size_t n_terms, const Rational& tol, const CfOptions& opts = {});

enum class ConvFamilyKind { GeometricDiscrete, DyadicUniform, Nested };

/// Component rule j -> MeasureModel for infinite convolutions, together
/// with the summability certificate for sum_j 1/q_1^(j) that makes the
/// infinite sum well defined.
struct ConvolutionFamily {
    ConvFamilyKind kind = ConvFamilyKind::DyadicUniform;
    std::shared_ptr<const OstroSequence> nested_base;  // Nested only
    ProbabilityKernel nested_kernel;                   // Nested only
    std::string summability_certificate;               // empty = not certified

    /// p0_(j,k) = 1 - 2^-(j+k): atoms dominate, the defect sums to 1.
    static ConvolutionFamily geometric_discrete();
    /// q_1^(j) = 2^j with p_01^(j) = 1/2: the first digits reproduce the
    /// uniform binary expansion.
    static ConvolutionFamily dyadic_uniform();
    /// q_k^(j) = q_{k+j} over a base sequence; any kernel.
    static ConvolutionFamily nested(std::shared_ptr<const OstroSequence> base,
                                    ProbabilityKernel kernel);

    std::string name() const;
    /// j-th component (1-based), materialized to `depth` exact terms.
    MeasureModel component(std::size_t j, std::size_t depth) const;
    /// q_1 of the j-th component.
    BigInt first_denominator(std::size_t j) const;
};

/// Finite list of components or an infinite family.
struct ConvolutionModel {
    std::vector<MeasureModel> components;
    std::optional<ConvolutionFamily> family;
    bool infinite() const { return family.has_value(); }
};

/// Purity/discreteness classification of the infinite convolution:
/// discrete iff prod_j prod_k max{p0,p1} > 0 (certificate required);
/// continuous when some component is certified atomless. Double partial
/// products and the summability partial sums are always reported.
/// Throws SummabilityViolatedError without a summability certificate.
ClassificationVerdict infinite_conv_classify(const ConvolutionFamily& family, std::size_t j_max,
                                             std::size_t k_max);

}  // namespace ostro
