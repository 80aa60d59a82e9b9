#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "ostro/convolution.hpp"
#include "ostro/cylinders.hpp"
#include "ostro/dimension.hpp"
#include "ostro/fourier.hpp"
#include "ostro/measures.hpp"
#include "ostro/sequence.hpp"

namespace ostro {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// --- wire formats ------------------------------------------------------

/// Rational as a "num/den" string (bare integer when den = 1).
Json rational_json(const Rational& r);
/// Rational as the decimal-string pair {"num": "...", "den": "..."}.
Json rational_pair_json(const Rational& r);
/// Enclosure as {"lo": "num/den", "hi": "num/den"}.
Json enclosure_json(const IntervalEnclosure& e);
/// Real interval rendered as outward decimal strings.
Json real_interval_json(const RealInterval& iv, std::size_t digits = 15);
Json log_magnitude_json(const LogMagnitude& v);
Json checkpoint_json(const Checkpoint& cp);
Json cylinder_json(const Cylinder& c);
Json dimension_report_json(const DimensionReport& rep);
Json verdict_json(const ClassificationVerdict& v);
Json validation_report_json(const ValidationReport& rep);
Json cover_report_json(const CoverReport& rep);
Json probe_report_json(const CoefficientProbeReport& rep);
Json complex_json(const ComplexEnclosure& c, std::size_t digits = 15);

/// Sequence file format {"kind", "params", "prefix"} with decimal-string
/// integers.
Json sequence_file_json(const OstroSequence& seq);
std::shared_ptr<const OstroSequence> sequence_from_json(const Json& j,
                                                        std::size_t max_exact_depth,
                                                        std::size_t depth_hint);

/// Kernel file format {"family": {...} | null, "entries": [["p0","p1"],..]}.
Json kernel_file_json(const ProbabilityKernel& k, std::size_t entry_preview = 8);
ProbabilityKernel kernel_from_json(const Json& j);

// --- reference parsing --------------------------------------------------

/// "sylvester:1", "power:2", "prime-chain", "explicit:1,2,6,42" or a path
/// to a sequence file.
std::shared_ptr<const OstroSequence> parse_sequence_ref(const std::string& ref,
                                                        std::size_t depth_hint,
                                                        std::size_t max_exact_depth);

/// Kernel preset name or a path to a kernel file.
ProbabilityKernel parse_kernel_ref(const std::string& ref);

/// Convolution model file {mode: "finite"|"infinite",
/// components: [{seq, kernel}...] | family: {name, params}}.
ConvolutionModel convolution_model_from_json(const Json& j, std::size_t max_exact_depth,
                                             std::size_t depth_hint);
ConvolutionModel parse_convolution_model_file(const std::string& path,
                                              std::size_t max_exact_depth,
                                              std::size_t depth_hint);

// --- envelope -----------------------------------------------------------

/// Standard report envelope: tool version, schema, command, configuration,
/// input digest (sha256 of command + canonical config), result.
Json report_envelope(const std::string& command, Json config, Json result);

}  // namespace ostro
