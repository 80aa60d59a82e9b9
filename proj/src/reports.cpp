#include "ostro/reports.hpp"

#include <fstream>

#include "ostro/sha256.hpp"

namespace ostro {

Json rational_json(const Rational& r) { return r.to_string(); }

Json rational_pair_json(const Rational& r) {
    return Json{{"num", r.num().str()}, {"den", r.den().str()}};
}

Json enclosure_json(const IntervalEnclosure& e) {
    return Json{{"lo", e.lo.to_string()}, {"hi", e.hi.to_string()}};
}

Json real_interval_json(const RealInterval& iv, std::size_t digits) {
    return Json{{"lo", iv.lo.to_rational().to_decimal(digits)},
                {"hi", iv.hi.to_rational().to_decimal(digits)}};
}

Json log_magnitude_json(const LogMagnitude& v) {
    Json j;
    j["sign"] = v.sign;
    if (v.sign != 0) {
        j["ln_abs"] = v.log_abs.to_rational().to_decimal(15);
        j["magnitude"] = v.magnitude_decimal();
    }
    return j;
}

Json checkpoint_json(const Checkpoint& cp) {
    Json j;
    j["n"] = cp.n;
    if (cp.exact) {
        j["value"] = cp.exact->to_string();
        j["decimal"] = cp.exact->to_decimal(12);
    } else {
        j["value"] = real_interval_json(cp.approx, 12);
        j["decimal"] = cp.approx.mid(96).to_rational().to_decimal(12);
    }
    return j;
}

Json cylinder_json(const Cylinder& c) {
    Json j;
    j["word"] = c.word.to_string();
    j["left"] = Json{{"lo", rational_pair_json(c.left.lo)}, {"hi", rational_pair_json(c.left.hi)}};
    j["right"] =
        Json{{"lo", rational_pair_json(c.right.lo)}, {"hi", rational_pair_json(c.right.hi)}};
    return j;
}

Json dimension_report_json(const DimensionReport& rep) {
    Json cps = Json::array();
    for (const auto& cp : rep.checkpoints)
        cps.push_back(Json::array({cp.n, cp.exact ? Json(cp.exact->to_string())
                                                  : Json(cp.approx.mid(96).to_rational().to_decimal(12))}));
    Json j;
    j["checkpoints"] = std::move(cps);
    j["trend"] = trend_name(rep.trend);
    if (rep.analytic_limit) {
        Json lim;
        lim["value"] = rep.analytic_limit->kind ==
                               ProbabilityKernel::AnalyticLimit::Kind::ExactRational
                           ? rep.analytic_limit->value.to_string()
                           : rep.analytic_limit->decimal();
        lim["certificate"] = rep.analytic_limit->certificate;
        j["analytic_limit"] = std::move(lim);
    } else {
        j["analytic_limit"] = nullptr;
    }
    if (!rep.flags.empty()) j["flags"] = rep.flags;
    return j;
}

Json verdict_json(const ClassificationVerdict& v) {
    Json j;
    j["verdict"] = verdict_name(v.verdict);
    j["basis"] = v.basis == VerdictBasis::AnalyticCertificate ? "analytic_certificate"
                                                              : "numeric_trend";
    if (!v.certificate.empty()) j["certificate"] = v.certificate;
    Json ev = Json::array();
    for (const auto& cp : v.evidence) ev.push_back(checkpoint_json(cp));
    j["evidence"] = std::move(ev);
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

Json validation_report_json(const ValidationReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json e;
        e["property"] = c.property;
        e["index"] = c.index;
        e["status"] = c.status == CheckStatus::Pass   ? "pass"
                      : c.status == CheckStatus::Fail ? "fail"
                                                      : "not-applicable";
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    Json j;
    j["depth"] = rep.depth;
    j["all_pass"] = rep.all_pass();
    j["pass"] = rep.count(CheckStatus::Pass);
    j["fail"] = rep.count(CheckStatus::Fail);
    j["not_applicable"] = rep.count(CheckStatus::NotApplicable);
    j["checks"] = std::move(checks);
    return j;
}

Json cover_report_json(const CoverReport& rep) {
    Json j;
    j["components"] = rep.components;
    j["rank"] = rep.rank;
    j["count"] = log_magnitude_json(rep.count);
    if (rep.count_exact) j["count_exact"] = rep.count_exact->str();
    j["length"] = log_magnitude_json(rep.length);
    if (rep.length_exact) j["length_exact"] = rep.length_exact->to_string();
    Json vols = Json::array();
    for (const auto& av : rep.volumes) {
        Json v;
        v["alpha"] = av.alpha.to_string();
        v["volume"] = log_magnitude_json(av.volume);
        v["conclusive"] = av.conclusive;
        vols.push_back(std::move(v));
    }
    j["alpha_volumes"] = std::move(vols);
    return j;
}

Json probe_report_json(const CoefficientProbeReport& rep) {
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json e;
        e["n"] = r.n;
        e["k_n"] = r.k_n.str();
        e["modulus_lo"] = r.modulus.lo.to_decimal(15);
        e["modulus_hi"] = r.modulus.hi.to_decimal(15);
        e["theorem_bound"] = rep.theorem_bound.hi.to_decimal(15);
        rows.push_back(std::move(e));
    }
    return rows;
}

Json complex_json(const ComplexEnclosure& c, std::size_t digits) {
    return Json{{"re", real_interval_json(c.re, digits)}, {"im", real_interval_json(c.im, digits)}};
}

Json sequence_file_json(const OstroSequence& seq) {
    Json j;
    if (seq.rule()) {
        j["kind"] = rule_kind_name(seq.rule()->kind);
        Json params;
        switch (seq.rule()->kind) {
            case RuleKind::Sylvester: params["q1"] = seq.rule()->param.str(); break;
            case RuleKind::Power: params["s"] = seq.rule()->param.str(); break;
            case RuleKind::PrimeChain:
                params["mr_rounds"] = seq.rule()->primality.mr_rounds;
                break;
            case RuleKind::Explicit: break;
        }
        j["params"] = std::move(params);
    } else {
        j["kind"] = "explicit";
        j["params"] = Json::object();
    }
    Json prefix = Json::array();
    for (std::size_t k = 1; k <= seq.exact_size(); ++k) prefix.push_back(seq.q(k).str());
    j["prefix"] = std::move(prefix);
    return j;
}

std::shared_ptr<const OstroSequence> sequence_from_json(const Json& j,
                                                        std::size_t max_exact_depth,
                                                        std::size_t depth_hint) {
    std::string kind = j.at("kind").get<std::string>();
    const Json& params = j.contains("params") ? j.at("params") : Json::object();
    if (kind == "explicit") {
        std::vector<BigInt> prefix;
        for (const auto& it : j.at("prefix")) prefix.emplace_back(it.get<std::string>());
        return std::make_shared<OstroSequence>(OstroSequence::from_prefix(std::move(prefix)));
    }
    GeneratorRule rule;
    if (kind == "sylvester")
        rule = GeneratorRule::sylvester(BigInt(params.at("q1").get<std::string>()));
    else if (kind == "power")
        rule = GeneratorRule::power(BigInt(params.at("s").get<std::string>()));
    else if (kind == "prime_chain") {
        PrimalityConfig cfg;
        if (params.contains("mr_rounds")) cfg.mr_rounds = params.at("mr_rounds").get<unsigned>();
        rule = GeneratorRule::prime_chain(cfg);
    } else {
        throw Error("unknown sequence kind: " + kind);
    }
    std::size_t depth = depth_hint;
    if (j.contains("prefix") && j.at("prefix").size() > 0)
        depth = std::max<std::size_t>(depth, j.at("prefix").size());
    depth = std::min(depth, max_exact_depth);
    auto seq = std::make_shared<OstroSequence>(
        OstroSequence::generate(rule, std::max<std::size_t>(depth, 2), max_exact_depth));
    // cross-check a stored prefix against the rule
    if (j.contains("prefix")) {
        const auto& p = j.at("prefix");
        for (std::size_t i = 0; i < p.size(); ++i)
            if (seq->q(i + 1) != BigInt(p[i].get<std::string>()))
                throw Error("sequence file prefix disagrees with its rule at index " +
                            std::to_string(i + 1));
    }
    return seq;
}

Json kernel_file_json(const ProbabilityKernel& k, std::size_t entry_preview) {
    Json j;
    if (k.family_info()) {
        Json fam;
        fam["name"] = kernel_family_name(k.family_info()->kind);
        Json params = Json::object();
        if (k.family_info()->kind == KernelFamilyKind::Constant)
            params["p0"] = k.family_info()->param.to_string();
        fam["params"] = std::move(params);
        if (k.is_uniformized_view()) fam["uniformized"] = true;
        j["family"] = std::move(fam);
    } else {
        j["family"] = nullptr;
    }
    Json entries = Json::array();
    std::size_t limit = std::min(entry_preview, k.entry_limit());
    for (std::size_t i = 1; i <= limit; ++i) {
        if (!k.entry_is_exact(i)) {
            entries.push_back(Json::array({"irrational", "irrational"}));
            continue;
        }
        entries.push_back(Json::array({k.p0(i).to_string(), k.p1(i).to_string()}));
    }
    j["entries"] = std::move(entries);
    return j;
}

ProbabilityKernel kernel_from_json(const Json& j) {
    if (j.contains("family") && !j.at("family").is_null()) {
        const Json& fam = j.at("family");
        std::string name = fam.at("name").get<std::string>();
        ProbabilityKernel k;
        if (name == "const")
            k = ProbabilityKernel::family(
                KernelFamilyKind::Constant,
                Rational::from_string(fam.at("params").at("p0").get<std::string>()));
        else
            k = ProbabilityKernel::preset(name);
        if (fam.contains("uniformized") && fam.at("uniformized").get<bool>())
            k = k.uniformized();
        return k;
    }
    std::vector<std::pair<Rational, Rational>> entries;
    for (const auto& e : j.at("entries"))
        entries.emplace_back(Rational::from_string(e.at(0).get<std::string>()),
                             Rational::from_string(e.at(1).get<std::string>()));
    return ProbabilityKernel::from_table(std::move(entries));
}

namespace {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    Json j;
    in >> j;
    // accept a full report envelope wherever a bare payload is expected
    if (j.is_object() && j.contains("tool") && j["tool"] == "ostro" && j.contains("result"))
        return j["result"];
    return j;
}

bool looks_like_path(const std::string& ref) {
    return ref.find('/') != std::string::npos || ref.find(".json") != std::string::npos;
}

}  // namespace

std::shared_ptr<const OstroSequence> parse_sequence_ref(const std::string& ref,
                                                        std::size_t depth_hint,
                                                        std::size_t max_exact_depth) {
    if (looks_like_path(ref))
        return sequence_from_json(load_json_file(ref), max_exact_depth, depth_hint);
    auto colon = ref.find(':');
    std::string head = ref.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : ref.substr(colon + 1);
    std::size_t depth = std::max<std::size_t>(std::min(depth_hint, max_exact_depth), 2);
    if (head == "sylvester")
        return std::make_shared<OstroSequence>(OstroSequence::generate(
            GeneratorRule::sylvester(BigInt(arg.empty() ? "1" : arg)), depth, max_exact_depth));
    if (head == "power")
        return std::make_shared<OstroSequence>(OstroSequence::generate(
            GeneratorRule::power(BigInt(arg.empty() ? "2" : arg)), depth, max_exact_depth));
    if (head == "prime-chain" || head == "prime_chain")
        return std::make_shared<OstroSequence>(
            OstroSequence::generate(GeneratorRule::prime_chain(), depth, max_exact_depth));
    if (head == "explicit") {
        std::vector<BigInt> prefix;
        std::size_t pos = 0;
        while (pos < arg.size()) {
            auto comma = arg.find(',', pos);
            if (comma == std::string::npos) comma = arg.size();
            prefix.emplace_back(arg.substr(pos, comma - pos));
            pos = comma + 1;
        }
        return std::make_shared<OstroSequence>(OstroSequence::from_prefix(std::move(prefix)));
    }
    throw Error("unknown sequence reference: " + ref);
}

ProbabilityKernel parse_kernel_ref(const std::string& ref) {
    if (looks_like_path(ref)) return kernel_from_json(load_json_file(ref));
    if (ref.rfind("uniformized(", 0) == 0 && ref.back() == ')')
        return parse_kernel_ref(ref.substr(12, ref.size() - 13)).uniformized();
    return ProbabilityKernel::preset(ref);
}

ConvolutionModel convolution_model_from_json(const Json& j, std::size_t max_exact_depth,
                                             std::size_t depth_hint) {
    ConvolutionModel model;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "finite") {
        for (const auto& c : j.at("components")) {
            std::shared_ptr<const OstroSequence> seq;
            if (c.at("seq").is_string())
                seq = parse_sequence_ref(c.at("seq").get<std::string>(), depth_hint,
                                         max_exact_depth);
            else
                seq = sequence_from_json(c.at("seq"), max_exact_depth, depth_hint);
            ProbabilityKernel kernel = c.at("kernel").is_string()
                                           ? parse_kernel_ref(c.at("kernel").get<std::string>())
                                           : kernel_from_json(c.at("kernel"));
            model.components.push_back(MeasureModel{std::move(seq), std::move(kernel)});
        }
        return model;
    }
    if (mode != "infinite") throw Error("convolution model: mode must be finite or infinite");
    const Json& fam = j.at("family");
    std::string name = fam.at("name").get<std::string>();
    const Json& params = fam.contains("params") ? fam.at("params") : Json::object();
    if (name == "geometric-discrete") {
        model.family = ConvolutionFamily::geometric_discrete();
    } else if (name == "dyadic-uniform") {
        model.family = ConvolutionFamily::dyadic_uniform();
    } else if (name == "nested") {
        std::string base = params.contains("base") ? params.at("base").get<std::string>()
                                                   : "sylvester:1";
        std::string kernel = params.contains("kernel") ? params.at("kernel").get<std::string>()
                                                       : "uniform";
        model.family = ConvolutionFamily::nested(
            parse_sequence_ref(base, depth_hint, max_exact_depth), parse_kernel_ref(kernel));
    } else {
        throw Error("unknown convolution family: " + name);
    }
    return model;
}

ConvolutionModel parse_convolution_model_file(const std::string& path,
                                              std::size_t max_exact_depth,
                                              std::size_t depth_hint) {
    return convolution_model_from_json(load_json_file(path), max_exact_depth, depth_hint);
}

Json report_envelope(const std::string& command, Json config, Json result) {
    Json j;
    j["tool"] = "ostro";
    j["version"] = kToolVersion;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = config;
    j["input_digest"] = "sha256:" + sha256_hex(command + "\n" + config.dump());
    j["result"] = std::move(result);
    return j;
}

}  // namespace ostro
