// Python bindings: a thin veneer over the C++ core. Results cross the
// boundary as plain dicts/lists built from the same JSON report builders
// the CLI uses, so values stay exact (decimal strings, "num/den"
// rationals) instead of lossy floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ostro/reports.hpp"

namespace py = pybind11;
using namespace ostro;

namespace {

py::object to_py(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

std::shared_ptr<const OstroSequence> seq_ref(const std::string& ref, std::size_t depth,
                                             std::size_t max_exact_depth) {
    return parse_sequence_ref(ref, depth, max_exact_depth);
}

MeasureModel model_of(const std::string& seq, const std::string& kernel, std::size_t depth,
                      std::size_t max_exact_depth) {
    return MeasureModel{seq_ref(seq, depth, max_exact_depth), parse_kernel_ref(kernel)};
}

}  // namespace

PYBIND11_MODULE(ostrolib, m) {
    m.doc() =
        "Exact arithmetic for alternating reciprocal series with doubly exponential "
        "denominators: expansions, the singular measures they generate, Fourier "
        "coefficients, and fractal dimension profiles.";

    py::register_exception<PrecisionBudgetError>(m, "PrecisionBudgetError");
    py::register_exception<UndecidableError>(m, "UndecidableError");
    py::register_exception<InvalidSequenceError>(m, "InvalidSequenceError");

    m.def(
        "generate",
        [](const std::string& seq, std::size_t depth, std::size_t max_exact_depth) {
            return to_py(sequence_file_json(*seq_ref(seq, depth, max_exact_depth)));
        },
        py::arg("seq"), py::arg("depth") = 5, py::arg("max_exact_depth") = kDefaultMaxExactDepth,
        "Sequence prefix for a preset reference like 'sylvester:1', 'power:2', 'prime-chain'.");

    m.def(
        "validate",
        [](const std::string& seq, std::size_t depth) {
            auto s = seq_ref(seq, depth, std::max<std::size_t>(depth, kDefaultMaxExactDepth));
            s->q(depth);
            return to_py(validation_report_json(validate(*s)));
        },
        py::arg("seq"), py::arg("depth") = 12);

    m.def(
        "expand",
        [](const std::string& x, std::size_t max_terms) {
            auto res = expand(Rational::from_string(x), max_terms);
            Json q = Json::array();
            for (const auto& d : res.denominators) q.push_back(d.str());
            return to_py(Json{{"q", q}, {"terminated", res.terminated}});
        },
        py::arg("x"), py::arg("max_terms") = 64);

    m.def(
        "reconstruct",
        [](const std::string& seq, std::size_t n) {
            return reconstruct(*seq_ref(seq, n + 1, std::max<std::size_t>(n + 1, 20)), n)
                .to_string();
        },
        py::arg("seq"), py::arg("n"));

    m.def(
        "cylinder",
        [](const std::string& seq, const std::string& word, const std::string& width) {
            auto s = seq_ref(seq, word.size() + 8, kDefaultMaxExactDepth);
            return to_py(cylinder_json(
                ostro::cylinder(s, Word::from_string(word), Rational::from_string(width))));
        },
        py::arg("seq"), py::arg("word"), py::arg("width") = "1e-30");

    m.def(
        "cover",
        [](const std::string& seq, std::size_t rank, const std::string& width) {
            auto s = seq_ref(seq, rank + 8, kDefaultMaxExactDepth);
            Json arr = Json::array();
            for (const auto& c : cover_set(s, rank, Rational::from_string(width)))
                arr.push_back(cylinder_json(c));
            return to_py(arr);
        },
        py::arg("seq"), py::arg("rank"), py::arg("width") = "1e-30");

    m.def(
        "locate",
        [](const std::string& seq, const std::string& x, std::size_t depth) {
            auto s = seq_ref(seq, depth + 8, kDefaultMaxExactDepth);
            try {
                Word w = locate(s, Rational::from_string(x), depth,
                                Rational(BigInt(1), pow(BigInt(10), 30)));
                return to_py(Json{{"status", "located"}, {"word", w.to_string()}});
            } catch (const UndecidableError& e) {
                return to_py(Json{{"status", e.certified_outside() ? "outside" : "undecidable"},
                                  {"separating_rank", e.separating_rank()}});
            }
        },
        py::arg("seq"), py::arg("x"), py::arg("depth") = 6);

    m.def(
        "cylinder_mass",
        [](const std::string& kernel, const std::string& word) {
            return cylinder_mass(parse_kernel_ref(kernel), Word::from_string(word)).to_string();
        },
        py::arg("kernel"), py::arg("word"));

    m.def(
        "cdf",
        [](const std::string& seq, const std::string& kernel, const std::string& x,
           const std::string& tol) {
            CdfStats stats;
            IntervalEnclosure F = cdf(model_of(seq, kernel, 12, kDefaultMaxExactDepth),
                                      Rational::from_string(x), Rational::from_string(tol), {},
                                      &stats);
            return to_py(Json{{"x", x},
                              {"lo", F.lo.to_string()},
                              {"hi", F.hi.to_string()},
                              {"depth_used", stats.depth_used}});
        },
        py::arg("seq"), py::arg("kernel"), py::arg("x"), py::arg("tol") = "1e-9");

    m.def(
        "gauge",
        [](const std::string& seq, const std::string& kernel, const std::string& t,
           const std::string& which, const std::string& tol) {
            IntervalEnclosure v = gauge_eval(
                model_of(seq, kernel, 12, kDefaultMaxExactDepth), Rational::from_string(t),
                which == "h1" ? GaugeFunction::H1 : GaugeFunction::H2,
                Rational::from_string(tol));
            return to_py(Json{{"lo", v.lo.to_string()}, {"hi", v.hi.to_string()}});
        },
        py::arg("seq"), py::arg("kernel"), py::arg("t"), py::arg("which") = "h1",
        py::arg("tol") = "1e-9");

    m.def(
        "sample",
        [](const std::string& seq, const std::string& kernel, std::size_t depth,
           std::uint64_t seed, std::size_t count) {
            auto xs = sample(model_of(seq, kernel, depth + 2, kDefaultMaxExactDepth), depth,
                             seed, count);
            std::vector<std::string> out;
            out.reserve(xs.size());
            for (const auto& v : xs) out.push_back(v.to_string());
            return out;
        },
        py::arg("seq"), py::arg("kernel"), py::arg("depth") = 10, py::arg("seed") = 1,
        py::arg("count") = 16);

    m.def(
        "classify_continuity",
        [](const std::string& kernel, std::size_t depth) {
            return to_py(verdict_json(continuity_test(parse_kernel_ref(kernel), depth)));
        },
        py::arg("kernel"), py::arg("depth") = 64);

    m.def(
        "classify_kakutani",
        [](const std::string& kernel, std::size_t depth) {
            return to_py(verdict_json(kakutani_classify(parse_kernel_ref(kernel), depth)));
        },
        py::arg("kernel"), py::arg("depth") = 64);

    m.def(
        "cf_eval",
        [](const std::string& seq, const std::string& kernel, const std::string& t, bool pi,
           std::size_t terms, const std::string& tol) {
            auto model = model_of(seq, kernel, terms + 2, kDefaultMaxExactDepth);
            ComplexEnclosure v =
                cf_eval(model, TrigArgument{Rational::from_string(t), pi}, terms,
                        Rational::from_string(tol));
            Json j = complex_json(v);
            j["modulus"] = real_interval_json(v.modulus(192));
            return to_py(j);
        },
        py::arg("seq"), py::arg("kernel"), py::arg("t"), py::arg("pi") = false,
        py::arg("terms") = 10, py::arg("tol") = "1e-9");

    m.def(
        "fs_coefficient",
        [](const std::string& seq, const std::string& kernel, const std::string& m_,
           const std::string& tol) {
            auto model = model_of(seq, kernel, 12, kDefaultMaxExactDepth);
            ComplexEnclosure v = fs_coefficient(model, BigInt(m_), Rational::from_string(tol));
            Json j = complex_json(v);
            j["modulus"] = real_interval_json(v.modulus(192));
            return to_py(j);
        },
        py::arg("seq"), py::arg("kernel"), py::arg("m"), py::arg("tol") = "1e-9");

    m.def(
        "coefficient_probe",
        [](const std::string& seq, const std::string& kernel, std::size_t n_lo, std::size_t n_hi,
           const std::string& tol) {
            auto model = model_of(seq, kernel, n_hi + 4, kDefaultMaxExactDepth);
            auto rep = coefficient_probe(model, n_lo, n_hi, Rational::from_string(tol));
            return to_py(Json{{"rows", probe_report_json(rep)},
                              {"all_above_bound", rep.all_above_bound()}});
        },
        py::arg("seq"), py::arg("kernel") = "uniform", py::arg("n_lo") = 2, py::arg("n_hi") = 5,
        py::arg("tol") = "1e-6");

    m.def(
        "dim_spectrum",
        [](const std::string& seq, std::size_t k_lo, std::size_t k_hi) {
            auto s = seq_ref(seq, std::min<std::size_t>(k_hi + 1, kDefaultMaxExactDepth),
                             kDefaultMaxExactDepth);
            return to_py(dimension_report_json(spectrum_dim_profile(*s, k_lo, k_hi)));
        },
        py::arg("seq"), py::arg("k_lo") = 2, py::arg("k_hi") = 11);

    m.def(
        "dim_mu_nustar",
        [](const std::string& kernel, std::size_t n) {
            return to_py(dimension_report_json(dim_mu_nu_star(parse_kernel_ref(kernel), n)));
        },
        py::arg("kernel"), py::arg("n") = 1024);

    m.def(
        "dim_mu_nur",
        [](const std::string& kernel, std::size_t n) {
            return to_py(dimension_report_json(dim_mu_nu_r(parse_kernel_ref(kernel), n)));
        },
        py::arg("kernel"), py::arg("n") = 1024);

    m.def(
        "dim_spectrum_nur",
        [](const std::string& kernel, std::size_t k) {
            return to_py(dimension_report_json(dim_spectrum_nu_r(parse_kernel_ref(kernel), k)));
        },
        py::arg("kernel"), py::arg("k") = 1024);

    m.def(
        "preservation",
        [](const std::string& kernel, const std::string& p_floor, std::size_t n) {
            auto rep = preservation_check(parse_kernel_ref(kernel),
                                          Rational::from_string(p_floor), n);
            Json j;
            j["classification"] = verdict_json(rep.classification);
            j["criterion_at_n_max"] = checkpoint_json(rep.criterion_at_n_max);
            j["hypothesis_violations"] = rep.hypothesis_violations;
            return to_py(j);
        },
        py::arg("kernel"), py::arg("p_floor") = "1/4", py::arg("n") = 1024);

    m.def(
        "autoconv_cover",
        [](const std::string& seq, const std::string& kernel, std::size_t m_, std::size_t n,
           const std::vector<std::string>& alphas) {
            std::vector<Rational> as;
            for (const auto& a : alphas) as.push_back(Rational::from_string(a));
            auto model = model_of(seq, kernel, std::min<std::size_t>(n + 1, 20), 20);
            return to_py(cover_report_json(autoconv_cover(model, m_, n, as)));
        },
        py::arg("seq"), py::arg("kernel") = "uniform", py::arg("m") = 2, py::arg("n") = 6,
        py::arg("alphas") = std::vector<std::string>{"1/2"});

    m.def(
        "genconv_cover",
        [](const std::vector<std::string>& seqs, const std::vector<std::string>& kernels,
           std::size_t n, const std::vector<std::string>& alphas) {
            std::vector<MeasureModel> models;
            for (std::size_t i = 0; i < seqs.size(); ++i)
                models.push_back(model_of(seqs[i], i < kernels.size() ? kernels[i] : "uniform",
                                          4, 20));
            std::vector<Rational> as;
            for (const auto& a : alphas) as.push_back(Rational::from_string(a));
            return to_py(cover_report_json(genconv_cover(models, n, as)));
        },
        py::arg("seqs"), py::arg("kernels"), py::arg("n") = 10,
        py::arg("alphas") = std::vector<std::string>{"1/10"});

    m.def(
        "classify_infinite",
        [](const std::string& family, const std::string& base, const std::string& kernel,
           std::size_t j_max, std::size_t k_max) {
            ConvolutionFamily f =
                family == "geometric-discrete" ? ConvolutionFamily::geometric_discrete()
                : family == "dyadic-uniform"
                    ? ConvolutionFamily::dyadic_uniform()
                    : ConvolutionFamily::nested(seq_ref(base, k_max + j_max + 2, 24),
                                                parse_kernel_ref(kernel));
            return to_py(verdict_json(infinite_conv_classify(f, j_max, k_max)));
        },
        py::arg("family"), py::arg("base") = "sylvester:1", py::arg("kernel") = "uniform",
        py::arg("j_max") = 12, py::arg("k_max") = 16);
}
