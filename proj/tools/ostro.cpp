// Command-line surface: sequence generation and validation, expansions,
// cylinder geometry, measure classification, characteristic-function
// probes, dimension profiles, and convolution coverings. Every report is a
// deterministic JSON envelope carrying the tool version, the full
// configuration, and a digest of it.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "ostro/reports.hpp"

using namespace ostro;

namespace {

struct GlobalOpts {
    std::string format = "json";
    std::string out_path;
    bool require_verdict = false;
    std::size_t max_exact_depth = kDefaultMaxExactDepth;
    std::string tol = "1/1000000000";
    unsigned bits = 128;
    std::uint64_t seed = 1;
};

void render_table(const Json& j, std::ostream& os, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_object() || val.is_array()) {
                os << pad << key << ":\n";
                render_table(val, os, indent + 1);
            } else {
                os << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& val : j) {
            if (val.is_object() || val.is_array()) {
                os << pad << "-\n";
                render_table(val, os, indent + 1);
            } else {
                os << pad << "- "
                   << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

int emit(const GlobalOpts& g, const std::string& command, const Json& config, Json result) {
    Json envelope = report_envelope(command, config, std::move(result));
    std::ostringstream buf;
    if (g.format == "table")
        render_table(envelope, buf);
    else
        buf << envelope.dump(2) << "\n";
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path);
        if (!out) throw Error("cannot write to " + g.out_path);
        out << buf.str();
    } else {
        std::cout << buf.str();
    }
    if (g.require_verdict) {
        const Json& r = envelope["result"];
        auto undetermined = [](const Json& v) {
            return v.contains("verdict") && (v["verdict"] == "undetermined" ||
                                             v["verdict"] == "undecidable");
        };
        if (undetermined(r)) return 4;
        if (r.contains("classification") && undetermined(r["classification"])) return 4;
        if (r.contains("status") &&
            (r["status"] == "undecidable" || r["status"] == "outside"))
            return 4;
    }
    return 0;
}

Rational tol_of(const GlobalOpts& g) { return Rational::from_string(g.tol); }

std::shared_ptr<const OstroSequence> seq_of(const GlobalOpts& g, const std::string& ref,
                                            std::size_t depth_hint) {
    return parse_sequence_ref(ref, depth_hint, g.max_exact_depth);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for alternating reciprocal series with doubly "
                 "exponential denominators: expansions, singular measures, their "
                 "Fourier coefficients and fractal dimension profiles"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("OSTRO_TOL")) g.tol = env;
    if (const char* env = std::getenv("OSTRO_BITS")) g.bits = static_cast<unsigned>(std::atoi(env));
    app.add_option("--format", g.format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--out", g.out_path, "write the report to a file instead of stdout");
    app.add_flag("--require-verdict", g.require_verdict,
                 "exit 4 when the outcome is undetermined/undecidable");
    app.add_option("--max-exact-depth", g.max_exact_depth,
                   "denominator materialization bound (terms square at every step)");
    app.add_option("--tol", g.tol, "target enclosure width for certified values");
    app.add_option("--bits", g.bits, "working precision for log-space and profile values");
    app.add_option("--seed", g.seed, "sampling seed");

    int exit_code = 0;
    auto run = [&](const std::string& command, const Json& config, auto&& fn) {
        return [&, command, config, fn]() { exit_code = emit(g, command, config, fn()); };
    };

    // ---- seq ----
    auto* seq_cmd = app.add_subcommand("seq", "denominator sequences");
    {
        auto* gen = seq_cmd->add_subcommand("gen", "generate a sequence prefix");
        auto rule = std::make_shared<std::string>("sylvester");
        auto q1 = std::make_shared<std::string>("1");
        auto s = std::make_shared<std::string>("2");
        auto depth = std::make_shared<std::size_t>(5);
        gen->add_option("--rule", *rule, "sylvester | power | prime-chain")
            ->check(CLI::IsMember({"sylvester", "power", "prime-chain"}));
        gen->add_option("--q1", *q1, "first denominator (sylvester)");
        gen->add_option("--s", *s, "base (power)");
        gen->add_option("--depth", *depth, "number of exact terms");
        gen->callback([&, rule, q1, s, depth]() {
            std::string ref = *rule == "sylvester" ? "sylvester:" + *q1
                              : *rule == "power"   ? "power:" + *s
                                                   : "prime-chain";
            Json config{{"rule", *rule}, {"q1", *q1}, {"s", *s}, {"depth", *depth},
                        {"max_exact_depth", g.max_exact_depth}};
            exit_code = emit(g, "seq gen", config, [&] {
                auto seq = seq_of(g, ref, *depth);
                Json r = sequence_file_json(*seq);
                return r;
            }());
        });

        auto* val = seq_cmd->add_subcommand("validate", "check the denominator properties");
        auto ref = std::make_shared<std::string>("sylvester:1");
        auto vdepth = std::make_shared<std::size_t>(12);
        val->add_option("--seq", *ref, "sequence preset or file");
        val->add_option("--depth", *vdepth, "prefix length to validate");
        val->callback([&, ref, vdepth]() {
            Json config{{"seq", *ref}, {"depth", *vdepth}, {"max_exact_depth", g.max_exact_depth}};
            exit_code = emit(g, "seq validate", config, [&] {
                auto seq = seq_of(g, *ref, *vdepth);
                seq->q(std::min(*vdepth, g.max_exact_depth));
                return validation_report_json(validate(*seq));
            }());
        });
    }

    // ---- expand / reconstruct ----
    {
        auto* ex = app.add_subcommand("expand", "expand a rational into its canonical series");
        auto x = std::make_shared<std::string>();
        auto max_terms = std::make_shared<std::size_t>(64);
        ex->add_option("--x", *x, "rational in (0, 1], e.g. 5/7")->required();
        ex->add_option("--max-terms", *max_terms);
        ex->callback([&, x, max_terms]() {
            Json config{{"x", *x}, {"max_terms", *max_terms}};
            exit_code = emit(g, "expand", config, [&] {
                auto res = expand(Rational::from_string(*x), *max_terms);
                Json q = Json::array();
                for (const auto& d : res.denominators) q.push_back(d.str());
                Json trace = Json::array();
                for (const auto& st : res.trace)
                    trace.push_back(Json{{"step", st.step},
                                         {"q", st.q.str()},
                                         {"beta", st.beta.to_string()},
                                         {"terminated", st.terminated}});
                return Json{{"q", std::move(q)}, {"terminated", res.terminated},
                            {"trace", std::move(trace)}};
            }());
        });

        auto* rc = app.add_subcommand("reconstruct", "alternating partial sum of a sequence");
        auto ref = std::make_shared<std::string>("sylvester:1");
        auto n = std::make_shared<std::size_t>(3);
        rc->add_option("--seq", *ref);
        rc->add_option("--n", *n, "number of terms");
        rc->callback([&, ref, n]() {
            Json config{{"seq", *ref}, {"n", *n}};
            exit_code = emit(g, "reconstruct", config, [&] {
                auto seq = seq_of(g, *ref, *n + 1);
                Rational v = reconstruct(*seq, *n);
                return Json{{"value", v.to_string()}, {"decimal", v.to_decimal(15)}};
            }());
        });
    }

    // ---- cylinder / cover ----
    {
        auto* cyl = app.add_subcommand("cylinder", "cylindrical interval for a word");
        auto ref = std::make_shared<std::string>("sylvester:1");
        auto word = std::make_shared<std::string>("");
        auto width = std::make_shared<std::string>("1e-30");
        cyl->add_option("--seq", *ref);
        cyl->add_option("--word", *word, "binary word, e.g. 101");
        cyl->add_option("--width-target", *width, "endpoint enclosure width");
        cyl->callback([&, ref, word, width]() {
            Json config{{"seq", *ref}, {"word", *word}, {"width_target", *width}};
            exit_code = emit(g, "cylinder", config, [&] {
                auto seq = seq_of(g, *ref, word->size() + 8);
                Cylinder c = cylinder(seq, Word::from_string(*word),
                                      Rational::from_string(*width));
                return cylinder_json(c);
            }());
        });

        auto* cov = app.add_subcommand("cover", "all cylinders of a rank");
        auto cref = std::make_shared<std::string>("sylvester:1");
        auto rank = std::make_shared<std::size_t>(3);
        auto cwidth = std::make_shared<std::string>("1e-30");
        auto budget = std::make_shared<std::size_t>(20);
        cov->add_option("--seq", *cref);
        cov->add_option("--rank", *rank);
        cov->add_option("--width-target", *cwidth);
        cov->add_option("--rank-budget", *budget);
        cov->callback([&, cref, rank, cwidth, budget]() {
            Json config{{"seq", *cref}, {"rank", *rank}, {"width_target", *cwidth},
                        {"rank_budget", *budget}};
            exit_code = emit(g, "cover", config, [&] {
                auto seq = seq_of(g, *cref, *rank + 8);
                auto cover = cover_set(seq, *rank, Rational::from_string(*cwidth), *budget);
                Json arr = Json::array();
                for (const auto& c : cover) arr.push_back(cylinder_json(c));
                return Json{{"rank", *rank}, {"cylinders", std::move(arr)}};
            }());
        });

        auto* loc = app.add_subcommand("locate", "digit address of a point");
        auto lref = std::make_shared<std::string>("sylvester:1");
        auto x = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(6);
        loc->add_option("--seq", *lref);
        loc->add_option("--x", *x)->required();
        loc->add_option("--depth", *depth);
        loc->callback([&, lref, x, depth]() {
            Json config{{"seq", *lref}, {"x", *x}, {"depth", *depth}};
            exit_code = emit(g, "locate", config, [&] {
                auto seq = seq_of(g, *lref, *depth + 8);
                try {
                    Word w = locate(seq, Rational::from_string(*x), *depth,
                                    Rational(BigInt(1), pow(BigInt(10), 30)));
                    return Json{{"status", "located"}, {"word", w.to_string()}};
                } catch (const UndecidableError& e) {
                    return Json{{"status", e.certified_outside() ? "outside" : "undecidable"},
                                {"separating_rank", e.separating_rank()},
                                {"detail", e.what()}};
                }
            }());
        });
    }

    // ---- measure ----
    auto* meas = app.add_subcommand("measure", "digit-probability measures");
    {
        auto kref = std::make_shared<std::string>("uniform");
        auto sref = std::make_shared<std::string>("sylvester:1");

        auto* mass = meas->add_subcommand("mass", "exact cylinder mass");
        auto word = std::make_shared<std::string>("");
        mass->add_option("--kernel", *kref);
        mass->add_option("--seq", *sref);
        mass->add_option("--word", *word)->required();
        mass->callback([&, kref, word]() {
            Json config{{"kernel", *kref}, {"word", *word}};
            exit_code = emit(g, "measure mass", config, [&] {
                Rational m = cylinder_mass(parse_kernel_ref(*kref), Word::from_string(*word));
                return Json{{"mass", m.to_string()}, {"decimal", m.to_decimal(15)}};
            }());
        });

        auto* cdfc = meas->add_subcommand("cdf", "certified distribution function value");
        auto x = std::make_shared<std::string>();
        cdfc->add_option("--kernel", *kref);
        cdfc->add_option("--seq", *sref);
        cdfc->add_option("--x", *x)->required();
        cdfc->callback([&, kref, sref, x]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"x", *x}, {"tol", g.tol}};
            exit_code = emit(g, "measure cdf", config, [&] {
                MeasureModel model{seq_of(g, *sref, 12), parse_kernel_ref(*kref)};
                CdfStats stats;
                IntervalEnclosure F =
                    cdf(model, Rational::from_string(*x), tol_of(g), {}, &stats);
                return Json{{"x", *x},
                            {"lo", F.lo.to_string()},
                            {"hi", F.hi.to_string()},
                            {"depth_used", stats.depth_used},
                            {"exact_gap_stop", stats.exact_gap_stop}};
            }());
        });

        auto* gg = meas->add_subcommand("gauge", "gauge functions h1 = F_nu*, h2 = F_nu_r");
        auto t = std::make_shared<std::string>();
        auto which = std::make_shared<std::string>("h1");
        gg->add_option("--kernel", *kref);
        gg->add_option("--seq", *sref);
        gg->add_option("--t", *t)->required();
        gg->add_option("--which", *which)->check(CLI::IsMember({"h1", "h2"}));
        gg->callback([&, kref, sref, t, which]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"t", *t}, {"which", *which},
                        {"tol", g.tol}};
            exit_code = emit(g, "measure gauge", config, [&] {
                MeasureModel model{seq_of(g, *sref, 12), parse_kernel_ref(*kref)};
                IntervalEnclosure v =
                    gauge_eval(model, Rational::from_string(*t),
                               *which == "h1" ? GaugeFunction::H1 : GaugeFunction::H2, tol_of(g));
                return Json{{"t", *t}, {"which", *which}, {"lo", v.lo.to_string()},
                            {"hi", v.hi.to_string()}};
            }());
        });

        auto* smp = meas->add_subcommand("sample", "seeded truncated realizations");
        auto depth = std::make_shared<std::size_t>(10);
        auto count = std::make_shared<std::size_t>(16);
        smp->add_option("--kernel", *kref);
        smp->add_option("--seq", *sref);
        smp->add_option("--depth", *depth);
        smp->add_option("--count", *count);
        smp->callback([&, kref, sref, depth, count]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"depth", *depth},
                        {"count", *count}, {"seed", g.seed}};
            exit_code = emit(g, "measure sample", config, [&] {
                MeasureModel model{seq_of(g, *sref, *depth + 2), parse_kernel_ref(*kref)};
                auto xs = sample(model, *depth, g.seed, *count);
                Json vals = Json::array();
                for (const auto& v : xs) vals.push_back(v.to_string());
                return Json{{"algorithm", kSamplerAlgorithm}, {"seed", g.seed},
                            {"depth", *depth}, {"values", std::move(vals)}};
            }());
        });

        auto* cc = meas->add_subcommand("classify-continuity", "Levy continuity criterion");
        auto depth2 = std::make_shared<std::size_t>(64);
        cc->add_option("--kernel", *kref);
        cc->add_option("--depth", *depth2);
        cc->callback([&, kref, depth2]() {
            Json config{{"kernel", *kref}, {"depth", *depth2}};
            exit_code = emit(g, "measure classify-continuity", config, [&] {
                return verdict_json(continuity_test(parse_kernel_ref(*kref), *depth2));
            }());
        });

        auto* kk = meas->add_subcommand("classify-kakutani",
                                        "equivalence/singularity against nu*");
        auto depth3 = std::make_shared<std::size_t>(64);
        kk->add_option("--kernel", *kref);
        kk->add_option("--depth", *depth3);
        kk->callback([&, kref, depth3]() {
            Json config{{"kernel", *kref}, {"depth", *depth3}};
            exit_code = emit(g, "measure classify-kakutani", config, [&] {
                return verdict_json(kakutani_classify(parse_kernel_ref(*kref), *depth3));
            }());
        });
    }

    // ---- cf ----
    auto* cf = app.add_subcommand("cf", "characteristic function and coefficients");
    {
        auto kref = std::make_shared<std::string>("uniform");
        auto sref = std::make_shared<std::string>("sylvester:1");

        auto* ev = cf->add_subcommand("eval", "certified product evaluation");
        auto t = std::make_shared<std::string>();
        auto pi_flag = std::make_shared<bool>(false);
        auto terms = std::make_shared<std::size_t>(10);
        ev->add_option("--kernel", *kref);
        ev->add_option("--seq", *sref);
        ev->add_option("--t", *t, "rational coefficient")->required();
        ev->add_flag("--pi", *pi_flag, "interpret t as a multiple of pi");
        ev->add_option("--terms", *terms);
        ev->callback([&, kref, sref, t, pi_flag, terms]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"t", *t}, {"pi", *pi_flag},
                        {"terms", *terms}, {"tol", g.tol}};
            exit_code = emit(g, "cf eval", config, [&] {
                MeasureModel model{seq_of(g, *sref, *terms + 2), parse_kernel_ref(*kref)};
                TrigArgument arg{Rational::from_string(*t), *pi_flag};
                ComplexEnclosure v = cf_eval(model, arg, *terms, tol_of(g));
                Json j = complex_json(v);
                j["modulus"] = real_interval_json(v.modulus(192));
                return j;
            }());
        });

        auto* co = cf->add_subcommand("coeff", "Fourier-Stieltjes coefficient c_m");
        auto m = std::make_shared<std::string>("1");
        co->add_option("--kernel", *kref);
        co->add_option("--seq", *sref);
        co->add_option("--m", *m)->required();
        co->callback([&, kref, sref, m]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"m", *m}, {"tol", g.tol}};
            exit_code = emit(g, "cf coeff", config, [&] {
                MeasureModel model{seq_of(g, *sref, 12), parse_kernel_ref(*kref)};
                ComplexEnclosure v = fs_coefficient(model, BigInt(*m), tol_of(g));
                Json j = complex_json(v);
                j["modulus"] = real_interval_json(v.modulus(192));
                return j;
            }());
        });

        auto* pr = cf->add_subcommand("probe", "|c_{k_n}| against the universal bound");
        auto n_lo = std::make_shared<std::size_t>(2);
        auto n_hi = std::make_shared<std::size_t>(5);
        pr->add_option("--kernel", *kref);
        pr->add_option("--seq", *sref);
        pr->add_option("--n-lo", *n_lo);
        pr->add_option("--n-hi", *n_hi);
        pr->callback([&, kref, sref, n_lo, n_hi]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"n_lo", *n_lo}, {"n_hi", *n_hi},
                        {"tol", g.tol}};
            exit_code = emit(g, "cf probe", config, [&] {
                MeasureModel model{seq_of(g, *sref, *n_hi + 4), parse_kernel_ref(*kref)};
                auto rep = coefficient_probe(model, *n_lo, *n_hi, tol_of(g));
                return Json{{"rows", probe_report_json(rep)},
                            {"all_above_bound", rep.all_above_bound()}};
            }());
        });

        auto* lb = cf->add_subcommand("l-bound", "certified lower bound for limsup |f|");
        auto n_lo2 = std::make_shared<std::size_t>(2);
        auto n_hi2 = std::make_shared<std::size_t>(5);
        lb->add_option("--kernel", *kref);
        lb->add_option("--seq", *sref);
        lb->add_option("--n-lo", *n_lo2);
        lb->add_option("--n-hi", *n_hi2);
        lb->callback([&, kref, sref, n_lo2, n_hi2]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"n_lo", *n_lo2}, {"n_hi", *n_hi2},
                        {"tol", g.tol}};
            exit_code = emit(g, "cf l-bound", config, [&] {
                MeasureModel model{seq_of(g, *sref, *n_hi2 + 4), parse_kernel_ref(*kref)};
                auto probe = coefficient_probe(model, *n_lo2, *n_hi2, tol_of(g));
                auto rep = l_lower_bound(model, probe);
                Json ratios = Json::array();
                for (const auto& [n, r] : rep.lcm_ratios)
                    ratios.push_back(Json{{"n", n}, {"ratio", r.to_string()},
                                          {"decimal", r.to_decimal(10)}});
                return Json{{"lower_bound_lo", rep.lower_bound.lo.to_decimal(15)},
                            {"lower_bound_hi", rep.lower_bound.hi.to_string()},
                            {"lcm_ratios", std::move(ratios)},
                            {"limit_one_certified", rep.limit_one_certified},
                            {"note", rep.note}};
            }());
        });
    }

    // ---- dim ----
    auto* dim = app.add_subcommand("dim", "dimension profiles");
    {
        auto kref = std::make_shared<std::string>("uniform");

        auto* sp = dim->add_subcommand("spectrum", "spectrum Hausdorff-dimension profile");
        auto sref = std::make_shared<std::string>("sylvester:1");
        auto k_lo = std::make_shared<std::size_t>(2);
        auto k_hi = std::make_shared<std::size_t>(11);
        sp->add_option("--seq", *sref);
        sp->add_option("--k-lo", *k_lo);
        sp->add_option("--k-hi", *k_hi);
        sp->callback([&, sref, k_lo, k_hi]() {
            Json config{{"seq", *sref}, {"k_lo", *k_lo}, {"k_hi", *k_hi}, {"bits", g.bits},
                        {"max_exact_depth", g.max_exact_depth}};
            exit_code = emit(g, "dim spectrum", config, [&] {
                auto seq = seq_of(g, *sref, std::min(*k_hi + 1, g.max_exact_depth));
                return dimension_report_json(spectrum_dim_profile(*seq, *k_lo, *k_hi, g.bits));
            }());
        });

        auto* en = dim->add_subcommand("entropy", "per-digit entropy profile");
        auto n1 = std::make_shared<std::size_t>(64);
        en->add_option("--kernel", *kref);
        en->add_option("--n", *n1);
        en->callback([&, kref, n1]() {
            Json config{{"kernel", *kref}, {"n", *n1}};
            exit_code = emit(g, "dim entropy", config, [&] {
                auto pr = entropy_profile(parse_kernel_ref(*kref), *n1);
                Json rows = Json::array();
                std::size_t step = std::max<std::size_t>(1, *n1 / 16);
                for (std::size_t n = 1; n <= *n1; n = n == *n1 ? *n1 + 1 : std::min(n + step, *n1)) {
                    rows.push_back(Json{{"n", n},
                                        {"H_n", real_interval_json(pr.H(n), 12)},
                                        {"g_n", pr.g(n)},
                                        {"N_n", pr.N(n)}});
                }
                return Json{{"n_max", *n1}, {"rows", std::move(rows)}};
            }());
        });

        auto add_profile = [&](const char* name, const char* desc,
                               DimensionReport (*fn)(const ProbabilityKernel&, std::size_t,
                                                     unsigned)) {
            auto* c = dim->add_subcommand(name, desc);
            auto n = std::make_shared<std::size_t>(1024);
            c->add_option("--kernel", *kref);
            c->add_option("--n", *n);
            c->callback([&, kref, n, name, fn]() {
                Json config{{"kernel", *kref}, {"n", *n}, {"bits", g.bits}};
                exit_code = emit(g, std::string("dim ") + name, config, [&] {
                    return dimension_report_json(fn(parse_kernel_ref(*kref), *n, g.bits));
                }());
            });
        };
        add_profile("mu-nustar", "liminf H_n/(g_n ln 2)", &dim_mu_nu_star);
        add_profile("mu-nur", "liminf H_n/(n ln 2)", &dim_mu_nu_r);

        auto* sn = dim->add_subcommand("spectrum-nur", "liminf N_k/k");
        auto kmax = std::make_shared<std::size_t>(1024);
        sn->add_option("--kernel", *kref);
        sn->add_option("--k", *kmax);
        sn->callback([&, kref, kmax]() {
            Json config{{"kernel", *kref}, {"k", *kmax}};
            exit_code = emit(g, "dim spectrum-nur", config, [&] {
                return dimension_report_json(dim_spectrum_nu_r(parse_kernel_ref(*kref), *kmax));
            }());
        });

        auto* pv = dim->add_subcommand("preservation", "dimension-preservation criterion");
        auto floor_s = std::make_shared<std::string>("1/4");
        auto n2 = std::make_shared<std::size_t>(1024);
        pv->add_option("--kernel", *kref);
        pv->add_option("--p-floor", *floor_s);
        pv->add_option("--n", *n2);
        pv->callback([&, kref, floor_s, n2]() {
            Json config{{"kernel", *kref}, {"p_floor", *floor_s}, {"n", *n2}};
            exit_code = emit(g, "dim preservation", config, [&] {
                auto rep = preservation_check(parse_kernel_ref(*kref),
                                              Rational::from_string(*floor_s), *n2);
                Json j;
                j["classification"] = verdict_json(rep.classification);
                j["criterion_at_n_max"] = checkpoint_json(rep.criterion_at_n_max);
                j["hypothesis_violations"] = rep.hypothesis_violations;
                if (rep.criterion_limit)
                    j["criterion_limit"] = Json{{"value", rep.criterion_limit->decimal()},
                                                {"certificate", rep.criterion_limit->certificate}};
                return j;
            }());
        });
    }

    // ---- conv ----
    auto* conv = app.add_subcommand("conv", "convolutions of the measures");
    {
        auto kref = std::make_shared<std::string>("uniform");
        auto sref = std::make_shared<std::string>("sylvester:1");

        auto* ac = conv->add_subcommand("auto-cover", "autoconvolution covering");
        auto m = std::make_shared<std::size_t>(2);
        auto n = std::make_shared<std::size_t>(6);
        auto alphas = std::make_shared<std::string>("1/2");
        ac->add_option("--kernel", *kref);
        ac->add_option("--seq", *sref);
        ac->add_option("--m", *m, "number of summands");
        ac->add_option("--n", *n, "covering rank");
        ac->add_option("--alphas", *alphas, "comma-separated exponents");
        ac->callback([&, kref, sref, m, n, alphas]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"m", *m}, {"n", *n},
                        {"alphas", *alphas}, {"max_exact_depth", g.max_exact_depth}};
            exit_code = emit(g, "conv auto-cover", config, [&] {
                MeasureModel model{seq_of(g, *sref, std::min(*n + 1, g.max_exact_depth)),
                                   parse_kernel_ref(*kref)};
                std::vector<Rational> as;
                std::stringstream ss(*alphas);
                std::string tok;
                while (std::getline(ss, tok, ',')) as.push_back(Rational::from_string(tok));
                return cover_report_json(autoconv_cover(model, *m, *n, as, g.bits));
            }());
        });

        auto* gc = conv->add_subcommand("gen-cover", "general convolution covering");
        auto seqs = std::make_shared<std::string>("sylvester:1,power:2");
        auto kerns = std::make_shared<std::string>("uniform,uniform");
        auto model_file = std::make_shared<std::string>("");
        auto n2 = std::make_shared<std::size_t>(10);
        auto alphas2 = std::make_shared<std::string>("1/10");
        gc->add_option("--seqs", *seqs, "comma-separated sequence refs");
        gc->add_option("--kernels", *kerns, "comma-separated kernel refs");
        gc->add_option("--model", *model_file, "convolution model file (overrides --seqs)");
        gc->add_option("--n", *n2);
        gc->add_option("--alphas", *alphas2);
        gc->callback([&, seqs, kerns, model_file, n2, alphas2]() {
            Json config{{"seqs", *seqs}, {"kernels", *kerns}, {"model", *model_file},
                        {"n", *n2}, {"alphas", *alphas2}};
            exit_code = emit(g, "conv gen-cover", config, [&] {
                std::vector<MeasureModel> models;
                if (!model_file->empty()) {
                    auto cm = parse_convolution_model_file(*model_file, g.max_exact_depth, 4);
                    if (cm.infinite())
                        throw Error("gen-cover needs a finite convolution model");
                    models = std::move(cm.components);
                } else {
                    std::stringstream s1(*seqs), s2(*kerns);
                    std::string a, b;
                    while (std::getline(s1, a, ',')) {
                        if (!std::getline(s2, b, ',')) b = "uniform";
                        models.push_back(MeasureModel{seq_of(g, a, 4), parse_kernel_ref(b)});
                    }
                }
                std::vector<Rational> as;
                std::stringstream ss(*alphas2);
                std::string tok;
                while (std::getline(ss, tok, ',')) as.push_back(Rational::from_string(tok));
                return cover_report_json(genconv_cover(models, *n2, as, g.bits));
            }());
        });

        auto* cc = conv->add_subcommand("cf", "characteristic function of a finite convolution");
        auto t = std::make_shared<std::string>();
        auto pi_flag = std::make_shared<bool>(false);
        auto terms = std::make_shared<std::size_t>(10);
        auto copies = std::make_shared<std::size_t>(2);
        cc->add_option("--kernel", *kref);
        cc->add_option("--seq", *sref);
        cc->add_option("--copies", *copies, "number of identical components");
        cc->add_option("--t", *t)->required();
        cc->add_flag("--pi", *pi_flag);
        cc->add_option("--terms", *terms);
        cc->callback([&, kref, sref, t, pi_flag, terms, copies]() {
            Json config{{"kernel", *kref}, {"seq", *sref}, {"copies", *copies}, {"t", *t},
                        {"pi", *pi_flag}, {"terms", *terms}, {"tol", g.tol}};
            exit_code = emit(g, "conv cf", config, [&] {
                MeasureModel model{seq_of(g, *sref, *terms + 2), parse_kernel_ref(*kref)};
                std::vector<MeasureModel> models(*copies, model);
                TrigArgument arg{Rational::from_string(*t), *pi_flag};
                ComplexEnclosure v = conv_cf(models, arg, *terms, tol_of(g));
                Json j = complex_json(v);
                j["modulus"] = real_interval_json(v.modulus(192));
                return j;
            }());
        });

        auto* ci = conv->add_subcommand("classify-infinite", "purity of the infinite convolution");
        auto fam = std::make_shared<std::string>("dyadic-uniform");
        auto base = std::make_shared<std::string>("sylvester:1");
        auto model_file2 = std::make_shared<std::string>("");
        auto jmax = std::make_shared<std::size_t>(12);
        auto kmax = std::make_shared<std::size_t>(16);
        ci->add_option("--family", *fam,
                       "geometric-discrete | dyadic-uniform | nested")
            ->check(CLI::IsMember({"geometric-discrete", "dyadic-uniform", "nested"}));
        ci->add_option("--base", *base, "base sequence (nested family)");
        ci->add_option("--kernel", *kref, "component kernel (nested family)");
        ci->add_option("--model", *model_file2, "convolution model file (overrides --family)");
        ci->add_option("--j-max", *jmax);
        ci->add_option("--k-max", *kmax);
        ci->callback([&, fam, base, jmax, kmax, kref, model_file2]() {
            Json config{{"family", *fam}, {"base", *base}, {"kernel", *kref},
                        {"model", *model_file2}, {"j_max", *jmax}, {"k_max", *kmax}};
            exit_code = emit(g, "conv classify-infinite", config, [&] {
                ConvolutionFamily f = [&] {
                    if (!model_file2->empty()) {
                        auto cm = parse_convolution_model_file(*model_file2, g.max_exact_depth,
                                                               *kmax + *jmax + 2);
                        if (!cm.infinite())
                            throw Error("classify-infinite needs an infinite model");
                        return *cm.family;
                    }
                    if (*fam == "geometric-discrete")
                        return ConvolutionFamily::geometric_discrete();
                    if (*fam == "dyadic-uniform") return ConvolutionFamily::dyadic_uniform();
                    return ConvolutionFamily::nested(seq_of(g, *base, *kmax + *jmax + 2),
                                                     parse_kernel_ref(*kref));
                }();
                Json j = verdict_json(infinite_conv_classify(f, *jmax, *kmax));
                j["family"] = f.name();
                return j;
            }());
        });
    }

    // global flags remain usable after any subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough(true);
        for (auto* sub : a->get_subcommands([](const CLI::App*) { return true; }))
            enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const PrecisionBudgetError& e) {
        std::cerr << "precision budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
