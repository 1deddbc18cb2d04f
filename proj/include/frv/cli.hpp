#pragma once

// Command-line entry points. Exit codes: 0 on success, 1 when a domain query
// that expects existence comes back negative (suppressed by --lenient), 2 on
// input or usage errors.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frv/frv.hpp"

namespace frv {

namespace cli_detail {

inline void deliver(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        write_file(out_path, content);
}

// Accepts an frv document or a fuzzy_set document (promoted to a
// deterministic single-atom sample).
inline FrvDocument load_sample(const std::string& path) {
    const std::string text = read_file(path);
    const nlohmann::json j = detail::parse_json(text);
    if (j.is_object() && j.value("type", "") == std::string("fuzzy_set"))
        return {FrvSample::deterministic(parse_fuzzy(text)), std::nullopt, std::nullopt};
    return parse_frv(text);
}

inline void add_solver_flags(CLI::App* cmd, ProjectionConfig& cfg) {
    cmd->add_option("--max-iter", cfg.max_iterations, "solver sweep cap");
    cmd->add_option("--obj-tol", cfg.objective_tolerance, "solver movement tolerance");
    cmd->add_option("--feas-tol", cfg.feasibility_tolerance, "solver feasibility tolerance");
    cmd->add_option("--relax", cfg.relaxation, "projection relaxation factor");
    cmd->add_option("--directions", cfg.directions, "direction count for dimension 2");
}

} // namespace cli_detail

inline int run_command(const std::vector<std::string>& args) {
    CLI::App app{"fuzzy set-valued random variables: expectation, Hukuhara membership and "
                 "decomposition"};
    app.require_subcommand(1);
    int rc = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "write an frv document from a generator stanza");
    std::string gen_family, gen_shape, gen_out, gen_label;
    std::size_t gen_n = 0, gen_alpha_m = 20;
    double gen_sigma = 1.0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", gen_family, "interval | gaussian_translation")->required();
    gen->add_option("--n", gen_n, "atom count")->required();
    gen->add_option("--alpha-m", gen_alpha_m, "uniform alpha intervals (interval family)");
    gen->add_option("--shape", gen_shape, "centered shape document (gaussian_translation)");
    gen->add_option("--sigma", gen_sigma, "translation standard deviation");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--label", gen_label, "document label");
    gen->add_option("--out", gen_out, "output path (stdout otherwise)");
    gen->callback([&] {
        GeneratorSpec spec;
        spec.n = gen_n;
        std::optional<std::string> label =
            gen_label.empty() ? std::nullopt : std::optional<std::string>(gen_label);
        if (gen_family == "interval") {
            spec.family = GeneratorSpec::Family::Interval;
            const AlphaGrid agrid = AlphaGrid::uniform(gen_alpha_m);
            gen_interval_family(spec.n, agrid); // validates n
            cli_detail::deliver(emit_frv_generator(spec, agrid, 1, label), gen_out);
            return;
        }
        if (gen_family == "gaussian_translation") {
            spec.family = GeneratorSpec::Family::GaussianTranslation;
            if (gen_shape.empty())
                throw ParseError("gaussian_translation needs --shape");
            spec.sigma = gen_sigma;
            spec.seed = gen_seed;
            spec.shape = parse_fuzzy(read_file(gen_shape));
            gen_gaussian_translation(*spec.shape, spec.sigma, spec.n, RngSeed{spec.seed});
            cli_detail::deliver(
                emit_frv_generator(spec, spec.shape->grid(), spec.shape->dim(), label), gen_out);
            return;
        }
        throw ParseError("unknown generator family '" + gen_family + "'");
    });

    // expect
    auto* expect = app.add_subcommand("expect", "Aumann expectation of a sample");
    std::string expect_in, expect_out;
    expect->add_option("input", expect_in, "frv document")->required();
    expect->add_option("--out", expect_out, "output path (stdout otherwise)");
    expect->callback([&] {
        const FrvDocument doc = cli_detail::load_sample(expect_in);
        cli_detail::deliver(emit_fuzzy(aumann_expectation(doc.sample), "expectation"), expect_out);
    });

    // decompose
    auto* dec = app.add_subcommand("decompose", "split a sample into C (+) Y");
    std::string dec_in, dec_out, dec_csv;
    ProjectionConfig dec_cfg;
    dec->add_option("input", dec_in, "frv document")->required();
    dec->add_option("--out", dec_out, "report path (stdout otherwise)");
    dec->add_option("--csv", dec_csv, "support-surface dump of C");
    cli_detail::add_solver_flags(dec, dec_cfg);
    dec->callback([&] {
        const FrvDocument doc = cli_detail::load_sample(dec_in);
        auto [res, gs] = decompose(doc.sample, dec_cfg);
        cli_detail::deliver(emit_decomposition_report(res, gs, dec_cfg, doc.generator), dec_out);
        if (!dec_csv.empty()) {
            const DirectionGrid dg = DirectionGrid::standard(res.C.dim(), dec_cfg.directions);
            write_file(dec_csv, surface_csv(eval_support(res.C, dg)));
        }
    });

    // member
    auto* mem = app.add_subcommand("member", "test B in H_X with per-atom certificates");
    std::string mem_set, mem_frv, mem_out;
    double mem_tol = -1.0;
    bool mem_lenient = false;
    mem->add_option("--set", mem_set, "fuzzy_set document for B")->required();
    mem->add_option("--frv", mem_frv, "frv document for X")->required();
    mem->add_option("--tol", mem_tol, "membership tolerance");
    mem->add_option("--out", mem_out, "report path (stdout otherwise)");
    mem->add_flag("--lenient", mem_lenient, "exit 0 even on a negative verdict");
    mem->callback([&] {
        const FuzzySet b = parse_fuzzy(read_file(mem_set));
        const FrvDocument doc = cli_detail::load_sample(mem_frv);
        const HukuharaMembership m = membership(b, doc.sample, mem_tol);
        cli_detail::deliver(emit_membership_report(m), mem_out);
        if (!m.verdict && !mem_lenient) rc = 1;
    });

    // hdiff
    auto* hd = app.add_subcommand("hdiff", "fuzzy Hukuhara difference left (-) right");
    std::string hd_left, hd_right, hd_out;
    double hd_tol = -1.0;
    bool hd_lenient = false;
    hd->add_option("--left", hd_left, "fuzzy_set document")->required();
    hd->add_option("--right", hd_right, "fuzzy_set document")->required();
    hd->add_option("--tol", hd_tol, "existence tolerance");
    hd->add_option("--out", hd_out, "output path (stdout otherwise)");
    hd->add_flag("--lenient", hd_lenient, "exit 0 even when the difference does not exist");
    hd->callback([&] {
        const FuzzySet left = parse_fuzzy(read_file(hd_left));
        const FuzzySet right = parse_fuzzy(read_file(hd_right));
        std::vector<DiffViolation> violations;
        const auto diff = hukuhara_diff_fuzzy_diagnosed(left, right, violations, hd_tol);
        if (diff) {
            cli_detail::deliver(emit_fuzzy(*diff, "hukuhara_difference"), hd_out);
        } else {
            cli_detail::deliver(emit_hukuhara_nonexistence(violations), hd_out);
            if (!hd_lenient) rc = 1;
        }
    });

    // is-translation
    auto* tr = app.add_subcommand("is-translation", "translation characterization via E X");
    std::string tr_in, tr_out;
    double tr_tol = 1e-6;
    bool tr_lenient = false;
    ProjectionConfig tr_cfg;
    tr->add_option("input", tr_in, "frv document")->required();
    tr->add_option("--tol", tr_tol, "d2 gap tolerance");
    tr->add_option("--out", tr_out, "report path (stdout otherwise)");
    tr->add_flag("--lenient", tr_lenient, "exit 0 even on a negative verdict");
    cli_detail::add_solver_flags(tr, tr_cfg);
    tr->callback([&] {
        const FrvDocument doc = cli_detail::load_sample(tr_in);
        const TranslationReport rep = is_translation(doc.sample, tr_tol, tr_cfg);
        cli_detail::deliver(emit_translation_report(rep), tr_out);
        if (!rep.verdict && !tr_lenient) rc = 1;
    });

    // metrics
    auto* met = app.add_subcommand("metrics", "d2/dinf per atom and delta2 total as CSV");
    std::string met_a, met_b, met_out;
    std::size_t met_dirs = 64;
    met->add_option("--a", met_a, "frv or fuzzy_set document")->required();
    met->add_option("--b", met_b, "frv or fuzzy_set document")->required();
    met->add_option("--directions", met_dirs, "direction count for dimension 2");
    met->add_option("--out", met_out, "csv path (stdout otherwise)");
    met->callback([&] {
        const FrvDocument a = cli_detail::load_sample(met_a);
        const FrvDocument b = cli_detail::load_sample(met_b);
        const DirectionGrid dg = DirectionGrid::standard(a.sample.dim(), met_dirs);
        cli_detail::deliver(metrics_csv(a.sample, b.sample, dg), met_out);
    });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("frv");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error[%s]: %s\n", e.code().c_str(), e.what());
        return 2;
    }
    return rc;
}

} // namespace frv
