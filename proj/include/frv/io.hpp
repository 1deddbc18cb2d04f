#pragma once

// Document formats and report emission. Files are self-describing JSON with
// explicit grid declarations; no defaults are filled in at the file layer.
// Emission is hand-rolled so outputs are byte-deterministic with every
// number printed at 12 significant digits.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frv/decompose.hpp"
#include "frv/errors.hpp"
#include "frv/sample.hpp"

namespace frv {

inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct GeneratorSpec {
    enum class Family { Interval, GaussianTranslation };
    Family family = Family::Interval;
    std::size_t n = 0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::optional<FuzzySet> shape; // gaussian_translation only
};

struct FrvDocument {
    FrvSample sample;
    std::optional<GeneratorSpec> generator;
    std::optional<std::string> label;
};

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

inline void emit_alpha(std::ostringstream& os, const AlphaGrid& g, const std::string& indent) {
    os << indent << "\"alpha\": {\n";
    os << indent << "  \"levels\": [";
    for (std::size_t k = 0; k < g.size(); ++k) os << (k ? ", " : "") << fmt_num(g.level(k));
    os << "],\n";
    os << indent << "  \"weights\": [";
    for (std::size_t k = 0; k < g.size(); ++k) os << (k ? ", " : "") << fmt_num(g.weight(k));
    os << "]\n" << indent << "}";
}

inline void emit_bodies(std::ostringstream& os, const FuzzySet& f, const std::string& indent) {
    os << indent << "\"bodies\": [\n";
    for (std::size_t k = 0; k < f.level_count(); ++k) {
        os << indent << "  ";
        if (f.dim() == 1) {
            os << "[" << fmt_num(f.body(k).lo()) << ", " << fmt_num(f.body(k).hi()) << "]";
        } else {
            os << "[";
            const auto& vs = f.body(k).vertices();
            for (std::size_t v = 0; v < vs.size(); ++v)
                os << (v ? ", " : "") << "[" << fmt_num(vs[v].x) << ", " << fmt_num(vs[v].y) << "]";
            os << "]";
        }
        os << (k + 1 < f.level_count() ? ",\n" : "\n");
    }
    os << indent << "]";
}

inline std::string fuzzy_body_block(const FuzzySet& f, const std::optional<std::string>& label,
                                    const std::string& indent) {
    std::ostringstream os;
    os << "{\n";
    os << indent << "  \"type\": \"fuzzy_set\",\n";
    os << indent << "  \"dimension\": " << f.dim() << ",\n";
    emit_alpha(os, f.grid(), indent + "  ");
    os << ",\n";
    emit_bodies(os, f, indent + "  ");
    if (label) os << ",\n" << indent << "  \"label\": \"" << json_escape(*label) << "\"";
    os << "\n" << indent << "}";
    return os.str();
}

inline void emit_generator(std::ostringstream& os, const GeneratorSpec& g,
                           const std::string& indent) {
    os << indent << "\"generator\": {\n";
    if (g.family == GeneratorSpec::Family::Interval) {
        os << indent << "  \"family\": \"interval\",\n";
        os << indent << "  \"n\": " << g.n << "\n";
    } else {
        os << indent << "  \"family\": \"gaussian_translation\",\n";
        os << indent << "  \"n\": " << g.n << ",\n";
        os << indent << "  \"sigma\": " << fmt_num(g.sigma) << ",\n";
        os << indent << "  \"seed\": " << g.seed << ",\n";
        os << indent << "  \"shape\": " << fuzzy_body_block(*g.shape, std::nullopt, indent + "  ")
           << "\n";
    }
    os << indent << "}";
}

} // namespace detail

inline std::string emit_fuzzy(const FuzzySet& f,
                              const std::optional<std::string>& label = std::nullopt) {
    return detail::fuzzy_body_block(f, label, "") + "\n";
}

// Writes the sample atom by atom.
inline std::string emit_frv(const FrvSample& x,
                            const std::optional<std::string>& label = std::nullopt) {
    std::ostringstream os;
    os << "{\n  \"type\": \"frv\",\n  \"dimension\": " << x.dim() << ",\n";
    detail::emit_alpha(os, x.grid(), "  ");
    os << ",\n  \"atoms\": [\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        os << "    {\n      \"weight\": " << fmt_num(x.weight(i)) << ",\n";
        detail::emit_bodies(os, x.atom(i), "      ");
        os << "\n    }" << (i + 1 < x.size() ? ",\n" : "\n");
    }
    os << "  ]";
    if (label) os << ",\n  \"label\": \"" << detail::json_escape(*label) << "\"";
    os << "\n}\n";
    return os.str();
}

// Writes a generator stanza instead of atoms; parsing materializes it
// deterministically from the recorded seed.
inline std::string emit_frv_generator(const GeneratorSpec& gen, const AlphaGrid& agrid, int dim,
                                      const std::optional<std::string>& label = std::nullopt) {
    std::ostringstream os;
    os << "{\n  \"type\": \"frv\",\n  \"dimension\": " << dim << ",\n";
    detail::emit_alpha(os, agrid, "  ");
    os << ",\n";
    detail::emit_generator(os, gen, "  ");
    if (label) os << ",\n  \"label\": \"" << detail::json_escape(*label) << "\"";
    os << "\n}\n";
    return os.str();
}

namespace detail {

inline nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline AlphaGrid parse_alpha(const nlohmann::json& j) {
    if (!j.contains("alpha") || !j["alpha"].is_object())
        throw ParseError("missing alpha grid declaration");
    const auto& a = j["alpha"];
    if (!a.contains("levels") || !a.contains("weights"))
        throw ParseError("alpha grid needs levels and weights");
    try {
        std::vector<double> weights = a["weights"].get<std::vector<double>>();
        double wsum = 0.0;
        for (double w : weights) wsum += w;
        if (std::fabs(wsum - 1.0) > 1e-9)
            throw ParseError("alpha weights sum to " + fmt_num(wsum) + ", expected 1");
        for (double& w : weights) w /= wsum; // absorb 12-digit serialization rounding
        return AlphaGrid::custom(a["levels"].get<std::vector<double>>(), std::move(weights));
    } catch (const nlohmann::json::exception&) {
        throw ParseError("alpha grid entries must be numbers");
    } catch (const InvariantViolation& e) {
        throw ParseError(std::string("alpha grid: ") + e.what());
    }
}

inline int parse_dimension(const nlohmann::json& j) {
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw ParseError("missing dimension");
    const int d = j["dimension"].get<int>();
    if (d != 1 && d != 2) throw ParseError("dimension must be 1 or 2");
    return d;
}

inline CrispConvexSet parse_body(const nlohmann::json& b, int dim, std::size_t level) {
    const std::string where = "body at level " + std::to_string(level);
    try {
        if (dim == 1) {
            if (!b.is_array() || b.size() != 2)
                throw ParseError(where + ": expected [lo, hi]");
            return CrispConvexSet::interval(b[0].get<double>(), b[1].get<double>());
        }
        if (!b.is_array() || b.empty()) throw ParseError(where + ": expected a vertex list");
        std::vector<Vec2> pts;
        pts.reserve(b.size());
        for (const auto& v : b) {
            if (!v.is_array() || v.size() != 2)
                throw ParseError(where + ": vertex must be [x, y]");
            pts.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
        return CrispConvexSet::polygon(std::move(pts)); // normalizes orientation
    } catch (const nlohmann::json::exception&) {
        throw ParseError(where + ": entries must be numbers");
    } catch (const InvariantViolation& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline FuzzySet parse_fuzzy_object(const nlohmann::json& j) {
    if (!j.is_object() || j.value("type", "") != std::string("fuzzy_set"))
        throw ParseError("expected a fuzzy_set document");
    const int dim = parse_dimension(j);
    AlphaGrid agrid = parse_alpha(j);
    if (!j.contains("bodies") || !j["bodies"].is_array())
        throw ParseError("missing bodies");
    if (j["bodies"].size() != agrid.size())
        throw ParseError("need one body per alpha level (" + std::to_string(agrid.size()) +
                         " levels, " + std::to_string(j["bodies"].size()) + " bodies)");
    std::vector<CrispConvexSet> bodies;
    bodies.reserve(agrid.size());
    for (std::size_t k = 0; k < j["bodies"].size(); ++k)
        bodies.push_back(parse_body(j["bodies"][k], dim, k));
    try {
        return FuzzySet(std::move(agrid), std::move(bodies));
    } catch (const InvariantViolation& e) {
        throw ParseError(e.what()); // names the violating level pair
    }
}

} // namespace detail

inline FuzzySet parse_fuzzy(const std::string& text) {
    return detail::parse_fuzzy_object(detail::parse_json(text));
}

inline FrvDocument parse_frv(const std::string& text) {
    const nlohmann::json j = detail::parse_json(text);
    if (!j.is_object() || j.value("type", "") != std::string("frv"))
        throw ParseError("expected an frv document");
    const int dim = detail::parse_dimension(j);
    AlphaGrid agrid = detail::parse_alpha(j);
    const bool has_atoms = j.contains("atoms");
    const bool has_gen = j.contains("generator");
    if (has_atoms == has_gen)
        throw ParseError("an frv document carries either atoms or a generator stanza");

    std::optional<std::string> label;
    if (j.contains("label")) label = j["label"].get<std::string>();

    if (has_atoms) {
        if (!j["atoms"].is_array() || j["atoms"].empty())
            throw ParseError("atoms must be a non-empty list");
        std::vector<double> weights;
        std::vector<FuzzySet> atoms;
        double wsum = 0.0;
        for (std::size_t i = 0; i < j["atoms"].size(); ++i) {
            const auto& a = j["atoms"][i];
            if (!a.is_object() || !a.contains("weight") || !a.contains("bodies"))
                throw ParseError("atom " + std::to_string(i) + " needs weight and bodies");
            const double w = a["weight"].get<double>();
            if (w <= 0.0) throw ParseError("atom " + std::to_string(i) + " weight must be positive");
            wsum += w;
            weights.push_back(w);
            if (a["bodies"].size() != agrid.size())
                throw ParseError("atom " + std::to_string(i) + " needs one body per level");
            std::vector<CrispConvexSet> bodies;
            for (std::size_t k = 0; k < a["bodies"].size(); ++k)
                bodies.push_back(detail::parse_body(a["bodies"][k], dim, k));
            try {
                atoms.emplace_back(agrid, std::move(bodies));
            } catch (const InvariantViolation& e) {
                throw ParseError("atom " + std::to_string(i) + ": " + e.what());
            }
        }
        if (std::fabs(wsum - 1.0) > 1e-9)
            throw ParseError("atom weights sum to " + fmt_num(wsum) + ", expected 1");
        for (double& w : weights) w /= wsum; // absorb rounding from the file
        try {
            return {FrvSample(std::move(weights), std::move(atoms)), std::nullopt, label};
        } catch (const InvariantViolation& e) {
            throw ParseError(e.what());
        }
    }

    const auto& g = j["generator"];
    if (!g.is_object() || !g.contains("family"))
        throw ParseError("generator stanza needs a family");
    GeneratorSpec spec;
    const std::string family = g["family"].get<std::string>();
    if (!g.contains("n") || !g["n"].is_number_unsigned())
        throw ParseError("generator needs a positive atom count n");
    spec.n = g["n"].get<std::size_t>();
    if (spec.n == 0) throw ParseError("generator needs a positive atom count n");
    if (family == "interval") {
        spec.family = GeneratorSpec::Family::Interval;
        return {gen_interval_family(spec.n, agrid), spec, label};
    }
    if (family == "gaussian_translation") {
        spec.family = GeneratorSpec::Family::GaussianTranslation;
        if (!g.contains("sigma") || !g.contains("seed") || !g.contains("shape"))
            throw ParseError("gaussian_translation generator needs sigma, seed and shape");
        spec.sigma = g["sigma"].get<double>();
        spec.seed = g["seed"].get<std::uint64_t>();
        spec.shape = detail::parse_fuzzy_object(g["shape"]);
        if (!spec.shape->grid().matches(agrid))
            throw ParseError("generator shape must share the document alpha grid");
        if (spec.shape->dim() != dim)
            throw ParseError("generator shape must share the document dimension");
        try {
            return {gen_gaussian_translation(*spec.shape, spec.sigma, spec.n, RngSeed{spec.seed}),
                    spec, label};
        } catch (const Error& e) {
            throw ParseError(std::string("generator: ") + e.what());
        }
    }
    throw ParseError("unknown generator family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline const char* violation_name(DiffViolation::Kind k) {
    return k == DiffViolation::Kind::LevelDifferenceMissing ? "level_difference_missing"
                                                            : "not_nested";
}

inline std::string emit_membership_report(const HukuharaMembership& m) {
    std::ostringstream os;
    os << "{\n  \"type\": \"membership_report\",\n";
    os << "  \"verdict\": " << (m.verdict ? "true" : "false") << ",\n";
    os << "  \"gs_ok\": " << (m.gs_ok ? "true" : "false") << ",\n";
    os << "  \"atoms\": [\n";
    for (std::size_t i = 0; i < m.per_atom.size(); ++i) {
        const AtomCertificate& c = m.per_atom[i];
        os << "    {\"atom\": " << c.atom << ", \"exists\": " << (c.exists ? "true" : "false");
        if (!c.violations.empty()) {
            os << ", \"violations\": [";
            for (std::size_t v = 0; v < c.violations.size(); ++v) {
                os << (v ? ", " : "") << "{\"kind\": \"" << violation_name(c.violations[v].kind)
                   << "\", \"level\": " << c.violations[v].level
                   << ", \"amount\": " << fmt_num(c.violations[v].amount) << "}";
            }
            os << "]";
        }
        os << "}" << (i + 1 < m.per_atom.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

inline std::string emit_hukuhara_nonexistence(const std::vector<DiffViolation>& violations) {
    std::ostringstream os;
    os << "{\n  \"type\": \"hukuhara_nonexistence\",\n  \"violations\": [";
    for (std::size_t v = 0; v < violations.size(); ++v) {
        os << (v ? ", " : "") << "{\"kind\": \"" << violation_name(violations[v].kind)
           << "\", \"level\": " << violations[v].level
           << ", \"amount\": " << fmt_num(violations[v].amount) << "}";
    }
    os << "]\n}\n";
    return os.str();
}

inline std::string emit_translation_report(const TranslationReport& r) {
    std::ostringstream os;
    os << "{\n  \"type\": \"translation_report\",\n";
    os << "  \"verdict\": " << (r.verdict ? "true" : "false") << ",\n";
    os << "  \"gap\": " << fmt_num(r.gap) << ",\n";
    os << "  \"tol\": " << fmt_num(r.tol) << "\n}\n";
    return os.str();
}

inline std::string emit_decomposition_report(const DecompositionResult& res,
                                             const std::vector<Point>& gs_trace,
                                             const ProjectionConfig& cfg,
                                             const std::optional<GeneratorSpec>& generator) {
    std::ostringstream os;
    os << "{\n  \"type\": \"decomposition_report\",\n";
    os << "  \"dimension\": " << res.C.dim() << ",\n";
    os << "  \"objective\": " << fmt_num(res.objective) << ",\n";
    os << "  \"iterations\": " << res.iterations << ",\n";
    os << "  \"feasibility_residual\": " << fmt_num(res.feasibility_residual) << ",\n";
    os << "  \"config\": {\"max_iterations\": " << cfg.max_iterations
       << ", \"objective_tolerance\": " << fmt_num(cfg.objective_tolerance)
       << ", \"feasibility_tolerance\": " << fmt_num(cfg.feasibility_tolerance)
       << ", \"relaxation\": " << fmt_num(cfg.relaxation)
       << ", \"directions\": " << cfg.directions << "},\n";
    if (generator) {
        detail::emit_generator(os, *generator, "  ");
        os << ",\n";
    }
    os << "  \"gs_trace\": [";
    for (std::size_t i = 0; i < gs_trace.size(); ++i) {
        os << (i ? ", " : "") << "[" << fmt_num(gs_trace[i][0]);
        if (gs_trace[i].dim() == 2) os << ", " << fmt_num(gs_trace[i][1]);
        os << "]";
    }
    os << "],\n";
    os << "  \"C\": " << detail::fuzzy_body_block(res.C, std::nullopt, "  ") << ",\n";
    os << "  \"Y\": {\n    \"type\": \"frv\",\n    \"dimension\": " << res.Y.dim() << ",\n";
    detail::emit_alpha(os, res.Y.grid(), "    ");
    os << ",\n    \"atoms\": [\n";
    for (std::size_t i = 0; i < res.Y.size(); ++i) {
        os << "      {\n        \"weight\": " << fmt_num(res.Y.weight(i)) << ",\n";
        detail::emit_bodies(os, res.Y.atom(i), "        ");
        os << "\n      }" << (i + 1 < res.Y.size() ? ",\n" : "\n");
    }
    os << "    ]\n  }\n}\n";
    return os.str();
}

// Support-surface dump for external plotting: one row per (level, direction).
inline std::string surface_csv(const SupportSurface& s) {
    std::ostringstream os;
    os << "alpha,dir_index,ux,uy,value\n";
    for (std::size_t k = 0; k < s.level_count(); ++k)
        for (std::size_t j = 0; j < s.direction_count(); ++j) {
            const Point& u = s.directions().direction(j);
            os << fmt_num(s.levels().level(k)) << "," << j << "," << fmt_num(u[0]) << ","
               << fmt_num(u.dim() == 2 ? u[1] : 0.0) << "," << fmt_num(s.value(k, j)) << "\n";
        }
    return os.str();
}

// Per-atom d2/dinf table with a delta2 total row.
inline std::string metrics_csv(const FrvSample& x, const FrvSample& y, const DirectionGrid& dgrid) {
    std::ostringstream os;
    os << "atom,weight,d2,dinf\n";
    double total_d2 = 0.0, max_dinf = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = d2(x.atom(i), y.atom(i), dgrid);
        const double h = dinf(x.atom(i), y.atom(i));
        total_d2 += x.weight(i) * d;
        max_dinf = std::max(max_dinf, h);
        os << i << "," << fmt_num(x.weight(i)) << "," << fmt_num(d) << "," << fmt_num(h) << "\n";
    }
    os << "total," << fmt_num(1.0) << "," << fmt_num(total_d2) << "," << fmt_num(max_dinf) << "\n";
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

} // namespace frv
