#pragma once

// Cone operations on fuzzy sets (level-wise Minkowski sum, nonnegative
// scaling, translation) and the Hukuhara difference. Arithmetic stays exact:
// grids enter only through support evaluation.

#include <optional>
#include <string>
#include <vector>

#include "frv/errors.hpp"
#include "frv/fuzzy_set.hpp"
#include "frv/geometry.hpp"

namespace frv {

inline FuzzySet minkowski(const FuzzySet& f, const FuzzySet& g) {
    if (!f.grid().matches(g.grid())) throw GridMismatch("minkowski needs a shared alpha grid");
    if (f.dim() != g.dim()) throw DimensionMismatch("minkowski of mixed dimensions");
    std::vector<CrispConvexSet> bodies;
    bodies.reserve(f.level_count());
    for (std::size_t k = 0; k < f.level_count(); ++k)
        bodies.push_back(minkowski_sum(f.body(k), g.body(k)));
    return FuzzySet(f.grid(), std::move(bodies));
}

inline FuzzySet scale(double lambda, const FuzzySet& f) {
    if (lambda < 0.0) throw InvariantViolation("negative scaling of a fuzzy set");
    std::vector<CrispConvexSet> bodies;
    bodies.reserve(f.level_count());
    for (std::size_t k = 0; k < f.level_count(); ++k) bodies.push_back(scale(lambda, f.body(k)));
    return FuzzySet(f.grid(), std::move(bodies));
}

inline FuzzySet translate(const FuzzySet& f, const Point& v) {
    if (f.dim() != v.dim()) throw DimensionMismatch("translation vector dimension");
    std::vector<CrispConvexSet> bodies;
    bodies.reserve(f.level_count());
    for (std::size_t k = 0; k < f.level_count(); ++k) bodies.push_back(translate(f.body(k), v));
    return FuzzySet(f.grid(), std::move(bodies));
}

// The singleton fuzzy set 1_v.
inline FuzzySet embed_point(const Point& v, const AlphaGrid& agrid) {
    return FuzzySet::singleton(agrid, v);
}

// Re-exported crisp difference; see geometry.hpp.
inline std::optional<CrispConvexSet> hukuhara_diff_crisp(const CrispConvexSet& a,
                                                         const CrispConvexSet& b,
                                                         double tol = -1.0) {
    return hukuhara_diff(a, b, tol);
}

// Diagnosis of a failed (or successful) fuzzy Hukuhara difference.
struct DiffViolation {
    enum class Kind { LevelDifferenceMissing, NotNested };
    Kind kind;
    std::size_t level; // offending level (for NotNested: the inner level)
    double amount;
};

namespace detail {

inline std::optional<FuzzySet> hukuhara_diff_fuzzy_impl(const FuzzySet& f, const FuzzySet& g,
                                                        double tol,
                                                        std::vector<DiffViolation>* out) {
    if (!f.grid().matches(g.grid()))
        throw GridMismatch("hukuhara difference needs a shared alpha grid");
    if (f.dim() != g.dim()) throw DimensionMismatch("hukuhara difference of mixed dimensions");
    if (tol < 0.0) tol = default_tol(f.dim());

    std::vector<CrispConvexSet> bodies;
    bodies.reserve(f.level_count());
    bool ok = true;
    for (std::size_t k = 0; k < f.level_count(); ++k) {
        auto diff = hukuhara_diff(f.body(k), g.body(k), tol);
        if (!diff) {
            ok = false;
            if (!out) return std::nullopt;
            out->push_back({DiffViolation::Kind::LevelDifferenceMissing, k, 0.0});
            continue;
        }
        bodies.push_back(std::move(*diff));
    }
    if (!ok) return std::nullopt;

    // The level differences must themselves stack into a fuzzy set.
    for (std::size_t k = 0; k + 1 < bodies.size(); ++k) {
        const double exc = excess(bodies[k + 1], bodies[k]);
        if (exc > tol) {
            ok = false;
            if (!out) return std::nullopt;
            out->push_back({DiffViolation::Kind::NotNested, k + 1, exc});
        }
    }
    if (!ok) return std::nullopt;
    return FuzzySet(f.grid(), std::move(bodies), 4.0 * tol);
}

} // namespace detail

// Level-wise Hukuhara difference f (-) g, existing exactly when every level
// difference exists and the differences are nested. Nonexistence is a normal
// outcome, not an error.
inline std::optional<FuzzySet> hukuhara_diff_fuzzy(const FuzzySet& f, const FuzzySet& g,
                                                   double tol = -1.0) {
    return detail::hukuhara_diff_fuzzy_impl(f, g, tol, nullptr);
}

inline std::optional<FuzzySet> hukuhara_diff_fuzzy_diagnosed(const FuzzySet& f, const FuzzySet& g,
                                                             std::vector<DiffViolation>& violations,
                                                             double tol = -1.0) {
    violations.clear();
    return detail::hukuhara_diff_fuzzy_impl(f, g, tol, &violations);
}

} // namespace frv
