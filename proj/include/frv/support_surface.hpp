#pragma once

// Discretized support functions s(alpha, u) on an alpha grid x direction
// grid: the coordinates every metric and the projection solver work in.
// Evaluation embeds a fuzzy set; reconstruction inverts the embedding via
// halfplane intersections.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "frv/errors.hpp"
#include "frv/fuzzy_set.hpp"
#include "frv/geometry.hpp"
#include "frv/grids.hpp"

namespace frv {

class SupportSurface {
public:
    SupportSurface(DirectionGrid dgrid, AlphaGrid agrid)
        : dgrid_(std::move(dgrid)),
          agrid_(std::move(agrid)),
          values_(dgrid_.size() * agrid_.size(), 0.0) {}

    const DirectionGrid& directions() const { return dgrid_; }
    const AlphaGrid& levels() const { return agrid_; }
    std::size_t level_count() const { return agrid_.size(); }
    std::size_t direction_count() const { return dgrid_.size(); }

    double value(std::size_t level, std::size_t dir) const {
        return values_[level * dgrid_.size() + dir];
    }
    double& value(std::size_t level, std::size_t dir) {
        return values_[level * dgrid_.size() + dir];
    }

    bool grids_match(const SupportSurface& o) const {
        return dgrid_.matches(o.dgrid_) && agrid_.matches(o.agrid_);
    }

    SupportSurface operator+(const SupportSurface& o) const { return combined(o, +1.0); }
    SupportSurface operator-(const SupportSurface& o) const { return combined(o, -1.0); }

    SupportSurface scaled(double s) const {
        SupportSurface out = *this;
        for (double& v : out.values_) v *= s;
        return out;
    }

    // Adds the support of the singleton {v}: <v, u_j> at every level.
    SupportSurface translated(const Point& v) const {
        if (v.dim() != dgrid_.dim()) throw DimensionMismatch("translation vector dimension");
        SupportSurface out = *this;
        for (std::size_t j = 0; j < dgrid_.size(); ++j) {
            const double lin = dgrid_.direction(j).dot(v);
            for (std::size_t k = 0; k < agrid_.size(); ++k) out.value(k, j) += lin;
        }
        return out;
    }

    double sup_norm_diff(const SupportSurface& o) const {
        if (!grids_match(o)) throw GridMismatch("surfaces on different grids");
        double best = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            best = std::max(best, std::fabs(values_[i] - o.values_[i]));
        return best;
    }

private:
    SupportSurface combined(const SupportSurface& o, double sign) const {
        if (!grids_match(o)) throw GridMismatch("surfaces on different grids");
        SupportSurface out = *this;
        for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] += sign * o.values_[i];
        return out;
    }

    DirectionGrid dgrid_;
    AlphaGrid agrid_;
    std::vector<double> values_;
};

inline SupportSurface eval_support(const FuzzySet& f, const DirectionGrid& dgrid) {
    if (dgrid.dim() != f.dim()) throw DimensionMismatch("direction grid dimension");
    SupportSurface s(dgrid, f.grid());
    for (std::size_t k = 0; k < f.level_count(); ++k)
        for (std::size_t j = 0; j < dgrid.size(); ++j)
            s.value(k, j) = f.body(k).support(dgrid.direction(j));
    return s;
}

// L2 quadrature distance over levels x directions (normalized sphere
// measure): the embedded form of the d_2 metric.
inline double d2(const SupportSurface& a, const SupportSurface& b) {
    if (!a.grids_match(b)) throw GridMismatch("d2 needs identical grids");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.level_count(); ++k) {
        double level = 0.0;
        for (std::size_t j = 0; j < a.direction_count(); ++j) {
            const double diff = a.value(k, j) - b.value(k, j);
            level += a.directions().weight(j) * diff * diff;
        }
        acc += a.levels().weight(k) * level;
    }
    return std::sqrt(acc);
}

inline double d2(const FuzzySet& a, const FuzzySet& b, const DirectionGrid& dgrid) {
    return d2(eval_support(a, dgrid), eval_support(b, dgrid));
}

inline double d2(const FuzzySet& a, const FuzzySet& b) {
    return d2(a, b, DirectionGrid::standard(a.dim()));
}

namespace detail {

// Level body from one row of support values: interval for d=1, halfplane
// intersection over grid directions for d=2. nullopt when empty beyond tol.
inline std::optional<CrispConvexSet> level_body_from_row(const SupportSurface& s,
                                                         std::size_t level, double tol) {
    const DirectionGrid& dg = s.directions();
    if (dg.dim() == 1) {
        double hi = s.value(level, 0);
        double lo = -s.value(level, 1);
        if (lo > hi + tol) return std::nullopt;
        if (lo > hi) lo = hi = 0.5 * (lo + hi);
        return CrispConvexSet::interval(lo, hi);
    }
    std::vector<Vec2> dirs;
    std::vector<double> offs;
    dirs.reserve(dg.size());
    offs.reserve(dg.size());
    double radius = 1.0;
    for (std::size_t j = 0; j < dg.size(); ++j) {
        dirs.push_back(dg.direction(j).vec2());
        offs.push_back(s.value(level, j));
        radius = std::max(radius, std::fabs(offs.back()));
    }
    auto body = halfplane_intersection(dirs, offs, radius);
    if (body) return body;
    // tol slack recovers rows that are empty only through rounding
    for (double& o : offs) o += tol;
    return halfplane_intersection(dirs, offs, radius);
}

} // namespace detail

// Inverts the embedding: level bodies are the halfspace intersections over
// the direction grid. Throws NotMonotone / EmptyLevel on invalid surfaces.
inline FuzzySet reconstruct(const SupportSurface& s, double tol = -1.0) {
    if (tol < 0.0) tol = default_tol(s.directions().dim());
    for (std::size_t k = 0; k + 1 < s.level_count(); ++k)
        for (std::size_t j = 0; j < s.direction_count(); ++j)
            if (s.value(k + 1, j) > s.value(k, j) + tol)
                throw NotMonotone(k + 1, "support values increase from level " +
                                             std::to_string(k) + " to " + std::to_string(k + 1));
    std::vector<CrispConvexSet> bodies;
    bodies.reserve(s.level_count());
    for (std::size_t k = 0; k < s.level_count(); ++k) {
        auto body = detail::level_body_from_row(s, k, tol);
        if (!body)
            throw EmptyLevel(k, "level " + std::to_string(k) + " reconstructs to the empty set");
        bodies.push_back(std::move(*body));
    }
    // Nestedness follows from monotone rows; allow the same slack.
    return FuzzySet(s.levels(), std::move(bodies), 4.0 * tol);
}

struct SupportViolation {
    enum class Kind { NotFinite, NotMonotoneAlpha, Normality, Inconsistent };
    Kind kind;
    std::size_t level;
    std::size_t direction;
    double amount;
};

// Verdict of the discrete support-function test: finite entries, monotone in
// alpha, antipodal normality h(u) + h(-u) >= 0, and reconstruct-then-eval
// consistency (the discrete stand-in for sublinearity).
struct SupportValidity {
    bool valid = true;
    std::vector<SupportViolation> violations;
    // the zero direction never lies on the grid, so f(0) = 0 holds vacuously
    bool zero_direction_vacuous = true;

    explicit operator bool() const { return valid; }
};

inline SupportValidity is_valid_support(const SupportSurface& s, double tol = -1.0) {
    if (tol < 0.0) tol = default_tol(s.directions().dim());
    SupportValidity out;
    auto flag = [&out](SupportViolation v) {
        out.valid = false;
        out.violations.push_back(v);
    };

    for (std::size_t k = 0; k < s.level_count(); ++k)
        for (std::size_t j = 0; j < s.direction_count(); ++j)
            if (!std::isfinite(s.value(k, j)))
                flag({SupportViolation::Kind::NotFinite, k, j, s.value(k, j)});
    if (!out.valid) return out;

    for (std::size_t k = 0; k + 1 < s.level_count(); ++k)
        for (std::size_t j = 0; j < s.direction_count(); ++j) {
            const double gap = s.value(k + 1, j) - s.value(k, j);
            if (gap > tol) flag({SupportViolation::Kind::NotMonotoneAlpha, k + 1, j, gap});
        }

    for (std::size_t j = 0; j < s.direction_count(); ++j) {
        const auto anti = s.directions().antipode(j);
        if (!anti || *anti < j) continue;
        for (std::size_t k = 0; k < s.level_count(); ++k) {
            const double sum = s.value(k, j) + s.value(k, *anti);
            if (sum < -tol) flag({SupportViolation::Kind::Normality, k, j, sum});
        }
    }
    if (!out.valid) return out;

    // Reconstruct-and-compare per level.
    for (std::size_t k = 0; k < s.level_count(); ++k) {
        auto body = detail::level_body_from_row(s, k, tol);
        if (!body) {
            flag({SupportViolation::Kind::Inconsistent, k, 0, 0.0});
            continue;
        }
        for (std::size_t j = 0; j < s.direction_count(); ++j) {
            const double re = body->support(s.directions().direction(j));
            const double gap = std::fabs(re - s.value(k, j));
            if (gap > 4.0 * tol) flag({SupportViolation::Kind::Inconsistent, k, j, gap});
        }
    }
    return out;
}

} // namespace frv
