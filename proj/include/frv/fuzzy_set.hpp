#pragma once

// Fuzzy sets with compact convex level bodies: a finite stack of nested crisp
// bodies indexed by an alpha grid. The alpha=1 body realizes normality, the
// alpha=0 body is the (bounded) support set.

#include <string>
#include <utility>
#include <vector>

#include "frv/errors.hpp"
#include "frv/geometry.hpp"
#include "frv/grids.hpp"

namespace frv {

class FuzzySet {
public:
    // bodies[k] is the level body at agrid.level(k); bodies must be nested
    // (each contained in the previous) within tol.
    FuzzySet(AlphaGrid agrid, std::vector<CrispConvexSet> bodies, double tol = -1.0)
        : agrid_(std::move(agrid)), bodies_(std::move(bodies)) {
        if (bodies_.size() != agrid_.size())
            throw InvariantViolation("one level body per alpha level required");
        const int d = bodies_.front().dim();
        if (tol < 0.0) tol = default_tol(d);
        for (std::size_t k = 0; k < bodies_.size(); ++k) {
            if (bodies_[k].dim() != d)
                throw InvariantViolation("level bodies of mixed dimension");
            if (k > 0) {
                const double exc = excess(bodies_[k], bodies_[k - 1]);
                if (exc > tol)
                    throw InvariantViolation(
                        "level " + std::to_string(k) + " not contained in level " +
                        std::to_string(k - 1) + " (excess " + std::to_string(exc) + ")");
            }
        }
    }

    // Crisp fuzzy set: the same body at every level.
    static FuzzySet constant(const AlphaGrid& agrid, const CrispConvexSet& body) {
        return FuzzySet(agrid, std::vector<CrispConvexSet>(agrid.size(), body));
    }

    static FuzzySet singleton(const AlphaGrid& agrid, const Point& p) {
        return constant(agrid, CrispConvexSet::singleton(p));
    }

    int dim() const { return bodies_.front().dim(); }
    const AlphaGrid& grid() const { return agrid_; }
    std::size_t level_count() const { return bodies_.size(); }
    const CrispConvexSet& body(std::size_t k) const { return bodies_[k]; }
    const std::vector<CrispConvexSet>& bodies() const { return bodies_; }

    const CrispConvexSet& support_set() const { return bodies_.front(); } // alpha = 0
    const CrispConvexSet& core() const { return bodies_.back(); }         // alpha = 1

    bool is_singleton(double tol) const {
        return bodies_.front().is_singleton(tol);
    }

private:
    AlphaGrid agrid_;
    std::vector<CrispConvexSet> bodies_;
};

// Level-weighted average of the level Steiner points.
inline Point gsteiner(const FuzzySet& f) {
    Point acc = Point::zero(f.dim());
    for (std::size_t k = 0; k < f.level_count(); ++k)
        acc = acc + f.body(k).steiner() * f.grid().weight(k);
    return acc;
}

// Sup over levels of the Hausdorff distance between level bodies.
inline double dinf(const FuzzySet& a, const FuzzySet& b) {
    if (!a.grid().matches(b.grid())) throw GridMismatch("dinf needs a shared alpha grid");
    if (a.dim() != b.dim()) throw DimensionMismatch("dinf of mixed dimensions");
    double best = 0.0;
    for (std::size_t k = 0; k < a.level_count(); ++k)
        best = std::max(best, hausdorff(a.body(k), b.body(k)));
    return best;
}

} // namespace frv
