#pragma once

// Finite-sample model of fuzzy set-valued random variables: a weighted atom
// list is the empirical law, "almost surely" means "for every atom". Includes
// the Aumann expectation, centering, the Delta_2 metric and sample
// generators.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "frv/arith.hpp"
#include "frv/errors.hpp"
#include "frv/fuzzy_set.hpp"
#include "frv/support_surface.hpp"

namespace frv {

struct RngSeed {
    std::uint64_t value = 0;
};

class FrvSample {
public:
    FrvSample(std::vector<double> weights, std::vector<FuzzySet> atoms)
        : weights_(std::move(weights)), atoms_(std::move(atoms)) {
        if (atoms_.empty()) throw InvariantViolation("a sample needs at least one atom");
        if (weights_.size() != atoms_.size())
            throw InvariantViolation("weight/atom count mismatch");
        double wsum = 0.0;
        for (double w : weights_) {
            if (w <= 0.0) throw InvariantViolation("atom weights must be positive");
            wsum += w;
        }
        if (std::fabs(wsum - 1.0) > 1e-12)
            throw InvariantViolation("atom weights do not sum to 1");
        for (const FuzzySet& a : atoms_) {
            if (!a.grid().matches(atoms_.front().grid()))
                throw InvariantViolation("atoms on different alpha grids");
            if (a.dim() != atoms_.front().dim())
                throw InvariantViolation("atoms of mixed dimension");
        }
    }

    static FrvSample equal_weights(std::vector<FuzzySet> atoms) {
        const std::size_t n = atoms.size();
        return FrvSample(std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(atoms));
    }

    static FrvSample deterministic(FuzzySet f) {
        return FrvSample({1.0}, {std::move(f)});
    }

    std::size_t size() const { return atoms_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const FuzzySet& atom(std::size_t i) const { return atoms_[i]; }
    const AlphaGrid& grid() const { return atoms_.front().grid(); }
    int dim() const { return atoms_.front().dim(); }

private:
    std::vector<double> weights_;
    std::vector<FuzzySet> atoms_;
};

// Level-wise weighted Minkowski average; exact for convex level bodies, so
// the support of the result is the weighted average of atom supports.
inline FuzzySet aumann_expectation(const FrvSample& x) {
    std::vector<CrispConvexSet> bodies;
    bodies.reserve(x.grid().size());
    for (std::size_t k = 0; k < x.grid().size(); ++k) {
        CrispConvexSet acc = scale(x.weight(0), x.atom(0).body(k));
        for (std::size_t i = 1; i < x.size(); ++i)
            acc = minkowski_sum(acc, scale(x.weight(i), x.atom(i).body(k)));
        bodies.push_back(std::move(acc));
    }
    return FuzzySet(x.grid(), std::move(bodies));
}

// Removes each atom's generalized Steiner point; returns the centered sample
// and the removed vectors (one per atom).
inline std::pair<FrvSample, std::vector<Point>> center(const FrvSample& x) {
    std::vector<FuzzySet> atoms;
    std::vector<Point> gs;
    std::vector<double> weights;
    atoms.reserve(x.size());
    gs.reserve(x.size());
    weights.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Point g = gsteiner(x.atom(i));
        gs.push_back(g);
        atoms.push_back(translate(x.atom(i), -g));
        weights.push_back(x.weight(i));
    }
    return {FrvSample(std::move(weights), std::move(atoms)), std::move(gs)};
}

// Delta_2(X, Y) = E[d_2(X, Y)] for jointly defined samples: atoms are paired
// by index and weighted by X's weights.
inline double delta2(const FrvSample& x, const FrvSample& y, const DirectionGrid& dgrid) {
    if (x.size() != y.size()) throw GridMismatch("delta2 needs matched atom counts");
    if (!x.grid().matches(y.grid())) throw GridMismatch("delta2 needs a shared alpha grid");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::fabs(x.weight(i) - y.weight(i)) > 1e-12)
            throw GridMismatch("delta2 needs matched atom weights");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += x.weight(i) * d2(x.atom(i), y.atom(i), dgrid);
    return acc;
}

inline double delta2(const FrvSample& x, const FrvSample& y) {
    return delta2(x, y, DirectionGrid::standard(x.dim()));
}

// E[d_2(X, B)^2], the projection objective.
inline double expected_sq_d2(const FrvSample& x, const FuzzySet& b, const DirectionGrid& dgrid) {
    if (!x.grid().matches(b.grid()))
        throw GridMismatch("expected_sq_d2 needs a shared alpha grid");
    const SupportSurface sb = eval_support(b, dgrid);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = d2(eval_support(x.atom(i), dgrid), sb);
        acc += x.weight(i) * d * d;
    }
    return acc;
}

inline double expected_sq_d2(const FrvSample& x, const FuzzySet& b) {
    return expected_sq_d2(x, b, DirectionGrid::standard(x.dim()));
}

// Standard normal draws via the Box-Muller transform over mt19937_64, so a
// seed pins the sample bit-exactly within this implementation.
class NormalSampler {
public:
    explicit NormalSampler(RngSeed seed) : rng_(seed.value) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53; // (0,1]
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;         // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// n equal-weight atoms M (+) 1_xi with xi i.i.d. centered normal, standard
// deviation sigma per coordinate. M must be centered.
inline FrvSample gen_gaussian_translation(const FuzzySet& m, double sigma, std::size_t n,
                                          RngSeed seed) {
    if (sigma < 0.0) throw InvariantViolation("sigma must be nonnegative");
    if (n == 0) throw InvariantViolation("sample size must be positive");
    const double g = gsteiner(m).norm();
    if (g > default_tol(m.dim()))
        throw NotCentered("shape has generalized Steiner point of norm " + std::to_string(g));
    NormalSampler normal(seed);
    std::vector<FuzzySet> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point xi = m.dim() == 1 ? Point(sigma * normal.next())
                                      : Point(sigma * normal.next(), sigma * normal.next());
        atoms.push_back(translate(m, xi));
    }
    return FrvSample::equal_weights(std::move(atoms));
}

// The worked interval family: atoms 1_[-w_i, w_i] with w_i = (i - 1/2)/n on
// the midpoint grid, uniform weights, crisp at every level.
inline FrvSample gen_interval_family(std::size_t n, const AlphaGrid& agrid = AlphaGrid::uniform()) {
    if (n == 0) throw InvariantViolation("sample size must be positive");
    std::vector<FuzzySet> atoms;
    atoms.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double w = (static_cast<double>(i) - 0.5) / static_cast<double>(n);
        atoms.push_back(FuzzySet::constant(agrid, CrispConvexSet::interval(-w, w)));
    }
    return FrvSample::equal_weights(std::move(atoms));
}

} // namespace frv
