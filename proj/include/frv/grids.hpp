#pragma once

// Discretization grids: directions on the unit sphere S^{d-1} with a
// normalized surface measure, and alpha levels on [0,1] with quadrature
// weights. All metric and solver quadratures run over these grids.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "frv/errors.hpp"
#include "frv/geometry.hpp"

namespace frv {

namespace detail {

inline bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

} // namespace detail

// Unit directions with nonnegative weights summing to 1 (normalized sphere
// measure). Dimension 1 is exactly {+1, -1} with weights 1/2; dimension 2
// requires angularly sorted, pairwise distinct directions whose largest
// angular gap stays below pi, so halfplane reconstructions are bounded.
class DirectionGrid {
public:
    static DirectionGrid line() {
        DirectionGrid g;
        g.dim_ = 1;
        g.dirs_ = {Point(1.0), Point(-1.0)};
        g.weights_ = {0.5, 0.5};
        return g;
    }

    // n evenly spaced directions starting at angle 0, uniform weights.
    static DirectionGrid circle(std::size_t n = 64) {
        if (n < 4 || n % 2 != 0)
            throw InvariantViolation("circle grid needs an even count of at least 4");
        DirectionGrid g;
        g.dim_ = 2;
        g.dirs_.reserve(n);
        const double step = 2.0 * M_PI / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j)
            g.dirs_.emplace_back(std::cos(step * static_cast<double>(j)),
                                 std::sin(step * static_cast<double>(j)));
        g.weights_.assign(n, 1.0 / static_cast<double>(n));
        return g;
    }

    static DirectionGrid custom(std::vector<Point> dirs, std::vector<double> weights) {
        DirectionGrid g;
        if (dirs.empty()) throw InvariantViolation("direction grid is empty");
        g.dim_ = dirs.front().dim();
        g.dirs_ = std::move(dirs);
        g.weights_ = std::move(weights);
        g.validate();
        return g;
    }

    static DirectionGrid standard(int dim, std::size_t directions = 64) {
        return dim == 1 ? line() : circle(directions);
    }

    int dim() const { return dim_; }
    std::size_t size() const { return dirs_.size(); }
    const Point& direction(std::size_t j) const { return dirs_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }

    // Index of -direction(j) if present on the grid.
    std::optional<std::size_t> antipode(std::size_t j) const {
        const Point m = -dirs_[j];
        for (std::size_t k = 0; k < dirs_.size(); ++k)
            if (detail::close(dirs_[k][0], m[0]) && (dim_ == 1 || detail::close(dirs_[k][1], m[1])))
                return k;
        return std::nullopt;
    }

    bool matches(const DirectionGrid& o) const {
        if (dim_ != o.dim_ || dirs_.size() != o.dirs_.size()) return false;
        for (std::size_t j = 0; j < dirs_.size(); ++j) {
            if (!detail::close(weights_[j], o.weights_[j])) return false;
            if (!detail::close(dirs_[j][0], o.dirs_[j][0])) return false;
            if (dim_ == 2 && !detail::close(dirs_[j][1], o.dirs_[j][1])) return false;
        }
        return true;
    }

private:
    void validate() const {
        double wsum = 0.0;
        for (double w : weights_) {
            if (w < 0.0) throw InvariantViolation("direction weight is negative");
            wsum += w;
        }
        if (weights_.size() != dirs_.size())
            throw InvariantViolation("direction/weight count mismatch");
        if (!detail::close(wsum, 1.0))
            throw InvariantViolation("direction weights do not sum to 1");
        for (const Point& u : dirs_) {
            if (u.dim() != dim_) throw InvariantViolation("mixed direction dimensions");
            if (!detail::close(u.norm(), 1.0)) throw InvariantViolation("direction is not unit");
        }
        if (dim_ == 1) {
            if (dirs_.size() != 2 || !detail::close(dirs_[0][0], 1.0) ||
                !detail::close(dirs_[1][0], -1.0) || !detail::close(weights_[0], 0.5) ||
                !detail::close(weights_[1], 0.5))
                throw InvariantViolation("dimension-1 grid must be {+1,-1} with weights 1/2");
            return;
        }
        double prev = std::atan2(dirs_[0][1], dirs_[0][0]);
        double maxgap = 0.0;
        for (std::size_t j = 1; j <= dirs_.size(); ++j) {
            const Point& u = dirs_[j % dirs_.size()];
            double ang = std::atan2(u[1], u[0]);
            while (ang <= prev + (j == dirs_.size() ? 0.0 : 1e-15)) ang += 2.0 * M_PI;
            const double gap = ang - prev;
            if (j < dirs_.size() && gap <= 1e-15)
                throw InvariantViolation("directions not sorted or not distinct");
            maxgap = std::max(maxgap, gap);
            prev = ang;
        }
        if (maxgap >= M_PI)
            throw InvariantViolation("angular gap of pi or more leaves reconstructions unbounded");
    }

    int dim_ = 1;
    std::vector<Point> dirs_;
    std::vector<double> weights_;
};

// Alpha levels 0 = a_0 < ... < a_m = 1 with positive quadrature weights for
// the level integral, summing to 1. Positivity keeps the projection objective
// strictly convex.
class AlphaGrid {
public:
    // m uniform intervals (m+1 levels) with trapezoidal weights.
    static AlphaGrid uniform(std::size_t m = 20) {
        if (m < 1) throw InvariantViolation("alpha grid needs at least two levels");
        AlphaGrid g;
        const double h = 1.0 / static_cast<double>(m);
        g.levels_.reserve(m + 1);
        g.weights_.reserve(m + 1);
        for (std::size_t k = 0; k <= m; ++k) {
            g.levels_.push_back(k == m ? 1.0 : h * static_cast<double>(k));
            g.weights_.push_back((k == 0 || k == m) ? h / 2.0 : h);
        }
        return g;
    }

    static AlphaGrid custom(std::vector<double> levels, std::vector<double> weights) {
        AlphaGrid g;
        g.levels_ = std::move(levels);
        g.weights_ = std::move(weights);
        g.validate();
        return g;
    }

    std::size_t size() const { return levels_.size(); } // number of levels, m+1
    double level(std::size_t k) const { return levels_[k]; }
    double weight(std::size_t k) const { return weights_[k]; }
    const std::vector<double>& levels() const { return levels_; }
    const std::vector<double>& weights() const { return weights_; }

    bool matches(const AlphaGrid& o) const {
        if (levels_.size() != o.levels_.size()) return false;
        for (std::size_t k = 0; k < levels_.size(); ++k)
            if (!detail::close(levels_[k], o.levels_[k]) ||
                !detail::close(weights_[k], o.weights_[k]))
                return false;
        return true;
    }

private:
    void validate() const {
        if (levels_.size() < 2 || levels_.size() != weights_.size())
            throw InvariantViolation("alpha grid needs matching levels/weights, at least two");
        if (!detail::close(levels_.front(), 0.0) || !detail::close(levels_.back(), 1.0))
            throw InvariantViolation("alpha grid must span [0,1] inclusive");
        for (std::size_t k = 1; k < levels_.size(); ++k)
            if (levels_[k] <= levels_[k - 1])
                throw InvariantViolation("alpha levels must be strictly increasing");
        double wsum = 0.0;
        for (double w : weights_) {
            if (w <= 0.0) throw InvariantViolation("alpha weights must be positive");
            wsum += w;
        }
        if (!detail::close(wsum, 1.0))
            throw InvariantViolation("alpha weights do not sum to 1");
    }

    std::vector<double> levels_;
    std::vector<double> weights_;
};

} // namespace frv
