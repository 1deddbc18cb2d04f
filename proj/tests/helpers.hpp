#pragma once

// Shared test utilities: random instance generators and independent oracles.
// Oracles use their own arithmetic (quadrature loops, brute-force searches)
// so they stay independent of the library paths they check.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "frv/frv.hpp"

namespace frvtest {

using rng_t = std::mt19937_64;

inline double uniform(rng_t& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(rng_t& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random valid d=1 fuzzy set: nested intervals built from shrinking widths
// around a drifting midpoint.
inline frv::FuzzySet random_fuzzy_interval(rng_t& rng, const frv::AlphaGrid& agrid,
                                           double max_radius = 1.0) {
    const std::size_t levels = agrid.size();
    std::vector<double> widths(levels);
    widths[0] = uniform(rng, 0.0, 2.0 * max_radius);
    for (std::size_t k = 1; k < levels; ++k) widths[k] = uniform(rng, 0.0, widths[k - 1]);
    std::vector<frv::CrispConvexSet> bodies;
    bodies.reserve(levels);
    double lo = uniform(rng, -max_radius, max_radius) - widths[0] / 2.0;
    double hi = lo + widths[0];
    bodies.push_back(frv::CrispConvexSet::interval(lo, hi));
    for (std::size_t k = 1; k < levels; ++k) {
        const double slackL = uniform(rng, 0.0, (widths[k - 1] - widths[k]));
        const double nlo = bodies[k - 1].lo() + slackL;
        bodies.push_back(frv::CrispConvexSet::interval(nlo, nlo + widths[k]));
    }
    return frv::FuzzySet(agrid, std::move(bodies));
}

inline frv::FuzzySet random_centered_fuzzy_interval(rng_t& rng, const frv::AlphaGrid& agrid,
                                                    double max_radius = 1.0) {
    frv::FuzzySet f = random_fuzzy_interval(rng, agrid, max_radius);
    return frv::translate(f, -frv::gsteiner(f));
}

inline frv::FrvSample random_sample(rng_t& rng, const frv::AlphaGrid& agrid, std::size_t atoms,
                                    bool centered, double max_radius = 1.0) {
    std::vector<frv::FuzzySet> a;
    a.reserve(atoms);
    for (std::size_t i = 0; i < atoms; ++i)
        a.push_back(centered ? random_centered_fuzzy_interval(rng, agrid, max_radius)
                             : random_fuzzy_interval(rng, agrid, max_radius));
    std::vector<double> w(atoms);
    double sum = 0.0;
    for (double& wi : w) sum += (wi = uniform(rng, 0.2, 1.0));
    for (double& wi : w) wi /= sum;
    // renormalize exactly
    double check = 0.0;
    for (double wi : w) check += wi;
    w.back() += 1.0 - check;
    return frv::FrvSample(std::move(w), std::move(a));
}

// Random convex polygon: hull of a small gaussian cloud.
inline frv::CrispConvexSet random_polygon(rng_t& rng, int points = 7, double spread = 1.0) {
    std::normal_distribution<double> g(0.0, spread);
    std::vector<frv::Vec2> pts;
    pts.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) pts.push_back({g(rng), g(rng)});
    return frv::CrispConvexSet::polygon(std::move(pts));
}

// Polygon whose edge normals all lie on the grid: the outer halfplane body of
// a random polygon. Fuzzy arithmetic and surface checks are exact on these.
inline frv::CrispConvexSet grid_aligned_polygon(rng_t& rng, const frv::DirectionGrid& dgrid,
                                                int points = 7, double spread = 1.0) {
    const frv::CrispConvexSet k = random_polygon(rng, points, spread);
    const frv::AlphaGrid two = frv::AlphaGrid::uniform(1);
    const frv::FuzzySet f = frv::FuzzySet::constant(two, k);
    return frv::reconstruct(frv::eval_support(f, dgrid)).body(0);
}

// Random valid d=2 fuzzy set with grid-aligned level bodies, nested by
// shrinking toward the innermost body.
inline frv::FuzzySet random_fuzzy_polygon(rng_t& rng, const frv::AlphaGrid& agrid,
                                          const frv::DirectionGrid& dgrid) {
    const std::size_t levels = agrid.size();
    const frv::CrispConvexSet outer = grid_aligned_polygon(rng, dgrid);
    const frv::Vec2 anchor = outer.steiner().vec2();
    std::vector<frv::CrispConvexSet> bodies;
    bodies.reserve(levels);
    double prev = 1.0;
    for (std::size_t k = 0; k < levels; ++k) {
        if (k > 0) prev = uniform(rng, 0.0, prev);
        const double t = k == 0 ? 1.0 : prev;
        std::vector<frv::Vec2> vs = outer.vertices();
        for (frv::Vec2& v : vs) v = anchor + t * (v - anchor);
        bodies.push_back(frv::CrispConvexSet::polygon(std::move(vs)));
    }
    return frv::FuzzySet(agrid, std::move(bodies));
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Steiner point via dense quadrature of (1/v_2) int h(u) u dlambda(u).
inline frv::Point oracle_steiner_quadrature(const frv::CrispConvexSet& k, int n = 10000) {
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = (static_cast<double>(i) + 0.5) * 2.0 * M_PI / n;
        const frv::Point u(std::cos(th), std::sin(th));
        double h = -1e300;
        for (const frv::Vec2& v : k.vertices()) h = std::max(h, u[0] * v.x + u[1] * v.y);
        sx += h * u[0];
        sy += h * u[1];
    }
    const double measure = 2.0 * M_PI / n;
    return frv::Point(sx * measure / M_PI, sy * measure / M_PI);
}

// Vertex-wise Hausdorff between convex polygons with local point/segment
// arithmetic (independent of the library's distance code).
inline double oracle_hausdorff_polygons(const std::vector<frv::Vec2>& a,
                                        const std::vector<frv::Vec2>& b) {
    auto seg_dist = [](const frv::Vec2& p, const frv::Vec2& s0, const frv::Vec2& s1) {
        const double ex = s1.x - s0.x, ey = s1.y - s0.y;
        const double len2 = ex * ex + ey * ey;
        double t = len2 > 0.0 ? ((p.x - s0.x) * ex + (p.y - s0.y) * ey) / len2 : 0.0;
        t = std::min(1.0, std::max(0.0, t));
        const double dx = p.x - (s0.x + t * ex), dy = p.y - (s0.y + t * ey);
        return std::sqrt(dx * dx + dy * dy);
    };
    auto dist_to = [&](const frv::Vec2& p, const std::vector<frv::Vec2>& poly) {
        const std::size_t n = poly.size();
        if (n == 1) return seg_dist(p, poly[0], poly[0]);
        bool inside = n >= 3;
        double dmin = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const frv::Vec2& s0 = poly[i];
            const frv::Vec2& s1 = poly[(i + 1) % n];
            const double cr = (s1.x - s0.x) * (p.y - s0.y) - (s1.y - s0.y) * (p.x - s0.x);
            if (cr < 0.0) inside = false;
            dmin = std::min(dmin, seg_dist(p, s0, s1));
        }
        return inside ? 0.0 : dmin;
    };
    double h = 0.0;
    for (const frv::Vec2& p : a) h = std::max(h, dist_to(p, b));
    for (const frv::Vec2& p : b) h = std::max(h, dist_to(p, a));
    return h;
}

// ---------------------------------------------------------------------------
// Lattice projection oracle
// ---------------------------------------------------------------------------

// Tiny projection instance: 3 alpha levels, 4 per-level-symmetric interval
// atoms whose endpoints sit on a 1/8 lattice (widths on a 1/4 lattice,
// nonincreasing in alpha). Every atom is centered by symmetry.
struct LatticeInstance {
    frv::AlphaGrid agrid = frv::AlphaGrid::custom({0.0, 0.5, 1.0}, {0.25, 0.5, 0.25});
    std::vector<std::array<int, 3>> atom_widths; // widths scaled by 8 (even integers)
    std::vector<frv::FuzzySet> atoms;

    frv::FrvSample sample() const { return frv::FrvSample::equal_weights(atoms); }
};

inline LatticeInstance random_lattice_instance(rng_t& rng, std::size_t n_atoms = 4) {
    LatticeInstance inst;
    for (std::size_t i = 0; i < n_atoms; ++i) {
        std::array<int, 3> w{};
        w[0] = 2 * uniform_int(rng, 1, 8); // widths in {1/4, ..., 2}, scaled by 8
        w[1] = 2 * uniform_int(rng, 0, w[0] / 2);
        w[2] = 2 * uniform_int(rng, 0, w[1] / 2);
        inst.atom_widths.push_back(w);
        std::vector<frv::CrispConvexSet> bodies;
        for (int k = 0; k < 3; ++k) {
            const double half = static_cast<double>(w[k]) / 16.0;
            bodies.push_back(frv::CrispConvexSet::interval(-half, half));
        }
        inst.atoms.emplace_back(inst.agrid, std::move(bodies));
    }
    return inst;
}

struct LatticeOptimum {
    double objective = 1e300;
    std::array<double, 3> hi{}; // B's upper endpoints per level
    std::array<double, 3> lo{};
    bool found = false;
};

// Exhaustive search over every feasible B with endpoints on the 1/8 lattice.
// Feasibility is decided in integer arithmetic straight from the atom data;
// the objective is the quadrature formula evaluated directly. Independent of
// the library solver path.
inline LatticeOptimum lattice_search(const LatticeInstance& inst) {
    const std::size_t n = inst.atom_widths.size();
    int min_w[3], min_dp[2];
    for (int k = 0; k < 3; ++k) {
        min_w[k] = 1 << 20;
        for (std::size_t i = 0; i < n; ++i)
            min_w[k] = std::min(min_w[k], inst.atom_widths[i][k]);
    }
    for (int k = 0; k < 2; ++k) {
        min_dp[k] = 1 << 20;
        for (std::size_t i = 0; i < n; ++i)
            min_dp[k] = std::min(min_dp[k],
                                 (inst.atom_widths[i][k] - inst.atom_widths[i][k + 1]) / 2);
    }
    const double aw[3] = {0.25, 0.5, 0.25};
    auto objective = [&](const int* P, const int* Q) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double per_atom = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double xs = static_cast<double>(inst.atom_widths[i][k]) / 16.0;
                const double p = static_cast<double>(P[k]) / 8.0;
                const double q = static_cast<double>(Q[k]) / 8.0;
                per_atom += aw[k] * 0.5 * ((xs - p) * (xs - p) + (xs - q) * (xs - q));
            }
            acc += per_atom / static_cast<double>(n);
        }
        return acc;
    };

    LatticeOptimum best;
    const int R = 16;
    int P[3], Q[3];
    for (P[0] = -R; P[0] <= R; ++P[0])
        for (Q[0] = std::max(-R, -P[0]); Q[0] <= R && P[0] + Q[0] <= min_w[0]; ++Q[0])
            for (P[1] = P[0] - min_dp[0]; P[1] <= P[0]; ++P[1])
                for (Q[1] = Q[0] - min_dp[0]; Q[1] <= Q[0]; ++Q[1]) {
                    if (P[1] + Q[1] < 0 || P[1] + Q[1] > min_w[1]) continue;
                    for (P[2] = P[1] - min_dp[1]; P[2] <= P[1]; ++P[2]) {
                        // the vanishing-gsteiner equality pins Q2
                        Q[2] = P[2] + (P[0] - Q[0]) + 2 * (P[1] - Q[1]);
                        if (Q[2] > Q[1] || Q[1] - Q[2] > min_dp[1]) continue;
                        if (P[2] + Q[2] < 0 || P[2] + Q[2] > min_w[2]) continue;
                        const double obj = objective(P, Q);
                        if (obj < best.objective) {
                            best.objective = obj;
                            best.found = true;
                            for (int k = 0; k < 3; ++k) {
                                best.hi[k] = static_cast<double>(P[k]) / 8.0;
                                best.lo[k] = -static_cast<double>(Q[k]) / 8.0;
                            }
                        }
                    }
                }
    return best;
}

} // namespace frvtest
