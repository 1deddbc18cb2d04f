#pragma once

// The Hukuhara set H_X, the projection computing the deterministic part C of
// a sample, the decomposition X = C (+) Y, the translation characterization
// and the maximality probe.
//
// In surface coordinates the feasible set {B : B centered, X_i (-) B exists
// for every atom} is a polyhedron: B's surface must be a valid support
// surface, every difference surface x_i - s must be one too, and the
// (quadrature) Steiner point must vanish. The objective E[d_2(X,B)^2] equals
// ||s - s_EX||^2 plus a constant independent of B, so C is the metric
// projection of the expectation surface onto that polyhedron. It is computed
// by Dykstra's alternating projections followed by an active-set polish.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frv/arith.hpp"
#include "frv/errors.hpp"
#include "frv/sample.hpp"
#include "frv/support_surface.hpp"

namespace frv {

struct ProjectionConfig {
    std::size_t max_iterations = 100000;   // Dykstra sweeps
    double objective_tolerance = 1e-11;    // weighted movement per sweep
    double feasibility_tolerance = 1e-9;   // max constraint violation
    double relaxation = 1.0;               // projection step factor in (0,2)
    std::size_t directions = 64;           // direction count for dimension 2

    void validate() const {
        if (max_iterations == 0 || objective_tolerance <= 0.0 ||
            feasibility_tolerance <= 0.0 || relaxation <= 0.0 || relaxation >= 2.0)
            throw InvariantViolation("projection config out of range");
    }
};

struct AtomCertificate {
    std::size_t atom = 0;
    bool exists = true;
    std::vector<DiffViolation> violations;
};

struct HukuharaMembership {
    bool verdict = false;
    bool gs_ok = false;
    std::vector<AtomCertificate> per_atom;

    explicit operator bool() const { return verdict; }
};

// B in H_X: gs(B) = 0 and X_i (-) B exists for every atom.
inline HukuharaMembership membership(const FuzzySet& b, const FrvSample& x, double tol = -1.0) {
    if (!b.grid().matches(x.grid())) throw GridMismatch("membership needs a shared alpha grid");
    if (b.dim() != x.dim()) throw DimensionMismatch("membership of mixed dimensions");
    if (tol < 0.0) tol = default_tol(b.dim());
    HukuharaMembership out;
    out.gs_ok = gsteiner(b).norm() <= tol;
    out.verdict = out.gs_ok;
    out.per_atom.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        AtomCertificate cert;
        cert.atom = i;
        cert.exists = hukuhara_diff_fuzzy_diagnosed(x.atom(i), b, cert.violations, tol).has_value();
        out.verdict = out.verdict && cert.exists;
        out.per_atom.push_back(std::move(cert));
    }
    return out;
}

namespace detail {

struct LinearConstraint {
    std::vector<std::pair<std::size_t, double>> terms; // sparse row a
    double bound = 0.0;                                // a.x <= bound (or ==)
    bool equality = false;
    double wnorm = 0.0;                                // a . W^{-1} a
};

struct ProjectionProblem {
    std::size_t n = 0;
    std::vector<double> metric; // positive diagonal W
    std::vector<double> target;
    std::vector<LinearConstraint> constraints;
};

struct ProjectionSolution {
    std::vector<double> x;
    std::size_t sweeps = 0;
    double feasibility = 0.0;
    double last_delta = 0.0;
    bool converged = false;
};

inline double row_dot(const LinearConstraint& c, const std::vector<double>& x) {
    double acc = 0.0;
    for (const auto& [i, a] : c.terms) acc += a * x[i];
    return acc;
}

// Dykstra's cyclic projection onto the intersection of halfspaces and
// hyperplanes under the diagonal metric W, started at the target. Halfspace
// corrections are stored as scalar multipliers of W^{-1}a.
inline ProjectionSolution dykstra_project(const ProjectionProblem& pb, const ProjectionConfig& cfg) {
    ProjectionSolution sol;
    sol.x = pb.target;
    std::vector<double> mu(pb.constraints.size(), 0.0);
    std::vector<double> prev(pb.n);

    for (std::size_t sweep = 1; sweep <= cfg.max_iterations; ++sweep) {
        prev = sol.x;
        for (std::size_t c = 0; c < pb.constraints.size(); ++c) {
            const LinearConstraint& con = pb.constraints[c];
            if (con.wnorm <= 0.0) continue;
            if (con.equality) {
                const double viol = row_dot(con, sol.x) - con.bound;
                const double step = viol / con.wnorm;
                for (const auto& [i, a] : con.terms) sol.x[i] -= step * a / pb.metric[i];
                continue;
            }
            const double viol_y = row_dot(con, sol.x) + mu[c] * con.wnorm - con.bound;
            const double mu_new = viol_y > 0.0 ? cfg.relaxation * viol_y / con.wnorm : 0.0;
            const double step = mu[c] - mu_new;
            if (step != 0.0)
                for (const auto& [i, a] : con.terms) sol.x[i] += step * a / pb.metric[i];
            mu[c] = mu_new;
        }

        double delta = 0.0;
        for (std::size_t i = 0; i < pb.n; ++i) {
            const double d = sol.x[i] - prev[i];
            delta += pb.metric[i] * d * d;
        }
        sol.last_delta = std::sqrt(delta);
        sol.sweeps = sweep;

        if (sol.last_delta <= cfg.objective_tolerance) {
            double feas = 0.0;
            for (const LinearConstraint& con : pb.constraints) {
                const double v = row_dot(con, sol.x) - con.bound;
                feas = std::max(feas, con.equality ? std::fabs(v) : v);
            }
            sol.feasibility = feas;
            if (feas <= cfg.feasibility_tolerance) {
                sol.converged = true;
                return sol;
            }
            // movement has vanished but violations remain: numerically
            // stalled, leave the finish to the active-set refinement
            if (sol.last_delta <= std::max(1e-4 * cfg.objective_tolerance, 1e-15)) break;
        }
    }
    double feas = 0.0;
    for (const LinearConstraint& con : pb.constraints) {
        const double v = row_dot(con, sol.x) - con.bound;
        feas = std::max(feas, con.equality ? std::fabs(v) : v);
    }
    sol.feasibility = feas;
    sol.converged = feas <= cfg.feasibility_tolerance;
    return sol;
}

// Pivoted Cholesky solve of the (PSD, possibly rank-deficient) system M y = r.
// Returns false when the system is numerically inconsistent.
inline bool solve_psd(std::vector<std::vector<double>> m, std::vector<double> r,
                      std::vector<double>& y) {
    const std::size_t n = r.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double scale = 1e-300;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, m[i][i]);
    const double eps = 1e-12 * scale;

    std::size_t rank = n;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (m[perm[i]][perm[i]] > m[perm[piv]][perm[piv]]) piv = i;
        std::swap(perm[k], perm[piv]);
        const std::size_t pk = perm[k];
        if (m[pk][pk] <= eps) {
            rank = k;
            break;
        }
        const double d = std::sqrt(m[pk][pk]);
        m[pk][pk] = d;
        for (std::size_t i = k + 1; i < n; ++i) m[perm[i]][pk] /= d;
        // keep the trailing block symmetric: later pivot swaps may read the
        // mirror entry
        for (std::size_t j = k + 1; j < n; ++j) {
            const std::size_t pj = perm[j];
            for (std::size_t i = j; i < n; ++i) {
                const double upd = m[perm[i]][pk] * m[pj][pk];
                m[perm[i]][pj] -= upd;
                if (i != j) m[pj][perm[i]] -= upd;
            }
        }
    }

    // Forward/backward solve on the leading rank-by-rank block.
    std::vector<double> z(rank, 0.0);
    for (std::size_t k = 0; k < rank; ++k) {
        double acc = r[perm[k]];
        for (std::size_t j = 0; j < k; ++j) acc -= m[perm[k]][perm[j]] * z[j];
        z[k] = acc / m[perm[k]][perm[k]];
    }
    y.assign(n, 0.0);
    for (std::size_t k = rank; k-- > 0;) {
        double acc = z[k];
        for (std::size_t j = k + 1; j < rank; ++j) acc -= m[perm[j]][perm[k]] * y[perm[j]];
        y[perm[k]] = acc / m[perm[k]][perm[k]];
    }
    // Dropped rows must be consistent with the solved block.
    for (std::size_t k = rank; k < n; ++k) {
        double acc = r[perm[k]];
        for (std::size_t j = 0; j < rank; ++j) acc -= m[perm[k]][perm[j]] * z[j];
        if (std::fabs(acc) > 1e-6 * std::max(1.0, scale)) return false;
    }
    return true;
}

// Primal active-set refinement. Starts from the origin (1_0 is always
// feasible: every bound in the problem is nonnegative), takes bounded steps
// toward the affine projection of the target onto the working set, inserts
// blocking constraints and evicts negative multipliers. A point that is
// feasible, tight on its working set and has nonnegative inequality
// multipliers is the exact projection (KKT certificate), so acceptance is
// sound even when Dykstra stalled early. The Dykstra iterate only seeds the
// initial working-set guess.
inline void polish_active_set(const ProjectionProblem& pb, const ProjectionConfig& cfg,
                              ProjectionSolution& sol) {
    const std::size_t m = pb.constraints.size();
    const double act_tol = std::max(1e3 * cfg.feasibility_tolerance, 1e-7);
    std::vector<char> in_w(m, 0);
    std::vector<std::size_t> work;
    for (std::size_t c = 0; c < m; ++c) {
        const LinearConstraint& con = pb.constraints[c];
        if (con.equality) {
            in_w[c] = 1;
            work.push_back(c);
            continue;
        }
        // tight at the origin and near-active at the Dykstra answer
        if (con.bound == 0.0 && std::fabs(row_dot(con, sol.x) - con.bound) <= act_tol) {
            in_w[c] = 1;
            work.push_back(c);
        }
    }
    if (work.size() > 800) return;

    std::vector<double> x(pb.n, 0.0);
    std::vector<double> x_new, lambda;
    for (int round = 0; round < 600; ++round) {
        const std::size_t nw = work.size();
        if (nw > 800) return;
        std::vector<std::vector<double>> gram(nw, std::vector<double>(nw, 0.0));
        std::vector<double> rhs(nw, 0.0);
        for (std::size_t r = 0; r < nw; ++r) {
            const LinearConstraint& cr = pb.constraints[work[r]];
            rhs[r] = row_dot(cr, pb.target) - cr.bound;
            for (std::size_t s = r; s < nw; ++s) {
                const LinearConstraint& cs = pb.constraints[work[s]];
                double acc = 0.0;
                for (const auto& [i, a] : cr.terms)
                    for (const auto& [j, b] : cs.terms)
                        if (i == j) acc += a * b / pb.metric[i];
                gram[r][s] = gram[s][r] = acc;
            }
        }
        if (!solve_psd(std::move(gram), std::move(rhs), lambda)) return;
        x_new = pb.target;
        for (std::size_t r = 0; r < nw; ++r)
            for (const auto& [i, a] : pb.constraints[work[r]].terms)
                x_new[i] -= lambda[r] * a / pb.metric[i];

        double move = 0.0;
        for (std::size_t i = 0; i < pb.n; ++i) {
            const double d = x_new[i] - x[i];
            move += pb.metric[i] * d * d;
        }
        if (move <= 1e-26) {
            // stationary on the working set: check multipliers, then KKT
            double worst = -1e-10;
            std::size_t evict = nw;
            for (std::size_t r = 0; r < nw; ++r)
                if (!pb.constraints[work[r]].equality && lambda[r] < worst) {
                    worst = lambda[r];
                    evict = r;
                }
            if (evict < nw) {
                in_w[work[evict]] = 0;
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(evict));
                continue;
            }
            double feas = 0.0;
            for (const LinearConstraint& con : pb.constraints) {
                const double v = row_dot(con, x_new) - con.bound;
                feas = std::max(feas, con.equality ? std::fabs(v) : v);
            }
            if (feas <= cfg.feasibility_tolerance) {
                sol.x = std::move(x_new);
                sol.feasibility = feas;
                sol.converged = true;
            }
            return;
        }

        // longest feasible step toward x_new
        double alpha = 1.0;
        std::size_t block = m;
        for (std::size_t c = 0; c < m; ++c) {
            if (in_w[c] || pb.constraints[c].equality) continue;
            const LinearConstraint& con = pb.constraints[c];
            double ad = 0.0;
            for (const auto& [i, a] : con.terms) ad += a * (x_new[i] - x[i]);
            if (ad <= 1e-15) continue;
            const double room = con.bound - row_dot(con, x);
            const double ac = room / ad;
            if (ac < alpha) {
                alpha = std::max(ac, 0.0);
                block = c;
            }
        }
        if (alpha >= 1.0) {
            x = x_new; // working set unchanged; next round checks multipliers
        } else {
            for (std::size_t i = 0; i < pb.n; ++i) x[i] += alpha * (x_new[i] - x[i]);
            if (block < m) {
                in_w[block] = 1;
                work.push_back(block);
            }
        }
    }
}

// Assembles the feasible polyhedron of the projection in surface coordinates.
// Constraints over atoms collapse to elementwise minima, so the problem size
// is independent of the atom count.
inline ProjectionProblem build_projection_problem(const FrvSample& x, const DirectionGrid& dgrid,
                                                  const SupportSurface& target,
                                                  const std::vector<SupportSurface>& atoms) {
    const AlphaGrid& ag = x.grid();
    const std::size_t levels = ag.size();
    const std::size_t dirs = dgrid.size();

    ProjectionProblem pb;
    pb.n = levels * dirs;
    pb.metric.resize(pb.n);
    pb.target.resize(pb.n);
    auto idx = [dirs](std::size_t k, std::size_t j) { return k * dirs + j; };
    for (std::size_t k = 0; k < levels; ++k)
        for (std::size_t j = 0; j < dirs; ++j) {
            pb.metric[idx(k, j)] = ag.weight(k) * dgrid.weight(j);
            pb.target[idx(k, j)] = target.value(k, j);
        }

    auto add = [&pb](std::vector<std::pair<std::size_t, double>> terms, double bound,
                     bool equality) {
        LinearConstraint c;
        c.terms = std::move(terms);
        c.bound = bound;
        c.equality = equality;
        for (const auto& [i, a] : c.terms) c.wnorm += a * a / pb.metric[i];
        pb.constraints.push_back(std::move(c));
    };
    // Valid atom surfaces make these minima nonnegative; clamping away the
    // rounding tail keeps the origin exactly feasible.
    auto min_over_atoms = [&atoms](auto&& f) {
        double best = std::numeric_limits<double>::infinity();
        for (const SupportSurface& s : atoms) best = std::min(best, f(s));
        return std::max(best, 0.0);
    };

    // Antipodal normality of B and of every difference (the width box).
    for (std::size_t j = 0; j < dirs; ++j) {
        const auto anti = dgrid.antipode(j);
        if (!anti || *anti < j) continue;
        const std::size_t j2 = *anti;
        for (std::size_t k = 0; k < levels; ++k) {
            add({{idx(k, j), -1.0}, {idx(k, j2), -1.0}}, 0.0, false);
            const double cap = min_over_atoms(
                [&](const SupportSurface& s) { return s.value(k, j) + s.value(k, j2); });
            add({{idx(k, j), 1.0}, {idx(k, j2), 1.0}}, cap, false);
        }
    }

    // Alpha monotonicity of B and of every difference (the decrement box).
    for (std::size_t j = 0; j < dirs; ++j)
        for (std::size_t k = 0; k + 1 < levels; ++k) {
            add({{idx(k + 1, j), 1.0}, {idx(k, j), -1.0}}, 0.0, false);
            const double cap = min_over_atoms(
                [&](const SupportSurface& s) { return s.value(k, j) - s.value(k + 1, j); });
            add({{idx(k, j), 1.0}, {idx(k + 1, j), -1.0}}, cap, false);
        }

    // Per-level consistency in dimension 2: the classical three-direction
    // support inequality, for B and for every difference.
    if (dgrid.dim() == 2 && dirs >= 4) {
        std::vector<double> ang(dirs);
        for (std::size_t j = 0; j < dirs; ++j)
            ang[j] = std::atan2(dgrid.direction(j)[1], dgrid.direction(j)[0]);
        for (std::size_t j = 0; j < dirs; ++j) {
            const std::size_t jp = (j + 1) % dirs;
            const std::size_t jm = (j + dirs - 1) % dirs;
            double gp = ang[jp] - ang[j];
            double gm = ang[j] - ang[jm];
            if (gp <= 0.0) gp += 2.0 * M_PI;
            if (gm <= 0.0) gm += 2.0 * M_PI;
            if (gp + gm > M_PI + 1e-12)
                throw InvariantViolation("direction grid too sparse for projection");
            const double c0 = std::sin(gp + gm);
            const double cm = std::sin(gp);
            const double cp = std::sin(gm);
            for (std::size_t k = 0; k < levels; ++k) {
                add({{idx(k, j), c0}, {idx(k, jm), -cm}, {idx(k, jp), -cp}}, 0.0, false);
                const double cap = min_over_atoms([&](const SupportSurface& s) {
                    return -c0 * s.value(k, j) + cm * s.value(k, jm) + cp * s.value(k, jp);
                });
                add({{idx(k, j), -c0}, {idx(k, jm), cm}, {idx(k, jp), cp}}, cap, false);
            }
        }
    }

    // Vanishing (quadrature) Steiner point: one equality per coordinate.
    for (int coord = 0; coord < dgrid.dim(); ++coord) {
        std::vector<std::pair<std::size_t, double>> terms;
        terms.reserve(pb.n);
        for (std::size_t k = 0; k < levels; ++k)
            for (std::size_t j = 0; j < dirs; ++j) {
                const double a = ag.weight(k) * dgrid.weight(j) * dgrid.direction(j)[coord];
                if (a != 0.0) terms.emplace_back(idx(k, j), a);
            }
        add(std::move(terms), 0.0, true);
    }

    return pb;
}

// Builds the residual atom from a difference surface, absorbing solver-level
// slack: clamps inverted widths and re-nests by at most `slack`.
inline FuzzySet residual_from_surface(const SupportSurface& diff, double slack,
                                      double& adjustment) {
    const int dim = diff.directions().dim();
    if (dim == 1) {
        const std::size_t levels = diff.level_count();
        std::vector<CrispConvexSet> bodies;
        bodies.reserve(levels);
        double lo_prev = 0.0, hi_prev = 0.0;
        for (std::size_t k = 0; k < levels; ++k) {
            double hi = diff.value(k, 0);
            double lo = -diff.value(k, 1);
            if (lo > hi) {
                adjustment = std::max(adjustment, lo - hi);
                lo = hi = 0.5 * (lo + hi);
            }
            if (k > 0) {
                const double nl = std::max(lo, lo_prev);
                const double nh = std::min(hi, hi_prev);
                adjustment = std::max({adjustment, nl - lo, hi - nh});
                lo = std::min(nl, nh);
                hi = nh < nl ? lo : nh;
            }
            bodies.push_back(CrispConvexSet::interval(lo, hi));
            lo_prev = lo;
            hi_prev = hi;
        }
        return FuzzySet(diff.levels(), std::move(bodies));
    }
    return reconstruct(diff, std::max(default_tol(dim), slack));
}

} // namespace detail

struct DecompositionResult {
    FuzzySet C;
    FrvSample Y;
    double objective = 0.0;            // achieved E[d_2(X, C)^2]
    std::size_t iterations = 0;        // solver sweeps
    double feasibility_residual = 0.0; // constraint violation + assembly slack
};

// The unique minimizer of E[d_2(X,B)^2] over the discretized Hukuhara set of
// a centered sample, with the residual sample Y assembled from the support
// differences (h_Y = h_X - h_C per atom).
inline DecompositionResult project_CX(const FrvSample& x, const ProjectionConfig& cfg = {}) {
    cfg.validate();
    const double tol = default_tol(x.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double g = gsteiner(x.atom(i)).norm();
        if (g > tol)
            throw NotCentered("atom " + std::to_string(i) +
                              " has generalized Steiner point of norm " + std::to_string(g));
    }

    const DirectionGrid dgrid = DirectionGrid::standard(x.dim(), cfg.directions);
    const FuzzySet ex = aumann_expectation(x);
    const SupportSurface target = eval_support(ex, dgrid);
    std::vector<SupportSurface> atom_surfaces;
    atom_surfaces.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        atom_surfaces.push_back(eval_support(x.atom(i), dgrid));

    detail::ProjectionProblem pb = detail::build_projection_problem(x, dgrid, target, atom_surfaces);
    detail::ProjectionSolution sol = detail::dykstra_project(pb, cfg);
    detail::polish_active_set(pb, cfg, sol);
    if (!sol.converged)
        throw SolverDidNotConverge(sol.feasibility, sol.last_delta,
                                   "projection stalled: feasibility " +
                                       std::to_string(sol.feasibility) + ", last sweep delta " +
                                       std::to_string(sol.last_delta));

    SupportSurface sc(dgrid, x.grid());
    for (std::size_t k = 0; k < sc.level_count(); ++k)
        for (std::size_t j = 0; j < dgrid.size(); ++j) sc.value(k, j) = sol.x[k * dgrid.size() + j];

    const double slack = std::max(tol, 10.0 * sol.feasibility);
    FuzzySet c0 = reconstruct(sc, slack);
    const FuzzySet c = translate(c0, -gsteiner(c0)); // exact recentering
    const SupportSurface c_surface = eval_support(c, dgrid);

    double adjustment = sol.feasibility;
    std::vector<FuzzySet> residuals;
    std::vector<double> weights;
    residuals.reserve(x.size());
    weights.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        residuals.push_back(
            detail::residual_from_surface(atom_surfaces[i] - c_surface, slack, adjustment));
        weights.push_back(x.weight(i));
    }

    DecompositionResult out{c, FrvSample(std::move(weights), std::move(residuals)),
                            expected_sq_d2(x, c, dgrid), sol.sweeps, adjustment};
    return out;
}

// Centers X, projects the centered sample and reports the removed Steiner
// vectors: X_i = (C (+) Y_i) (+) 1_{gs_i}.
inline std::pair<DecompositionResult, std::vector<Point>> decompose(const FrvSample& x,
                                                                    const ProjectionConfig& cfg = {}) {
    auto [centered, gs] = center(x);
    return {project_CX(centered, cfg), std::move(gs)};
}

struct TranslationReport {
    bool verdict = false;
    double gap = 0.0; // d_2(EX, C (+) 1_{E gs})
    double tol = 0.0;
};

// X is a translation iff its expectation equals the deterministic part up to
// the mean Steiner shift.
inline TranslationReport is_translation(const FrvSample& x, double tol,
                                        const ProjectionConfig& cfg = {}) {
    auto [res, gs] = decompose(x, cfg);
    Point mean_gs = Point::zero(x.dim());
    for (std::size_t i = 0; i < x.size(); ++i) mean_gs = mean_gs + gs[i] * x.weight(i);
    const FuzzySet ex = aumann_expectation(x);
    const FuzzySet cand = minkowski(res.C, embed_point(mean_gs, x.grid()));
    const DirectionGrid dgrid = DirectionGrid::standard(x.dim(), cfg.directions);
    TranslationReport out;
    out.gap = d2(ex, cand, dgrid);
    out.tol = tol;
    out.verdict = out.gap <= tol;
    return out;
}

struct MaximalityWitness {
    std::size_t level = 0;
    std::size_t direction = 0; // the dilated antipodal pair is (direction, antipode)
};

struct MaximalityReport {
    bool maximal = true;
    std::vector<MaximalityWitness> witnesses;
};

// Falsification probe of maximality: dilates one level of C by probe_step
// along an antipodal direction pair (keeping the center), re-nests the outer
// levels, and asks whether the enlarged set stays in H_X while strictly
// containing C. Witnesses disprove maximality; their absence is evidence,
// not proof.
inline MaximalityReport maximality_probe(const FuzzySet& c, const FrvSample& x, double probe_step,
                                         const DirectionGrid& dgrid) {
    if (probe_step <= 0.0) throw InvariantViolation("probe step must be positive");
    const double tol = default_tol(c.dim());
    if (!membership(c, x, tol).verdict)
        throw InvariantViolation("maximality probe needs a feasible base set");

    const SupportSurface base = eval_support(c, dgrid);
    MaximalityReport out;
    for (std::size_t j = 0; j < dgrid.size(); ++j) {
        const auto anti = dgrid.antipode(j);
        if (!anti || *anti < j) continue;
        for (std::size_t k = 0; k < base.level_count(); ++k) {
            SupportSurface probe = base;
            probe.value(k, j) += probe_step;
            probe.value(k, *anti) += probe_step;
            for (std::size_t kk = k; kk-- > 0;) { // re-nest outward
                probe.value(kk, j) = std::max(probe.value(kk, j), probe.value(k, j));
                probe.value(kk, *anti) = std::max(probe.value(kk, *anti), probe.value(k, *anti));
            }
            FuzzySet enlarged = reconstruct(probe, tol);
            enlarged = translate(enlarged, -gsteiner(enlarged));

            bool contains = true;
            double growth = 0.0;
            for (std::size_t kk = 0; kk < c.level_count(); ++kk) {
                if (excess(c.body(kk), enlarged.body(kk)) > probe_step / 4.0 + tol)
                    contains = false;
                growth = std::max(growth, excess(enlarged.body(kk), c.body(kk)));
            }
            if (!contains || growth < probe_step / 4.0) continue;
            if (membership(enlarged, x, tol).verdict) {
                out.maximal = false;
                out.witnesses.push_back({k, j});
            }
        }
    }
    return out;
}

inline MaximalityReport maximality_probe(const FuzzySet& c, const FrvSample& x,
                                         double probe_step) {
    return maximality_probe(c, x, probe_step, DirectionGrid::standard(c.dim()));
}

struct DegeneracyReport {
    bool consistent = true;
    bool expectation_degenerate = false;
    std::optional<std::size_t> witness_atom;
};

// If EX is a singleton (within tol) every atom must be one too; a fat atom
// then flags an inconsistent input. Vacuously consistent when EX is not
// degenerate.
inline DegeneracyReport degenerate_expectation_check(const FrvSample& x, double tol) {
    DegeneracyReport out;
    const FuzzySet ex = aumann_expectation(x);
    out.expectation_degenerate = ex.support_set().width() <= tol;
    if (!out.expectation_degenerate) return out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x.atom(i).support_set().width() > tol) {
            out.consistent = false;
            out.witness_atom = i;
            return out;
        }
    return out;
}

} // namespace frv
