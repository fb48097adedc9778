#include "sokkt/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "sokkt/rng.hpp"

namespace sokkt {

const char* to_string(GridVerdict v) {
    return v == GridVerdict::LocallyEfficientAtScale ? "LOCALLY_EFFICIENT_AT_SCALE" : "DOMINATED";
}

const char* to_string(TangentVerdict v) {
    return v == TangentVerdict::MemberAtScale ? "MEMBER_AT_SCALE" : "REJECTED";
}

GridResult grid_local_efficiency(const ProblemSpec& p, const Vector& x,
                                 const GridOracleConfig& cfg) {
    if (!(cfg.radius > 0.0)) throw std::invalid_argument("grid radius must be positive");
    if (cfg.resolution < 3 || cfg.resolution % 2 == 0)
        throw std::invalid_argument("grid resolution must be an odd integer >= 3");
    p.require_feasible(x, cfg.feas_tol);

    double total = 1.0;
    for (int i = 0; i < p.n; ++i) total *= cfg.resolution;
    if (total > Config::kGridGuard) throw std::invalid_argument("grid size guard exceeded");

    std::vector<double> offsets(cfg.resolution);
    for (int i = 0; i < cfg.resolution; ++i)
        offsets[i] = -cfg.radius + 2.0 * cfg.radius * i / (cfg.resolution - 1);

    Vector fx(p.num_objectives());
    for (int l = 0; l < p.num_objectives(); ++l) fx[l] = p.objectives[l].eval(x);

    GridResult res;
    std::vector<int> idx(p.n, 0);
    Vector y(p.n);
    const long count = static_cast<long>(total);
    for (long k = 0; k < count; ++k) {
        long rem = k;
        for (int d = p.n - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % cfg.resolution);
            rem /= cfg.resolution;
        }
        for (int d = 0; d < p.n; ++d) y[d] = x[d] + offsets[idx[d]];
        ++res.points_scanned;

        bool feasible = true;
        for (int i = 0; i < p.num_constraints() && feasible; ++i)
            feasible = p.constraints[i].eval(y) <= cfg.feas_tol;
        if (!feasible) continue;

        bool dominates;
        if (cfg.mode == GridMode::Weak) {
            dominates = true;
            for (int l = 0; l < p.num_objectives() && dominates; ++l)
                dominates = p.objectives[l].eval(y) <= fx[l] - cfg.dom_tol;
        } else {
            dominates = true;
            bool strict = false;
            for (int l = 0; l < p.num_objectives() && dominates; ++l) {
                const double fy = p.objectives[l].eval(y);
                dominates = fy <= fx[l] + cfg.dom_tol;
                strict = strict || fy <= fx[l] - cfg.dom_tol;
            }
            dominates = dominates && strict;
        }
        if (dominates) {
            res.verdict = GridVerdict::Dominated;
            res.witness = y;
            return res;
        }
    }
    return res;
}

TangentProbeSchedule TangentProbeSchedule::standard() {
    TangentProbeSchedule s;
    for (int k = 3; k <= 20; ++k) s.t_values.push_back(std::ldexp(1.0, -k));
    return s;
}

TangentVerdict tangent2_membership(const ProblemSpec& p, const Vector& x, const Vector& u,
                                   const Vector& v, const TangentProbeSchedule& sched,
                                   double feas_tol) {
    p.require_feasible(x, feas_tol);
    if (sched.t_values.empty()) throw std::invalid_argument("empty probe schedule");

    const int n = p.n;
    // Deterministic probe directions: origin, axis steps, diagonal steps.
    std::vector<Vector> dirs;
    dirs.push_back(Vector::Zero(n));
    for (int i = 0; i < n; ++i) {
        Vector e = Vector::Zero(n);
        e[i] = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int si : {-1, 1}) {
                for (int sj : {-1, 1}) {
                    Vector e = Vector::Zero(n);
                    e[i] = si * 0.70710678118654752;
                    e[j] = sj * 0.70710678118654752;
                    dirs.push_back(e);
                }
            }
        }
    }

    Vector y(n), vp(n);
    for (double t : sched.t_values) {
        const double radius = sched.radius_scale * std::sqrt(t);
        bool found = false;
        for (int shell = 0; shell <= sched.magnitudes && !found; ++shell) {
            const double mag = radius * shell / std::max(1, sched.magnitudes);
            for (const Vector& d : dirs) {
                if (shell > 0 && d.isZero()) continue;
                vp = v + mag * d;
                y = x + t * u + 0.5 * t * t * vp;
                bool feasible = true;
                for (int i = 0; i < p.num_constraints() && feasible; ++i)
                    feasible = p.constraints[i].eval(y) <= feas_tol;
                if (feasible) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) return TangentVerdict::Rejected;
    }
    return TangentVerdict::MemberAtScale;
}

double fd_validate(const FunctionSpec& f, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    DeterministicRng rng(seed);
    const double h = 1e-6;
    double worst = 0.0;
    const int n = f.dim();
    Vector x(n), xp(n), xm(n), fd(n);
    for (int trial = 0; trial < trials; ++trial) {
        // Resample until clear of every kink surface by a margin that keeps
        // the central difference inside one smooth piece.
        bool ok = false;
        for (int attempt = 0; attempt < 256 && !ok; ++attempt) {
            for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
            ok = true;
            for (const auto& k : f.kinks())
                ok = ok && std::abs(k.affine_value(x)) > 1e-4 * (1.0 + k.normal.norm());
        }
        if (!ok) continue;
        for (int i = 0; i < n; ++i) {
            xp = x;
            xm = x;
            xp[i] += h;
            xm[i] -= h;
            fd[i] = (f.eval(xp) - f.eval(xm)) / (2.0 * h);
        }
        const Vector g = f.grad(x);
        const double err = (fd - g).norm() / (1.0 + g.norm());
        worst = std::max(worst, err);
    }
    return worst;
}

}  // namespace sokkt
