#include "sokkt/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sokkt {

namespace {

// Curvature coefficient of kink j under one-sided regime `side`, or at an
// inactive point from the sign of the affine value.
double regime_curvature(const KinkTerm& k, int side) {
    return k.coeff * kink_curvature(k.kind, side);
}

bool pattern_realizable(const std::vector<const KinkTerm*>& active,
                        const std::vector<int>& pattern, const Config& cfg,
                        bool* inconclusive) {
    *inconclusive = false;
    const int n = static_cast<int>(active.front()->normal.size());
    LinearSystem sys = LinearSystem::empty(n);
    for (size_t j = 0; j < active.size(); ++j) {
        // s_j <a_j, w> > 0  <=>  -s_j <a_j, w> < 0
        sys.add_ineq(-pattern[j] * active[j]->normal, 0.0, /*strict=*/true);
    }
    SolveOutcome out = strict_margin(sys, 1.0, cfg);
    if (out.status == SolveStatus::Feasible) return true;
    if (out.status == SolveStatus::TolInconclusive ||
        (out.status == SolveStatus::Infeasible && out.margin > cfg.zero_tol)) {
        // Margin in the undecided band: keep the pattern, flag the set.
        *inconclusive = true;
        return true;
    }
    return false;
}

}  // namespace

HessianSet piece_hessians(const FunctionSpec& f, const Vector& x, double tol,
                          const Config& cfg) {
    if (tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
    const std::vector<int> active_idx = f.active_kinks(x, tol);
    const int k = static_cast<int>(active_idx.size());
    if (k > Config::kActiveKinkCap)
        throw std::invalid_argument("too many simultaneously active kinks");

    // Base part: polynomial Hessian plus the settled curvature of every
    // inactive kink.
    Matrix base = f.poly_hessian(x);
    std::vector<bool> is_active(f.kinks().size(), false);
    for (int j : active_idx) is_active[j] = true;
    for (size_t j = 0; j < f.kinks().size(); ++j) {
        if (is_active[j]) continue;
        const KinkTerm& kt = f.kinks()[j];
        const int side = kt.affine_value(x) > 0.0 ? 1 : -1;
        const double c = regime_curvature(kt, side);
        if (c != 0.0) base += c * (kt.normal * kt.normal.transpose());
    }

    HessianSet hs;
    hs.active = active_idx;
    if (k == 0) {
        hs.matrices.push_back(base);
        hs.patterns.push_back({});
        return hs;
    }

    std::vector<const KinkTerm*> act;
    act.reserve(k);
    for (int j : active_idx) act.push_back(&f.kinks()[j]);

    std::vector<int> pattern(k, -1);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        for (int j = 0; j < k; ++j) pattern[j] = (mask >> j) & 1u ? 1 : -1;
        bool inconclusive = false;
        // A single active kink has both sides realizable (its normal is
        // nonzero); the feasibility check only matters for joint patterns.
        if (k > 1 && !pattern_realizable(act, pattern, cfg, &inconclusive)) continue;
        if (inconclusive) hs.exact = false;
        Matrix h = base;
        for (int j = 0; j < k; ++j) {
            const double c = regime_curvature(*act[j], pattern[j]);
            if (c != 0.0) h += c * (act[j]->normal * act[j]->normal.transpose());
        }
        hs.matrices.push_back(std::move(h));
        hs.patterns.push_back(pattern);
    }
    // Every single-kink pattern is realizable (a_j != 0), and realizability
    // of a joint pattern implies its restrictions, so the set is nonempty.
    if (hs.matrices.empty())
        throw std::logic_error("no realizable sign pattern found");
    return hs;
}

SupportValues support_from_set(const HessianSet& hs, const Vector& u) {
    SupportValues sv;
    sv.exact = hs.exact;
    bool first = true;
    for (const Matrix& h : hs.matrices) {
        const double q = u.dot(h * u);
        if (first) {
            sv.smax = sv.smin = q;
            first = false;
        } else {
            sv.smax = std::max(sv.smax, q);
            sv.smin = std::min(sv.smin, q);
        }
    }
    return sv;
}

SupportValues sosd_support(const FunctionSpec& f, const Vector& x, const Vector& u,
                           const Config& cfg) {
    if (u.size() != f.dim()) throw std::invalid_argument("direction dimension mismatch");
    return support_from_set(piece_hessians(f, x, cfg.activity_tol, cfg), u);
}

namespace {

struct Candidate {
    double t;
    double smin;
    double smax;
};

}  // namespace

TaylorReport taylor_sandwich(const FunctionSpec& f, const Vector& a, const Vector& b,
                             int segments, const Config& cfg) {
    if (segments < 2) throw std::invalid_argument("segments must be >= 2");
    if (a.size() != f.dim() || b.size() != f.dim())
        throw std::invalid_argument("segment endpoint dimension mismatch");

    const Vector u = b - a;
    TaylorReport rep;
    rep.delta = f.eval(b) - f.eval(a) - f.grad(a).dot(u);

    // Parameters where some kink hyperplane crosses the segment.
    std::vector<double> params;
    params.push_back(0.0);
    params.push_back(1.0);
    for (const auto& k : f.kinks()) {
        const double slope = k.normal.dot(u);
        if (std::abs(slope) <= cfg.zero_tol) continue;
        const double t = -k.affine_value(a) / slope;
        if (t > 0.0 && t < 1.0) params.push_back(t);
    }
    for (int i = 1; i < segments; ++i)
        params.push_back(static_cast<double>(i) / segments);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [&](double p, double q) { return std::abs(p - q) <= 1e-15; }),
                 params.end());

    auto support_at = [&](double t) {
        const Vector xi = a + t * u;
        return sosd_support(f, xi, u, cfg);
    };

    std::vector<Candidate> cands;
    bool exact = true;
    for (double t : params) {
        const SupportValues sv = support_at(t);
        exact = exact && sv.exact;
        cands.push_back({t, sv.smin, sv.smax});
    }

    // Between consecutive crossing parameters the curvature along the segment
    // is a single quadratic q(t) (poly Hessian entries have degree <= 2 and
    // every kink regime is settled), so its interior extremum lies at the
    // vertex of the parabola fitted through three interior samples.
    std::vector<double> crossings;
    crossings.push_back(0.0);
    for (double t : params)
        if (t > 0.0 && t < 1.0) crossings.push_back(t);
    crossings.push_back(1.0);
    std::sort(crossings.begin(), crossings.end());
    auto quad_value = [&](double t) {
        const Vector xi = a + t * u;
        Matrix h = f.poly_hessian(xi);
        double q = u.dot(h * u);
        for (const auto& k : f.kinks()) {
            const double v = k.affine_value(xi);
            const int side = v > 0.0 ? 1 : -1;
            q += regime_curvature(k, side) * std::pow(k.normal.dot(u), 2);
        }
        return q;
    };
    for (size_t i = 0; i + 1 < crossings.size(); ++i) {
        const double t0 = crossings[i], t1 = crossings[i + 1];
        if (t1 - t0 <= 4e-15) continue;
        const double h = (t1 - t0) / 4.0;
        const double ta = t0 + h, tm = t0 + 2 * h, tb = t0 + 3 * h;
        const double qa = quad_value(ta), qm = quad_value(tm), qb = quad_value(tb);
        const double c2 = (qa - 2 * qm + qb) / (2 * h * h);
        const double c1 = (qb - qa) / (2 * h);  // derivative at tm
        if (std::abs(c2) > cfg.zero_tol) {
            const double tv = tm - c1 / (2 * c2);
            if (tv > t0 && tv < t1) {
                const double qv = quad_value(tv);
                cands.push_back({tv, qv, qv});
            }
        }
    }

    bool first = true;
    for (const auto& c : cands) {
        if (first || c.smin < 2.0 * rep.lower) {
            rep.lower = 0.5 * c.smin;
            rep.witness_lower = c.t;
        }
        if (first || c.smax > 2.0 * rep.upper) {
            rep.upper = 0.5 * c.smax;
            rep.witness_upper = c.t;
        }
        first = false;
    }
    const double slack = cfg.sandwich_rel_tol * (1.0 + std::abs(rep.delta));
    rep.holds = (rep.lower <= rep.delta + slack) && (rep.delta <= rep.upper + slack);
    return rep;
}

}  // namespace sokkt
