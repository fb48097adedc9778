#include "sokkt/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sokkt/feasibility.hpp"

namespace sokkt {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::Vacuous: return "VACUOUS";
    }
    return "?";
}

namespace {

// Throws with the first violated defining inequality if u is not critical.
void require_critical(const ProblemSpec& p, const Vector& x, const Vector& u,
                      const Config& cfg) {
    bool has_equality = false;
    for (int l = 0; l < p.num_objectives(); ++l) {
        const double d = p.objectives[l].grad(x).dot(u);
        if (d > cfg.activity_tol) {
            std::ostringstream os;
            os << "direction is not critical: <grad f" << (l + 1) << ", u> = " << d << " > 0";
            throw std::invalid_argument(os.str());
        }
        if (std::abs(d) <= cfg.activity_tol) has_equality = true;
    }
    if (!has_equality)
        throw std::invalid_argument(
            "direction is not critical: <grad f_l, u> = 0 holds for no objective");
    for (int i = 0; i < p.num_constraints(); ++i) {
        if (std::abs(p.constraints[i].eval(x)) > cfg.activity_tol) continue;
        const double d = p.constraints[i].grad(x).dot(u);
        if (d > cfg.activity_tol) {
            std::ostringstream os;
            os << "direction is not critical: <grad g" << (i + 1) << ", u> = " << d << " > 0";
            throw std::invalid_argument(os.str());
        }
    }
}

}  // namespace

ConditionReport check_ascq(const ProblemSpec& p, const Vector& x, const Vector& u,
                           const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    ConditionReport rep;
    rep.check = "ascq";

    const ActiveSets as = active_sets(p, x, u, cfg);
    if (as.active_dir.empty()) {
        rep.verdict = Verdict::Vacuous;
        rep.label = "VACUOUS";
        rep.caveats.push_back("I(x;u) is empty: the certificate system is vacuous and ASCQ holds");
        return rep;
    }

    LinearSystem sys = LinearSystem::empty(p.n);
    bool exact = true;
    DirectionRecord rec;
    rec.direction = u;
    for (int i : as.active_dir) {
        const SupportValues sv = sosd_support(p.constraints[i], x, u, cfg);
        exact = exact && sv.exact;
        sys.add_ineq(p.constraints[i].grad(x), -sv.smax, /*strict=*/true);
        std::ostringstream os;
        os << "g" << (i + 1) << ": <zeta*, u> = " << sv.smax;
        rec.notes.push_back(os.str());
    }
    if (!exact)
        rep.caveats.push_back("support values are conservative bounds (undecided sign pattern)");

    const SolveOutcome out = strict_margin(sys, cfg.box_radius, cfg);
    rep.margin = out.margin;
    rec.margin = out.margin;
    if (out.status == SolveStatus::Feasible) {
        rep.verdict = Verdict::Pass;
        rep.label = "PASS";
        rep.witness = out.witness;
        rec.passed = true;
    } else if (out.status == SolveStatus::Infeasible) {
        rep.verdict = Verdict::Fail;
        rep.label = "FAIL";
        rec.reason = "strict system has no positive margin";
        rep.caveats.push_back(
            "FAIL means the sufficient certificate does not apply; ASCQ itself is not refuted");
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.label = "INCONCLUSIVE";
        rec.reason = out.note;
    }
    rep.records.push_back(std::move(rec));
    return rep;
}

ConditionReport check_first_order(const ProblemSpec& p, const Vector& x, const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    ConditionReport rep;
    rep.check = "first_order";

    LinearSystem sys = LinearSystem::empty(p.n);
    for (const auto& f : p.objectives) sys.add_ineq(f.grad(x), 0.0, /*strict=*/true);
    for (int i = 0; i < p.num_constraints(); ++i)
        if (std::abs(p.constraints[i].eval(x)) <= cfg.activity_tol)
            sys.add_ineq(p.constraints[i].grad(x), 0.0);

    const SolveOutcome out = strict_margin(sys, cfg.box_radius, cfg);
    rep.margin = out.margin;
    if (out.status == SolveStatus::Feasible) {
        rep.verdict = Verdict::Fail;
        rep.label = "FAIL";
        rep.witness = out.witness;
        DirectionRecord rec;
        rec.direction = *out.witness;
        rec.reason = "descent direction solves the first-order system";
        rec.margin = out.margin;
        rep.records.push_back(std::move(rec));
    } else if (out.status == SolveStatus::Infeasible) {
        rep.verdict = Verdict::Pass;
        rep.label = "PASS";
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.label = "INCONCLUSIVE";
        rep.caveats.push_back(out.note);
    }
    return rep;
}

namespace {

// Shared multiplier-search core. For the necessary variant the LP is a pure
// feasibility problem over (lambda, mu) with max-support curvature >= 0; for
// the sufficient variant it maximizes the shared margin s with lambda_l >= s,
// min-support curvature >= s and <sum lambda grad f, r> >= s on every
// extreme ray of C(x,u) cap u-perp.
struct MultiplierLP {
    SolveOutcome outcome;
    MultiplierPair pair;
    double curvature = 0.0;
    bool supports_exact = true;
};

MultiplierLP solve_multiplier_lp(const ProblemSpec& p, const Vector& x, const Vector& u,
                                 const ActiveSets& as, bool sufficient,
                                 const std::vector<Vector>& extra_rays, const Config& cfg) {
    const int m = p.num_objectives();
    const int np = p.num_constraints();
    const int nv = sufficient ? m + np + 1 : m + np;  // lambda, mu, [s]
    MultiplierLP res;

    std::vector<double> obj_support(m, 0.0), con_support(np, 0.0);
    for (int l = 0; l < m; ++l) {
        const bool needed = sufficient || as.obj_dir.count(l);
        if (!needed) continue;
        const SupportValues sv = sosd_support(p.objectives[l], x, u, cfg);
        obj_support[l] = sufficient ? sv.smin : sv.smax;
        res.supports_exact = res.supports_exact && sv.exact;
    }
    for (int i : as.active_dir) {
        const SupportValues sv = sosd_support(p.constraints[i], x, u, cfg);
        con_support[i] = sufficient ? sv.smin : sv.smax;
        res.supports_exact = res.supports_exact && sv.exact;
    }

    LinearSystem sys = LinearSystem::empty(nv);
    for (int j = 0; j < m + np; ++j) sys.lower_bounds[j] = 0.0;

    Vector ones = Vector::Zero(nv);
    ones.head(m).setOnes();
    sys.add_eq(ones, 1.0);

    std::vector<Vector> obj_grads(m), con_grads(np);
    for (int l = 0; l < m; ++l) obj_grads[l] = p.objectives[l].grad(x);
    for (int i = 0; i < np; ++i) con_grads[i] = p.constraints[i].grad(x);
    for (int d = 0; d < p.n; ++d) {
        Vector row = Vector::Zero(nv);
        for (int l = 0; l < m; ++l) row[l] = obj_grads[l][d];
        for (int i = 0; i < np; ++i) row[m + i] = con_grads[i][d];
        sys.add_eq(row, 0.0);
    }

    // Support-set zeros.
    for (int l = 0; l < m; ++l) {
        if (!sufficient && !as.obj_dir.count(l)) {
            Vector row = Vector::Zero(nv);
            row[l] = 1.0;
            sys.add_eq(row, 0.0);
        }
    }
    for (int i = 0; i < np; ++i) {
        if (!as.active_dir.count(i)) {
            Vector row = Vector::Zero(nv);
            row[m + i] = 1.0;
            sys.add_eq(row, 0.0);
        }
    }

    // Curvature row: sum lambda_l supp_l + sum mu_i supp_i >= 0 (or >= s).
    Vector curv = Vector::Zero(nv);
    for (int l = 0; l < m; ++l) curv[l] = -obj_support[l];
    for (int i = 0; i < np; ++i) curv[m + i] = -con_support[i];
    if (sufficient) curv[nv - 1] = 1.0;
    sys.add_ineq(curv, 0.0);

    if (sufficient) {
        for (int l = 0; l < m; ++l) {
            Vector row = Vector::Zero(nv);  // s - lambda_l <= 0
            row[l] = -1.0;
            row[nv - 1] = 1.0;
            sys.add_ineq(row, 0.0);
        }
        for (const Vector& r : extra_rays) {
            Vector row = Vector::Zero(nv);  // s - sum lambda_l <grad f_l, r> <= 0
            for (int l = 0; l < m; ++l) row[l] = -obj_grads[l].dot(r);
            row[nv - 1] = 1.0;
            sys.add_ineq(row, 0.0);
        }
    }

    Vector objective = Vector::Zero(nv);
    if (sufficient) objective[nv - 1] = 1.0;
    res.outcome = solve_lp(objective, sys, sufficient ? Sense::Maximize : Sense::Minimize, cfg);
    if (res.outcome.status != SolveStatus::Feasible) return res;

    const Vector& w = *res.outcome.witness;
    res.pair.lambda = w.head(m);
    res.pair.mu = w.segment(m, np);
    for (int l = 0; l < m; ++l)
        if (sufficient || as.obj_dir.count(l)) res.pair.lambda_support.push_back(l);
    for (int i : as.active_dir) res.pair.mu_support.push_back(i);
    Vector stat = Vector::Zero(p.n);
    for (int l = 0; l < m; ++l) stat += res.pair.lambda[l] * obj_grads[l];
    for (int i = 0; i < np; ++i) stat += res.pair.mu[i] * con_grads[i];
    res.pair.stationarity_residual = stat.norm();
    res.curvature = 0.0;
    for (int l = 0; l < m; ++l) res.curvature += res.pair.lambda[l] * obj_support[l];
    for (int i = 0; i < np; ++i) res.curvature += res.pair.mu[i] * con_support[i];
    return res;
}

PolyhedralCone direction_cone(const ProblemSpec& p, const Vector& x, const Vector& u,
                              const ActiveSets& as) {
    // C(x, u) cap u-perp: <grad g_i, w> <= 0 over I(x; u), <u, w> = 0.
    std::vector<Vector> ineqs;
    for (int i : as.active_dir) ineqs.push_back(p.constraints[i].grad(x));
    return PolyhedralCone(p.n, std::move(ineqs), {u});
}

}  // namespace

ConditionReport necessary_multipliers(const ProblemSpec& p, const Vector& x,
                                      const Vector& u_bar, const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    require_critical(p, x, u_bar, cfg);

    ConditionReport rep;
    rep.check = "necessary";
    const ActiveSets as = active_sets(p, x, u_bar, cfg);
    MultiplierLP lp = solve_multiplier_lp(p, x, u_bar, as, /*sufficient=*/false, {}, cfg);
    if (!lp.supports_exact)
        rep.caveats.push_back("support values are conservative bounds (undecided sign pattern)");

    DirectionRecord rec;
    rec.direction = u_bar;
    rec.curvature = lp.curvature;
    if (lp.outcome.status == SolveStatus::Infeasible) {
        rep.verdict = Verdict::Fail;
        rep.label = "FAIL";
        rec.reason = "no weak second-order KKT multipliers exist for this direction";
        rep.records.push_back(std::move(rec));
        rep.caveats.push_back(
            "under ASCQ at this direction, FAIL refutes local weak efficiency of the point");
        return rep;
    }
    if (lp.outcome.status != SolveStatus::Feasible) {
        rep.verdict = Verdict::Inconclusive;
        rep.label = "INCONCLUSIVE";
        rec.reason = lp.outcome.note;
        rep.records.push_back(std::move(rec));
        return rep;
    }

    // The non-strict positivity on C(x,u) cap u-perp must follow from
    // stationarity and the sign structure; check it as a consistency gate.
    const PolyhedralCone w_cone = direction_cone(p, x, u_bar, as);
    Vector comb = Vector::Zero(p.n);
    for (int l = 0; l < p.num_objectives(); ++l)
        comb += lp.pair.lambda[l] * p.objectives[l].grad(x);
    const PositivityResult pos = cone_positivity(comb, w_cone, /*strict=*/false, cfg);

    rec.multipliers = lp.pair;
    rec.passed = true;
    if (pos.status == Positivity::NotPositive) {
        rep.verdict = Verdict::Inconclusive;
        rep.label = "INCONCLUSIVE";
        rec.passed = false;
        rec.reason = "internal inconsistency: condition (sum lambda <grad f, w> >= 0) "
                     "failed on the critical cone although multipliers were found";
        rep.records.push_back(std::move(rec));
        return rep;
    }
    rep.verdict = Verdict::Pass;
    rep.label = "PASS";
    rec.notes.push_back("cone positivity (non-strict) verified on C(x,u) cap u-perp");
    rep.records.push_back(std::move(rec));
    return rep;
}

ConditionReport necessary_scan(const ProblemSpec& p, const Vector& x, int samples,
                               std::uint64_t seed, const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    ConditionReport rep;
    rep.check = "necessary_scan";
    rep.seed = seed;

    const CriticalCone cone = critical_cone(p, x, cfg);
    const std::vector<Vector> dirs = sample_critical_directions(cone, samples, seed, cfg);
    rep.samples = static_cast<int>(dirs.size());
    if (dirs.empty()) {
        rep.verdict = Verdict::Vacuous;
        rep.label = "VACUOUS";
        rep.caveats.push_back("C(x) \\ {0} is empty: no nonzero critical direction to test");
        return rep;
    }

    bool any_inconclusive = false;
    for (const Vector& u : dirs) {
        ConditionReport one = necessary_multipliers(p, x, u, cfg);
        for (auto& r : one.records) rep.records.push_back(std::move(r));
        for (auto& cv : one.caveats)
            if (std::find(rep.caveats.begin(), rep.caveats.end(), cv) == rep.caveats.end())
                rep.caveats.push_back(cv);
        if (one.verdict == Verdict::Fail) {
            rep.verdict = Verdict::Fail;
            rep.label = "FAIL";
            rep.witness = u;
            return rep;
        }
        if (one.verdict == Verdict::Inconclusive) any_inconclusive = true;
    }
    rep.verdict = any_inconclusive ? Verdict::Inconclusive : Verdict::Pass;
    rep.label = to_string(rep.verdict);
    if (rep.verdict == Verdict::Pass)
        rep.caveats.push_back("sampling-based: multipliers found for every sampled direction");
    return rep;
}

ConditionReport certify_sufficient(const ProblemSpec& p, const Vector& x, int samples,
                                   std::uint64_t seed, const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    ConditionReport rep;
    rep.check = "certify";
    rep.seed = seed;

    const ConditionReport fo = check_first_order(p, x, cfg);
    if (fo.verdict == Verdict::Fail) {
        rep.verdict = Verdict::Fail;
        rep.label = "NOT_CERTIFIED";
        rep.witness = fo.witness;
        DirectionRecord rec;
        rec.direction = *fo.witness;
        rec.reason = "first-order necessary condition fails: descent direction exists";
        rep.records.push_back(std::move(rec));
        return rep;
    }
    if (fo.verdict == Verdict::Inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        rep.label = "INCONCLUSIVE";
        rep.caveats.push_back("first-order pre-check inconclusive");
        return rep;
    }

    const CriticalCone cone = critical_cone(p, x, cfg);
    const std::vector<Vector> dirs = sample_critical_directions(cone, samples, seed, cfg);
    rep.samples = static_cast<int>(dirs.size());
    if (dirs.empty()) {
        rep.verdict = Verdict::Vacuous;
        rep.label = "VACUOUS";
        rep.caveats.push_back(
            "C(x) \\ {0} is empty: the point is certified outright (with the first-order check)");
        return rep;
    }

    bool any_inconclusive = false;
    for (const Vector& u : dirs) {
        const ActiveSets as = active_sets(p, x, u, cfg);
        DirectionRecord rec;
        rec.direction = u;

        const PolyhedralCone w_cone = direction_cone(p, x, u, as);
        const RayDecomposition& rd = w_cone.rays();
        if (!rd.lineality.empty()) {
            rec.reason = "strict cone positivity impossible: C(x,u) cap u-perp has a line";
            rep.records.push_back(std::move(rec));
            rep.verdict = Verdict::Fail;
            rep.label = "NOT_CERTIFIED";
            rep.witness = u;
            return rep;
        }

        MultiplierLP lp = solve_multiplier_lp(p, x, u, as, /*sufficient=*/true, rd.rays, cfg);
        if (!lp.supports_exact) {
            const std::string cv = "support values are conservative bounds (undecided sign pattern)";
            if (std::find(rep.caveats.begin(), rep.caveats.end(), cv) == rep.caveats.end())
                rep.caveats.push_back(cv);
        }
        if (lp.outcome.status == SolveStatus::TolInconclusive ||
            lp.outcome.status == SolveStatus::Unbounded) {
            any_inconclusive = true;
            rec.reason = lp.outcome.note.empty() ? "multiplier search inconclusive" : lp.outcome.note;
            rep.records.push_back(std::move(rec));
            continue;
        }
        const double margin =
            (lp.outcome.status == SolveStatus::Feasible) ? lp.outcome.objective : 0.0;
        rec.margin = margin;
        rec.curvature = lp.curvature;
        if (lp.outcome.status != SolveStatus::Feasible || margin <= cfg.strict_tol) {
            rec.reason = "no strong second-order KKT multipliers with positive margin";
            rep.records.push_back(std::move(rec));
            rep.verdict = Verdict::Fail;
            rep.label = "NOT_CERTIFIED";
            rep.witness = u;
            return rep;
        }

        Vector comb = Vector::Zero(p.n);
        for (int l = 0; l < p.num_objectives(); ++l)
            comb += lp.pair.lambda[l] * p.objectives[l].grad(x);
        const PositivityResult pos = cone_positivity(comb, w_cone, /*strict=*/true, cfg);
        if (pos.status == Positivity::NotPositive) {
            any_inconclusive = true;
            rec.reason = "internal inconsistency: strict cone positivity failed after the "
                         "ray constraints were satisfied";
            rep.records.push_back(std::move(rec));
            continue;
        }
        rec.multipliers = lp.pair;
        rec.passed = true;
        rep.records.push_back(std::move(rec));
    }

    if (any_inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        rep.label = "INCONCLUSIVE";
        return rep;
    }
    rep.verdict = Verdict::Pass;
    std::ostringstream os;
    os << "CERTIFIED(samples=" << rep.samples << ")";
    rep.label = os.str();
    rep.caveats.push_back(
        "sampling-based certificate: conditions verified on the sampled directions only, "
        "not a proof over all of C(x) \\ {0}");
    return rep;
}

}  // namespace sokkt
