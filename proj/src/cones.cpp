#include "sokkt/cones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sokkt/rng.hpp"

namespace sokkt {

bool lex_cmp(const LexPair& a, const LexPair& b, bool strict, double tol) {
    if (tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
    const bool eq_first = std::abs(a.first - b.first) <= tol;
    if (!eq_first) return a.first < b.first;
    return strict ? a.second < b.second : a.second <= b.second;
}

ActiveSets active_sets(const ProblemSpec& p, const Vector& x, const Vector& u,
                       const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    ActiveSets s;
    for (int i = 0; i < p.num_constraints(); ++i) {
        if (std::abs(p.constraints[i].eval(x)) <= cfg.activity_tol) {
            s.active.insert(i);
            if (std::abs(p.constraints[i].grad(x).dot(u)) <= cfg.activity_tol)
                s.active_dir.insert(i);
        }
    }
    for (int l = 0; l < p.num_objectives(); ++l)
        if (std::abs(p.objectives[l].grad(x).dot(u)) <= cfg.activity_tol)
            s.obj_dir.insert(l);
    return s;
}

bool CriticalCone::contains(const Vector& u, double tol) const {
    for (const auto& b : branches)
        if (b.contains(u, tol)) return true;
    return false;
}

CriticalCone critical_cone(const ProblemSpec& p, const Vector& x, const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    std::vector<Vector> obj_grads, con_grads;
    for (const auto& f : p.objectives) obj_grads.push_back(f.grad(x));
    for (int i = 0; i < p.num_constraints(); ++i)
        if (std::abs(p.constraints[i].eval(x)) <= cfg.activity_tol)
            con_grads.push_back(p.constraints[i].grad(x));

    CriticalCone c;
    for (int l = 0; l < p.num_objectives(); ++l) {
        std::vector<Vector> ineqs = obj_grads;
        for (const auto& g : con_grads) ineqs.push_back(g);
        c.branches.emplace_back(p.n, std::move(ineqs), std::vector<Vector>{obj_grads[l]});
    }
    return c;
}

bool membership_L2(const ProblemSpec& p, const Vector& x, const Vector& u, const Vector& v,
                   L2Variant variant, const Config& cfg) {
    p.require_feasible(x, cfg.feas_tol);
    for (int i = 0; i < p.num_constraints(); ++i) {
        if (std::abs(p.constraints[i].eval(x)) > cfg.activity_tol) continue;
        const Vector grad = p.constraints[i].grad(x);
        const SupportValues sv = sosd_support(p.constraints[i], x, u, cfg);
        const double zeta = (variant == L2Variant::Upper) ? sv.smax : sv.smin;
        const LexPair pair{grad.dot(u), grad.dot(v) + zeta};
        if (!lex_cmp(pair, LexPair{0.0, 0.0}, /*strict=*/false, cfg.activity_tol))
            return false;
    }
    return true;
}

namespace {

// Lawson-Hanson NNLS: min ||g - A z||, z >= 0.
Vector nnls(const Matrix& a, const Vector& g) {
    const int n = static_cast<int>(a.cols());
    Vector z = Vector::Zero(n);
    std::vector<bool> passive(n, false);
    const double tol = 1e-12 * (1.0 + g.norm());

    for (int outer = 0; outer < 4 * n + 16; ++outer) {
        const Vector w = a.transpose() * (g - a * z);
        int enter = -1;
        double best = tol;
        for (int j = 0; j < n; ++j) {
            if (!passive[j] && w[j] > best) {
                best = w[j];
                enter = j;
            }
        }
        if (enter < 0) break;
        passive[enter] = true;

        for (int inner = 0; inner < 4 * n + 16; ++inner) {
            std::vector<int> idx;
            for (int j = 0; j < n; ++j)
                if (passive[j]) idx.push_back(j);
            Matrix ap(a.rows(), idx.size());
            for (size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
            const Vector zp = ap.colPivHouseholderQr().solve(g);

            bool all_pos = true;
            for (int k = 0; k < zp.size(); ++k) all_pos = all_pos && zp[k] > tol;
            if (all_pos) {
                z.setZero();
                for (size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[k];
                break;
            }
            double alpha = 1.0;
            for (size_t k = 0; k < idx.size(); ++k) {
                if (zp[k] <= tol) {
                    const double zi = z[idx[k]];
                    if (zi - zp[k] > 0.0) alpha = std::min(alpha, zi / (zi - zp[k]));
                }
            }
            for (size_t k = 0; k < idx.size(); ++k) {
                z[idx[k]] += alpha * (zp[k] - z[idx[k]]);
                if (z[idx[k]] <= tol) {
                    z[idx[k]] = 0.0;
                    passive[idx[k]] = false;
                }
            }
        }
    }
    return z;
}

void push_unique_unit(std::vector<Vector>& out, const Vector& v) {
    const double n = v.norm();
    if (n <= 1e-12) return;
    Vector u = v / n;
    for (const auto& o : out)
        if ((o - u).lpNorm<Eigen::Infinity>() <= 1e-9) return;
    out.push_back(std::move(u));
}

}  // namespace

Vector project_onto_cone(const Vector& g, const std::vector<Vector>& rays,
                         const std::vector<Vector>& lineality) {
    const int n = static_cast<int>(g.size());
    const int cols = static_cast<int>(rays.size() + 2 * lineality.size());
    if (cols == 0) return Vector::Zero(n);
    Matrix a(n, cols);
    int c = 0;
    for (const auto& r : rays) a.col(c++) = r;
    for (const auto& l : lineality) {
        a.col(c++) = l;
        a.col(c++) = -l;
    }
    return a * nnls(a, g);
}

std::vector<Vector> sample_critical_directions(const CriticalCone& c, int count,
                                               std::uint64_t seed, const Config& cfg) {
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");
    std::vector<Vector> out;
    DeterministicRng rng(seed);
    for (const auto& branch : c.branches) {
        const RayDecomposition& rd = branch.rays();
        std::vector<Vector> members;
        for (const auto& r : rd.rays) push_unique_unit(members, r);
        for (const auto& l : rd.lineality) {
            push_unique_unit(members, l);
            push_unique_unit(members, -l);
        }
        // Pairwise midpoints stay in the branch by convexity.
        const size_t base = members.size();
        for (size_t i = 0; i < base; ++i)
            for (size_t j = i + 1; j < base; ++j)
                push_unique_unit(members, members[i] + members[j]);
        // Seeded random unit vectors projected into the branch.
        const int dim = branch.dim();
        int attempts = 0;
        while (static_cast<int>(members.size()) < count && attempts < 8 * count) {
            ++attempts;
            Vector gvec(dim);
            for (int i = 0; i < dim; ++i) gvec[i] = rng.normal();
            const Vector proj = project_onto_cone(gvec, rd.rays, rd.lineality);
            push_unique_unit(members, proj);
        }
        for (const auto& m : members) {
            if (!branch.contains(m, cfg.activity_tol * 10)) continue;  // conversion dust
            push_unique_unit(out, m);
        }
    }
    return out;
}

}  // namespace sokkt
