#include "sokkt/cone_geometry.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace sokkt {

namespace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;

Rat rat_from_double(double d) {
    if (d == 0.0) return Rat(0);
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite cone data");
    int exp = 0;
    const double m = std::frexp(d, &exp);
    const auto mantissa = static_cast<long long>(std::ldexp(m, 53));
    Rat r(mantissa);
    const int e2 = exp - 53;
    if (e2 > 0)
        r *= Rat(Int(1) << e2);
    else if (e2 < 0)
        r /= Rat(Int(1) << (-e2));
    return r;
}

RatVec rat_vec(const Vector& v) {
    RatVec out(v.size());
    for (int i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Scales to the unique coprime integer vector with the same orientation.
void canonicalize(RatVec& v) {
    Int l = 1;
    for (const Rat& r : v) {
        const Int d = denominator(r);
        l = l / gcd(l, d) * d;
    }
    Int g = 0;
    for (Rat& r : v) {
        r *= Rat(l);
        g = gcd(g, numerator(r));
    }
    if (g > 1)
        for (Rat& r : v) r /= Rat(g);
}

struct Generator {
    RatVec coords;
    std::vector<int> tight;  // sorted processed-inequality indices with <c, r> = 0
};

bool tight_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> tight_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Combinatorial adjacency: r1, r2 are adjacent iff no third ray is tight on
// every constraint both of them are tight on.
bool adjacent(const std::vector<Generator>& rays, size_t i1, size_t i2) {
    const auto common = tight_intersection(rays[i1].tight, rays[i2].tight);
    for (size_t k = 0; k < rays.size(); ++k) {
        if (k == i1 || k == i2) continue;
        if (tight_subset(common, rays[k].tight)) return false;
    }
    return true;
}

struct DDState {
    std::vector<RatVec> lineality;
    std::vector<Generator> rays;
};

void process_constraint(DDState& st, const RatVec& c, bool is_eq, int ineq_index) {
    // If some lineality vector leaves the hyperplane, pivot on it: project
    // everything else onto <c, .> = 0 along that vector. Previously processed
    // constraints all vanish on the lineality space, so their values are
    // untouched.
    int pivot = -1;
    for (size_t i = 0; i < st.lineality.size(); ++i) {
        if (dot(c, st.lineality[i]) != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    }
    if (pivot >= 0) {
        RatVec l0 = st.lineality[pivot];
        const Rat d0 = dot(c, l0);
        st.lineality.erase(st.lineality.begin() + pivot);
        for (RatVec& l : st.lineality) {
            const Rat d = dot(c, l);
            if (d != 0) {
                const Rat f = d / d0;
                for (size_t i = 0; i < l.size(); ++i) l[i] -= f * l0[i];
                canonicalize(l);
            }
        }
        for (Generator& g : st.rays) {
            const Rat d = dot(c, g.coords);
            if (d != 0) {
                const Rat f = d / d0;
                for (size_t i = 0; i < g.coords.size(); ++i) g.coords[i] -= f * l0[i];
                canonicalize(g.coords);
            }
            if (!is_eq) {
                g.tight.push_back(ineq_index);  // projected onto the hyperplane
            }
        }
        if (!is_eq) {
            Generator extra;
            extra.coords = std::move(l0);
            if (d0 > 0)
                for (Rat& r : extra.coords) r = -r;
            canonicalize(extra.coords);
            st.rays.push_back(std::move(extra));  // strictly inside, not tight
        }
        return;
    }

    // Lineality is entirely inside the hyperplane: split the rays.
    std::vector<size_t> pos, neg;
    std::vector<Rat> vals(st.rays.size());
    for (size_t i = 0; i < st.rays.size(); ++i) {
        vals[i] = dot(c, st.rays[i].coords);
        if (vals[i] > 0) pos.push_back(i);
        else if (vals[i] < 0) neg.push_back(i);
    }
    if (pos.empty()) {
        if (!is_eq) {
            for (size_t i = 0; i < st.rays.size(); ++i)
                if (vals[i] == 0) st.rays[i].tight.push_back(ineq_index);
        }
        if (is_eq) {
            std::vector<Generator> kept;
            for (size_t i = 0; i < st.rays.size(); ++i)
                if (vals[i] == 0) kept.push_back(std::move(st.rays[i]));
            st.rays = std::move(kept);
        }
        return;
    }

    std::vector<Generator> next;
    for (size_t i = 0; i < st.rays.size(); ++i) {
        if (vals[i] < 0 && !is_eq) next.push_back(st.rays[i]);
        if (vals[i] == 0) {
            Generator g = st.rays[i];
            if (!is_eq) g.tight.push_back(ineq_index);
            next.push_back(std::move(g));
        }
    }
    for (size_t ip : pos) {
        for (size_t in : neg) {
            if (!adjacent(st.rays, ip, in)) continue;
            Generator combo;
            combo.coords.resize(c.size());
            // vals[ip] * r_neg - vals[in] * r_pos: positive combination on
            // the hyperplane.
            for (size_t k = 0; k < c.size(); ++k)
                combo.coords[k] =
                    vals[ip] * st.rays[in].coords[k] - vals[in] * st.rays[ip].coords[k];
            canonicalize(combo.coords);
            combo.tight = tight_intersection(st.rays[ip].tight, st.rays[in].tight);
            if (!is_eq) {
                combo.tight.push_back(ineq_index);
                std::sort(combo.tight.begin(), combo.tight.end());
            }
            next.push_back(std::move(combo));
        }
    }
    st.rays = std::move(next);
}

Vector to_unit_vector(const RatVec& v) {
    Vector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = static_cast<double>(v[i]);
    const double n = out.norm();
    return n > 0.0 ? Vector(out / n) : out;
}

}  // namespace

PolyhedralCone::PolyhedralCone(int dim, std::vector<Vector> ineqs, std::vector<Vector> eqs)
    : dim_(dim), ineqs_(std::move(ineqs)), eqs_(std::move(eqs)) {
    if (dim <= 0) throw std::invalid_argument("cone dimension must be positive");
    for (const auto& c : ineqs_)
        if (c.size() != dim) throw std::invalid_argument("cone inequality dimension mismatch");
    for (const auto& c : eqs_)
        if (c.size() != dim) throw std::invalid_argument("cone equality dimension mismatch");
}

bool PolyhedralCone::contains(const Vector& w, double tol) const {
    for (const auto& c : ineqs_)
        if (c.dot(w) > tol * (1.0 + c.norm() * w.norm())) return false;
    for (const auto& c : eqs_)
        if (std::abs(c.dot(w)) > tol * (1.0 + c.norm() * w.norm())) return false;
    return true;
}

const RayDecomposition& PolyhedralCone::rays() const {
    if (rays_) return *rays_;
    if (dim_ > Config::kRayDimCap)
        throw std::invalid_argument("cone dimension exceeds the double-description cap");

    DDState st;
    for (int i = 0; i < dim_; ++i) {
        RatVec e(dim_, Rat(0));
        e[i] = 1;
        st.lineality.push_back(std::move(e));
    }
    for (const auto& c : eqs_) {
        RatVec rc = rat_vec(c);
        bool all_zero = true;
        for (const Rat& r : rc) all_zero = all_zero && r == 0;
        if (!all_zero) process_constraint(st, rc, /*is_eq=*/true, -1);
    }
    int idx = 0;
    for (const auto& c : ineqs_) {
        RatVec rc = rat_vec(c);
        bool all_zero = true;
        for (const Rat& r : rc) all_zero = all_zero && r == 0;
        if (!all_zero) process_constraint(st, rc, /*is_eq=*/false, idx++);
    }

    RayDecomposition out;
    std::vector<RatVec> seen;
    for (const auto& g : st.rays) {
        bool zero = true;
        for (const Rat& r : g.coords) zero = zero && r == 0;
        if (zero) continue;
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == g.coords;
        if (dup) continue;
        seen.push_back(g.coords);
        out.rays.push_back(to_unit_vector(g.coords));
    }
    for (const auto& l : st.lineality) out.lineality.push_back(to_unit_vector(l));
    rays_ = std::move(out);
    return *rays_;
}

PolyhedralCone PolyhedralCone::with_extra_ineq(const Vector& c) const {
    std::vector<Vector> in = ineqs_;
    in.push_back(c);
    return PolyhedralCone(dim_, std::move(in), eqs_);
}

const char* to_string(Positivity p) {
    switch (p) {
        case Positivity::Positive: return "POSITIVE";
        case Positivity::NotPositive: return "NOT_POSITIVE";
        case Positivity::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

PositivityResult cone_positivity(const Vector& c, const PolyhedralCone& cone, bool strict,
                                 const Config& cfg) {
    if (!cone.has_rays()) cone.rays();
    const RayDecomposition& rd = cone.rays();
    PositivityResult res;
    const double cnorm = c.norm();

    if (strict && !rd.lineality.empty()) {
        // +/- v both belong to the cone, so <c, .> cannot be strictly
        // positive on all of C \ {0}.
        const Vector& v = rd.lineality.front();
        res.status = Positivity::NotPositive;
        res.witness = (c.dot(v) <= 0.0) ? v : Vector(-v);
        return res;
    }
    if (!strict) {
        for (const Vector& v : rd.lineality) {
            const double d = c.dot(v);
            if (std::abs(d) > cfg.strict_tol * (1.0 + cnorm)) {
                res.status = Positivity::NotPositive;
                res.witness = (d < 0.0) ? v : Vector(-v);
                return res;
            }
        }
    }

    bool first = true;
    bool gray = false;
    for (const Vector& r : rd.rays) {
        const double d = c.dot(r);
        if (first || d < res.min_ray_value) res.min_ray_value = d;
        first = false;
        if (strict) {
            if (d <= cfg.zero_tol) {
                res.status = Positivity::NotPositive;
                res.witness = r;
                return res;
            }
            if (d <= cfg.strict_tol * (1.0 + cnorm)) gray = true;
        } else {
            if (d < -cfg.strict_tol * (1.0 + cnorm)) {
                res.status = Positivity::NotPositive;
                res.witness = r;
                return res;
            }
        }
    }
    res.status = gray ? Positivity::Inconclusive : Positivity::Positive;
    return res;
}

}  // namespace sokkt
