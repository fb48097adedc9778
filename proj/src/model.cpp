#include "sokkt/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sokkt {

int Monomial::degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
}

double kink_theta(KinkKind kind, double t) {
    switch (kind) {
        case KinkKind::PlusQuad: return t > 0.0 ? t * t : 0.0;
        case KinkKind::SignQuad: return t * std::abs(t);
    }
    return 0.0;
}

double kink_theta_prime(KinkKind kind, double t) {
    switch (kind) {
        case KinkKind::PlusQuad: return t > 0.0 ? 2.0 * t : 0.0;
        case KinkKind::SignQuad: return 2.0 * std::abs(t);
    }
    return 0.0;
}

double kink_curvature(KinkKind kind, int side) {
    if (side > 0) return 2.0;
    return kind == KinkKind::PlusQuad ? 0.0 : -2.0;
}

namespace {

void validate_monomials(int n, const std::vector<Monomial>& poly) {
    for (const auto& m : poly) {
        if (static_cast<int>(m.exponents.size()) != n)
            throw std::invalid_argument("monomial exponent vector length != n");
        if (!std::isfinite(m.coeff))
            throw std::invalid_argument("non-finite monomial coefficient");
        int deg = 0;
        for (int e : m.exponents) {
            if (e < 0) throw std::invalid_argument("negative exponent");
            deg += e;
        }
        if (deg > Config::kPolyDegreeCap)
            throw std::invalid_argument("monomial degree exceeds cap");
    }
}

// Duplicate exponent vectors are summed; exact-zero coefficients dropped.
std::vector<Monomial> merge_monomials(std::vector<Monomial> poly) {
    std::vector<Monomial> out;
    for (auto& m : poly) {
        bool merged = false;
        for (auto& o : out) {
            if (o.exponents == m.exponents) {
                o.coeff += m.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(m));
    }
    std::erase_if(out, [](const Monomial& m) { return m.coeff == 0.0; });
    return out;
}

// Kinks with the same kind and the same hyperplane up to positive scaling
// collapse into one: theta(s*t) = s^2 * theta(t) for s > 0, so the scale
// moves into the coefficient. Avoids artificial sign-pattern blowup.
std::vector<KinkTerm> merge_kinks(std::vector<KinkTerm> kinks) {
    std::vector<KinkTerm> out;
    for (auto& k : kinks) {
        if (!std::isfinite(k.coeff)) throw std::invalid_argument("non-finite kink coefficient");
        const double scale = k.normal.norm();
        if (!(scale > 0.0)) throw std::invalid_argument("kink normal must be nonzero");
        Vector dir = k.normal / scale;
        const double off = k.offset / scale;
        const double coeff = k.coeff * scale * scale;
        bool merged = false;
        for (auto& o : out) {
            if (o.kind != k.kind) continue;
            if ((o.normal - dir).lpNorm<Eigen::Infinity>() <= 1e-12 &&
                std::abs(o.offset - off) <= 1e-12) {
                o.coeff += coeff;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(KinkTerm{coeff, std::move(dir), off, k.kind});
    }
    std::erase_if(out, [](const KinkTerm& k) { return k.coeff == 0.0; });
    return out;
}

}  // namespace

FunctionSpec::FunctionSpec(int n, std::vector<Monomial> poly, std::vector<KinkTerm> kinks)
    : n_(n) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    validate_monomials(n, poly);
    for (const auto& k : kinks) {
        if (k.normal.size() != n)
            throw std::invalid_argument("kink normal length != n");
    }
    poly_ = merge_monomials(std::move(poly));
    kinks_ = merge_kinks(std::move(kinks));
}

void FunctionSpec::check_point(const Vector& x) const {
    if (x.size() != n_) {
        std::ostringstream os;
        os << "dimension mismatch: point has " << x.size() << " coordinates, function expects " << n_;
        throw std::invalid_argument(os.str());
    }
}

double FunctionSpec::eval(const Vector& x) const {
    check_point(x);
    double v = 0.0;
    for (const auto& m : poly_) {
        double t = m.coeff;
        for (int i = 0; i < n_; ++i)
            for (int e = 0; e < m.exponents[i]; ++e) t *= x[i];
        v += t;
    }
    for (const auto& k : kinks_) v += k.coeff * kink_theta(k.kind, k.affine_value(x));
    return v;
}

Vector FunctionSpec::grad(const Vector& x) const {
    check_point(x);
    Vector g = Vector::Zero(n_);
    for (const auto& m : poly_) {
        for (int d = 0; d < n_; ++d) {
            if (m.exponents[d] == 0) continue;
            double t = m.coeff * m.exponents[d];
            for (int i = 0; i < n_; ++i) {
                const int e = (i == d) ? m.exponents[i] - 1 : m.exponents[i];
                for (int r = 0; r < e; ++r) t *= x[i];
            }
            g[d] += t;
        }
    }
    for (const auto& k : kinks_)
        g += (k.coeff * kink_theta_prime(k.kind, k.affine_value(x))) * k.normal;
    return g;
}

Matrix FunctionSpec::poly_hessian(const Vector& x) const {
    check_point(x);
    Matrix h = Matrix::Zero(n_, n_);
    for (const auto& m : poly_) {
        for (int d1 = 0; d1 < n_; ++d1) {
            for (int d2 = d1; d2 < n_; ++d2) {
                int e1 = m.exponents[d1];
                int e2 = m.exponents[d2];
                double factor;
                if (d1 == d2) {
                    if (e1 < 2) continue;
                    factor = static_cast<double>(e1) * (e1 - 1);
                } else {
                    if (e1 < 1 || e2 < 1) continue;
                    factor = static_cast<double>(e1) * e2;
                }
                double t = m.coeff * factor;
                for (int i = 0; i < n_; ++i) {
                    int e = m.exponents[i];
                    if (i == d1) e -= 1;
                    if (i == d2) e -= 1;
                    for (int r = 0; r < e; ++r) t *= x[i];
                }
                h(d1, d2) += t;
                if (d1 != d2) h(d2, d1) += t;
            }
        }
    }
    return h;
}

std::vector<int> FunctionSpec::active_kinks(const Vector& x, double tol) const {
    check_point(x);
    if (tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
    std::vector<int> idx;
    for (int j = 0; j < static_cast<int>(kinks_.size()); ++j)
        if (std::abs(kinks_[j].affine_value(x)) <= tol) idx.push_back(j);
    return idx;
}

double FunctionSpec::gradient_lipschitz_bound(double radius) const {
    // Hessian entries of the polynomial part are polynomials of degree <= 2;
    // bound each coefficient contribution on the box by |c| * d(d-1) * R^(d-2)
    // summed over matrix entries, then add the kink curvature bound
    // 2|c| * ||a||^2 which holds globally.
    double bound = 0.0;
    const double r = std::max(1.0, radius);
    for (const auto& m : poly_) {
        const int d = m.degree();
        if (d < 2) continue;
        double rpow = 1.0;
        for (int i = 0; i < d - 2; ++i) rpow *= r;
        bound += std::abs(m.coeff) * d * (d - 1) * rpow * n_;
    }
    for (const auto& k : kinks_)
        bound += 2.0 * std::abs(k.coeff) * k.normal.squaredNorm();
    return bound;
}

ProblemSpec::ProblemSpec(int n_, std::vector<FunctionSpec> objectives_,
                         std::vector<FunctionSpec> constraints_, std::string name_)
    : n(n_), objectives(std::move(objectives_)), constraints(std::move(constraints_)),
      name(std::move(name_)) {
    if (objectives.empty()) throw std::invalid_argument("problem needs at least one objective");
    for (const auto& f : objectives)
        if (f.dim() != n) throw std::invalid_argument("objective dimension mismatch");
    for (const auto& g : constraints)
        if (g.dim() != n) throw std::invalid_argument("constraint dimension mismatch");
}

bool ProblemSpec::is_feasible(const Vector& x, double tol, int* violating) const {
    for (int i = 0; i < num_constraints(); ++i) {
        if (constraints[i].eval(x) > tol) {
            if (violating) *violating = i;
            return false;
        }
    }
    return true;
}

void ProblemSpec::require_feasible(const Vector& x, double tol) const {
    int bad = -1;
    if (!is_feasible(x, tol, &bad)) {
        std::ostringstream os;
        os << "point is infeasible: constraint g" << (bad + 1) << " violates g(x) <= " << tol;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace sokkt
