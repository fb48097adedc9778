#pragma once

#include <Eigen/Dense>
#include <set>
#include <string>
#include <vector>

#include "sokkt/config.hpp"

namespace sokkt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One term c * x1^e1 * ... * xn^en. Total degree is capped so the Hessian of
// the polynomial part is itself an exactly evaluable polynomial.
struct Monomial {
    double coeff = 0.0;
    std::vector<int> exponents;

    int degree() const;
};

enum class KinkKind {
    PlusQuad,  // t -> max(0, t)^2
    SignQuad,  // t -> t * |t|
};

// c * theta(<a, x> + b). Both kinds are C^{1,1}: the composite gradient is
// c * theta'(l(x)) * a with theta' globally Lipschitz, while theta'' jumps
// across the hyperplane l(x) = 0.
struct KinkTerm {
    double coeff = 0.0;
    Vector normal;   // a, nonzero
    double offset = 0.0;  // b
    KinkKind kind = KinkKind::PlusQuad;

    double affine_value(const Vector& x) const { return normal.dot(x) + offset; }
};

double kink_theta(KinkKind kind, double t);
double kink_theta_prime(KinkKind kind, double t);
// One-sided curvature limit at the kink: side = +1 or -1.
double kink_curvature(KinkKind kind, int side);

// A C^{1,1} function in the representable class: polynomial part plus kink
// terms over affine arguments. Gradients are exact everywhere; the limiting
// Hessian set at any point is finite.
class FunctionSpec {
public:
    FunctionSpec(int n, std::vector<Monomial> poly, std::vector<KinkTerm> kinks);

    static FunctionSpec polynomial(int n, std::vector<Monomial> poly) {
        return FunctionSpec(n, std::move(poly), {});
    }

    int dim() const { return n_; }
    const std::vector<Monomial>& poly() const { return poly_; }
    const std::vector<KinkTerm>& kinks() const { return kinks_; }

    double eval(const Vector& x) const;
    Vector grad(const Vector& x) const;
    // Hessian of the polynomial part only (exact).
    Matrix poly_hessian(const Vector& x) const;
    std::vector<int> active_kinks(const Vector& x, double tol) const;

    // Upper bound for the gradient Lipschitz constant over the box
    // ||x||_inf <= radius.
    double gradient_lipschitz_bound(double radius) const;

private:
    void check_point(const Vector& x) const;

    int n_;
    std::vector<Monomial> poly_;
    std::vector<KinkTerm> kinks_;
};

// min_{R^m_+} (f_1, ..., f_m) subject to g_i(x) <= 0.
struct ProblemSpec {
    int n = 0;
    std::vector<FunctionSpec> objectives;
    std::vector<FunctionSpec> constraints;
    std::string name;

    ProblemSpec(int n_, std::vector<FunctionSpec> objectives_,
                std::vector<FunctionSpec> constraints_, std::string name_ = "");

    int num_objectives() const { return static_cast<int>(objectives.size()); }
    int num_constraints() const { return static_cast<int>(constraints.size()); }

    bool is_feasible(const Vector& x, double tol, int* violating = nullptr) const;
    // Throws std::invalid_argument naming the violating constraint.
    void require_feasible(const Vector& x, double tol) const;
};

}  // namespace sokkt
