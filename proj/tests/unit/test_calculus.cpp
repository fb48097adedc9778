#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "sokkt/calculus.hpp"
#include "sokkt/rng.hpp"

using namespace sokkt;

namespace {

Vector vec(std::initializer_list<double> vals) {
    Vector v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

FunctionSpec kink_only(KinkKind kind) {
    return FunctionSpec(1, {}, {KinkTerm{1.0, vec({1}), 0.0, kind}});
}

std::vector<double> sorted_scalars(const HessianSet& hs) {
    std::vector<double> out;
    for (const auto& m : hs.matrices) out.push_back(m(0, 0));
    std::sort(out.begin(), out.end());
    return out;
}

// Independent curvature probe: finite difference of <u, grad f> along u at a
// nearby smooth point. Used to bracket the support values from below/above.
double directional_curvature_fd(const FunctionSpec& f, const Vector& x, const Vector& u) {
    const double h = 1e-6;
    return (f.grad(x + h * u).dot(u) - f.grad(x - h * u).dot(u)) / (2 * h);
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("piece hessians enumerate one-sided curvature limits") {
    const HessianSet plus = piece_hessians(kink_only(KinkKind::PlusQuad), vec({0}), 1e-9);
    CHECK(sorted_scalars(plus) == std::vector<double>{0.0, 2.0});
    CHECK(plus.exact);

    const HessianSet sign = piece_hessians(kink_only(KinkKind::SignQuad), vec({0}), 1e-9);
    CHECK(sorted_scalars(sign) == std::vector<double>{-2.0, 2.0});

    const FunctionSpec smooth =
        FunctionSpec::polynomial(2, {Monomial{0.5, {2, 0}}, Monomial{1.5, {0, 2}}});
    const HessianSet hs = piece_hessians(smooth, vec({0.3, -0.7}), 1e-9);
    REQUIRE(hs.matrices.size() == 1);
    CHECK(hs.matrices[0](0, 0) == doctest::Approx(1.0));
    CHECK(hs.matrices[0](1, 1) == doctest::Approx(3.0));
    CHECK(hs.matrices[0](0, 1) == 0.0);
}

TEST_CASE("hessian matrices are symmetric and the set nonempty") {
    DeterministicRng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 3);
        const FunctionSpec f = testgen::random_function(rng, n, 3);
        const Vector x = testgen::random_point(rng, n);
        const HessianSet hs = piece_hessians(f, x, 1e-9);
        REQUIRE_FALSE(hs.matrices.empty());
        for (const auto& m : hs.matrices)
            CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("unrealizable joint sign patterns are pruned") {
    // Kinks on x > 0 and -x > 0 can never hold together.
    const FunctionSpec f(1, {},
                         {KinkTerm{1.0, vec({1}), 0.0, KinkKind::PlusQuad},
                          KinkTerm{1.0, vec({-1}), 0.0, KinkKind::PlusQuad}});
    const HessianSet hs = piece_hessians(f, vec({0}), 1e-9);
    CHECK(hs.matrices.size() == 2);  // (+,-) and (-,+) only
    CHECK(sorted_scalars(hs) == std::vector<double>{2.0, 2.0});
}

TEST_CASE("support values at kink points match hand calculations") {
    const SupportValues sign = sosd_support(kink_only(KinkKind::SignQuad), vec({0}), vec({1}));
    CHECK(sign.smax == 2.0);
    CHECK(sign.smin == -2.0);

    const SupportValues plus = sosd_support(kink_only(KinkKind::PlusQuad), vec({0}), vec({-1}));
    CHECK(plus.smax == 2.0);
    CHECK(plus.smin == 0.0);

    const FunctionSpec quad =
        FunctionSpec::polynomial(2, {Monomial{0.5, {2, 0}}, Monomial{1.5, {0, 2}}});
    const SupportValues sv = sosd_support(quad, vec({0, 0}), vec({1, 1}));
    CHECK(sv.smax == doctest::Approx(4.0));
    CHECK(sv.smin == doctest::Approx(4.0));
}

TEST_CASE("smooth points degenerate to a single support value") {
    DeterministicRng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 3);
        const FunctionSpec f = testgen::random_function(rng, n, 2);
        const Vector x = testgen::random_point(rng, n);
        if (!testgen::off_kink_surfaces(f, x, 1e-6)) continue;
        const Vector u = testgen::random_unit(rng, n);
        const SupportValues sv = sosd_support(f, x, u);
        CHECK(sv.smax == sv.smin);
    }
}

TEST_CASE("support homogeneity of degree two") {
    DeterministicRng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 3);
        const FunctionSpec f = testgen::random_function(rng, n, 2);
        const Vector x = testgen::random_point(rng, n);
        const Vector u = testgen::random_unit(rng, n);
        const SupportValues base = sosd_support(f, x, u);
        for (double alpha : {0.0, 0.5, 2.0, 1.75}) {
            const SupportValues scaled = sosd_support(f, x, Vector(alpha * u));
            const double tol = 1e-12 * (1.0 + std::abs(base.smax) + std::abs(base.smin));
            CHECK(std::abs(scaled.smax - alpha * alpha * base.smax) <= tol);
            CHECK(std::abs(scaled.smin - alpha * alpha * base.smin) <= tol);
        }
    }
}

TEST_CASE("outer-limit stability: nearby smooth curvature lands in [smin, smax]") {
    DeterministicRng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 2);
        FunctionSpec f = testgen::random_function(rng, n, 2);
        if (f.kinks().empty()) continue;
        // Put x on the first kink surface.
        const KinkTerm& k = f.kinks()[0];
        Vector x = testgen::random_point(rng, n, 0.5);
        x -= (k.affine_value(x) / k.normal.squaredNorm()) * k.normal;
        const Vector u = testgen::random_unit(rng, n);
        const SupportValues sv = sosd_support(f, x, u);

        const Vector w = testgen::random_unit(rng, n);
        bool converged = false;
        for (int kexp = 6; kexp <= 24; ++kexp) {
            const Vector xk = x + std::ldexp(1.0, -kexp) * w;
            if (!testgen::off_kink_surfaces(f, xk, 1e-12)) continue;
            const SupportValues sk = sosd_support(f, xk, u);
            if (sk.smax != sk.smin) continue;  // still near some other kink
            if (kexp >= 20) {
                CHECK(sk.smax >= sv.smin - 1e-6);
                CHECK(sk.smax <= sv.smax + 1e-6);
                converged = true;
            }
        }
        (void)converged;
    }
}

TEST_CASE("support values bracket finite-difference curvature probes") {
    DeterministicRng rng(51);
    int probes = 0;
    for (int trial = 0; trial < 60 && probes < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 2);
        const FunctionSpec f = testgen::random_function(rng, n, 2);
        if (f.kinks().empty()) continue;
        const KinkTerm& k = f.kinks()[0];
        Vector x = testgen::random_point(rng, n, 0.5);
        x -= (k.affine_value(x) / k.normal.squaredNorm()) * k.normal;
        const Vector u = testgen::random_unit(rng, n);
        const SupportValues sv = sosd_support(f, x, u);
        for (int s = 0; s < 8; ++s) {
            const Vector xs = x + 1e-3 * testgen::random_unit(rng, n);
            if (!testgen::off_kink_surfaces(f, xs, 1e-5)) continue;
            const double q = directional_curvature_fd(f, xs, u);
            CHECK(q >= sv.smin - 2e-2);
            CHECK(q <= sv.smax + 2e-2);
            ++probes;
        }
    }
    CHECK(probes >= 20);
}

TEST_CASE("taylor sandwich matches hand examples") {
    SUBCASE("x^2 on [0,1]") {
        const FunctionSpec f = FunctionSpec::polynomial(1, {Monomial{1.0, {2}}});
        const TaylorReport r = taylor_sandwich(f, vec({0}), vec({1}), 8);
        CHECK(r.delta == doctest::Approx(1.0));
        CHECK(r.lower == doctest::Approx(1.0));
        CHECK(r.upper == doctest::Approx(1.0));
        CHECK(r.holds);
    }
    SUBCASE("signquad on [-1,1]") {
        const TaylorReport r =
            taylor_sandwich(kink_only(KinkKind::SignQuad), vec({-1}), vec({1}), 8);
        CHECK(r.delta == doctest::Approx(-2.0));
        CHECK(r.lower == doctest::Approx(-4.0));
        CHECK(r.upper == doctest::Approx(4.0));
        CHECK(r.holds);
    }
    SUBCASE("plusquad on [-1,1]") {
        const TaylorReport r =
            taylor_sandwich(kink_only(KinkKind::PlusQuad), vec({-1}), vec({1}), 8);
        CHECK(r.delta == doctest::Approx(1.0));
        CHECK(r.lower == doctest::Approx(0.0));
        CHECK(r.upper == doctest::Approx(4.0));
        CHECK(r.holds);
    }
}

TEST_CASE("taylor sandwich property on random segments") {
    DeterministicRng rng(61);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 3);
        const FunctionSpec f = testgen::random_function(rng, n, 3);
        const Vector a = testgen::random_point(rng, n);
        const Vector b = testgen::random_point(rng, n);
        const TaylorReport r = taylor_sandwich(f, a, b, 16);
        CHECK(r.holds);
        CHECK(r.lower <= r.upper + 1e-12);
        CHECK(r.witness_lower >= 0.0);
        CHECK(r.witness_lower <= 1.0);
    }
}

TEST_CASE("degenerate segment") {
    const FunctionSpec f = FunctionSpec::polynomial(1, {Monomial{1.0, {2}}});
    const TaylorReport r = taylor_sandwich(f, vec({0.5}), vec({0.5}), 4);
    CHECK(r.delta == 0.0);
    CHECK(r.holds);
    CHECK_THROWS_AS(taylor_sandwich(f, vec({0}), vec({1}), 1), std::invalid_argument);
}

}  // TEST_SUITE
