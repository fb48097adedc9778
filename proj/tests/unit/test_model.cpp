#include <doctest.h>

#include "generators.hpp"
#include "sokkt/model.hpp"
#include "sokkt/rng.hpp"

using namespace sokkt;

namespace {

Vector vec(std::initializer_list<double> vals) {
    Vector v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

FunctionSpec kink_only(KinkKind kind, double coeff = 1.0) {
    return FunctionSpec(1, {}, {KinkTerm{coeff, vec({1}), 0.0, kind}});
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("eval matches hand values") {
    const FunctionSpec sq = FunctionSpec::polynomial(1, {Monomial{1.0, {2}}});
    CHECK(sq.eval(vec({3})) == doctest::Approx(9.0));

    CHECK(kink_only(KinkKind::PlusQuad).eval(vec({-2})) == 0.0);
    CHECK(kink_only(KinkKind::SignQuad).eval(vec({-2})) == doctest::Approx(-4.0));
}

TEST_CASE("grad matches hand values") {
    const FunctionSpec f =
        FunctionSpec::polynomial(2, {Monomial{1.0, {2, 0}}, Monomial{1.0, {0, 1}}});
    const Vector g = f.grad(vec({1, 5}));
    CHECK(g[0] == doctest::Approx(2.0));
    CHECK(g[1] == doctest::Approx(1.0));

    CHECK(kink_only(KinkKind::PlusQuad).grad(vec({0}))[0] == 0.0);
    CHECK(kink_only(KinkKind::SignQuad).grad(vec({-3}))[0] == doctest::Approx(6.0));
}

TEST_CASE("active kink detection") {
    const FunctionSpec f = kink_only(KinkKind::PlusQuad);
    CHECK(f.active_kinks(vec({0}), 1e-9) == std::vector<int>{0});
    CHECK(f.active_kinks(vec({1}), 1e-9).empty());

    const FunctionSpec two(2, {},
                           {KinkTerm{1.0, vec({1, 0}), 0.0, KinkKind::PlusQuad},
                            KinkTerm{1.0, vec({1, 1}), 0.0, KinkKind::PlusQuad}});
    CHECK(two.active_kinks(vec({0, 0}), 1e-9) == std::vector<int>{0, 1});
}

TEST_CASE("construction rejects invalid data") {
    CHECK_THROWS_AS(FunctionSpec::polynomial(2, {Monomial{1.0, {1}}}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec::polynomial(1, {Monomial{1.0, {5}}}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec(1, {}, {KinkTerm{1.0, vec({0}), 0.0, KinkKind::PlusQuad}}),
                    std::invalid_argument);
    const FunctionSpec f = kink_only(KinkKind::SignQuad);
    CHECK_THROWS_AS(f.eval(vec({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(f.grad(vec({1, 2})), std::invalid_argument);
}

TEST_CASE("coincident kink hyperplanes merge under positive scaling") {
    // plusquad(x) + plusquad(2x) == 5 * plusquad(x)
    const FunctionSpec f(1, {},
                         {KinkTerm{1.0, vec({1}), 0.0, KinkKind::PlusQuad},
                          KinkTerm{1.0, vec({2}), 0.0, KinkKind::PlusQuad}});
    CHECK(f.kinks().size() == 1);
    CHECK(f.eval(vec({1})) == doctest::Approx(5.0));
    CHECK(f.eval(vec({-1})) == 0.0);

    // Opposite orientation is not a positive rescaling; no merge.
    const FunctionSpec g(1, {},
                         {KinkTerm{1.0, vec({1}), 0.0, KinkKind::PlusQuad},
                          KinkTerm{1.0, vec({-1}), 0.0, KinkKind::PlusQuad}});
    CHECK(g.kinks().size() == 2);
}

TEST_CASE("finite differences confirm gradients on random functions") {
    DeterministicRng rng(101);
    const double h = 1e-6;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 3);
        const FunctionSpec f = testgen::random_function(rng, n, 2);
        Vector x = testgen::random_point(rng, n);
        if (!testgen::off_kink_surfaces(f, x, 1e-4)) continue;
        const Vector g = f.grad(x);
        for (int i = 0; i < n; ++i) {
            Vector xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fd = (f.eval(xp) - f.eval(xm)) / (2 * h);
            CHECK(std::abs(fd - g[i]) <= 1e-5 * (1.0 + std::abs(g[i])));
        }
    }
}

TEST_CASE("gradient Lipschitz bound holds over many samples") {
    DeterministicRng rng(202);
    const FunctionSpec f = testgen::random_function(rng, 2, 2);
    const double bound = f.gradient_lipschitz_bound(1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const Vector x = testgen::random_point(rng, 2);
        const Vector y = testgen::random_point(rng, 2);
        const double lhs = (f.grad(x) - f.grad(y)).norm();
        CHECK(lhs <= bound * (x - y).norm() + 1e-12);
    }
}

TEST_CASE("eval and grad are bit-for-bit deterministic") {
    DeterministicRng rng(303);
    const FunctionSpec f = testgen::random_function(rng, 3, 3);
    const Vector x = testgen::random_point(rng, 3);
    const double v1 = f.eval(x), v2 = f.eval(x);
    CHECK(v1 == v2);
    const Vector g1 = f.grad(x), g2 = f.grad(x);
    CHECK((g1 - g2).isZero(0.0));
}

TEST_CASE("problem feasibility reports the violating index") {
    ProblemSpec p(1, {FunctionSpec::polynomial(1, {Monomial{1.0, {2}}})},
                  {FunctionSpec::polynomial(1, {Monomial{-1.0, {1}}})}, "t");
    CHECK(p.is_feasible(vec({1}), 1e-9, nullptr));
    int bad = -1;
    CHECK_FALSE(p.is_feasible(vec({-1}), 1e-9, &bad));
    CHECK(bad == 0);
    CHECK_THROWS_WITH_AS(p.require_feasible(vec({-1}), 1e-9), doctest::Contains("g1"),
                         std::invalid_argument);
}

}  // TEST_SUITE
