#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "sokkt/cones.hpp"
#include "sokkt/rng.hpp"

using namespace sokkt;

namespace {

Vector vec(std::initializer_list<double> vals) {
    Vector v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

bool contains_direction(const std::vector<Vector>& dirs, const Vector& d, double tol = 1e-9) {
    return std::any_of(dirs.begin(), dirs.end(), [&](const Vector& v) {
        return (v - d).lpNorm<Eigen::Infinity>() <= tol;
    });
}

ProblemSpec circle_problem() {
    // g1 = -x2, g2 = x1^2 + x2^2 - 1, objective x1.
    return ProblemSpec(
        2, {FunctionSpec::polynomial(2, {Monomial{1.0, {1, 0}}})},
        {FunctionSpec::polynomial(2, {Monomial{-1.0, {0, 1}}}),
         FunctionSpec::polynomial(2, {Monomial{1.0, {2, 0}}, Monomial{1.0, {0, 2}},
                                      Monomial{-1.0, {0, 0}}})},
        "circle");
}

}  // namespace

TEST_SUITE("cones") {

TEST_CASE("lexicographic comparison") {
    const double tol = 1e-9;
    CHECK(lex_cmp({-1, 5}, {0, 0}, false, tol));
    CHECK_FALSE(lex_cmp({0, 1}, {0, 0}, false, tol));
    CHECK_FALSE(lex_cmp({0, 0}, {0, 0}, true, tol));
    CHECK(lex_cmp({0, 0}, {0, 0}, false, tol));
    // Ties within tol on the first coordinate compare on the second.
    CHECK(lex_cmp({1e-12, -1}, {0, 0}, true, tol));
    CHECK_FALSE(lex_cmp({1e-12, 1}, {0, 0}, false, tol));
}

TEST_CASE("active sets on the circle example") {
    const ProblemSpec p = circle_problem();
    const ActiveSets s = active_sets(p, vec({1, 0}), vec({0, 1}));
    CHECK(s.active == std::set<int>{0, 1});
    CHECK(s.active_dir == std::set<int>{1});  // grad g2 = (2,0) orthogonal to u

    const ProblemSpec free1(1, {FunctionSpec::polynomial(1, {Monomial{1.0, {2}}})}, {}, "f");
    const ActiveSets empty = active_sets(free1, vec({0.2}), vec({1}));
    CHECK(empty.active.empty());
    CHECK(empty.active_dir.empty());

    const ProblemSpec biobj(2,
                            {FunctionSpec::polynomial(2, {Monomial{1.0, {1, 0}}}),
                             FunctionSpec::polynomial(2, {Monomial{1.0, {0, 1}}})},
                            {}, "b");
    const ActiveSets obj = active_sets(biobj, vec({0, 0}), vec({0, -1}));
    CHECK(obj.obj_dir == std::set<int>{0});

    CHECK_THROWS_AS(active_sets(circle_problem(), vec({2, 0}), vec({0, 1})),
                    std::invalid_argument);
}

TEST_CASE("extreme rays of textbook cones") {
    SUBCASE("nonnegative orthant") {
        const PolyhedralCone c(2, {vec({-1, 0}), vec({0, -1})}, {});
        const RayDecomposition& rd = c.rays();
        CHECK(rd.lineality.empty());
        REQUIRE(rd.rays.size() == 2);
        CHECK(contains_direction(rd.rays, vec({1, 0})));
        CHECK(contains_direction(rd.rays, vec({0, 1})));
    }
    SUBCASE("wedge w1 <= -|w2|") {
        const PolyhedralCone c(2, {vec({1, 1}), vec({1, -1})}, {});
        const RayDecomposition& rd = c.rays();
        CHECK(rd.lineality.empty());
        REQUIRE(rd.rays.size() == 2);
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(contains_direction(rd.rays, vec({-s, s}), 1e-12));
        CHECK(contains_direction(rd.rays, vec({-s, -s}), 1e-12));
    }
    SUBCASE("halfspace keeps a lineality direction") {
        const PolyhedralCone c(2, {vec({1, 0})}, {});
        const RayDecomposition& rd = c.rays();
        REQUIRE(rd.rays.size() == 1);
        CHECK(contains_direction(rd.rays, vec({-1, 0})));
        REQUIRE(rd.lineality.size() == 1);
        CHECK(std::abs(rd.lineality[0][1]) == doctest::Approx(1.0));
    }
    SUBCASE("trivial cone") {
        const PolyhedralCone c(1, {vec({1}), vec({-1})}, {});
        CHECK(c.rays().rays.empty());
        CHECK(c.rays().lineality.empty());
    }
    SUBCASE("dimension cap") {
        const PolyhedralCone c(9, {}, {});
        CHECK_THROWS_AS(c.rays(), std::invalid_argument);
    }
}

TEST_CASE("ray soundness and cone reconstruction on random cones") {
    DeterministicRng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 3);
        std::vector<Vector> ineqs, eqs;
        const int rows = 1 + static_cast<int>(rng.uniform01() * 4);
        for (int r = 0; r < rows; ++r) {
            Vector a(n);
            for (int i = 0; i < n; ++i) a[i] = std::floor(rng.uniform(-3.0, 4.0));
            ineqs.push_back(a);
        }
        if (rng.uniform01() < 0.3) {
            Vector e(n);
            for (int i = 0; i < n; ++i) e[i] = std::floor(rng.uniform(-2.0, 3.0));
            eqs.push_back(e);
        }
        const PolyhedralCone cone(n, ineqs, eqs);
        const RayDecomposition& rd = cone.rays();
        for (const auto& r : rd.rays) {
            CHECK(cone.contains(r, 1e-9));
            CHECK(r.norm() == doctest::Approx(1.0));
        }
        // Pairwise non-parallel rays.
        for (size_t i = 0; i < rd.rays.size(); ++i)
            for (size_t j = i + 1; j < rd.rays.size(); ++j)
                CHECK(std::abs(rd.rays[i].dot(rd.rays[j])) < 1.0 - 1e-12);
        // 100 random conic combinations stay inside.
        for (int probe = 0; probe < 100; ++probe) {
            Vector w = Vector::Zero(n);
            for (const auto& r : rd.rays) w += rng.uniform01() * r;
            for (const auto& l : rd.lineality) w += rng.uniform(-1.0, 1.0) * l;
            CHECK(cone.contains(w, 1e-9));
        }
    }
}

TEST_CASE("isotonicity surrogate: extra constraints never admit new members") {
    DeterministicRng rng(88);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 2);
        std::vector<Vector> ineqs;
        for (int r = 0; r < 3; ++r) {
            Vector a(n);
            for (int i = 0; i < n; ++i) a[i] = rng.uniform(-1.0, 1.0);
            ineqs.push_back(a);
        }
        const PolyhedralCone base(n, ineqs, {});
        Vector extra(n);
        for (int i = 0; i < n; ++i) extra[i] = rng.uniform(-1.0, 1.0);
        const PolyhedralCone refined = base.with_extra_ineq(extra);
        for (int probe = 0; probe < 1000; ++probe) {
            const Vector w = testgen::random_point(rng, n, 2.0);
            if (refined.contains(w, 1e-12)) CHECK(base.contains(w, 1e-12));
        }
    }
}

TEST_CASE("critical cone branch structure") {
    SUBCASE("biobjective with coupling constraint collapses to {0}") {
        const ProblemSpec p(2,
                            {FunctionSpec::polynomial(2, {Monomial{1.0, {1, 0}}}),
                             FunctionSpec::polynomial(2, {Monomial{1.0, {0, 1}}})},
                            {FunctionSpec::polynomial(2, {Monomial{-1.0, {1, 0}},
                                                          Monomial{-1.0, {0, 1}}})},
                            "biobj");
        const CriticalCone c = critical_cone(p, vec({0, 0}));
        for (const auto& b : c.branches) {
            CHECK(b.rays().rays.empty());
            CHECK(b.rays().lineality.empty());
        }
        CHECK(sample_critical_directions(c, 16, 42).empty());
    }
    SUBCASE("min x^2 has the whole line") {
        const ProblemSpec p(1, {FunctionSpec::polynomial(1, {Monomial{1.0, {2}}})}, {}, "sq");
        const CriticalCone c = critical_cone(p, vec({0}));
        REQUIRE(c.branches.size() == 1);
        CHECK(c.contains(vec({1}), 1e-9));
        CHECK(c.contains(vec({-1}), 1e-9));
        const std::vector<Vector> dirs = sample_critical_directions(c, 16, 42);
        CHECK(contains_direction(dirs, vec({1})));
        CHECK(contains_direction(dirs, vec({-1})));
    }
    SUBCASE("opposed linear parts leave a vertical line") {
        const ProblemSpec p(2,
                            {FunctionSpec::polynomial(2, {Monomial{1.0, {1, 0}},
                                                          Monomial{1.0, {0, 2}}}),
                             FunctionSpec::polynomial(2, {Monomial{-1.0, {1, 0}},
                                                          Monomial{1.0, {0, 2}}})},
                            {}, "lex");
        const CriticalCone c = critical_cone(p, vec({0, 0}));
        const std::vector<Vector> dirs = sample_critical_directions(c, 16, 42);
        REQUIRE_FALSE(dirs.empty());
        for (const auto& d : dirs) {
            CHECK(std::abs(d[0]) <= 1e-9);
            CHECK(d.norm() == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("sampled directions are members and deterministic") {
    const ProblemSpec p = circle_problem();
    const CriticalCone c = critical_cone(p, vec({1, 0}));
    const std::vector<Vector> a = sample_critical_directions(c, 32, 7);
    const std::vector<Vector> b = sample_critical_directions(c, 32, 7);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).isZero(0.0));
    for (const auto& d : a) {
        CHECK(c.contains(d, 1e-8));
        CHECK(d.norm() == doctest::Approx(1.0));
    }
}

TEST_CASE("L2 membership on the parabola constraint") {
    const ProblemSpec p(2, {FunctionSpec::polynomial(2, {Monomial{1.0, {1, 0}}})},
                        {FunctionSpec::polynomial(2, {Monomial{1.0, {0, 1}},
                                                      Monomial{-1.0, {2, 0}}})},
                        "parabola");
    const Vector x = vec({0, 0});
    const Vector u = vec({1, 0});
    CHECK(membership_L2(p, x, u, vec({0, 0}), L2Variant::Upper));
    CHECK(membership_L2(p, x, u, vec({0, 0}), L2Variant::Lower));
    CHECK_FALSE(membership_L2(p, x, u, vec({0, 3}), L2Variant::Upper));
    CHECK_FALSE(membership_L2(p, x, u, vec({0, 3}), L2Variant::Lower));
    // First lex coordinate strictly negative accepts any v.
    const Vector u_in = vec({0, -1});
    CHECK(membership_L2(p, x, u_in, vec({100, 100}), L2Variant::Upper));
}

TEST_CASE("upper membership implies lower membership") {
    // Kinked constraint separates the two variants.
    const ProblemSpec p(2, {FunctionSpec::polynomial(2, {Monomial{1.0, {0, 1}}})},
                        {FunctionSpec(2, {Monomial{-1.0, {0, 1}}},
                                      {KinkTerm{1.0, vec({1, 0}), 0.0, KinkKind::PlusQuad}})},
                        "plusq_con");
    const Vector x = vec({0, 0});
    const Vector u = vec({1, 0});
    // v = (0,1): upper gives -1 + 2 > 0 (reject), lower gives -1 + 0 <= 0 (accept).
    CHECK_FALSE(membership_L2(p, x, u, vec({0, 1}), L2Variant::Upper));
    CHECK(membership_L2(p, x, u, vec({0, 1}), L2Variant::Lower));

    DeterministicRng rng(5);
    for (int probe = 0; probe < 500; ++probe) {
        const Vector v = testgen::random_point(rng, 2, 3.0);
        const Vector uu = testgen::random_unit(rng, 2);
        if (membership_L2(p, x, uu, v, L2Variant::Upper))
            CHECK(membership_L2(p, x, uu, v, L2Variant::Lower));
    }
}

TEST_CASE("cone positivity") {
    const PolyhedralCone orthant(2, {vec({-1, 0}), vec({0, -1})}, {});
    orthant.rays();
    const PositivityResult pos = cone_positivity(vec({1, 1}), orthant, true);
    CHECK(pos.status == Positivity::Positive);

    const PositivityResult neg = cone_positivity(vec({1, -1}), orthant, true);
    CHECK(neg.status == Positivity::NotPositive);
    REQUIRE(neg.witness.has_value());
    CHECK((*neg.witness - vec({0, 1})).lpNorm<Eigen::Infinity>() <= 1e-12);

    const PolyhedralCone half(2, {vec({0, -1})}, {});  // w2 >= 0, line in w1
    half.rays();
    const PositivityResult lin = cone_positivity(vec({0, 1}), half, true);
    CHECK(lin.status == Positivity::NotPositive);
    REQUIRE(lin.witness.has_value());
    CHECK(std::abs((*lin.witness)[0]) == doctest::Approx(1.0));

    // Non-strict variant tolerates zero values on rays and lineality but not
    // a lineality tilt.
    CHECK(cone_positivity(vec({0, 1}), half, false).status == Positivity::Positive);
    CHECK(cone_positivity(vec({1, 1}), half, false).status == Positivity::NotPositive);
    CHECK(cone_positivity(vec({0, 1}), orthant, false).status == Positivity::Positive);
}

}  // TEST_SUITE
