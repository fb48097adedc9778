#include "sokkt/catalog.hpp"

namespace sokkt {

namespace {

Monomial mono(double c, std::vector<int> exps) { return Monomial{c, std::move(exps)}; }

Vector vec1(double a) {
    Vector v(1);
    v << a;
    return v;
}

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

KinkTerm kink(double c, Vector normal, double offset, KinkKind kind) {
    return KinkTerm{c, std::move(normal), offset, kind};
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> cat;

    {  // min x^2 s.t. -x <= 0 at 0
        ProblemSpec p(1, {FunctionSpec::polynomial(1, {mono(1, {2})})},
                      {FunctionSpec::polynomial(1, {mono(-1, {1})})}, "sq");
        CatalogPoint pt{vec1(0), vec1(1), {}, true};
        pt.expected = {
            {"first_order", "PASS", "grad f(0)=0 makes the strict row unsatisfiable"},
            {"ascq", "VACUOUS", "<grad g, u> = -1 != 0, so I(x;u) is empty"},
            {"necessary", "PASS", "lambda=1, mu=0; (3.10) value 2 >= 0"},
            {"certify", "CERTIFIED", "only critical ray u=+1; min-support 2 > 0; w-cone = {0}"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "global minimum of x^2"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // min x^2 unconstrained at 0
        ProblemSpec p(1, {FunctionSpec::polynomial(1, {mono(1, {2})})}, {}, "sq_free");
        CatalogPoint pt{vec1(0), vec1(1), {}, true};
        pt.expected = {
            {"first_order", "PASS", "grad f(0)=0"},
            {"necessary", "PASS", "lambda=1; (3.10) value 2 >= 0"},
            {"certify", "CERTIFIED", "C(0)=R sampled at +-1; curvature 2; u-perp = {0} in R^1"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "global minimum"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // min -x^2 s.t. -x <= 0 at 0: first-order passes, second-order fails
        ProblemSpec p(1, {FunctionSpec::polynomial(1, {mono(-1, {2})})},
                      {FunctionSpec::polynomial(1, {mono(-1, {1})})}, "negsq");
        CatalogPoint pt{vec1(0), vec1(1), {}, false};
        pt.expected = {
            {"first_order", "PASS", "grad f(0)=0"},
            {"ascq", "VACUOUS", "<grad g, u> = -1 != 0"},
            {"necessary", "FAIL", "forced mu=0, lambda=1 gives (3.10) value -2 < 0"},
            {"certify", "NOT_CERTIFIED", "min-support -2 makes (3.15) impossible"},
            {"oracle", "DOMINATED", "f(y) = -y^2 < 0 for any feasible y > 0"},
            {"oracle_weak", "DOMINATED", "single objective: strict decrease exists"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // min -x^2 unconstrained at 0
        ProblemSpec p(1, {FunctionSpec::polynomial(1, {mono(-1, {2})})}, {}, "negsq_free");
        CatalogPoint pt{vec1(0), vec1(1), {}, false};
        pt.expected = {
            {"first_order", "PASS", "grad f(0)=0"},
            {"necessary", "FAIL", "(3.10) value -2 < 0"},
            {"certify", "NOT_CERTIFIED", "lambda * (-2) > 0 unsatisfiable"},
            {"oracle", "DOMINATED", "any y != 0 dominates"},
            {"oracle_weak", "DOMINATED", "any y != 0 strictly dominates"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // bi-objective (x1, x2) with -x1-x2 <= 0 at 0: vacuous critical cone
        ProblemSpec p(2,
                      {FunctionSpec::polynomial(2, {mono(1, {1, 0})}),
                       FunctionSpec::polynomial(2, {mono(1, {0, 1})})},
                      {FunctionSpec::polynomial(2, {mono(-1, {1, 0}), mono(-1, {0, 1})})},
                      "biobj");
        CatalogPoint pt{vec2(0, 0), std::nullopt, {}, false};
        pt.expected = {
            {"first_order", "PASS", "u < 0 componentwise with u1+u2 >= 0 is contradictory"},
            {"necessary_scan", "VACUOUS", "C(0) = {0} by hand intersection"},
            {"certify", "VACUOUS", "C(0) \\ {0} empty certifies outright"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE",
             "feasibility forces y1+y2 >= 0, so componentwise <= with one strict is impossible"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // parabola-constrained ASCQ example: g = x2 - x1^2
        ProblemSpec p(2, {FunctionSpec::polynomial(2, {mono(1, {2, 0}), mono(1, {0, 2})})},
                      {FunctionSpec::polynomial(2, {mono(1, {0, 1}), mono(-1, {2, 0})})},
                      "parabola");
        CatalogPoint pt{vec2(0, 0), vec2(1, 0), {}, true};
        pt.expected = {
            {"ascq", "PASS", "system {w2 - 2 < 0}: margin 3 at w = (0,-1) under box radius 1"},
            {"first_order", "PASS", "grad f(0)=0"},
            {"necessary", "PASS", "lambda=1, mu=0 forced by stationarity; (3.10) value 2"},
            {"certify", "NOT_CERTIFIED",
             "grad f(0)=0 makes strict cone positivity on the w-cone impossible"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "f = |y|^2 has its minimum at 0"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // C^{1,1} non-C^2 objective: x|x| + x^2
        ProblemSpec p(1,
                      {FunctionSpec(1, {mono(1, {2})}, {kink(1, vec1(1), 0, KinkKind::SignQuad)})},
                      {}, "signsq_mix");
        CatalogPoint pt{vec1(0), vec1(1), {}, true};
        pt.expected = {
            {"first_order", "PASS", "grad f(0) = 2|0| + 0 = 0"},
            {"necessary", "PASS", "limiting Hessians {0, 4}: max-support 4 >= 0"},
            {"certify", "NOT_CERTIFIED", "min-support 0 fails strict (3.15)"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE",
             "f(y) = y^2(sign y + 1) >= 0 = f(0), never strictly below"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // paired kinked objectives: (x1|x1| + x1^2, x2^2 - x1)
        ProblemSpec p(
            2,
            {FunctionSpec(2, {mono(1, {2, 0})}, {kink(1, vec2(1, 0), 0, KinkKind::SignQuad)}),
             FunctionSpec::polynomial(2, {mono(1, {0, 2}), mono(-1, {1, 0})})},
            {}, "kink_pair");
        CatalogPoint pt{vec2(0, 0), vec2(1, 0), {}, true};
        pt.expected = {
            {"first_order", "PASS", "grad f1(0) = 0 blocks the all-strict system"},
            {"necessary", "PASS", "L(x;u)={1}: lambda=(1,0); max-support 4 >= 0"},
            {"necessary_scan", "PASS", "multipliers exist for every sampled critical direction"},
            {"certify", "NOT_CERTIFIED", "stationarity forces lambda_2 = 0, violating (3.16)"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE",
             "f1(y) <= 0 forces y1 <= 0, then f2(y) = y2^2 - y1 > 0 unless y = 0"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // certified point with an active kink: x^2 + plusquad(x)
        ProblemSpec p(1,
                      {FunctionSpec(1, {mono(1, {2})}, {kink(1, vec1(1), 0, KinkKind::PlusQuad)})},
                      {}, "plusq_conv");
        CatalogPoint pt{vec1(0), vec1(1), {}, true};
        pt.expected = {
            {"first_order", "PASS", "grad f(0) = 0"},
            {"necessary", "PASS", "limiting Hessians {2, 4}: max-support 4"},
            {"certify", "CERTIFIED", "min-support 2 > 0 on both critical rays; w-cone = {0}"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "f(y) >= y^2 > 0 for y != 0"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // kinked constraint: min x2 s.t. plusquad(x1) - x2 <= 0
        ProblemSpec p(2, {FunctionSpec::polynomial(2, {mono(1, {0, 1})})},
                      {FunctionSpec(2, {mono(-1, {0, 1})},
                                    {kink(1, vec2(1, 0), 0, KinkKind::PlusQuad)})},
                      "plusq_con");
        CatalogPoint pt{vec2(0, 0), vec2(1, 0), {}, true};
        pt.expected = {
            {"first_order", "PASS", "u2 < 0 with -u2 <= 0 is contradictory"},
            {"ascq", "FAIL",
             "system {-w2 + 2 < 0} needs w2 > 2, outside box radius 1: margin -1"},
            {"necessary", "PASS", "stationarity forces lambda = mu = 1; (3.10) value 2"},
            {"certify", "NOT_CERTIFIED", "min-supports vanish along the kink directions"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "feasible set has y2 >= 0 = f(0)"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // two branches collapsing to a line: (x1 + x2^2, -x1 + x2^2)
        ProblemSpec p(2,
                      {FunctionSpec::polynomial(2, {mono(1, {1, 0}), mono(1, {0, 2})}),
                       FunctionSpec::polynomial(2, {mono(-1, {1, 0}), mono(1, {0, 2})})},
                      {}, "lex_branch");
        CatalogPoint pt{vec2(0, 0), vec2(0, 1), {}, true};
        pt.expected = {
            {"first_order", "PASS", "u1 < 0 and -u1 < 0 are contradictory"},
            {"necessary", "PASS", "stationarity forces lambda = (1/2, 1/2); (3.10) value 2"},
            {"necessary_scan", "PASS", "C(0) = {(0,t)}: multipliers exist at +-(0,1)"},
            {"certify", "NOT_CERTIFIED", "w-cone contains the line span{(1,0)}"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE",
             "f1 + f2 = 2 y2^2 >= 0 rules out componentwise domination"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // two active linear constraints: min x1 + x2 s.t. x >= 0
        ProblemSpec p(2, {FunctionSpec::polynomial(2, {mono(1, {1, 0}), mono(1, {0, 1})})},
                      {FunctionSpec::polynomial(2, {mono(-1, {1, 0})}),
                       FunctionSpec::polynomial(2, {mono(-1, {0, 1})})},
                      "boxcon");
        CatalogPoint pt{vec2(0, 0), vec2(0, 0), {}, true};
        pt.expected = {
            {"first_order", "PASS", "u1+u2 < 0 with u >= 0 is contradictory"},
            {"necessary", "PASS", "at u=0: first-order KKT with mu = (1,1)"},
            {"necessary_scan", "VACUOUS", "u1+u2 = 0 with u >= 0 forces u = 0"},
            {"certify", "VACUOUS", "no nonzero critical direction"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "f >= 0 on the feasible set"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }
    {  // X = {0} via opposing constraints: contradictory ASCQ system
        ProblemSpec p(1, {FunctionSpec::polynomial(1, {mono(1, {1})})},
                      {FunctionSpec::polynomial(1, {mono(1, {1})}),
                       FunctionSpec::polynomial(1, {mono(-1, {1})})},
                      "eqpoint");
        CatalogPoint pt{vec1(0), vec1(0), {}, false};
        pt.expected = {
            {"ascq", "FAIL", "system {w < 0, -w < 0} is contradictory"},
            {"first_order", "PASS", "u < 0 with u <= 0 and -u <= 0 is contradictory"},
            {"necessary", "PASS", "mu2 - mu1 = 1 solves stationarity"},
            {"certify", "VACUOUS", "critical directions need u = 0"},
            {"oracle", "LOCALLY_EFFICIENT_AT_SCALE", "the feasible set is {0}"},
        };
        cat.push_back({std::move(p), {std::move(pt)}});
    }

    return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cat = build();
    return cat;
}

}  // namespace sokkt
