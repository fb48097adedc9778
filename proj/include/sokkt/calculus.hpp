#pragma once

#include <string>
#include <vector>

#include "sokkt/config.hpp"
#include "sokkt/feasibility.hpp"
#include "sokkt/model.hpp"

namespace sokkt {

// Finite generator set for the limiting Hessians of a FunctionSpec at a
// point: one symmetric matrix per realizable sign pattern over the active
// kinks. At a smooth point the set is the singleton classical Hessian.
struct HessianSet {
    std::vector<Matrix> matrices;
    std::vector<std::vector<int>> patterns;  // entries +1/-1 per active kink
    std::vector<int> active;                 // kink indices the patterns refer to
    // False when a pattern of undecided realizability was kept, making
    // downstream support values conservative bounds rather than exact values.
    bool exact = true;
};

// Support values of the limiting second-order subdifferential in direction u:
// smax = <xi*, u>, smin = <xi_*, u>. For this function class the generator
// set B(x) satisfies B(x)u within the subdifferential within conv(B(x)u), so
// max/min of <., u> agree on all three and the pair is exactly computable.
struct SupportValues {
    double smax = 0.0;
    double smin = 0.0;
    bool exact = true;
};

struct TaylorReport {
    double delta = 0.0;  // f(b) - f(a) - <grad f(a), b - a>
    double lower = 0.0;  // (1/2) min over segment of smin(xi, b-a)
    double upper = 0.0;  // (1/2) max over segment of smax(xi, b-a)
    double witness_lower = 0.0;  // segment parameters in [0,1]
    double witness_upper = 0.0;
    bool holds = false;  // lower <= delta <= upper within tolerance
};

// Enumerates realizable one-sided curvature sign patterns over the kinks
// active at x and assembles the corresponding Hessian matrices. A pattern s
// is realizable iff the strict homogeneous system { s_j <a_j, w> > 0 } has a
// solution; undecidable patterns are kept and flagged via HessianSet::exact.
HessianSet piece_hessians(const FunctionSpec& f, const Vector& x, double tol,
                          const Config& cfg = {});

SupportValues sosd_support(const FunctionSpec& f, const Vector& x, const Vector& u,
                           const Config& cfg = {});

SupportValues support_from_set(const HessianSet& hs, const Vector& u);

// Checks the C^{1,1} Taylor expansion bounds along [a, b]. The scan samples
// `segments` uniform parameters plus every kink-crossing parameter plus the
// exact extremizers of the piecewise-quadratic curvature, so lower/upper are
// the true segment extrema for this class.
TaylorReport taylor_sandwich(const FunctionSpec& f, const Vector& a, const Vector& b,
                             int segments, const Config& cfg = {});

}  // namespace sokkt
