#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sokkt/config.hpp"
#include "sokkt/model.hpp"

namespace sokkt {

enum class GridMode { Efficient, Weak };

struct GridOracleConfig {
    double radius = 0.25;
    int resolution = 41;  // points per axis, odd so the center is on the grid
    GridMode mode = GridMode::Efficient;
    double feas_tol = 1e-9;
    double dom_tol = 1e-10;
};

enum class GridVerdict { LocallyEfficientAtScale, Dominated };

const char* to_string(GridVerdict v);

struct GridResult {
    GridVerdict verdict = GridVerdict::LocallyEfficientAtScale;
    std::optional<Vector> witness;  // first dominating point in lexicographic grid order
    long points_scanned = 0;
};

// Exhaustive domination search over the grid in the inf-ball around x. The
// verdict certifies nothing beyond the sampled grid.
GridResult grid_local_efficiency(const ProblemSpec& p, const Vector& x,
                                 const GridOracleConfig& cfg = {});

struct TangentProbeSchedule {
    std::vector<double> t_values;   // strictly decreasing, down to below 1e-5
    double radius_scale = 1.0;      // search radius c * sqrt(t)
    int magnitudes = 3;             // probe shells per t

    static TangentProbeSchedule standard();
};

enum class TangentVerdict { MemberAtScale, Rejected };

const char* to_string(TangentVerdict v);

// Numeric membership test for the second-order tangent set: for every t in
// the schedule some v' with ||v' - v|| <= c sqrt(t) must make
// x + t u + (t^2/2) v' feasible. Acceptance at every scheduled t yields a
// genuine witness sequence, so MEMBER_AT_SCALE is sound (up to feas_tol).
TangentVerdict tangent2_membership(const ProblemSpec& p, const Vector& x, const Vector& u,
                                   const Vector& v, const TangentProbeSchedule& sched,
                                   double feas_tol = 1e-9);

// Max relative error between central differences and grad() over random
// points kept clear of all kink surfaces.
double fd_validate(const FunctionSpec& f, int trials, std::uint64_t seed);

}  // namespace sokkt
