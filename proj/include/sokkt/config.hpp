#pragma once

#include <cstdint>

namespace sokkt {

// All tolerances and knobs in one place. Every checker echoes the config it
// ran with into its report, so results are reproducible from the report alone.
struct Config {
    // |l_j(x)| <= activity_tol marks kink j active at x.
    double activity_tol = 1e-9;
    // Maximum absolute asymmetry tolerated in a Hessian matrix.
    double symmetry_tol = 1e-12;
    // Relative slack for the Taylor sandwich test: tol * (1 + |delta|).
    double sandwich_rel_tol = 1e-8;
    // A strict linear system counts as strictly feasible iff its maximized
    // margin exceeds this.
    double strict_tol = 1e-8;
    // Point/witness feasibility tolerance (g_i(x) <= feas_tol).
    double feas_tol = 1e-9;
    // Componentwise gap that counts as strict domination in the grid oracle.
    double dom_tol = 1e-10;
    // Values below this are treated as exactly zero.
    double zero_tol = 1e-12;
    // Simplex pivot tolerance.
    double lp_pivot_tol = 1e-10;
    // Box radius normalizing homogeneous strict systems (||w||_inf <= R).
    double box_radius = 1.0;

    // Grid oracle defaults.
    double grid_radius = 0.25;
    int grid_resolution = 41;

    // Sufficient-condition sampling.
    int samples_per_branch = 64;
    std::uint64_t seed = 42;

    // Uniform parameters sampled along [a,b] by the Taylor sandwich (kink
    // crossings and per-piece extremizers are added on top).
    int taylor_segments = 16;

    static constexpr int kPolyDegreeCap = 4;
    static constexpr int kRayDimCap = 8;
    static constexpr int kActiveKinkCap = 16;
    static constexpr double kGridGuard = 1e7;
};

}  // namespace sokkt
