#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sokkt/config.hpp"
#include "sokkt/model.hpp"

namespace sokkt {

// A_i w <= b_i with a subset of rows required to hold strictly, plus optional
// equality rows and per-variable lower bounds.
struct LinearSystem {
    Matrix eq_lhs;    // (re x n)
    Vector eq_rhs;
    Matrix ineq_lhs;  // (ri x n)
    Vector ineq_rhs;
    std::vector<int> strict_rows;                    // indices into ineq rows
    std::vector<std::optional<double>> lower_bounds; // per variable, optional

    static LinearSystem empty(int num_vars);
    int num_vars() const;
    void add_ineq(const Vector& a, double b, bool strict = false);
    void add_eq(const Vector& a, double b);

    // Max violation of all constraints at w (strictness ignored).
    double residual(const Vector& w) const;
};

enum class SolveStatus { Feasible, Infeasible, Unbounded, TolInconclusive };

const char* to_string(SolveStatus s);

struct SolveOutcome {
    SolveStatus status = SolveStatus::TolInconclusive;
    std::optional<Vector> witness;
    double margin = 0.0;   // maximized strict slack (strict_margin only)
    double objective = 0.0;
    std::string note;
};

enum class Sense { Minimize, Maximize };

// Two-phase dense simplex with Bland's rule. Never returns a Feasible outcome
// whose witness does not re-verify against the original system.
SolveOutcome solve_lp(const Vector& objective, const LinearSystem& sys, Sense sense,
                      const Config& cfg = {});

// Maximizes eps subject to (strict rows shifted by eps) and ||w||_inf <= R.
// The paper-facing systems are homogeneous in w, so any positive margin
// certifies strict feasibility. status == Feasible iff margin > cfg.strict_tol.
SolveOutcome strict_margin(const LinearSystem& sys, double box_radius,
                           const Config& cfg = {});

}  // namespace sokkt
