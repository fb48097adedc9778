#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sokkt/cones.hpp"
#include "sokkt/config.hpp"
#include "sokkt/model.hpp"

namespace sokkt {

enum class Verdict { Pass, Fail, Inconclusive, Vacuous };

const char* to_string(Verdict v);

// (lambda, mu) with lambda normalized to sum 1. Support flags record which
// entries were forced to zero by the direction's index sets.
struct MultiplierPair {
    Vector lambda;
    Vector mu;
    std::vector<int> lambda_support;  // objective indices allowed nonzero
    std::vector<int> mu_support;      // constraint indices allowed nonzero
    double stationarity_residual = 0.0;
};

struct DirectionRecord {
    Vector direction;
    bool passed = false;
    std::string reason;
    std::optional<MultiplierPair> multipliers;
    double margin = 0.0;     // maximized strictness margin where applicable
    double curvature = 0.0;  // value of the second-order multiplier combination
    std::vector<std::string> notes;
};

struct ConditionReport {
    std::string check;
    Verdict verdict = Verdict::Inconclusive;
    std::string label;
    std::vector<DirectionRecord> records;
    std::vector<std::string> caveats;
    double margin = 0.0;
    std::optional<Vector> witness;
    std::uint64_t seed = 0;
    int samples = 0;
};

// Sufficient certificate for the Abadie second-order constraint qualification
// at x w.r.t. u: the strict system <grad g_i(x), w> + <zeta*_i, u> < 0 over
// I(x; u) has a solution. FAIL means "not certified", not a refutation.
ConditionReport check_ascq(const ProblemSpec& p, const Vector& x, const Vector& u,
                           const Config& cfg = {});

// First-order necessary condition: PASS iff no u solves
// <grad f_l, u> < 0 for all l, <grad g_i, u> <= 0 for active i.
ConditionReport check_first_order(const ProblemSpec& p, const Vector& x,
                                  const Config& cfg = {});

// Second-order KKT necessary-condition multiplier search at a critical
// direction. FAIL means no multipliers exist, which (under ASCQ) refutes
// local weak efficiency of x.
ConditionReport necessary_multipliers(const ProblemSpec& p, const Vector& x,
                                      const Vector& u_bar, const Config& cfg = {});

// Runs the necessary-condition search over a sampled set of critical
// directions; VACUOUS when C(x) \ {0} is empty.
ConditionReport necessary_scan(const ProblemSpec& p, const Vector& x, int samples,
                               std::uint64_t seed, const Config& cfg = {});

// Strong second-order KKT sufficient certificate for local efficiency,
// sampled over C(x) \ {0}. VACUOUS (no nonzero critical direction) certifies
// outright; CERTIFIED is sampling-based and labeled as such.
ConditionReport certify_sufficient(const ProblemSpec& p, const Vector& x, int samples,
                                   std::uint64_t seed, const Config& cfg = {});

}  // namespace sokkt
