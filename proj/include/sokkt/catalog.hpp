#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sokkt/model.hpp"

namespace sokkt {

// One expected checker outcome at a catalog point, with the derivation note
// that justifies it.
struct ExpectedVerdict {
    std::string check;    // first_order | ascq | necessary | necessary_scan | certify |
                          // oracle | oracle_weak
    std::string verdict;  // the label the checker must produce
    std::string note;     // how the expectation was derived
};

struct CatalogPoint {
    Vector point;
    std::optional<Vector> direction;
    std::vector<ExpectedVerdict> expected;
    // Whether the KKT multiplier pair at this point/direction is unique, so
    // rescaling tests may compare multipliers and not just verdicts.
    bool multipliers_unique = false;
};

struct CatalogEntry {
    ProblemSpec problem;
    std::vector<CatalogPoint> points;
};

// Built-in problem suite with hand-derived ground truth. Instances exercise
// every checker: smooth/kinked objectives and constraints, vacuous critical
// cones, certificate failures, and a first-order-passing second-order-failing
// point.
const std::vector<CatalogEntry>& catalog();

}  // namespace sokkt
