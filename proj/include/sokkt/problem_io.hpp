#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "sokkt/catalog.hpp"
#include "sokkt/config.hpp"
#include "sokkt/model.hpp"
#include "sokkt/oracles.hpp"

namespace sokkt {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column);
    int line;
    int column;
};

struct ParsedProblem {
    ProblemSpec problem;
    std::map<std::string, Vector> points;
    std::map<std::string, Vector> directions;
    Config config;
    GridOracleConfig grid;
};

// Text format: statements separated by ';' or newline, '#' comments.
//   n = 2
//   name = widget
//   objective f1 = 1*x1^2 + 0.5*x1*x2 - 3
//   constraint g1 = 1*plusquad(x1 + 2*x2 - 1) - 1*x2
//   point p1 = (0, 0)
//   direction u1 = (1, 0)
//   config seed = 7
// Unknown keys are rejected; kink hyperplane merging happens on construction.
ParsedProblem parse_problem(const std::string& text);

std::string serialize_problem(const ProblemSpec& p,
                              const std::map<std::string, Vector>& points = {},
                              const std::map<std::string, Vector>& directions = {});

// Canonical file content for a catalog entry (points named p1..., directions
// u1...).
std::string serialize_catalog_entry(const CatalogEntry& entry);

// Shortest round-trip decimal formatting.
std::string format_double(double v);

}  // namespace sokkt
