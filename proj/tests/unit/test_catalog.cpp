#include <doctest.h>

#include "sokkt/catalog.hpp"
#include "sokkt/conditions.hpp"
#include "sokkt/oracles.hpp"

using namespace sokkt;

namespace {

std::string run_check(const ProblemSpec& p, const CatalogPoint& pt, const std::string& check,
                      const Config& cfg) {
    if (check == "first_order") return check_first_order(p, pt.point, cfg).label;
    if (check == "ascq") return check_ascq(p, pt.point, *pt.direction, cfg).label;
    if (check == "necessary") return necessary_multipliers(p, pt.point, *pt.direction, cfg).label;
    if (check == "necessary_scan")
        return necessary_scan(p, pt.point, cfg.samples_per_branch, cfg.seed, cfg).label;
    if (check == "certify")
        return certify_sufficient(p, pt.point, cfg.samples_per_branch, cfg.seed, cfg).label;
    if (check == "oracle" || check == "oracle_weak") {
        GridOracleConfig g;
        g.mode = check == "oracle" ? GridMode::Efficient : GridMode::Weak;
        return to_string(grid_local_efficiency(p, pt.point, g).verdict);
    }
    return "UNKNOWN_CHECK";
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("catalog covers the required instance families") {
    bool has_kinked_objective = false, has_kinked_constraint = false, has_biobj = false,
         has_parabola = false, has_second_order_filter = false;
    for (const auto& e : catalog()) {
        for (const auto& f : e.problem.objectives)
            has_kinked_objective = has_kinked_objective || !f.kinks().empty();
        for (const auto& g : e.problem.constraints)
            has_kinked_constraint = has_kinked_constraint || !g.kinks().empty();
        has_biobj = has_biobj || e.problem.num_objectives() > 1;
        has_parabola = has_parabola || e.problem.name == "parabola";
        has_second_order_filter = has_second_order_filter || e.problem.name == "negsq";
    }
    CHECK(has_kinked_objective);
    CHECK(has_kinked_constraint);
    CHECK(has_biobj);
    CHECK(has_parabola);
    CHECK(has_second_order_filter);
    CHECK(catalog().size() >= 10);
}

TEST_CASE("every expected verdict carries a provenance note") {
    for (const auto& e : catalog())
        for (const auto& pt : e.points)
            for (const auto& exp : pt.expected) {
                CHECK_FALSE(exp.note.empty());
                CHECK_FALSE(exp.verdict.empty());
            }
}

TEST_CASE("regression: every expected verdict is reproduced under default config") {
    const Config cfg;
    for (const auto& e : catalog()) {
        for (const auto& pt : e.points) {
            for (const auto& exp : pt.expected) {
                const std::string actual = run_check(e.problem, pt, exp.check, cfg);
                INFO(e.problem.name, " ", exp.check, ": expected ", exp.verdict, ", got ",
                     actual, " [", exp.note, "]");
                CHECK(actual.rfind(exp.verdict, 0) == 0);
            }
        }
    }
}

}  // TEST_SUITE
