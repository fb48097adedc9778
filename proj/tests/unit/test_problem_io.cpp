#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sokkt/catalog.hpp"
#include "sokkt/cli.hpp"
#include "sokkt/conditions.hpp"
#include "sokkt/problem_io.hpp"

using namespace sokkt;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("problem_io") {

TEST_CASE("parses the minimal quadratic problem") {
    const ParsedProblem pp = parse_problem("n=1; objective f1 = 1*x1^2; constraint g1 = -1*x1;");
    CHECK(pp.problem.n == 1);
    CHECK(pp.problem.num_objectives() == 1);
    CHECK(pp.problem.num_constraints() == 1);
    Vector x(1);
    x << 3.0;
    CHECK(pp.problem.objectives[0].eval(x) == doctest::Approx(9.0));
    CHECK(pp.problem.constraints[0].eval(x) == doctest::Approx(-3.0));
}

TEST_CASE("parses kink atoms") {
    const ParsedProblem pp = parse_problem("n=1\nobjective f1 = 1*signquad(x1)");
    REQUIRE(pp.problem.objectives[0].kinks().size() == 1);
    CHECK(pp.problem.objectives[0].kinks()[0].kind == KinkKind::SignQuad);
    Vector x(1);
    x << -2.0;
    CHECK(pp.problem.objectives[0].eval(x) == doctest::Approx(-4.0));

    const ParsedProblem pq =
        parse_problem("n=2\nobjective f1 = 2*plusquad(x1 + 2*x2 - 1) + 0.5*x2^2");
    REQUIRE(pq.problem.objectives[0].kinks().size() == 1);
    Vector y(2);
    y << 1.0, 1.0;  // affine = 1 + 2 - 1 = 2 -> 2 * 4 + 0.5
    CHECK(pq.problem.objectives[0].eval(y) == doctest::Approx(8.5));
}

TEST_CASE("rejects unknown variables with position info") {
    try {
        parse_problem("n=2\nobjective f1 = 1*x3");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("x3") != std::string::npos);
    }
}

TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_problem("objective f1 = 1*x1"), ParseError);  // n missing
    CHECK_THROWS_AS(parse_problem("n=1; frobnicate = 3"), ParseError);
    CHECK_THROWS_AS(parse_problem("n=1; objective f1 = 1*x1^5"), ParseError);
    CHECK_THROWS_AS(parse_problem("n=1; objective f1 = 1*plusquad(1)"), ParseError);
    CHECK_THROWS_AS(parse_problem("n=1; objective f1 = x1*plusquad(x1)"), ParseError);
    CHECK_THROWS_AS(parse_problem("n=1; config bogus_knob = 1"), ParseError);
    CHECK_THROWS_AS(parse_problem("n=2; objective f1 = 1*x1; point a = 0"), ParseError);
    CHECK_THROWS_AS(parse_problem("n=1; objective f1 = 1*x1; objective f1 = 1*x1"), ParseError);
}

TEST_CASE("config overrides are applied") {
    const ParsedProblem pp = parse_problem(
        "n=1\nobjective f1 = 1*x1^2\nconfig seed = 7\nconfig grid_radius = 0.5\n"
        "config samples = 8\nconfig activity_tol = 1e-8");
    CHECK(pp.config.seed == 7);
    CHECK(pp.grid.radius == doctest::Approx(0.5));
    CHECK(pp.config.samples_per_branch == 8);
    CHECK(pp.config.activity_tol == doctest::Approx(1e-8));
}

TEST_CASE("named points and directions round-trip") {
    const ParsedProblem pp = parse_problem(
        "n=2\nobjective f1 = 1*x1\npoint origin = (0, 0)\ndirection east = (1, 0)");
    REQUIRE(pp.points.count("origin"));
    REQUIRE(pp.directions.count("east"));
    CHECK(pp.points.at("origin").isZero());
    CHECK(pp.directions.at("east")[0] == 1.0);
}

TEST_CASE("serialization round-trips every catalog entry") {
    for (const auto& entry : catalog()) {
        const std::string text = serialize_catalog_entry(entry);
        const ParsedProblem pp = parse_problem(text);
        CHECK(pp.problem.n == entry.problem.n);
        CHECK(pp.problem.name == entry.problem.name);
        REQUIRE(pp.problem.num_objectives() == entry.problem.num_objectives());
        REQUIRE(pp.problem.num_constraints() == entry.problem.num_constraints());
        // Re-serialization is a fixed point.
        CHECK(serialize_problem(pp.problem, pp.points, pp.directions) == text);
        // Verdict equivalence on the reparsed problem.
        for (const auto& pt : entry.points) {
            CHECK(check_first_order(pp.problem, pt.point).label ==
                  check_first_order(entry.problem, pt.point).label);
            CHECK(certify_sufficient(pp.problem, pt.point, 16, 42).label ==
                  certify_sufficient(entry.problem, pt.point, 16, 42).label);
        }
    }
}

TEST_CASE("shipped problem files match the catalog serialization") {
    const std::filesystem::path dir = std::filesystem::path(SOKKT_SOURCE_DIR) / "problems";
    for (const auto& entry : catalog()) {
        const auto path = dir / (entry.problem.name + ".prob");
        INFO("problem file ", path.string());
        REQUIRE(std::filesystem::exists(path));
        CHECK(slurp(path) == serialize_catalog_entry(entry));
    }
}

TEST_CASE("cli reports are byte-identical across repeated runs") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "sokkt_io_test";
    fs::create_directories(dir);
    const fs::path prob = dir / "sq.prob";
    {
        std::ofstream out(prob, std::ios::binary);
        out << serialize_catalog_entry(catalog().front());
    }
    auto run_once = [&](const fs::path& json) {
        std::ostringstream out, err;
        const int code = run_command({"analyze", "--problem", prob.string(), "--point", "p1",
                                      "--direction", "u1", "--json", json.string()},
                                     out, err);
        CHECK(code == 0);
        return out.str();
    };
    const fs::path j1 = dir / "r1.json", j2 = dir / "r2.json";
    const std::string text1 = run_once(j1);
    const std::string text2 = run_once(j2);
    CHECK(text1 == text2);
    CHECK(slurp(j1) == slurp(j2));
    CHECK_FALSE(slurp(j1).empty());
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes follow the contract") {
    std::ostringstream out, err;
    CHECK(run_command({"no-such-command"}, out, err) == 3);
    CHECK(run_command({"check-ascq", "--problem", "/nonexistent.prob", "--point", "0",
                       "--direction", "1"},
                      out, err) == 3);
}

}  // TEST_SUITE
