#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sokkt/calculus.hpp"
#include "sokkt/catalog.hpp"
#include "sokkt/conditions.hpp"
#include "sokkt/cones.hpp"
#include "sokkt/oracles.hpp"
#include "sokkt/problem_io.hpp"
#include "sokkt/report.hpp"

namespace py = pybind11;
using namespace sokkt;

namespace {

// Reports cross the boundary as JSON strings; the python wrapper turns them
// into dicts.
std::string condition_json(const std::string& command, const ProblemSpec& p, const Vector& x,
                           const std::optional<Vector>& u, const ConditionReport& rep,
                           const Config& cfg) {
    return report_condition(command, p, x, u, rep, cfg).dump();
}

Config config_with(std::uint64_t seed, int samples) {
    Config cfg;
    if (seed != 0) cfg.seed = seed;
    if (samples > 0) cfg.samples_per_branch = samples;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "second-order KKT analysis for C^{1,1} vector optimization problems";

    py::class_<FunctionSpec>(m, "Function")
        .def_property_readonly("dim", &FunctionSpec::dim)
        .def("__call__", &FunctionSpec::eval, py::arg("x"))
        .def("eval", &FunctionSpec::eval, py::arg("x"))
        .def("grad", &FunctionSpec::grad, py::arg("x"))
        .def("active_kinks", &FunctionSpec::active_kinks, py::arg("x"),
             py::arg("tol") = Config{}.activity_tol);

    py::class_<ProblemSpec>(m, "Problem")
        .def_readonly("n", &ProblemSpec::n)
        .def_readonly("name", &ProblemSpec::name)
        .def_property_readonly("m", &ProblemSpec::num_objectives)
        .def_property_readonly("p", &ProblemSpec::num_constraints)
        .def("objective",
             [](const ProblemSpec& p, int l) {
                 if (l < 0 || l >= p.num_objectives()) throw py::index_error();
                 return p.objectives[l];
             })
        .def("constraint",
             [](const ProblemSpec& p, int i) {
                 if (i < 0 || i >= p.num_constraints()) throw py::index_error();
                 return p.constraints[i];
             })
        .def("is_feasible",
             [](const ProblemSpec& p, const Vector& x, double tol) {
                 return p.is_feasible(x, tol, nullptr);
             },
             py::arg("x"), py::arg("tol") = Config{}.feas_tol);

    m.def("parse_problem", [](const std::string& text) {
        ParsedProblem pp = parse_problem(text);
        py::dict named_points, named_directions;
        for (const auto& [k, v] : pp.points) named_points[py::str(k)] = v;
        for (const auto& [k, v] : pp.directions) named_directions[py::str(k)] = v;
        return py::make_tuple(pp.problem, named_points, named_directions);
    });
    m.def("serialize_problem",
          [](const ProblemSpec& p) { return serialize_problem(p, {}, {}); });

    m.def("sosd_support",
          [](const FunctionSpec& f, const Vector& x, const Vector& u) {
              const SupportValues sv = sosd_support(f, x, u);
              return py::make_tuple(sv.smax, sv.smin, sv.exact);
          },
          py::arg("f"), py::arg("x"), py::arg("u"),
          "max/min support values of the limiting second-order subdifferential");
    m.def("piece_hessians",
          [](const FunctionSpec& f, const Vector& x) {
              const HessianSet hs = piece_hessians(f, x, Config{}.activity_tol);
              return py::make_tuple(hs.matrices, hs.patterns, hs.exact);
          },
          py::arg("f"), py::arg("x"));
    m.def("taylor_sandwich",
          [](const FunctionSpec& f, const Vector& a, const Vector& b, int segments) {
              const TaylorReport r = taylor_sandwich(f, a, b, segments);
              py::dict d;
              d["delta"] = r.delta;
              d["lower"] = r.lower;
              d["upper"] = r.upper;
              d["witness_lower"] = r.witness_lower;
              d["witness_upper"] = r.witness_upper;
              d["holds"] = r.holds;
              return d;
          },
          py::arg("f"), py::arg("a"), py::arg("b"), py::arg("segments") = 16);

    m.def("critical_directions",
          [](const ProblemSpec& p, const Vector& x, int count, std::uint64_t seed) {
              return sample_critical_directions(critical_cone(p, x), count, seed);
          },
          py::arg("problem"), py::arg("x"), py::arg("count") = 64, py::arg("seed") = 42);

    m.def("check_ascq_json",
          [](const ProblemSpec& p, const Vector& x, const Vector& u) {
              Config cfg;
              return condition_json("check-ascq", p, x, u, check_ascq(p, x, u, cfg), cfg);
          });
    m.def("check_first_order_json", [](const ProblemSpec& p, const Vector& x) {
        Config cfg;
        return condition_json("check-first-order", p, x, std::nullopt,
                              check_first_order(p, x, cfg), cfg);
    });
    m.def("necessary_multipliers_json",
          [](const ProblemSpec& p, const Vector& x, const Vector& u) {
              Config cfg;
              return condition_json("check-necessary", p, x, u,
                                    necessary_multipliers(p, x, u, cfg), cfg);
          });
    m.def("certify_sufficient_json",
          [](const ProblemSpec& p, const Vector& x, int samples, std::uint64_t seed) {
              const Config cfg = config_with(seed, samples);
              return condition_json("certify", p, x, std::nullopt,
                                    certify_sufficient(p, x, cfg.samples_per_branch, cfg.seed,
                                                       cfg),
                                    cfg);
          },
          py::arg("problem"), py::arg("x"), py::arg("samples") = 64, py::arg("seed") = 42);
    m.def("grid_oracle_json",
          [](const ProblemSpec& p, const Vector& x, double radius, int resolution, bool weak) {
              GridOracleConfig g;
              g.radius = radius;
              g.resolution = resolution;
              g.mode = weak ? GridMode::Weak : GridMode::Efficient;
              const Config cfg;
              return report_grid("oracle", p, x, grid_local_efficiency(p, x, g), g, cfg).dump();
          },
          py::arg("problem"), py::arg("x"), py::arg("radius") = 0.25,
          py::arg("resolution") = 41, py::arg("weak") = false);
    m.def("tangent2_membership",
          [](const ProblemSpec& p, const Vector& x, const Vector& u, const Vector& v) {
              return std::string(to_string(
                  tangent2_membership(p, x, u, v, TangentProbeSchedule::standard())));
          });
    m.def("membership_l2",
          [](const ProblemSpec& p, const Vector& x, const Vector& u, const Vector& v,
             bool lower) {
              return membership_L2(p, x, u, v, lower ? L2Variant::Lower : L2Variant::Upper);
          },
          py::arg("problem"), py::arg("x"), py::arg("u"), py::arg("v"),
          py::arg("lower") = true);
    m.def("fd_validate", &fd_validate, py::arg("f"), py::arg("trials") = 100,
          py::arg("seed") = 42);

    m.def("catalog_names", []() {
        std::vector<std::string> names;
        for (const auto& e : catalog()) names.push_back(e.problem.name);
        return names;
    });
    m.def("catalog_problem", [](const std::string& name) {
        for (const auto& e : catalog())
            if (e.problem.name == name) return e.problem;
        throw py::key_error(name);
    });
}
