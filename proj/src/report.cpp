#include "sokkt/report.hpp"

#include <sstream>

namespace sokkt {

Json json_vector(const Vector& v) {
    Json arr = Json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Json json_config(const Config& cfg) {
    Json j;
    j["activity_tol"] = cfg.activity_tol;
    j["symmetry_tol"] = cfg.symmetry_tol;
    j["sandwich_rel_tol"] = cfg.sandwich_rel_tol;
    j["strict_tol"] = cfg.strict_tol;
    j["feas_tol"] = cfg.feas_tol;
    j["dom_tol"] = cfg.dom_tol;
    j["zero_tol"] = cfg.zero_tol;
    j["lp_pivot_tol"] = cfg.lp_pivot_tol;
    j["box_radius"] = cfg.box_radius;
    j["grid_radius"] = cfg.grid_radius;
    j["grid_resolution"] = cfg.grid_resolution;
    j["samples_per_branch"] = cfg.samples_per_branch;
    j["seed"] = cfg.seed;
    j["taylor_segments"] = cfg.taylor_segments;
    return j;
}

Json report_header(const std::string& command, const ProblemSpec& p, const Config& cfg) {
    Json j;
    j["schema"] = 1;
    j["tool"] = "sokkt";
    j["command"] = command;
    Json prob;
    prob["name"] = p.name;
    prob["n"] = p.n;
    prob["objectives"] = p.num_objectives();
    prob["constraints"] = p.num_constraints();
    j["problem"] = prob;
    j["config"] = json_config(cfg);
    return j;
}

namespace {

Json json_multipliers(const MultiplierPair& mp) {
    Json j;
    j["lambda"] = json_vector(mp.lambda);
    j["mu"] = json_vector(mp.mu);
    Json ls = Json::array();
    for (int l : mp.lambda_support) ls.push_back(l + 1);
    Json ms = Json::array();
    for (int i : mp.mu_support) ms.push_back(i + 1);
    j["lambda_support"] = ls;
    j["mu_support"] = ms;
    j["stationarity_residual"] = mp.stationarity_residual;
    return j;
}

}  // namespace

Json report_condition(const std::string& command, const ProblemSpec& p, const Vector& x,
                      const std::optional<Vector>& direction, const ConditionReport& rep,
                      const Config& cfg) {
    Json j = report_header(command, p, cfg);
    j["point"] = json_vector(x);
    if (direction) j["direction"] = json_vector(*direction);
    j["check"] = rep.check;
    j["verdict"] = to_string(rep.verdict);
    j["label"] = rep.label;
    j["margin"] = rep.margin;
    if (rep.witness) j["witness"] = json_vector(*rep.witness);
    if (rep.samples > 0) j["samples"] = rep.samples;
    if (rep.seed != 0 || rep.samples > 0) j["seed"] = rep.seed;
    Json records = Json::array();
    for (const auto& r : rep.records) {
        Json rec;
        rec["direction"] = json_vector(r.direction);
        rec["passed"] = r.passed;
        if (!r.reason.empty()) rec["reason"] = r.reason;
        rec["margin"] = r.margin;
        rec["curvature"] = r.curvature;
        if (r.multipliers) rec["multipliers"] = json_multipliers(*r.multipliers);
        if (!r.notes.empty()) rec["notes"] = r.notes;
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    j["caveats"] = rep.caveats;
    return j;
}

Json report_grid(const std::string& command, const ProblemSpec& p, const Vector& x,
                 const GridResult& res, const GridOracleConfig& gcfg, const Config& cfg) {
    Json j = report_header(command, p, cfg);
    j["point"] = json_vector(x);
    j["check"] = "grid_oracle";
    j["verdict"] = to_string(res.verdict);
    j["label"] = to_string(res.verdict);
    Json g;
    g["radius"] = gcfg.radius;
    g["resolution"] = gcfg.resolution;
    g["mode"] = gcfg.mode == GridMode::Efficient ? "EFFICIENT" : "WEAK";
    g["feas_tol"] = gcfg.feas_tol;
    g["dom_tol"] = gcfg.dom_tol;
    j["grid"] = g;
    j["points_scanned"] = res.points_scanned;
    if (res.witness) j["witness"] = json_vector(*res.witness);
    j["caveats"] = Json::array({"at-scale oracle: the verdict certifies nothing beyond the grid"});
    return j;
}

int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::Pass:
        case Verdict::Vacuous: return 0;
        case Verdict::Fail: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 2;
}

std::string render_text(const Json& report) {
    std::ostringstream os;
    os << "== " << report.value("command", "?") << " ==\n";
    if (report.contains("problem")) {
        const auto& p = report["problem"];
        os << "problem: " << p.value("name", std::string("?")) << "  (n=" << p.value("n", 0)
           << ", m=" << p.value("objectives", 0) << ", p=" << p.value("constraints", 0) << ")\n";
    }
    if (report.contains("point")) os << "point: " << report["point"].dump() << "\n";
    if (report.contains("direction")) os << "direction: " << report["direction"].dump() << "\n";
    if (report.contains("label")) os << "verdict: " << report["label"].get<std::string>() << "\n";
    if (report.contains("margin")) os << "margin: " << report["margin"].dump() << "\n";
    if (report.contains("witness")) os << "witness: " << report["witness"].dump() << "\n";
    if (report.contains("records")) {
        for (const auto& r : report["records"]) {
            os << "  - direction " << r["direction"].dump() << ": "
               << (r.value("passed", false) ? "ok" : "failed");
            if (r.contains("reason")) os << " (" << r["reason"].get<std::string>() << ")";
            if (r.contains("multipliers")) {
                os << "  lambda=" << r["multipliers"]["lambda"].dump()
                   << " mu=" << r["multipliers"]["mu"].dump();
            }
            os << "\n";
        }
    }
    if (report.contains("caveats")) {
        for (const auto& c : report["caveats"]) os << "note: " << c.get<std::string>() << "\n";
    }
    return os.str();
}

}  // namespace sokkt
