#include "eqm/problem.hpp"

#include <fstream>
#include <sstream>

#include "eqm/errors.hpp"

namespace eqm {

ProblemFile problem_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("problem file must be a JSON object");
    ProblemFile p;
    try {
        if (j.contains("field")) {
            p.field = field_from_json(j.at("field"));
        } else if (j.contains("vstar") || j.contains("p")) {
            p.field = field_from_json(j);
        } else {
            throw ParseError("problem file has no \"field\"");
        }
        if (j.contains("ansatz")) p.ansatz = pipeline::parse_ansatz(j.at("ansatz").get<std::string>());
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            if (s.contains("tol")) p.solver.tol = s.at("tol").get<double>();
            if (s.contains("max_iter")) p.solver.max_iter = s.at("max_iter").get<int>();
        }
        if (j.contains("output") && j.at("output").contains("dir"))
            p.output_dir = j.at("output").at("dir").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid problem file: ") + e.what());
    }
    if (!(p.solver.tol > 0.0) || p.solver.max_iter < 1) throw ParseError("solver options must be positive");
    return p;
}

nlohmann::json problem_to_json(const ProblemFile& p) {
    nlohmann::json j;
    j["field"] = field_to_json(p.field);
    j["ansatz"] = pipeline::ansatz_name(p.ansatz);
    j["solver"] = {{"tol", p.solver.tol}, {"max_iter", p.solver.max_iter}};
    if (!p.output_dir.empty()) j["output"] = {{"dir", p.output_dir}};
    return j;
}

std::string emit_problem(const ProblemFile& p) { return problem_to_json(p).dump(2) + "\n"; }

ProblemFile parse_problem(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return problem_from_json(j);
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

}  // namespace eqm
