#pragma once

#include <string>

#include <json.hpp>

#include "eqm/field.hpp"
#include "eqm/onecut.hpp"
#include "eqm/pipeline.hpp"

namespace eqm {

/// Problem file: {"field": {...}, "ansatz": "auto", "solver": {"tol", "max_iter"},
/// "output": {"dir"}}. Only "field" is required; a bare field object is also
/// accepted.
struct ProblemFile {
    FieldSpec field;
    pipeline::Ansatz ansatz = pipeline::Ansatz::automatic;
    SolverOptions solver;
    std::string output_dir;
};

ProblemFile problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemFile& p);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string emit_problem(const ProblemFile& p);
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

}  // namespace eqm
