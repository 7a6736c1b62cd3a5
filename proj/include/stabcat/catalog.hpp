#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stabcat/workspace.hpp"

namespace stabcat {

struct ExpectedFact {
    std::string check;
    Json args;
    Json expected;
    std::string note;
};

/// A named algebra with modules, morphisms, subcategory generators and the
/// facts the suite asserts about them.
struct Scenario {
    std::string name;
    Workspace workspace;
    std::vector<ExpectedFact> facts;
    std::string notes;
};

/// Built-in presets: "a3", "six_vertex", "a2_serre", "tn(n)".
///
/// Cyclic modules named Ae_i are the path-source projectives projective(i);
/// the six-vertex quiver is stored with arrows oriented so this holds, and the
/// a3 preset's projective-injective generator is P1 for the quiver 1->2->3.
Scenario builtin_scenario(const std::string& name, FieldSpec field);

bool is_known_scenario(const std::string& name);

/// Evaluates one expected fact against the workspace; the result is compared
/// with fact.expected by the callers.
Json evaluate_fact(const Workspace& w, const ExpectedFact& fact, std::uint64_t seed = 1, std::size_t budget = 20000);

}  // namespace stabcat
