#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stabcat/representation.hpp"

namespace stabcat {

using Json = nlohmann::ordered_json;

/// A parsed document: one algebra plus named modules, morphisms, subcategory
/// generator lists and Serre supports, in declaration order.
struct Workspace {
    std::shared_ptr<const PathAlgebra> algebra;
    std::vector<std::pair<std::string, Representation>> modules;
    std::vector<std::pair<std::string, Morphism>> morphisms;
    std::vector<std::pair<std::string, std::vector<std::string>>> subcategories;
    std::vector<std::pair<std::string, std::vector<std::string>>> serre_supports;

    const FieldSpec& field() const { return algebra->field(); }

    const Representation& module(const std::string& name) const;
    const Morphism& morphism(const std::string& name) const;
    const std::vector<std::string>& subcategory(const std::string& name) const;
    const std::vector<std::string>& serre_support(const std::string& name) const;
    std::vector<Representation> subcategory_modules(const std::string& name) const;
    std::vector<Representation> all_modules() const;

    void validate() const;

    bool operator==(const Workspace& o) const;
};

/// Parses and fully validates a workspace document. Throws ParseError,
/// ValidationError (with the entity name) or UnknownReferenceError.
Workspace parse_workspace(const std::string& text, std::size_t len_cap = PathAlgebra::kDefaultLenCap);
Workspace parse_workspace_json(const Json& doc, std::size_t len_cap = PathAlgebra::kDefaultLenCap);

Json export_workspace(const Workspace& w);

Json matrix_to_json(const Matrix& m);
Json morphism_to_json(const Workspace& w, const Morphism& f);
Json representation_to_json(const Workspace& w, const Representation& m);

}  // namespace stabcat
