#include "stabcat/workspace.hpp"

#include <algorithm>

#include "stabcat/errors.hpp"

namespace stabcat {

const Representation& Workspace::module(const std::string& name) const {
    for (const auto& [n, m] : modules)
        if (n == name) return m;
    throw UnknownReferenceError("unknown module '" + name + "'");
}

const Morphism& Workspace::morphism(const std::string& name) const {
    for (const auto& [n, m] : morphisms)
        if (n == name) return m;
    throw UnknownReferenceError("unknown morphism '" + name + "'");
}

const std::vector<std::string>& Workspace::subcategory(const std::string& name) const {
    for (const auto& [n, m] : subcategories)
        if (n == name) return m;
    throw UnknownReferenceError("unknown subcategory '" + name + "'");
}

const std::vector<std::string>& Workspace::serre_support(const std::string& name) const {
    for (const auto& [n, m] : serre_supports)
        if (n == name) return m;
    throw UnknownReferenceError("unknown serre support '" + name + "'");
}

std::vector<Representation> Workspace::subcategory_modules(const std::string& name) const {
    std::vector<Representation> out;
    for (const std::string& mod : subcategory(name)) out.push_back(module(mod));
    return out;
}

std::vector<Representation> Workspace::all_modules() const {
    std::vector<Representation> out;
    out.reserve(modules.size());
    for (const auto& [n, m] : modules) out.push_back(m);
    return out;
}

void Workspace::validate() const {
    for (const auto& [name, m] : modules) m.validate("module '" + name + "'");
    for (const auto& [name, f] : morphisms) f.validate("morphism '" + name + "'");
    for (const auto& [name, members] : subcategories)
        for (const std::string& mod : members) module(mod);
    for (const auto& [name, verts] : serre_supports)
        for (const std::string& v : verts) algebra->quiver().vertex_index(v);
}

bool Workspace::operator==(const Workspace& o) const {
    if (!(algebra->quiver() == o.algebra->quiver()) || algebra->field() != o.algebra->field()) return false;
    if (algebra->relations() != o.algebra->relations()) return false;
    return modules == o.modules && morphisms == o.morphisms && subcategories == o.subcategories &&
           serre_supports == o.serre_supports;
}

namespace {

Matrix matrix_from_json(const FieldSpec& f, const Json& rows, std::size_t expect_rows, std::size_t expect_cols,
                        const std::string& where) {
    if (!rows.is_array()) throw ParseError(where + ": matrix must be an array of rows");
    if (rows.size() != expect_rows)
        throw ValidationError(where + ": expected " + std::to_string(expect_rows) + " rows, got " +
                              std::to_string(rows.size()));
    Matrix m(f, expect_rows, expect_cols);
    for (std::size_t r = 0; r < expect_rows; ++r) {
        const Json& row = rows[r];
        if (!row.is_array() || row.size() != expect_cols)
            throw ValidationError(where + ": row " + std::to_string(r) + " must have " + std::to_string(expect_cols) +
                                  " entries");
        for (std::size_t c = 0; c < expect_cols; ++c) {
            if (!row[c].is_number_integer()) throw ParseError(where + ": matrix entries must be integers");
            m.set(r, c, f.reduce(row[c].get<long long>()));
        }
    }
    return m;
}

}  // namespace

Workspace parse_workspace(const std::string& text, std::size_t len_cap) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("workspace document: ") + e.what());
    }
    return parse_workspace_json(doc, len_cap);
}

Workspace parse_workspace_json(const Json& doc, std::size_t len_cap) {
    if (!doc.is_object()) throw ParseError("workspace document must be a JSON object");

    std::uint32_t p = 101;
    if (doc.contains("field")) {
        if (!doc["field"].is_object() || !doc["field"].contains("p"))
            throw ParseError("field must be an object with key 'p'");
        p = doc["field"]["p"].get<std::uint32_t>();
    }
    FieldSpec field(p);

    if (!doc.contains("quiver")) throw ParseError("workspace document is missing 'quiver'");
    const Json& jq = doc["quiver"];
    std::vector<std::string> vertices;
    for (const Json& v : jq.value("vertices", Json::array())) vertices.push_back(v.get<std::string>());
    std::vector<Arrow> arrows;
    for (const Json& a : jq.value("arrows", Json::array())) {
        if (!a.contains("name") || !a.contains("from") || !a.contains("to"))
            throw ParseError("arrow entries need name/from/to");
        Arrow arrow;
        arrow.name = a["name"].get<std::string>();
        std::string from = a["from"].get<std::string>();
        std::string to = a["to"].get<std::string>();
        auto fi = std::find(vertices.begin(), vertices.end(), from);
        auto ti = std::find(vertices.begin(), vertices.end(), to);
        if (fi == vertices.end() || ti == vertices.end())
            throw UnknownReferenceError("arrow '" + arrow.name + "' references an undeclared vertex");
        arrow.from = static_cast<int>(fi - vertices.begin());
        arrow.to = static_cast<int>(ti - vertices.begin());
        arrows.push_back(std::move(arrow));
    }
    Quiver quiver(std::move(vertices), std::move(arrows));

    std::vector<std::vector<std::string>> relations;
    for (const Json& rel : doc.value("relations", Json::array())) {
        std::vector<std::string> word;
        for (const Json& name : rel) word.push_back(name.get<std::string>());
        relations.push_back(std::move(word));
    }

    Workspace w;
    w.algebra = build_algebra(quiver, relations, field, len_cap);
    const Quiver& q = w.algebra->quiver();

    for (const auto& [name, jm] : doc.value("modules", Json::object()).items()) {
        std::vector<std::size_t> dims(q.num_vertices(), 0);
        for (const auto& [vname, d] : jm.value("dims", Json::object()).items())
            dims[static_cast<std::size_t>(q.vertex_index(vname))] = d.get<std::size_t>();
        std::vector<Matrix> maps;
        const Json& jmaps = jm.value("maps", Json::object());
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
            const Arrow& arr = q.arrow(static_cast<int>(a));
            std::size_t rows = dims[static_cast<std::size_t>(arr.to)];
            std::size_t cols = dims[static_cast<std::size_t>(arr.from)];
            if (jmaps.contains(arr.name))
                maps.push_back(matrix_from_json(field, jmaps[arr.name], rows, cols,
                                                "module '" + name + "', arrow '" + arr.name + "'"));
            else
                maps.emplace_back(field, rows, cols);
        }
        for (const auto& [aname, unused] : jmaps.items())
            if (!q.try_arrow_index(aname))
                throw UnknownReferenceError("module '" + name + "' references unknown arrow '" + aname + "'");
        Representation rep(w.algebra, std::move(dims), std::move(maps));
        rep.validate("module '" + name + "'");
        w.modules.emplace_back(name, std::move(rep));
    }

    for (const auto& [name, jf] : doc.value("morphisms", Json::object()).items()) {
        if (!jf.contains("from") || !jf.contains("to")) throw ParseError("morphism '" + name + "' needs from/to");
        const Representation& src = w.module(jf["from"].get<std::string>());
        const Representation& dst = w.module(jf["to"].get<std::string>());
        std::vector<Matrix> maps;
        const Json& jmaps = jf.value("maps", Json::object());
        for (std::size_t v = 0; v < q.num_vertices(); ++v) {
            const std::string& vname = q.vertex_name(static_cast<int>(v));
            std::size_t rows = dst.dim(static_cast<int>(v));
            std::size_t cols = src.dim(static_cast<int>(v));
            if (jmaps.contains(vname))
                maps.push_back(matrix_from_json(field, jmaps[vname], rows, cols,
                                                "morphism '" + name + "', vertex '" + vname + "'"));
            else
                maps.emplace_back(field, rows, cols);
        }
        Morphism f(src, dst, std::move(maps));
        f.validate("morphism '" + name + "'");
        w.morphisms.emplace_back(name, std::move(f));
    }

    for (const auto& [name, jlist] : doc.value("subcategories", Json::object()).items()) {
        std::vector<std::string> members;
        for (const Json& m : jlist) {
            members.push_back(m.get<std::string>());
            w.module(members.back());  // resolve now
        }
        w.subcategories.emplace_back(name, std::move(members));
    }

    for (const auto& [name, jlist] : doc.value("serre", Json::object()).items()) {
        std::vector<std::string> verts;
        for (const Json& v : jlist) {
            verts.push_back(v.get<std::string>());
            q.vertex_index(verts.back());
        }
        w.serre_supports.emplace_back(name, std::move(verts));
    }

    return w;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json representation_to_json(const Workspace& w, const Representation& m) {
    const Quiver& q = w.algebra->quiver();
    Json jm = Json::object();
    Json dims = Json::object();
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        if (m.dim(static_cast<int>(v)) > 0) dims[q.vertex_name(static_cast<int>(v))] = m.dim(static_cast<int>(v));
    jm["dims"] = std::move(dims);
    Json maps = Json::object();
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Matrix& mat = m.map(static_cast<int>(a));
        if (mat.rows() * mat.cols() == 0 || mat.is_zero()) continue;
        maps[q.arrow(static_cast<int>(a)).name] = matrix_to_json(mat);
    }
    jm["maps"] = std::move(maps);
    return jm;
}

Json morphism_to_json(const Workspace& w, const Morphism& f) {
    const Quiver& q = w.algebra->quiver();
    Json jf = Json::object();
    Json maps = Json::object();
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        const Matrix& mat = f.map(static_cast<int>(v));
        if (mat.rows() * mat.cols() == 0 || mat.is_zero()) continue;
        maps[q.vertex_name(static_cast<int>(v))] = matrix_to_json(mat);
    }
    jf["maps"] = std::move(maps);
    return jf;
}

Json export_workspace(const Workspace& w) {
    const Quiver& q = w.algebra->quiver();
    Json doc = Json::object();
    doc["field"] = Json::object({{"p", w.field().p()}});

    Json jq = Json::object();
    jq["vertices"] = q.vertices();
    Json arrows = Json::array();
    for (const Arrow& a : q.arrows())
        arrows.push_back(Json::object(
            {{"name", a.name}, {"from", q.vertex_name(a.from)}, {"to", q.vertex_name(a.to)}}));
    jq["arrows"] = std::move(arrows);
    doc["quiver"] = std::move(jq);

    Json rels = Json::array();
    for (const auto& rel : w.algebra->relations()) {
        Json word = Json::array();
        for (int a : rel) word.push_back(q.arrow(a).name);
        rels.push_back(std::move(word));
    }
    doc["relations"] = std::move(rels);

    Json modules = Json::object();
    for (const auto& [name, m] : w.modules) modules[name] = representation_to_json(w, m);
    doc["modules"] = std::move(modules);

    Json morphisms = Json::object();
    for (const auto& [name, f] : w.morphisms) {
        Json jf = morphism_to_json(w, f);
        Json entry = Json::object();
        // locate the named endpoints for the schema's from/to fields
        std::string from, to;
        for (const auto& [mn, mm] : w.modules) {
            if (from.empty() && mm == f.source()) from = mn;
            if (to.empty() && mm == f.target()) to = mn;
        }
        entry["from"] = from;
        entry["to"] = to;
        entry["maps"] = jf["maps"];
        morphisms[name] = std::move(entry);
    }
    doc["morphisms"] = std::move(morphisms);

    Json subs = Json::object();
    for (const auto& [name, members] : w.subcategories) subs[name] = members;
    doc["subcategories"] = std::move(subs);

    Json serre = Json::object();
    for (const auto& [name, verts] : w.serre_supports) serre[name] = verts;
    doc["serre"] = std::move(serre);

    return doc;
}

}  // namespace stabcat
