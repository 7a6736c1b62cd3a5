#include "stabcat/quiver.hpp"

#include <algorithm>
#include <set>

#include "stabcat/errors.hpp"

namespace stabcat {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_index_.emplace(vertices_[i], static_cast<int>(i)).second)
            throw ValidationError("duplicate vertex label '" + vertices_[i] + "'");
    }
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow& a = arrows_[i];
        if (!arrow_index_.emplace(a.name, static_cast<int>(i)).second)
            throw ValidationError("duplicate arrow name '" + a.name + "'");
        if (a.from < 0 || a.from >= static_cast<int>(vertices_.size()) || a.to < 0 ||
            a.to >= static_cast<int>(vertices_.size()))
            throw ValidationError("arrow '" + a.name + "' references an undeclared vertex");
    }
}

int Quiver::vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) throw UnknownReferenceError("unknown vertex '" + name + "'");
    return it->second;
}

int Quiver::arrow_index(const std::string& name) const {
    auto it = arrow_index_.find(name);
    if (it == arrow_index_.end()) throw UnknownReferenceError("unknown arrow '" + name + "'");
    return it->second;
}

std::optional<int> Quiver::try_vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Quiver::try_arrow_index(const std::string& name) const {
    auto it = arrow_index_.find(name);
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

Quiver Quiver::reversed() const {
    std::vector<Arrow> rev = arrows_;
    for (Arrow& a : rev) std::swap(a.from, a.to);
    return Quiver(vertices_, std::move(rev));
}

PathAlgebra::PathAlgebra(Quiver quiver, std::vector<std::vector<int>> relations, FieldSpec field, std::size_t len_cap)
    : quiver_(std::move(quiver)), relations_(std::move(relations)), field_(field), len_cap_(len_cap) {
    for (const auto& rel : relations_) {
        if (rel.size() < 2) throw InvalidRelationError("relation shorter than 2 arrows");
        for (std::size_t i = 0; i + 1 < rel.size(); ++i)
            if (quiver_.arrow(rel[i]).to != quiver_.arrow(rel[i + 1]).from)
                throw InvalidRelationError("relation is not a composable arrow sequence");
    }
    enumerate_paths();
}

bool PathAlgebra::word_has_relation_suffix(const std::vector<int>& word) const {
    for (const auto& rel : relations_) {
        if (rel.size() > word.size()) continue;
        if (std::equal(rel.begin(), rel.end(), word.end() - static_cast<std::ptrdiff_t>(rel.size()))) return true;
    }
    return false;
}

void PathAlgebra::enumerate_paths() {
    const std::size_t nv = quiver_.num_vertices();
    const std::size_t na = quiver_.num_arrows();
    paths_from_.assign(nv, {});
    paths_to_.assign(nv, {});
    trivial_.assign(nv, -1);

    auto add_path = [&](Path p) -> int {
        int id = static_cast<int>(paths_.size());
        index_.emplace(std::make_pair(p.from, p.arrows), id);
        paths_from_[static_cast<std::size_t>(p.from)].push_back(id);
        paths_to_[static_cast<std::size_t>(p.to)].push_back(id);
        paths_.push_back(std::move(p));
        return id;
    };

    std::vector<int> frontier;
    for (std::size_t v = 0; v < nv; ++v) {
        int id = add_path(Path{static_cast<int>(v), static_cast<int>(v), {}});
        trivial_[v] = id;
        frontier.push_back(id);
    }

    // breadth-first by length; a new factor can only appear as a suffix
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int pid : frontier) {
            Path base = paths_[static_cast<std::size_t>(pid)];
            for (std::size_t a = 0; a < na; ++a) {
                const Arrow& arr = quiver_.arrow(static_cast<int>(a));
                if (arr.from != base.to) continue;
                std::vector<int> word = base.arrows;
                word.push_back(static_cast<int>(a));
                if (word_has_relation_suffix(word)) continue;
                if (word.size() > len_cap_)
                    throw InfiniteDimensionalError("path basis exceeds the length cap of " + std::to_string(len_cap_));
                next.push_back(add_path(Path{base.from, arr.to, std::move(word)}));
            }
        }
        frontier = std::move(next);
    }

    extension_.assign(paths_.size(), std::vector<int>(na, -1));
    for (std::size_t pid = 0; pid < paths_.size(); ++pid) {
        const Path& p = paths_[pid];
        for (std::size_t a = 0; a < na; ++a) {
            if (quiver_.arrow(static_cast<int>(a)).from != p.to) continue;
            std::vector<int> word = p.arrows;
            word.push_back(static_cast<int>(a));
            auto it = index_.find(std::make_pair(p.from, word));
            if (it != index_.end()) extension_[pid][a] = it->second;
        }
    }
}

std::optional<int> PathAlgebra::find_path(int from, const std::vector<int>& arrows) const {
    auto it = index_.find(std::make_pair(from, arrows));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int PathAlgebra::prepend(const std::vector<int>& prefix_arrows, int path_id) const {
    const Path& p = path(path_id);
    if (prefix_arrows.empty()) return path_id;
    int from = quiver_.arrow(prefix_arrows.front()).from;
    std::vector<int> word = prefix_arrows;
    word.insert(word.end(), p.arrows.begin(), p.arrows.end());
    auto it = index_.find(std::make_pair(from, word));
    return it == index_.end() ? -1 : it->second;
}

std::string PathAlgebra::path_display(int id) const {
    const Path& p = path(id);
    if (p.arrows.empty()) return "e_" + quiver_.vertex_name(p.from);
    std::string out;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) out += "*";
        out += quiver_.arrow(p.arrows[i]).name;
    }
    return out;
}

std::shared_ptr<const PathAlgebra> PathAlgebra::opposite() const {
    std::lock_guard<std::mutex> lock(opposite_mutex_);
    if (auto cached = opposite_.lock()) return cached;
    std::vector<std::vector<int>> rev_relations = relations_;
    for (auto& rel : rev_relations) std::reverse(rel.begin(), rel.end());
    auto op = std::shared_ptr<PathAlgebra>(new PathAlgebra(quiver_.reversed(), std::move(rev_relations), field_, len_cap_));
    // strong link one way only, so the pair does not form a cycle
    op->opposite_keepalive_ = shared_from_this();
    op->opposite_ = shared_from_this();
    opposite_ = op;
    return op;
}

std::shared_ptr<const PathAlgebra> build_algebra(const Quiver& quiver,
                                                 const std::vector<std::vector<std::string>>& relations,
                                                 FieldSpec field, std::size_t len_cap) {
    std::vector<std::vector<int>> rel_ids;
    rel_ids.reserve(relations.size());
    for (const auto& rel : relations) {
        std::vector<int> ids;
        ids.reserve(rel.size());
        for (const auto& name : rel) {
            auto idx = quiver.try_arrow_index(name);
            if (!idx) throw InvalidRelationError("relation references unknown arrow '" + name + "'");
            ids.push_back(*idx);
        }
        rel_ids.push_back(std::move(ids));
    }
    return std::shared_ptr<const PathAlgebra>(new PathAlgebra(quiver, std::move(rel_ids), field, len_cap));
}

}  // namespace stabcat
