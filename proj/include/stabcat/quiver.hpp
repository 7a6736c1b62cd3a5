#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/field.hpp"

namespace stabcat {

struct Arrow {
    std::string name;
    int from = 0;
    int to = 0;
    bool operator==(const Arrow&) const = default;
};

class Quiver {
  public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int a) const { return arrows_[static_cast<std::size_t>(a)]; }
    const std::string& vertex_name(int v) const { return vertices_[static_cast<std::size_t>(v)]; }

    int vertex_index(const std::string& name) const;  // throws UnknownReferenceError
    int arrow_index(const std::string& name) const;
    std::optional<int> try_vertex_index(const std::string& name) const;
    std::optional<int> try_arrow_index(const std::string& name) const;

    Quiver reversed() const;  // same names, endpoints swapped

    bool operator==(const Quiver& o) const { return vertices_ == o.vertices_ && arrows_ == o.arrows_; }

  private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vertex_index_;
    std::map<std::string, int> arrow_index_;
};

/// Arrow-index sequence in application order: arrows[0] acts first.
struct Path {
    int from = 0;
    int to = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
};

/// Finite-dimensional path algebra kQ/I for a monomial ideal I, with the
/// surviving paths as an explicit basis graded by (source, target).
/// A path "ab" means a first, then b; arrows a: i -> j act as maps M_i -> M_j.
class PathAlgebra : public std::enable_shared_from_this<PathAlgebra> {
  public:
    static constexpr std::size_t kDefaultLenCap = 64;

    const Quiver& quiver() const { return quiver_; }
    const FieldSpec& field() const { return field_; }
    std::size_t len_cap() const { return len_cap_; }
    const std::vector<std::vector<int>>& relations() const { return relations_; }

    std::size_t dim() const { return paths_.size(); }
    const std::vector<Path>& paths() const { return paths_; }
    const Path& path(int id) const { return paths_[static_cast<std::size_t>(id)]; }
    /// Basis path ids with the given source vertex, in basis order.
    const std::vector<int>& paths_from(int v) const { return paths_from_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& paths_to(int v) const { return paths_to_[static_cast<std::size_t>(v)]; }
    /// Id of the trivial path at v.
    int trivial_path(int v) const { return trivial_[static_cast<std::size_t>(v)]; }

    /// Basis path of p extended by arrow a at the target, or -1 when it dies in I.
    int extend(int path_id, int arrow) const { return extension_[static_cast<std::size_t>(path_id)][static_cast<std::size_t>(arrow)]; }
    /// Lookup of (source, arrow word); nullopt when the word is not a basis path.
    std::optional<int> find_path(int from, const std::vector<int>& arrows) const;
    /// Concatenation prefix * p (prefix acts first); -1 when it dies in I.
    int prepend(const std::vector<int>& prefix_arrows, int path_id) const;

    std::string path_display(int id) const;

    /// Opposite algebra: arrows reversed, relation words reversed. Involutive
    /// on the shared_ptr level: a->opposite()->opposite() == a.
    std::shared_ptr<const PathAlgebra> opposite() const;

  private:
    friend std::shared_ptr<const PathAlgebra> build_algebra(const Quiver&, const std::vector<std::vector<std::string>>&,
                                                            FieldSpec, std::size_t);
    PathAlgebra(Quiver quiver, std::vector<std::vector<int>> relations, FieldSpec field, std::size_t len_cap);

    void enumerate_paths();
    bool word_has_relation_suffix(const std::vector<int>& word) const;

    Quiver quiver_;
    std::vector<std::vector<int>> relations_;  // arrow ids, application order
    FieldSpec field_;
    std::size_t len_cap_;

    std::vector<Path> paths_;
    std::vector<int> trivial_;
    std::vector<std::vector<int>> paths_from_, paths_to_;
    std::vector<std::vector<int>> extension_;
    std::map<std::pair<int, std::vector<int>>, int> index_;

    mutable std::mutex opposite_mutex_;
    mutable std::shared_ptr<const PathAlgebra> opposite_keepalive_;
    mutable std::weak_ptr<const PathAlgebra> opposite_;
};

/// Builds kQ/I, enumerating the path basis breadth-first and pruning every
/// word with a relation factor. Throws InvalidRelationError for words that are
/// non-composable or shorter than 2, InfiniteDimensionalError when a path
/// survives past len_cap.
std::shared_ptr<const PathAlgebra> build_algebra(const Quiver& quiver,
                                                 const std::vector<std::vector<std::string>>& relations,
                                                 FieldSpec field,
                                                 std::size_t len_cap = PathAlgebra::kDefaultLenCap);

}  // namespace stabcat
