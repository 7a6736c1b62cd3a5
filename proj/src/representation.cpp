#include "stabcat/representation.hpp"

#include <algorithm>
#include <numeric>

#include "stabcat/errors.hpp"

namespace stabcat {

Representation::Representation(std::shared_ptr<const PathAlgebra> algebra, std::vector<std::size_t> dims,
                               std::vector<Matrix> arrow_maps)
    : algebra_(std::move(algebra)), dims_(std::move(dims)), arrow_maps_(std::move(arrow_maps)) {}

Representation Representation::zero(std::shared_ptr<const PathAlgebra> algebra) {
    const Quiver& q = algebra->quiver();
    std::vector<std::size_t> dims(q.num_vertices(), 0);
    std::vector<Matrix> maps;
    maps.reserve(q.num_arrows());
    for (std::size_t a = 0; a < q.num_arrows(); ++a) maps.emplace_back(algebra->field(), 0, 0);
    return Representation(std::move(algebra), std::move(dims), std::move(maps));
}

std::size_t Representation::total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

void Representation::validate(const std::string& name) const {
    if (!algebra_) throw ValidationError(name + ": missing algebra");
    const Quiver& q = algebra_->quiver();
    if (dims_.size() != q.num_vertices()) throw ValidationError(name + ": dimension vector length mismatch");
    if (arrow_maps_.size() != q.num_arrows()) throw ValidationError(name + ": arrow map count mismatch");
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        const Matrix& m = arrow_maps_[a];
        if (m.rows() != dim(arr.to) || m.cols() != dim(arr.from))
            throw ValidationError(name + ": map for arrow '" + arr.name + "' has shape " + std::to_string(m.rows()) +
                                  "x" + std::to_string(m.cols()) + ", expected " + std::to_string(dim(arr.to)) + "x" +
                                  std::to_string(dim(arr.from)));
        if (m.field() != algebra_->field()) throw ValidationError(name + ": field mismatch on arrow '" + arr.name + "'");
    }
    for (const auto& rel : algebra_->relations()) {
        // relation word acts as the product of its arrow maps, last factor outermost
        Matrix prod = arrow_maps_[static_cast<std::size_t>(rel.front())];
        for (std::size_t i = 1; i < rel.size(); ++i) prod = arrow_maps_[static_cast<std::size_t>(rel[i])] * prod;
        if (!prod.is_zero()) {
            std::string word;
            for (std::size_t i = 0; i < rel.size(); ++i) {
                if (i) word += "*";
                word += q.arrow(rel[i]).name;
            }
            throw ValidationError(name + ": relation " + word + " does not act as zero");
        }
    }
}

Morphism::Morphism(Representation source, Representation target, std::vector<Matrix> vertex_maps)
    : source_(std::move(source)), target_(std::move(target)), vertex_maps_(std::move(vertex_maps)) {}

Morphism Morphism::zero(const Representation& source, const Representation& target) {
    std::vector<Matrix> maps;
    const std::size_t nv = source.dims().size();
    maps.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v)
        maps.emplace_back(source.algebra()->field(), target.dim(static_cast<int>(v)), source.dim(static_cast<int>(v)));
    return Morphism(source, target, std::move(maps));
}

Morphism Morphism::identity(const Representation& m) {
    std::vector<Matrix> maps;
    maps.reserve(m.dims().size());
    for (std::size_t v = 0; v < m.dims().size(); ++v)
        maps.push_back(Matrix::identity(m.algebra()->field(), m.dim(static_cast<int>(v))));
    return Morphism(m, m, std::move(maps));
}

bool Morphism::is_zero() const {
    return std::all_of(vertex_maps_.begin(), vertex_maps_.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool Morphism::is_vertexwise_injective() const {
    for (const Matrix& m : vertex_maps_)
        if (kernel_basis(m).dim() != 0) return false;
    return true;
}

bool Morphism::is_vertexwise_surjective() const {
    for (const Matrix& m : vertex_maps_)
        if (rref(m).rank != m.rows()) return false;
    return true;
}

Morphism Morphism::operator+(const Morphism& o) const {
    if (source_ != o.source_ || target_ != o.target_) throw ShapeMismatchError("morphism sum endpoint mismatch");
    std::vector<Matrix> maps;
    maps.reserve(vertex_maps_.size());
    for (std::size_t v = 0; v < vertex_maps_.size(); ++v) maps.push_back(vertex_maps_[v] + o.vertex_maps_[v]);
    return Morphism(source_, target_, std::move(maps));
}

Morphism Morphism::operator-(const Morphism& o) const {
    if (source_ != o.source_ || target_ != o.target_) throw ShapeMismatchError("morphism difference endpoint mismatch");
    std::vector<Matrix> maps;
    maps.reserve(vertex_maps_.size());
    for (std::size_t v = 0; v < vertex_maps_.size(); ++v) maps.push_back(vertex_maps_[v] - o.vertex_maps_[v]);
    return Morphism(source_, target_, std::move(maps));
}

Morphism Morphism::scaled(Fel k) const {
    std::vector<Matrix> maps;
    maps.reserve(vertex_maps_.size());
    for (const Matrix& m : vertex_maps_) maps.push_back(m.scaled(k));
    return Morphism(source_, target_, std::move(maps));
}

std::vector<Fel> Morphism::vec() const {
    std::vector<Fel> out;
    out.reserve(vec_size(source_, target_));
    for (const Matrix& m : vertex_maps_) out.insert(out.end(), m.entries().begin(), m.entries().end());
    return out;
}

std::size_t Morphism::vec_size(const Representation& source, const Representation& target) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < source.dims().size(); ++v)
        n += source.dim(static_cast<int>(v)) * target.dim(static_cast<int>(v));
    return n;
}

Morphism Morphism::from_vec(const Representation& source, const Representation& target, const std::vector<Fel>& v) {
    if (v.size() != vec_size(source, target)) throw ShapeMismatchError("vector length mismatch in Morphism::from_vec");
    std::vector<Matrix> maps;
    std::size_t off = 0;
    for (std::size_t vert = 0; vert < source.dims().size(); ++vert) {
        std::size_t rows = target.dim(static_cast<int>(vert));
        std::size_t cols = source.dim(static_cast<int>(vert));
        Matrix m(source.algebra()->field(), rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, v[off + r * cols + c]);
        off += rows * cols;
        maps.push_back(std::move(m));
    }
    return Morphism(source, target, std::move(maps));
}

void Morphism::validate(const std::string& name) const {
    if (source_.algebra() != target_.algebra())
        throw AlgebraMismatchError(name + ": source and target live over different algebras");
    const Quiver& q = source_.algebra()->quiver();
    if (vertex_maps_.size() != q.num_vertices()) throw ValidationError(name + ": vertex map count mismatch");
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        const Matrix& m = vertex_maps_[v];
        if (m.rows() != target_.dim(static_cast<int>(v)) || m.cols() != source_.dim(static_cast<int>(v)))
            throw ValidationError(name + ": map at vertex '" + q.vertex_name(static_cast<int>(v)) + "' has shape " +
                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        Matrix lhs = vertex_maps_[static_cast<std::size_t>(arr.to)] * source_.map(static_cast<int>(a));
        Matrix rhs = target_.map(static_cast<int>(a)) * vertex_maps_[static_cast<std::size_t>(arr.from)];
        if (!(lhs == rhs))
            throw ValidationError(name + ": intertwining fails on arrow '" + arr.name + "'");
    }
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(g.source() == f.target())) throw ShapeMismatchError("compose: inner target differs from outer source");
    std::vector<Matrix> maps;
    maps.reserve(f.maps().size());
    for (std::size_t v = 0; v < f.maps().size(); ++v) maps.push_back(g.map(static_cast<int>(v)) * f.map(static_cast<int>(v)));
    return Morphism(f.source(), g.target(), std::move(maps));
}

namespace {

// local index of each basis path inside a graded path family
struct GradedPaths {
    std::vector<std::vector<int>> by_vertex;   // vertex -> path ids
    std::vector<int> local_index;              // path id -> index within its vertex, -1 otherwise
};

GradedPaths grade_paths(const PathAlgebra& alg, const std::vector<int>& ids, bool by_target) {
    GradedPaths g;
    g.by_vertex.assign(alg.quiver().num_vertices(), {});
    g.local_index.assign(alg.dim(), -1);
    for (int id : ids) {
        int v = by_target ? alg.path(id).to : alg.path(id).from;
        g.local_index[static_cast<std::size_t>(id)] = static_cast<int>(g.by_vertex[static_cast<std::size_t>(v)].size());
        g.by_vertex[static_cast<std::size_t>(v)].push_back(id);
    }
    return g;
}

}  // namespace

Representation standard_module(const std::shared_ptr<const PathAlgebra>& algebra, StandardKind kind, int v) {
    const Quiver& q = algebra->quiver();
    const FieldSpec f = algebra->field();
    const std::size_t nv = q.num_vertices();
    const std::size_t na = q.num_arrows();

    if (kind == StandardKind::Simple) {
        std::vector<std::size_t> dims(nv, 0);
        dims[static_cast<std::size_t>(v)] = 1;
        std::vector<Matrix> maps;
        for (std::size_t a = 0; a < na; ++a) {
            const Arrow& arr = q.arrow(static_cast<int>(a));
            maps.emplace_back(f, dims[static_cast<std::size_t>(arr.to)], dims[static_cast<std::size_t>(arr.from)]);
        }
        return Representation(algebra, std::move(dims), std::move(maps));
    }

    if (kind == StandardKind::Projective) {
        GradedPaths g = grade_paths(*algebra, algebra->paths_from(v), /*by_target=*/true);
        std::vector<std::size_t> dims(nv);
        for (std::size_t w = 0; w < nv; ++w) dims[w] = g.by_vertex[w].size();
        std::vector<Matrix> maps;
        for (std::size_t a = 0; a < na; ++a) {
            const Arrow& arr = q.arrow(static_cast<int>(a));
            Matrix m(f, dims[static_cast<std::size_t>(arr.to)], dims[static_cast<std::size_t>(arr.from)]);
            for (int pid : g.by_vertex[static_cast<std::size_t>(arr.from)]) {
                int ext = algebra->extend(pid, static_cast<int>(a));
                if (ext < 0) continue;
                m.set(static_cast<std::size_t>(g.local_index[static_cast<std::size_t>(ext)]),
                      static_cast<std::size_t>(g.local_index[static_cast<std::size_t>(pid)]), 1);
            }
            maps.push_back(std::move(m));
        }
        return Representation(algebra, std::move(dims), std::move(maps));
    }

    // injective(v): coordinates indexed by paths w -> v; the arrow a: i -> j
    // sends the coordinate of p: i -> v to the coordinate of q: j -> v
    // whenever p = a*q.
    GradedPaths g = grade_paths(*algebra, algebra->paths_to(v), /*by_target=*/false);
    std::vector<std::size_t> dims(nv);
    for (std::size_t w = 0; w < nv; ++w) dims[w] = g.by_vertex[w].size();
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < na; ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        Matrix m(f, dims[static_cast<std::size_t>(arr.to)], dims[static_cast<std::size_t>(arr.from)]);
        for (int qid : g.by_vertex[static_cast<std::size_t>(arr.to)]) {
            int pid = algebra->prepend({static_cast<int>(a)}, qid);
            if (pid < 0) continue;
            m.set(static_cast<std::size_t>(g.local_index[static_cast<std::size_t>(qid)]),
                  static_cast<std::size_t>(g.local_index[static_cast<std::size_t>(pid)]), 1);
        }
        maps.push_back(std::move(m));
    }
    return Representation(algebra, std::move(dims), std::move(maps));
}

DirectSum direct_sum(const std::shared_ptr<const PathAlgebra>& algebra, const std::vector<Representation>& parts) {
    const Quiver& q = algebra->quiver();
    const FieldSpec f = algebra->field();
    const std::size_t nv = q.num_vertices();

    for (const Representation& m : parts)
        if (m.algebra() != algebra) throw AlgebraMismatchError("direct_sum: part over a different algebra");

    std::vector<std::size_t> dims(nv, 0);
    std::vector<std::vector<std::size_t>> offsets(parts.size(), std::vector<std::size_t>(nv, 0));
    for (std::size_t k = 0; k < parts.size(); ++k)
        for (std::size_t v = 0; v < nv; ++v) {
            offsets[k][v] = dims[v];
            dims[v] += parts[k].dim(static_cast<int>(v));
        }

    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        Matrix m(f, dims[static_cast<std::size_t>(arr.to)], dims[static_cast<std::size_t>(arr.from)]);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const Matrix& block = parts[k].map(static_cast<int>(a));
            for (std::size_t r = 0; r < block.rows(); ++r)
                for (std::size_t c = 0; c < block.cols(); ++c)
                    m.set(offsets[k][static_cast<std::size_t>(arr.to)] + r,
                          offsets[k][static_cast<std::size_t>(arr.from)] + c, block.at(r, c));
        }
        maps.push_back(std::move(m));
    }
    Representation sum(algebra, dims, std::move(maps));

    DirectSum out{sum, {}, {}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::vector<Matrix> inj, proj;
        for (std::size_t v = 0; v < nv; ++v) {
            std::size_t dk = parts[k].dim(static_cast<int>(v));
            Matrix mi(f, dims[v], dk), mp(f, dk, dims[v]);
            for (std::size_t i = 0; i < dk; ++i) {
                mi.set(offsets[k][v] + i, i, 1);
                mp.set(i, offsets[k][v] + i, 1);
            }
            inj.push_back(std::move(mi));
            proj.push_back(std::move(mp));
        }
        out.injections.emplace_back(parts[k], sum, std::move(inj));
        out.projections.emplace_back(sum, parts[k], std::move(proj));
    }
    return out;
}

Representation opposite_transport(const Representation& m) {
    auto op = m.algebra()->opposite();
    std::vector<Matrix> maps;
    maps.reserve(m.maps().size());
    for (const Matrix& a : m.maps()) maps.push_back(a.transposed());
    return Representation(op, m.dims(), std::move(maps));
}

Morphism opposite_transport(const Morphism& f) {
    Representation src = opposite_transport(f.target());
    Representation dst = opposite_transport(f.source());
    std::vector<Matrix> maps;
    maps.reserve(f.maps().size());
    for (const Matrix& m : f.maps()) maps.push_back(m.transposed());
    return Morphism(std::move(src), std::move(dst), std::move(maps));
}

Morphism path_left_multiplication(const std::shared_ptr<const PathAlgebra>& algebra,
                                  const std::vector<std::string>& arrow_names) {
    const Quiver& q = algebra->quiver();
    std::vector<int> prefix;
    prefix.reserve(arrow_names.size());
    for (const auto& name : arrow_names) prefix.push_back(q.arrow_index(name));
    if (prefix.empty()) throw ShapeMismatchError("path_left_multiplication: empty path");
    int w = q.arrow(prefix.front()).from;
    int v = q.arrow(prefix.back()).to;

    Representation pv = standard_module(algebra, StandardKind::Projective, v);
    Representation pw = standard_module(algebra, StandardKind::Projective, w);

    // local indices of basis paths inside each projective, graded by target
    auto local = [&](const std::vector<int>& ids, int pid) {
        int t = algebra->path(pid).to;
        int idx = 0;
        for (int other : ids) {
            if (algebra->path(other).to != t) continue;
            if (other == pid) return idx;
            ++idx;
        }
        return -1;
    };

    const auto& from_v = algebra->paths_from(v);
    const auto& from_w = algebra->paths_from(w);
    std::vector<Matrix> maps;
    for (std::size_t vert = 0; vert < q.num_vertices(); ++vert) {
        Matrix m(algebra->field(), pw.dim(static_cast<int>(vert)), pv.dim(static_cast<int>(vert)));
        for (int pid : from_v) {
            if (algebra->path(pid).to != static_cast<int>(vert)) continue;
            int target = algebra->prepend(prefix, pid);
            if (target < 0) continue;
            m.set(static_cast<std::size_t>(local(from_w, target)), static_cast<std::size_t>(local(from_v, pid)), 1);
        }
        maps.push_back(std::move(m));
    }
    return Morphism(std::move(pv), std::move(pw), std::move(maps));
}

}  // namespace stabcat
