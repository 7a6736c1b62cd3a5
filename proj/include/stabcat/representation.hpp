#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stabcat/matrix.hpp"
#include "stabcat/quiver.hpp"

namespace stabcat {

/// Finite-dimensional representation of a bound quiver: one space per vertex,
/// one matrix per arrow, every relation word acting as zero.
class Representation {
  public:
    Representation() = default;
    Representation(std::shared_ptr<const PathAlgebra> algebra, std::vector<std::size_t> dims,
                   std::vector<Matrix> arrow_maps);

    static Representation zero(std::shared_ptr<const PathAlgebra> algebra);

    const std::shared_ptr<const PathAlgebra>& algebra() const { return algebra_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(int v) const { return dims_[static_cast<std::size_t>(v)]; }
    std::size_t total_dim() const;
    const Matrix& map(int arrow) const { return arrow_maps_[static_cast<std::size_t>(arrow)]; }
    const std::vector<Matrix>& maps() const { return arrow_maps_; }

    bool is_zero() const { return total_dim() == 0; }

    /// Shape and relation checks; names the offending relation or arrow.
    void validate(const std::string& name = "representation") const;

    bool operator==(const Representation& o) const {
        return algebra_ == o.algebra_ && dims_ == o.dims_ && arrow_maps_ == o.arrow_maps_;
    }

  private:
    std::shared_ptr<const PathAlgebra> algebra_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> arrow_maps_;  // per arrow: dims[to] x dims[from]
};

/// Vertexwise linear maps intertwining the arrow actions.
class Morphism {
  public:
    Morphism() = default;
    Morphism(Representation source, Representation target, std::vector<Matrix> vertex_maps);

    static Morphism zero(const Representation& source, const Representation& target);
    static Morphism identity(const Representation& m);

    const Representation& source() const { return source_; }
    const Representation& target() const { return target_; }
    const Matrix& map(int v) const { return vertex_maps_[static_cast<std::size_t>(v)]; }
    const std::vector<Matrix>& maps() const { return vertex_maps_; }

    bool is_zero() const;
    bool is_vertexwise_injective() const;
    bool is_vertexwise_surjective() const;

    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    Morphism scaled(Fel k) const;

    /// Concatenated entries in vertex order, row-major per vertex.
    std::vector<Fel> vec() const;
    static std::size_t vec_size(const Representation& source, const Representation& target);
    static Morphism from_vec(const Representation& source, const Representation& target, const std::vector<Fel>& v);

    void validate(const std::string& name = "morphism") const;

    bool operator==(const Morphism& o) const {
        return source_ == o.source_ && target_ == o.target_ && vertex_maps_ == o.vertex_maps_;
    }

  private:
    Representation source_, target_;
    std::vector<Matrix> vertex_maps_;  // per vertex: target.dim(v) x source.dim(v)
};

/// g after f.
Morphism compose(const Morphism& g, const Morphism& f);

enum class StandardKind { Projective, Injective, Simple };

/// projective(v): paths with source v; injective(v): dual of the paths with
/// target v; simple(v): one-dimensional at v.
Representation standard_module(const std::shared_ptr<const PathAlgebra>& algebra, StandardKind kind, int v);

struct DirectSum {
    Representation sum;
    std::vector<Morphism> injections;
    std::vector<Morphism> projections;
};

DirectSum direct_sum(const std::shared_ptr<const PathAlgebra>& algebra, const std::vector<Representation>& parts);

/// Duality transport to the opposite algebra: same dimensions, transposed
/// matrices. Contravariant on morphisms; applying it twice is the identity.
Representation opposite_transport(const Representation& m);
Morphism opposite_transport(const Morphism& f);

/// Left multiplication by a basis path q: w -> v, as a morphism
/// projective(v) -> projective(w).
Morphism path_left_multiplication(const std::shared_ptr<const PathAlgebra>& algebra,
                                  const std::vector<std::string>& arrow_names);

}  // namespace stabcat
