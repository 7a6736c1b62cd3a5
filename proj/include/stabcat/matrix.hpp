#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stabcat/field.hpp"

namespace stabcat {

/// Dense row-major matrix over F_p. Entry (r, c) multiplies source coordinate c.
class Matrix {
  public:
    Matrix() : field_(2), rows_(0), cols_(0) {}
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

    static Matrix identity(FieldSpec field, std::size_t n);
    static Matrix from_rows(FieldSpec field, const std::vector<std::vector<Fel>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Fel at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Fel v) { entries_[r * cols_ + c] = v; }
    const std::vector<Fel>& entries() const { return entries_; }

    std::vector<Fel> row(std::size_t r) const;
    std::vector<Fel> col(std::size_t c) const;

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Fel k) const;
    Matrix transposed() const;
    std::vector<Fel> apply(const std::vector<Fel>& x) const;  // this * x

    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_ && field_ == o.field_;
    }

  private:
    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Fel> entries_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column per pivot row, strictly increasing
    std::size_t rank = 0;
};

/// Reduced row-echelon form with deterministic first-nonzero pivoting.
RrefResult rref(const Matrix& m);

/// Row space of a matrix, kept in reduced row-echelon form. Rows are the basis.
class Subspace {
  public:
    Subspace(FieldSpec field, std::size_t ambient_dim)
        : field_(field), ambient_(ambient_dim), basis_(field, 0, ambient_dim) {}

    /// Canonicalizes arbitrary spanning rows into an RREF basis.
    static Subspace span(FieldSpec field, std::size_t ambient_dim, const std::vector<std::vector<Fel>>& rows);
    static Subspace span_matrix_rows(const Matrix& rows);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const FieldSpec& field() const { return field_; }

    bool contains(const std::vector<Fel>& v) const;
    /// Coordinates of v in the RREF basis; nullopt when v is outside the span.
    std::optional<std::vector<Fel>> coordinates(const std::vector<Fel>& v) const;
    /// v minus its projection onto the span (eliminates all pivot coordinates).
    std::vector<Fel> reduce(const std::vector<Fel>& v) const;

    Subspace sum(const Subspace& other) const;
    bool operator==(const Subspace& o) const = default;

  private:
    FieldSpec field_;
    std::size_t ambient_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

bool membership(const Subspace& s, const std::vector<Fel>& v);

/// Basis of {x : m x = 0}.
Subspace kernel_basis(const Matrix& m);

/// Row space of m (image of the transposed action); used for column spaces via transposed().
Subspace row_space(const Matrix& m);

/// Column space of m as a subspace of F^rows.
Subspace column_space(const Matrix& m);

struct AffineSolution {
    std::vector<Fel> particular;
    Subspace kernel;
};

/// Solves a x = b. Absence of a solution is a value, not an error.
std::optional<AffineSolution> solve_affine(const Matrix& a, const std::vector<Fel>& b);

/// Incrementally built dense affine system; unknown blocks are declared first.
class AffineSystem {
  public:
    explicit AffineSystem(FieldSpec field) : field_(field) {}

    std::size_t add_unknowns(std::size_t count) {
        std::size_t off = unknowns_;
        unknowns_ += count;
        return off;
    }
    std::size_t unknowns() const { return unknowns_; }

    std::vector<Fel> new_row() const { return std::vector<Fel>(unknowns_, 0); }
    void add_row(std::vector<Fel> coeffs, Fel rhs) {
        rows_.push_back(std::move(coeffs));
        rhs_.push_back(rhs);
    }

    std::optional<AffineSolution> solve() const;

    const FieldSpec& field() const { return field_; }

  private:
    FieldSpec field_;
    std::size_t unknowns_ = 0;
    std::vector<std::vector<Fel>> rows_;
    std::vector<Fel> rhs_;
};

}  // namespace stabcat
