#include "stabcat/matrix.hpp"

#include <algorithm>

#include "stabcat/errors.hpp"

namespace stabcat {

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(FieldSpec field, const std::vector<std::vector<Fel>>& rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw ShapeMismatchError("row length mismatch in from_rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

std::vector<Fel> Matrix::row(std::size_t r) const {
    std::vector<Fel> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
}

std::vector<Fel> Matrix::col(std::size_t c) const {
    std::vector<Fel> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (field_ != rhs.field_) throw ShapeMismatchError("field mismatch in matrix product");
    if (cols_ != rhs.rows_) throw ShapeMismatchError("shape mismatch in matrix product");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Fel a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.set(i, j, field_.add(out.at(i, j), field_.mul(a, rhs.at(k, j))));
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatchError("shape mismatch in matrix sum");
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = field_.add(entries_[i], rhs.entries_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatchError("shape mismatch in matrix difference");
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = field_.sub(entries_[i], rhs.entries_[i]);
    return out;
}

Matrix Matrix::scaled(Fel k) const {
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = field_.mul(entries_[i], k);
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
    return out;
}

std::vector<Fel> Matrix::apply(const std::vector<Fel>& x) const {
    if (x.size() != cols_) throw ShapeMismatchError("vector length mismatch in apply");
    std::vector<Fel> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t(at(r, c)) * x[c] % field_.p();
        out[r] = static_cast<Fel>(acc % field_.p());
    }
    return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeMismatchError("row count mismatch in hstack");
    Matrix out(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
        for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.at(r, c));
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw ShapeMismatchError("column count mismatch in vstack");
    Matrix out(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out.set(a.rows() + r, c, b.at(r, c));
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Fel v) { return v == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
}

RrefResult rref(const Matrix& m) {
    RrefResult out{m, {}, 0};
    Matrix& a = out.reduced;
    const FieldSpec& f = a.field();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < a.rows() && a.at(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                Fel tmp = a.at(sel, c);
                a.set(sel, c, a.at(pivot_row, c));
                a.set(pivot_row, c, tmp);
            }
        Fel inv = f.inv(a.at(pivot_row, col));
        for (std::size_t c = 0; c < a.cols(); ++c) a.set(pivot_row, c, f.mul(a.at(pivot_row, c), inv));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pivot_row) continue;
            Fel factor = a.at(r, col);
            if (factor == 0) continue;
            for (std::size_t c = 0; c < a.cols(); ++c)
                a.set(r, c, f.sub(a.at(r, c), f.mul(factor, a.at(pivot_row, c))));
        }
        out.pivots.push_back(col);
        ++pivot_row;
    }
    out.rank = out.pivots.size();
    return out;
}

Subspace Subspace::span(FieldSpec field, std::size_t ambient_dim, const std::vector<std::vector<Fel>>& rows) {
    return span_matrix_rows(Matrix::from_rows(field, rows, ambient_dim));
}

Subspace Subspace::span_matrix_rows(const Matrix& rows) {
    RrefResult r = rref(rows);
    Subspace out(rows.field(), rows.cols());
    Matrix basis(rows.field(), r.rank, rows.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t c = 0; c < rows.cols(); ++c) basis.set(i, c, r.reduced.at(i, c));
    out.basis_ = basis;
    out.pivots_ = r.pivots;
    return out;
}

std::vector<Fel> Subspace::reduce(const std::vector<Fel>& v) const {
    if (v.size() != ambient_) throw ShapeMismatchError("ambient dimension mismatch in Subspace::reduce");
    std::vector<Fel> r = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        Fel factor = r[pivots_[i]];
        if (factor == 0) continue;
        for (std::size_t c = 0; c < ambient_; ++c) r[c] = field_.sub(r[c], field_.mul(factor, basis_.at(i, c)));
    }
    return r;
}

bool Subspace::contains(const std::vector<Fel>& v) const {
    std::vector<Fel> r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Fel x) { return x == 0; });
}

std::optional<std::vector<Fel>> Subspace::coordinates(const std::vector<Fel>& v) const {
    if (!contains(v)) return std::nullopt;
    std::vector<Fel> coords(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) coords[i] = v[pivots_[i]];
    return coords;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw ShapeMismatchError("ambient mismatch in Subspace::sum");
    return span_matrix_rows(Matrix::vstack(basis_, other.basis_));
}

bool membership(const Subspace& s, const std::vector<Fel>& v) { return s.contains(v); }

Subspace kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    std::vector<std::vector<Fel>> rows;
    const FieldSpec& f = m.field();
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Fel> x(m.cols(), 0);
        x[free] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = f.neg(r.reduced.at(i, free));
        rows.push_back(std::move(x));
    }
    return Subspace::span(f, m.cols(), rows);
}

Subspace row_space(const Matrix& m) { return Subspace::span_matrix_rows(m); }

Subspace column_space(const Matrix& m) { return Subspace::span_matrix_rows(m.transposed()); }

std::optional<AffineSolution> solve_affine(const Matrix& a, const std::vector<Fel>& b) {
    if (b.size() != a.rows()) throw ShapeMismatchError("rhs length mismatch in solve_affine");
    Matrix rhs(a.field(), a.rows(), 1);
    for (std::size_t r = 0; r < a.rows(); ++r) rhs.set(r, 0, b[r]);
    RrefResult red = rref(Matrix::hstack(a, rhs));
    // a pivot in the rhs column means the system is inconsistent
    for (std::size_t p : red.pivots)
        if (p == a.cols()) return std::nullopt;
    std::vector<Fel> x(a.cols(), 0);
    for (std::size_t i = 0; i < red.pivots.size(); ++i) x[red.pivots[i]] = red.reduced.at(i, a.cols());
    return AffineSolution{std::move(x), kernel_basis(a)};
}

std::optional<AffineSolution> AffineSystem::solve() const {
    Matrix a(field_, rows_.size(), unknowns_);
    std::vector<Fel> b(rows_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (std::size_t c = 0; c < unknowns_; ++c) a.set(r, c, rows_[r][c]);
        b[r] = rhs_[r];
    }
    return solve_affine(a, b);
}

}  // namespace stabcat
