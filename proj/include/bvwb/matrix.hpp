#pragma once

#include "bvwb/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvwb {

// Dense exact matrix over Q(i); row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(std::size_t(rows) * cols) {}

    static Matrix identity(int n);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }

    Scalar& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

    Matrix transpose() const;
    Matrix conj() const;
    Matrix adjoint() const { return transpose().conj(); }

    bool is_zero() const;
    bool is_real() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    // Columns [from, to).
    Matrix column_slice(int from, int to) const;
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);

    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

struct Rref {
    Matrix reduced;
    std::vector<int> pivots;  // pivot column per nonzero row
};

Rref rref(Matrix m);
int rank(const Matrix& m);
Scalar determinant(Matrix m);
// Throws std::domain_error("singular matrix") when not invertible.
Matrix inverse(const Matrix& m);
// Columns form a basis of the null space; free-variable order, each with a 1 at its free index.
Matrix nullspace(const Matrix& m);
// Linearly independent subset of the columns, first-come (pivot columns), as a matrix.
Matrix column_basis(const Matrix& m);
// Indices of pivot columns of m.
std::vector<int> pivot_columns(const Matrix& m);

}  // namespace bvwb

namespace bvwb {

// x with a x = b when a has independent columns and b is in their span; nullopt otherwise.
std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b);

}  // namespace bvwb
