#include "bvwb/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace bvwb {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    int r = int(rows.size());
    int c = r ? int(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::conj() const {
    Matrix t(r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) t.a_[k] = a_[k].conj();
    return t;
}

bool Matrix::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_real() const {
    for (auto& x : a_)
        if (!x.is_real()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += b.a_[k];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= b.a_[k];
    return m;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix m = a;
    for (auto& x : m.a_) x *= s;
    return m;
}

Matrix Matrix::column_slice(int from, int to) const {
    Matrix m(r_, to - from);
    for (int i = 0; i < r_; ++i)
        for (int j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
    return m;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.r_ != b.r_) throw std::invalid_argument("hcat row mismatch");
    Matrix m(a.r_, a.c_ + b.c_);
    for (int i = 0; i < a.r_; ++i) {
        for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.c_ != b.c_) throw std::invalid_argument("vcat column mismatch");
    Matrix m(a.r_ + b.r_, a.c_);
    for (int j = 0; j < a.c_; ++j) {
        for (int i = 0; i < a.r_; ++i) m(i, j) = a(i, j);
        for (int i = 0; i < b.r_; ++i) m(a.r_ + i, j) = b(i, j);
    }
    return m;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        os << "[";
        for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
        os << "]\n";
    }
    return os.str();
}

Rref rref(Matrix m) {
    Rref out;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        Scalar inv = Scalar(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

int rank(const Matrix& m) { return int(rref(m).pivots.size()); }

Scalar determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows();
    Scalar det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return Scalar();
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        Scalar inv = Scalar(1) / m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            Scalar f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows();
    Rref r = rref(Matrix::hcat(m, Matrix::identity(n)));
    if (int(r.pivots.size()) < n || r.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
    return r.reduced.column_slice(n, 2 * n);
}

Matrix nullspace(const Matrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : r.pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (int j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    Matrix ns(m.cols(), int(free.size()));
    for (int k = 0; k < int(free.size()); ++k) {
        int f = free[k];
        ns(f, k) = Scalar(1);
        for (int i = 0; i < int(r.pivots.size()); ++i) ns(r.pivots[i], k) = -r.reduced(i, f);
    }
    return ns;
}

std::vector<int> pivot_columns(const Matrix& m) { return rref(m).pivots; }

Matrix column_basis(const Matrix& m) {
    auto piv = pivot_columns(m);
    Matrix out(m.rows(), int(piv.size()));
    for (int k = 0; k < int(piv.size()); ++k)
        for (int i = 0; i < m.rows(); ++i) out(i, k) = m(i, piv[k]);
    return out;
}

}  // namespace bvwb

namespace bvwb {

std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b) {
    int n = a.cols();
    Rref r = rref(Matrix::hcat(a, b));
    if (int(r.pivots.size()) > 0 && r.pivots.back() >= n) return std::nullopt;
    if (int(r.pivots.size()) != n) throw std::invalid_argument("solve_columns: dependent columns");
    Matrix x(n, b.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols(); ++j) x(i, j) = r.reduced(i, n + j);
    return x;
}

}  // namespace bvwb
