#include "oracle.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

std::vector<int> indices(Mask m) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1u) out.push_back(i);
    return out;
}

int permutation_sign(std::vector<int> seq) {
    int inversions = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) return 0;
            inversions += seq[i] > seq[j];
        }
    return inversions % 2 ? -1 : 1;
}

Matrix dense(const Operator& f) {
    int size = 1 << f.dim();
    Matrix m(size, size);
    for (int c = 0; c < size; ++c)
        for (auto& [w, x] : f.column(Mask(c)).terms()) m(int(w), c) = x;
    return m;
}

Operator sparse(int n, const Matrix& m) {
    std::vector<Form> cols;
    for (int c = 0; c < m.cols(); ++c) {
        Form f(n);
        for (int r = 0; r < m.rows(); ++r)
            if (!m(r, c).is_zero()) f.add(Mask(r), m(r, c));
        cols.push_back(f);
    }
    return Operator::from_columns(n, cols);
}

std::vector<Scalar> dense(const Form& f) {
    std::vector<Scalar> v(std::size_t(1) << f.dim());
    for (auto& [w, x] : f.terms()) v[w] = x;
    return v;
}

Form sparse(int n, const std::vector<Scalar>& v) {
    Form f(n);
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) f.add(Mask(i), v[i]);
    return f;
}

std::vector<Scalar> apply(const Matrix& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!v[c].is_zero() && !m(r, c).is_zero()) out[r] += m(r, c) * v[c];
    return out;
}

Form wedge(const Form& a, const Form& b) {
    Form out(a.dim());
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            auto seq = indices(ma);
            auto ib = indices(mb);
            seq.insert(seq.end(), ib.begin(), ib.end());
            int s = permutation_sign(seq);
            if (s) out.add(ma | mb, ca * cb * Scalar(s));
        }
    return out;
}

Matrix left_mult(const Form& a) {
    int n = a.dim(), size = 1 << n;
    Matrix m(size, size);
    for (int c = 0; c < size; ++c) {
        Form prod = oracle::wedge(a, Form::word(n, Mask(c)));
        for (auto& [w, x] : prod.terms()) m(int(w), c) = x;
    }
    return m;
}

Matrix algebra_map(const std::vector<Form>& images) {
    int n = int(images.size()), size = 1 << n;
    Matrix m(size, size);
    for (int c = 0; c < size; ++c) {
        Form acc = Form::one(n);
        for (int i : indices(Mask(c))) acc = oracle::wedge(acc, images[i]);
        for (auto& [w, x] : acc.terms()) m(int(w), c) = x;
    }
    return m;
}

Matrix contraction(int n, int i) {
    int size = 1 << n;
    Matrix m(size, size);
    for (int c = 0; c < size; ++c) {
        auto seq = indices(Mask(c));
        for (std::size_t p = 0; p < seq.size(); ++p)
            if (seq[p] == i) m(c & ~(1 << i), c) = Scalar(p % 2 ? -1 : 1);
    }
    return m;
}

namespace {

// e^I(Y_1, ..., Y_k) for basis vectors Y (given by index)
int evaluate_word(Mask word, const std::vector<int>& args) {
    auto idx = indices(word);
    if (idx.size() != args.size()) return 0;
    std::vector<int> sorted = args;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != idx) return 0;
    return permutation_sign(args);
}

}  // namespace

Matrix ce_differential(int n, const BracketFn& bracket) {
    int size = 1 << n;
    Matrix m(size, size);
    for (int src = 0; src < size; ++src) {
        int k = __builtin_popcount(unsigned(src));
        for (int dst = 0; dst < size; ++dst) {
            if (__builtin_popcount(unsigned(dst)) != k + 1) continue;
            auto xs = indices(Mask(dst));
            Scalar total;
            for (int i = 0; i < k + 1; ++i)
                for (int j = i + 1; j < k + 1; ++j) {
                    auto c = bracket(xs[i], xs[j]);
                    std::vector<int> rest;
                    for (int t = 0; t < k + 1; ++t)
                        if (t != i && t != j) rest.push_back(xs[t]);
                    int sign = (i + j) % 2 ? -1 : 1;
                    for (int l = 0; l < n; ++l) {
                        if (c[l].is_zero()) continue;
                        std::vector<int> args{l};
                        args.insert(args.end(), rest.begin(), rest.end());
                        int e = evaluate_word(Mask(src), args);
                        if (e) total += c[l] * Scalar(sign * e);
                    }
                }
            m(dst, src) = total;
        }
    }
    return m;
}

namespace {

Scalar leibniz_det(const Matrix& a) {
    int k = a.rows();
    if (k == 0) return Scalar(1);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total;
    do {
        Scalar t(permutation_sign(perm));
        for (int i = 0; i < k && !t.is_zero(); ++i) t *= a(i, perm[i]);
        total += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

Matrix exterior_gram(const Matrix& h1) {
    int n = h1.rows(), size = 1 << n;
    Matrix g(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            if (__builtin_popcount(unsigned(i)) != __builtin_popcount(unsigned(j))) continue;
            auto a = indices(Mask(i)), b = indices(Mask(j));
            Matrix minor(int(a.size()), int(b.size()));
            for (size_t r = 0; r < a.size(); ++r)
                for (size_t c = 0; c < b.size(); ++c) minor(int(r), int(c)) = h1(a[r], b[c]);
            g(i, j) = leibniz_det(minor);
        }
    return g.transpose();
}

Matrix adjoint(const Matrix& f, const Matrix& k) { return bvwb::inverse(k) * f.adjoint() * k; }

Matrix harmonic_projector(const Matrix& d, const Matrix& k) {
    Matrix ds = adjoint(d, k);
    Matrix lap = d * ds + ds * d;
    Matrix nsp = bvwb::nullspace(lap);
    if (nsp.cols() == 0) return Matrix(d.rows(), d.rows());
    return nsp * bvwb::inverse(nsp.adjoint() * k * nsp) * nsp.adjoint() * k;
}

Matrix green_homotopy(const Matrix& d, const Matrix& k) {
    Matrix ds = adjoint(d, k);
    Matrix lap = d * ds + ds * d;
    Matrix p = harmonic_projector(d, k);
    Matrix id = Matrix::identity(d.rows());
    Matrix g = bvwb::inverse(lap + p) * (id - p);
    return Scalar(-1) * (ds * g);
}

Matrix phi1(const Matrix& h, const Matrix& delta1, const Matrix& p) { return h * delta1 - p * delta1 * h; }

Form m3(const Operator& phi, const Form& a, const Form& b, const Form& c) {
    int db = *b.degree(), dc = *c.degree();
    Matrix f = dense(phi);
    int n = a.dim();
    auto P = [&](const Form& x) { return sparse(n, oracle::apply(f, dense(x))); };
    Form out = P(oracle::wedge(oracle::wedge(a, b), c));
    out += oracle::wedge(oracle::wedge(P(a), b), c);
    out += oracle::wedge(oracle::wedge(a, P(b)), c);
    out += oracle::wedge(oracle::wedge(a, b), P(c));
    out -= oracle::wedge(P(oracle::wedge(a, b)), c);
    out -= Scalar((db * dc) % 2 ? -1 : 1) * oracle::wedge(P(oracle::wedge(a, c)), b);
    out -= oracle::wedge(a, P(oracle::wedge(b, c)));
    return out;
}

Matrix star_orthonormal(int n) {
    int size = 1 << n, full = size - 1;
    Matrix s(size, size);
    for (int i = 0; i < size; ++i) {
        auto seq = indices(Mask(i));
        auto rest = indices(Mask(full ^ i));
        seq.insert(seq.end(), rest.begin(), rest.end());
        s(full ^ i, i) = Scalar(permutation_sign(seq));
    }
    return s;
}

Matrix commutator(const Matrix& f, int df, const Matrix& g, int dg) {
    Scalar sign((df * dg) % 2 ? -1 : 1);
    return f * g - sign * (g * f);
}

}  // namespace oracle
