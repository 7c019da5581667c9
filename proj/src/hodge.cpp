#include "bvwb/hodge.hpp"

namespace bvwb {

MetricSpec MetricSpec::diagonal(const std::vector<Scalar>& entries) {
    Matrix g(int(entries.size()), int(entries.size()));
    for (int i = 0; i < int(entries.size()); ++i) g(i, i) = entries[i];
    return {g};
}

void MetricSpec::validate() const {
    int n = gram.rows();
    if (n == 0 || gram.cols() != n) throw InvalidMetric("gram matrix must be square and nonempty");
    if (!gram.is_real()) throw InvalidMetric("gram matrix must be real");
    if (gram != gram.transpose()) throw InvalidMetric("gram matrix is not symmetric");
    for (int k = 1; k <= n; ++k) {
        Matrix sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = gram(i, j);
        if (sgn(determinant(sub).re()) <= 0)
            throw InvalidMetric("gram matrix is not positive definite (leading minor " + std::to_string(k) + ")");
    }
    mpq_class det = determinant(gram).re();
    if (!is_perfect_square(det))
        throw InvalidMetric("det(gram) = " + det.get_str() + " is not the square of a rational; exact Hodge star unavailable");
}

namespace {

Matrix minors(const Matrix& g, int n, int k) {
    auto words = basis_words(n, k);
    int m = int(words.size());
    Matrix out(m, m);
    std::vector<std::vector<int>> idx;
    for (Mask w : words) {
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            if (w & (Mask(1) << i)) v.push_back(i);
        idx.push_back(v);
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (k == 0) {
                out(a, b) = Scalar(1);
                continue;
            }
            Matrix sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = g(idx[a][i], idx[b][j]);
            out(a, b) = determinant(sub);
        }
    return out;
}

Matrix coeff_column(const Form& f, int n, int k) {
    auto words = basis_words(n, k);
    Matrix c(int(words.size()), 1);
    for (int i = 0; i < int(words.size()); ++i) c(i, 0) = f.coeff(words[i]);
    return c;
}

}  // namespace

FormPairing::FormPairing(Matrix one_forms, bool hermitian) : n_(one_forms.rows()), hermitian_(hermitian) {
    if (one_forms.cols() != n_) throw InvalidMetric("pairing matrix must be square");
    for (int k = 0; k <= n_; ++k) gram_.push_back(minors(one_forms, n_, k));
    inverse_.resize(n_ + 1);
}

const Matrix& FormPairing::gram_inverse(int k) const {
    if (!inverse_.at(k)) inverse_[k] = inverse(gram_.at(k));
    return *inverse_[k];
}

Scalar FormPairing::pair(const Form& u, const Form& v) const {
    check_same_dim(u.dim(), n_, "pairing");
    check_same_dim(v.dim(), n_, "pairing");
    Scalar s;
    for (int k = 0; k <= n_; ++k) {
        Form uk = u.part(k), vk = v.part(k);
        if (uk.is_zero() || vk.is_zero()) continue;
        Matrix a = coeff_column(uk, n_, k), b = coeff_column(vk, n_, k);
        if (hermitian_) b = b.conj();
        s += (a.transpose() * gram_[k] * b)(0, 0);
    }
    return s;
}

Operator FormPairing::adjoint(const Operator& f) const {
    check_same_dim(f.dim(), n_, "adjoint");
    int p = f.require_degree("adjoint");
    Operator out = from_blocks(n_, -p, [&](int j) {
        int k = j - p;
        int rows = int(basis_words(n_, k).size());
        int cols = int(basis_words(n_, j).size());
        if (k < 0 || k > n_) return Matrix(0, cols);
        Matrix g = gram_inverse(k) * f.block(k, j).transpose() * gram_[j];
        if (g.rows() != rows) throw std::logic_error("adjoint block shape");
        return hermitian_ ? g.conj() : g;
    });
    // Hermitian pairings match (p,q) with (p,q); bilinear ones with (q,p).
    if (f.bidegree()) {
        Bidegree b = *f.bidegree();
        out = out.with_bidegree(hermitian_ ? Bidegree{-b.p, -b.q} : Bidegree{-b.q, -b.p});
    }
    return out;
}

Operator FormPairing::star(const Scalar& volume) const {
    Mask top = (Mask(1) << n_) - 1;
    std::vector<Form> cols(std::size_t(1) << n_, Form(n_));
    for (int k = 0; k <= n_; ++k) {
        auto words = basis_words(n_, k);
        for (int b = 0; b < int(words.size()); ++b)
            for (int a = 0; a < int(words.size()); ++a) {
                const Scalar& g = gram_[k](a, b);
                if (g.is_zero()) continue;
                Mask i = words[a], ic = top & ~i;
                Scalar c = g * volume;
                if (wedge_sign(i, ic) < 0) c = -c;
                cols[words[b]].add(ic, c);
            }
    }
    return Operator::from_columns(n_, std::move(cols));
}

Metric::Metric(const MetricSpec& spec, const Presentation& pres) : spec_(spec) {
    spec.validate();
    if (spec.dim() != pres.dim()) throw DimensionMismatch("metric dimension differs from algebra");
    Matrix ginv = inverse(spec.gram);
    herm_ = FormPairing(pres.coframe * ginv * pres.coframe.adjoint(), true);
    bil_ = FormPairing(pres.coframe * ginv * pres.coframe.transpose(), false);
    volume_ = Scalar(exact_sqrt(determinant(spec.gram).re())) * determinant(pres.frame);
}

Scalar Metric::vectors(const Vec& u, const Vec& v) const {
    Scalar s;
    for (int i = 0; i < spec_.dim(); ++i)
        for (int j = 0; j < spec_.dim(); ++j) s += u[i] * spec_.gram(i, j) * v[j];
    return s;
}

Matrix induced_pairing(const Metric& metric, int k) { return metric.hermitian().gram(k); }

Operator hodge_star(const Metric& metric) { return metric.bilinear().star(metric.volume()); }

Operator metric_adjoint(const Operator& f, const Metric& metric) { return metric.hermitian().adjoint(f); }

Matrix orthogonal_projection(const Matrix& v, const Matrix& m) {
    if (v.cols() == 0) return Matrix(v.rows(), v.rows());
    Matrix a = v.transpose() * m * v.conj();
    return v * inverse(a.transpose()) * v.conj().transpose() * m.transpose();
}

namespace {

int size_k(int n, int k) { return (k < 0 || k > n) ? 0 : int(basis_words(n, k).size()); }

Matrix safe_block(const Operator& f, int from, int to) {
    int n = f.dim();
    if (from < 0 || from > n || to < 0 || to > n) return Matrix(size_k(n, to), size_k(n, from));
    return f.block(from, to);
}

void check_top_cohomology(const Operator& d) {
    int n = d.dim();
    int ker = size_k(n, n);  // d vanishes on the top degree
    int im = rank(safe_block(d, n - 1, n));
    if (ker - im != 1)
        throw TopCohomologyError("top-degree cohomology has dimension " + std::to_string(ker - im) + ", expected 1");
}

}  // namespace

HodgeDecomposition harmonic_decomposition(const Operator& d, const Metric& metric) {
    if (d.require_degree("harmonic_decomposition") != 1) throw DegreeError("harmonic_decomposition needs degree +1");
    if (!(d * d).is_zero()) throw NotADifferential("operator does not square to zero");
    check_top_cohomology(d);
    Operator ds = metric_adjoint(d, metric);
    int n = d.dim();
    HodgeDecomposition out;
    for (int k = 0; k <= n; ++k) {
        HodgePiece p;
        p.degree = k;
        p.exact = column_basis(safe_block(d, k - 1, k));
        if (p.exact.rows() == 0) p.exact = Matrix(size_k(n, k), 0);
        p.coexact = column_basis(safe_block(ds, k + 1, k));
        if (p.coexact.rows() == 0) p.coexact = Matrix(size_k(n, k), 0);
        Matrix stack = Matrix::vcat(safe_block(d, k, k + 1), safe_block(ds, k, k - 1));
        p.harmonic = stack.rows() ? nullspace(stack) : Matrix::identity(size_k(n, k));
        out.pieces.push_back(p);
    }
    return out;
}

DeformationRetract canonical_retract(const Operator& d, const Metric& metric) {
    HodgeDecomposition hd = harmonic_decomposition(d, metric);
    int n = d.dim();
    const FormPairing& pr = metric.hermitian();
    DeformationRetract r;
    r.d = d;
    std::vector<Matrix> proj(n + 1), hom(n + 1);
    for (int k = 0; k <= n; ++k) {
        proj[k] = orthogonal_projection(hd.pieces[k].harmonic, pr.gram(k));
        std::vector<Form> basis;
        auto words = basis_words(n, k);
        for (int c = 0; c < hd.pieces[k].harmonic.cols(); ++c) {
            Form f(n);
            for (int i = 0; i < hd.pieces[k].harmonic.rows(); ++i) f.add(words[i], hd.pieces[k].harmonic(i, c));
            basis.push_back(f);
        }
        r.harmonic.push_back(basis);
        // h_k : Λ^k -> Λ^{k-1}
        if (k == 0) continue;
        const Matrix& y = hd.pieces[k - 1].coexact;
        if (y.cols() == 0) {
            hom[k] = Matrix(size_k(n, k - 1), size_k(n, k));
            continue;
        }
        Matrix dy = d.block(k - 1, k) * y;
        const Matrix& m = pr.gram(k);
        Matrix a = dy.transpose() * m * dy.conj();
        hom[k] = Scalar(-1) * (y * inverse(a.transpose()) * dy.conj().transpose() * m.transpose());
    }
    r.rho = from_blocks(n, 0, [&](int k) { return proj[k]; });
    r.iota = r.rho;
    r.h = from_blocks(n, -1, [&](int k) { return k == 0 ? Matrix(0, 1) : hom[k]; });
    return r;
}

RetractReport validate_retract(const DeformationRetract& r) {
    RetractReport rep;
    int n = r.d.dim();
    auto fail = [&](bool axiom, const std::string& what) {
        (axiom ? rep.axioms_ok : rep.side_ok) = false;
        rep.violated.push_back(what);
    };
    bool ri = true;
    for (auto& basis : r.harmonic)
        for (auto& v : basis)
            if (r.rho(r.iota(v)) != v) ri = false;
    if (!(r.rho * r.iota * r.rho == r.rho)) ri = false;
    if (!ri) fail(true, "rho*iota = 1");
    Operator lhs = r.d * r.h + r.h * r.d;
    Operator rhs = r.iota * r.rho - Operator::identity(n);
    if (lhs != rhs) fail(true, "d*h + h*d = iota*rho - 1");
    if (!(r.h * r.h).is_zero()) fail(false, "h*h = 0");
    if (!(r.h * r.iota).is_zero()) fail(false, "h*iota = 0");
    if (!(r.rho * r.h).is_zero()) fail(false, "rho*h = 0");
    return rep;
}

}  // namespace bvwb
