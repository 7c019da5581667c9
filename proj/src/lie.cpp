#include "bvwb/lie.hpp"

#include <cctype>
#include <sstream>

namespace bvwb {

LieAlgebraSpec::LieAlgebraSpec(int dim, std::vector<std::string> labels, std::vector<std::string> coframe)
    : n_(dim), labels_(std::move(labels)), coframe_(std::move(coframe)) {
    if (dim <= 0 || dim > kMaxDim) throw std::invalid_argument("Lie algebra dimension out of range");
    if (labels_.empty()) labels_ = default_labels(dim, "X");
    if (int(labels_.size()) != dim) throw std::invalid_argument("need one label per basis vector");
    if (coframe_.empty())
        for (auto& l : labels_) {
            std::string c = l;
            for (auto& ch : c) ch = char(std::tolower(static_cast<unsigned char>(ch)));
            coframe_.push_back(c);
        }
    if (int(coframe_.size()) != dim) throw std::invalid_argument("need one coframe label per basis vector");
    table_.assign(std::size_t(dim) * dim, Vec(dim));
}

void LieAlgebraSpec::check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("bracket index " + std::to_string(i + 1) + " out of range");
}

void LieAlgebraSpec::set_bracket(int i, int j, const Vec& value) {
    check_index(i);
    check_index(j);
    if (int(value.size()) != n_) throw DimensionMismatch("bracket value has wrong length");
    if (i == j) {
        for (auto& c : value)
            if (!c.is_zero()) throw std::invalid_argument("[X,X] must vanish");
        return;
    }
    Vec neg(n_);
    for (int k = 0; k < n_; ++k) neg[k] = -value[k];
    table_[std::size_t(i) * n_ + j] = value;
    table_[std::size_t(j) * n_ + i] = neg;
}

std::vector<Bracket> LieAlgebraSpec::brackets() const {
    std::vector<Bracket> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            Form f(n_);
            const Vec& v = table_[std::size_t(i) * n_ + j];
            for (int k = 0; k < n_; ++k) f.add(Mask(1) << k, v[k]);
            if (!f.is_zero()) out.push_back(Bracket{i, j, f});
        }
    return out;
}

Vec LieAlgebraSpec::bracket(int i, int j) const {
    check_index(i);
    check_index(j);
    return table_[std::size_t(i) * n_ + j];
}

Vec LieAlgebraSpec::bracket(const Vec& u, const Vec& v) const {
    Vec out(n_);
    for (int i = 0; i < n_; ++i) {
        if (u[i].is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            if (v[j].is_zero()) continue;
            Scalar c = u[i] * v[j];
            const Vec& b = table_[std::size_t(i) * n_ + j];
            for (int k = 0; k < n_; ++k)
                if (!b[k].is_zero()) out[k] += c * b[k];
        }
    }
    return out;
}

bool LieAlgebraSpec::is_real() const {
    for (auto& v : table_)
        for (auto& c : v)
            if (!c.is_real()) return false;
    return true;
}

int LieAlgebraSpec::index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return -1;
}

bool operator==(const LieAlgebraSpec& a, const LieAlgebraSpec& b) {
    return a.n_ == b.n_ && a.labels_ == b.labels_ && a.coframe_ == b.coframe_ && a.table_ == b.table_;
}

namespace {

Vec unit(int n, int i) {
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

std::string format_vec(const Vec& v, const std::vector<std::string>& labels) {
    Form f(int(v.size()));
    for (int k = 0; k < int(v.size()); ++k) f.add(Mask(1) << k, v[k]);
    return format_form(f, labels);
}

}  // namespace

std::string JacobiReport::str(const LieAlgebraSpec& spec) const {
    if (ok) return "ok";
    std::ostringstream os;
    for (auto& v : violations)
        os << "Jacobi fails on (" << spec.labels()[v.i] << "," << spec.labels()[v.j] << "," << spec.labels()[v.k]
           << "): " << format_vec(v.jacobiator, spec.labels()) << "\n";
    return os.str();
}

JacobiReport validate_jacobi(const LieAlgebraSpec& spec) {
    JacobiReport r;
    int n = spec.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Vec a = spec.bracket(spec.bracket(i, j), unit(n, k));
                Vec b = spec.bracket(spec.bracket(j, k), unit(n, i));
                Vec c = spec.bracket(spec.bracket(k, i), unit(n, j));
                Vec s(n);
                bool zero = true;
                for (int l = 0; l < n; ++l) {
                    s[l] = a[l] + b[l] + c[l];
                    if (!s[l].is_zero()) zero = false;
                }
                if (!zero) {
                    r.ok = false;
                    r.violations.push_back(JacobiViolation{i, j, k, s});
                }
            }
    return r;
}

Operator ce_differential(const LieAlgebraSpec& spec) {
    auto rep = validate_jacobi(spec);
    if (!rep.ok) throw JacobiError("Jacobi identity fails:\n" + rep.str(spec), rep);
    int n = spec.dim();
    std::vector<Form> values(n, Form(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec c = spec.bracket(i, j);
            Mask w = (Mask(1) << i) | (Mask(1) << j);
            for (int k = 0; k < n; ++k)
                if (!c[k].is_zero()) values[k].add(w, -c[k]);
        }
    Operator d = derivation(n, 1, values);
    if (!(d * d).is_zero()) throw NotADifferential("CE differential does not square to zero");
    return d;
}

bool Presentation::is_identity_frame() const { return frame == Matrix::identity(dim()); }

Form Presentation::conjugate(const Form& u) const { return conj_map(u.conj_coeffs()); }

Operator Presentation::conjugate(const Operator& f) const {
    return conj_map * f.conj_entries() * conj_map.conj_entries();
}

Form Presentation::from_real(const Form& real_form) const { return algebra_map(frame)(real_form); }

Form Presentation::to_real(const Form& working_form) const { return algebra_map(coframe)(working_form); }

Operator Presentation::from_real(const Operator& real_op) const {
    return algebra_map(frame) * real_op * algebra_map(coframe);
}

Matrix Presentation::coframe_action(const Matrix& vector_map) const { return coframe * vector_map * frame; }

Presentation real_presentation(const LieAlgebraSpec& spec) {
    return complexify(spec, Matrix::identity(spec.dim()), spec.labels(), spec.coframe_labels());
}

Presentation complexify(const LieAlgebraSpec& spec, const Matrix& p, std::vector<std::string> vlabels,
                        std::vector<std::string> clabels) {
    int n = spec.dim();
    if (p.rows() != n || p.cols() != n) throw DimensionMismatch("basis change has wrong shape");
    Matrix q;
    try {
        q = inverse(p);
    } catch (const std::domain_error&) {
        throw SingularFrame("basis change is singular");
    }
    if (vlabels.empty()) vlabels = default_labels(n, "F");
    if (clabels.empty()) clabels = default_labels(n, "f");
    LieAlgebraSpec w(n, vlabels, clabels);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Vec out(n);
            for (int i = 0; i < n; ++i) {
                if (p(i, a).is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (p(j, b).is_zero()) continue;
                    Scalar pij = p(i, a) * p(j, b);
                    Vec c = spec.bracket(i, j);
                    for (int l = 0; l < n; ++l) {
                        if (c[l].is_zero()) continue;
                        for (int k = 0; k < n; ++k)
                            if (!q(k, l).is_zero()) out[k] += pij * c[l] * q(k, l);
                    }
                }
            }
            w.set_bracket(a, b, out);
        }
    Presentation pr{spec, w, p, q, ce_differential(w), algebra_map(q.conj() * p)};
    return pr;
}

// ---- cohomology

const CohomologyPiece* CohomologySummary::find(int degree) const {
    for (auto& p : pieces)
        if (!p.bidegree && p.degree == degree) return &p;
    return nullptr;
}

const CohomologyPiece* CohomologySummary::find(Bidegree b) const {
    for (auto& p : pieces)
        if (p.bidegree && *p.bidegree == b) return &p;
    return nullptr;
}

std::vector<int> CohomologySummary::betti() const {
    std::vector<int> out;
    for (auto& p : pieces)
        if (!p.bidegree) out.push_back(p.dim);
    return out;
}

namespace {

Form column_form(int n, int k, const Matrix& m, int col) {
    auto words = basis_words(n, k);
    Form f(n);
    for (int i = 0; i < m.rows(); ++i) f.add(words[i], m(i, col));
    return f;
}

Matrix block_or_empty(const Operator& f, int from, int to, int n) {
    if (from < 0 || from > n || to < 0 || to > n)
        return Matrix(to >= 0 && to <= n ? int(basis_words(n, to).size()) : 0,
                      from >= 0 && from <= n ? int(basis_words(n, from).size()) : 0);
    return f.block(from, to);
}

// b: basis of the piece in Λ^k; bsrc: basis of the source piece in Λ^{k-1}
CohomologyPiece compute_piece(const Operator& d, const Operator* adj, int k, const Matrix& b, const Matrix& bsrc) {
    int n = d.dim();
    CohomologyPiece piece;
    piece.degree = k;
    int dimk = int(basis_words(n, k).size());
    Matrix dk = block_or_empty(d, k, k + 1, n);
    Matrix z = b.cols() == 0 ? Matrix(dimk, 0) : (dk.rows() ? b * nullspace(dk * b) : b);
    Matrix im = (k == 0 || bsrc.cols() == 0) ? Matrix(dimk, 0) : block_or_empty(d, k - 1, k, n) * bsrc;
    im = column_basis(im);
    Matrix all = Matrix::hcat(im, z);
    auto piv = pivot_columns(all);
    Matrix reps(dimk, 0);
    for (int c : piv)
        if (c >= im.cols()) {
            Matrix col = all.column_slice(c, c + 1);
            reps = Matrix::hcat(reps, col);
            piece.representatives.push_back(column_form(n, k, col, 0));
        }
    piece.dim = int(piece.representatives.size());
    if (adj) {
        Matrix h = b;
        if (b.cols()) {
            Matrix stack = dk.rows() ? dk * b : Matrix(0, b.cols());
            if (k > 0) stack = Matrix::vcat(stack, adj->block(k, k - 1) * b);
            h = stack.rows() ? b * nullspace(stack) : b;
        }
        if (h.cols() != piece.dim) throw std::logic_error("harmonic dimension differs from cohomology dimension");
        for (int c = 0; c < h.cols(); ++c) piece.harmonic.push_back(column_form(n, k, h, c));
        if (piece.dim) {
            auto x = solve_columns(Matrix::hcat(reps, im), h);
            if (!x) throw std::logic_error("harmonic forms not cohomologous to representatives");
            piece.change = Matrix(piece.dim, piece.dim);
            for (int i = 0; i < piece.dim; ++i)
                for (int j = 0; j < piece.dim; ++j) piece.change(i, j) = (*x)(i, j);
        }
    }
    return piece;
}

void require_square_zero(const Operator& d) {
    if (d.require_degree("cohomology_basis") != 1) throw DegreeError("cohomology_basis needs a degree +1 operator");
    if (!(d * d).is_zero()) throw NotADifferential("operator does not square to zero");
}

}  // namespace

CohomologySummary cohomology_basis(const Operator& d, const Operator* adjoint) {
    require_square_zero(d);
    int n = d.dim();
    CohomologySummary s;
    for (int k = 0; k <= n; ++k) {
        int dk = int(basis_words(n, k).size());
        Matrix src = k ? Matrix::identity(int(basis_words(n, k - 1).size())) : Matrix(0, 0);
        s.pieces.push_back(compute_piece(d, adjoint, k, Matrix::identity(dk), src));
    }
    return s;
}

CohomologySummary cohomology_basis(const Operator& d, const Bigrading& g, const Operator* adjoint) {
    require_square_zero(d);
    if (!d.bidegree()) throw DegreeError("bigraded cohomology needs an operator with a bidegree");
    Bidegree s = *d.bidegree();
    int n = d.dim();
    CohomologySummary out;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; p + q <= n; ++q) {
            Matrix b = g.subspace({p, q});
            if (b.rows() == 0 && b.cols() == 0) continue;
            if (b.cols() == 0 && g.projectors().count({p, q}) == 0) continue;
            Matrix src = g.subspace({p - s.p, q - s.q});
            auto piece = compute_piece(d, adjoint, p + q, b, src);
            piece.bidegree = Bidegree{p, q};
            out.pieces.push_back(piece);
        }
    return out;
}

}  // namespace bvwb
