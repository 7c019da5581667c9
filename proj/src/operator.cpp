#include "bvwb/operator.hpp"

#include <sstream>

namespace bvwb {

Operator::Operator(int n, std::optional<int> degree)
    : n_(n), cols_(std::size_t(1) << n, Form(n)), degree_(degree) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("operator dimension out of range");
}

Operator::Operator(int n, std::vector<Form> columns, std::optional<int> degree)
    : n_(n), cols_(std::move(columns)), degree_(degree) {
    if (cols_.size() != (std::size_t(1) << n)) throw std::invalid_argument("operator needs 2^N columns");
    check_columns();
}

void Operator::check_columns() const {
    for (Mask m = 0; m < cols_.size(); ++m) {
        check_same_dim(cols_[m].dim(), n_, "operator column");
        if (!degree_) continue;
        for (auto& t : cols_[m].terms())
            if (popcount(t.first) != popcount(m) + *degree_)
                throw DegreeError("operator column " + std::to_string(m) + " violates declared degree " +
                                  std::to_string(*degree_));
    }
}

Operator Operator::identity(int n) { return scalar(n, Scalar(1)); }

Operator Operator::scalar(int n, const Scalar& c) {
    Operator f(n, 0);
    for (Mask m = 0; m < f.cols_.size(); ++m) f.cols_[m] = Form::word(n, m, c);
    return f;
}

Operator Operator::from_columns(int n, std::vector<Form> columns) {
    std::optional<int> deg;
    bool mixed = false;
    for (Mask m = 0; m < columns.size() && !mixed; ++m)
        for (auto& t : columns[m].terms()) {
            int s = popcount(t.first) - popcount(m);
            if (!deg) deg = s;
            else if (*deg != s) {
                mixed = true;
                break;
            }
        }
    if (mixed) return Operator(n, std::move(columns), std::nullopt);
    return Operator(n, std::move(columns), deg.value_or(0));
}

Operator Operator::from_function(int n, std::optional<int> degree, const std::function<Form(Mask)>& f) {
    std::vector<Form> cols;
    cols.reserve(std::size_t(1) << n);
    for (Mask m = 0; m < (Mask(1) << n); ++m) cols.push_back(f(m));
    return Operator(n, std::move(cols), degree);
}

Operator Operator::by_degree(int n, const std::function<Scalar(int)>& c) {
    return from_function(n, 0, [&](Mask m) { return Form::word(n, m, c(popcount(m))); });
}

int Operator::require_degree(const char* what) const {
    if (!degree_) throw DegreeError(std::string(what) + ": operand has mixed degree");
    return *degree_;
}

Operator Operator::with_bidegree(std::optional<Bidegree> b) const {
    Operator out = *this;
    out.bidegree_ = b;
    return out;
}

Form Operator::operator()(const Form& f) const {
    check_same_dim(f.dim(), n_, "operator application");
    Form out(n_);
    for (auto& [m, c] : f.terms()) {
        const Form& col = cols_[m];
        for (auto& [mm, cc] : col.terms()) out.add(mm, c * cc);
    }
    return out;
}

bool Operator::is_zero() const {
    for (auto& c : cols_)
        if (!c.is_zero()) return false;
    return true;
}

namespace {

std::optional<int> merge_degree(const Operator& a, const Operator& b) {
    if (a.degree() == b.degree()) return a.degree();
    if (b.is_zero()) return a.degree();
    if (a.is_zero()) return b.degree();
    return std::nullopt;
}

std::optional<Bidegree> merge_bidegree(const Operator& a, const Operator& b) {
    if (a.bidegree() == b.bidegree()) return a.bidegree();
    if (b.is_zero()) return a.bidegree();
    if (a.is_zero()) return b.bidegree();
    return std::nullopt;
}

}  // namespace

Operator& Operator::operator+=(const Operator& o) {
    check_same_dim(n_, o.n_, "operator sum");
    auto deg = merge_degree(*this, o);
    auto bideg = merge_bidegree(*this, o);
    for (std::size_t m = 0; m < cols_.size(); ++m)
        if (!o.cols_[m].is_zero()) cols_[m] += o.cols_[m];
    degree_ = deg;
    bidegree_ = bideg;
    return *this;
}

Operator& Operator::operator-=(const Operator& o) { return *this += -o; }

Operator& Operator::operator*=(const Scalar& c) {
    for (auto& col : cols_) col *= c;
    return *this;
}

Operator operator*(const Operator& f, const Operator& g) {
    check_same_dim(f.n_, g.n_, "operator composition");
    std::optional<int> deg;
    if (f.degree_ && g.degree_) deg = *f.degree_ + *g.degree_;
    Operator out(f.n_, deg);
    for (std::size_t m = 0; m < g.cols_.size(); ++m) out.cols_[m] = f(g.cols_[m]);
    // star-type sandwiches have mixed factors but a homogeneous product
    if (!deg) out = Operator::from_columns(out.n_, std::move(out.cols_));
    if (f.bidegree_ && g.bidegree_) out.bidegree_ = Bidegree{f.bidegree_->p + g.bidegree_->p, f.bidegree_->q + g.bidegree_->q};
    return out;
}

Operator Operator::conj_entries() const {
    Operator out = *this;
    for (auto& c : out.cols_) c = c.conj_coeffs();
    return out;
}

Matrix Operator::block(int from_k, int to_k) const {
    auto src = basis_words(n_, from_k);
    auto dst = basis_words(n_, to_k);
    std::vector<int> pos(std::size_t(1) << n_, -1);
    for (int i = 0; i < int(dst.size()); ++i) pos[dst[i]] = i;
    Matrix m(int(dst.size()), int(src.size()));
    for (int j = 0; j < int(src.size()); ++j)
        for (auto& [mm, c] : cols_[src[j]].terms()) {
            if (pos[mm] < 0) throw DegreeError("block extraction hit a column outside the target degree");
            m(pos[mm], j) = c;
        }
    return m;
}

std::size_t Operator::nnz() const {
    std::size_t k = 0;
    for (auto& c : cols_) k += c.terms().size();
    return k;
}

std::size_t Operator::hash() const {
    std::size_t h = std::size_t(n_) * 31u;
    for (std::size_t m = 0; m < cols_.size(); ++m)
        if (!cols_[m].is_zero()) h = h * 1099511628211ULL ^ (m + 1) ^ cols_[m].hash();
    return h;
}

Operator from_blocks(int n, int p, const std::function<Matrix(int)>& block) {
    Operator out(n, p);
    std::vector<Form> cols(std::size_t(1) << n, Form(n));
    for (int k = 0; k <= n; ++k) {
        if (k + p < 0 || k + p > n) continue;
        auto src = basis_words(n, k);
        auto dst = basis_words(n, k + p);
        Matrix b = block(k);
        if (b.rows() != int(dst.size()) || b.cols() != int(src.size()))
            throw std::invalid_argument("block shape mismatch in from_blocks");
        for (int j = 0; j < int(src.size()); ++j)
            for (int i = 0; i < int(dst.size()); ++i)
                if (!b(i, j).is_zero()) cols[src[j]].add(dst[i], b(i, j));
    }
    return Operator(n, std::move(cols), p);
}

Operator left_multiplication(const Form& a) {
    int n = a.dim();
    auto deg = a.is_zero() ? std::optional<int>(0) : a.degree();
    return Operator::from_function(n, deg, [&](Mask m) { return wedge(a, Form::word(n, m)); });
}

Operator graded_commutator(const Operator& f, const Operator& g) {
    int df = f.require_degree("graded_commutator");
    int dg = g.require_degree("graded_commutator");
    Operator out = f * g;
    if ((df * dg) % 2 == 0) out -= g * f;
    else out += g * f;
    return out;
}

Operator derivation(int n, int degree, const std::vector<Form>& values) {
    if (int(values.size()) != n) throw std::invalid_argument("derivation needs one value per generator");
    for (auto& v : values) {
        check_same_dim(v.dim(), n, "derivation value");
        if (!v.is_zero() && v.degree() != 1 + degree) throw DegreeError("derivation value has wrong degree");
    }
    std::vector<Form> cols(std::size_t(1) << n, Form(n));
    for (Mask m = 1; m < cols.size(); ++m) {
        // D(e^{i1}...e^{ik}) = sum_pos (-1)^{degree*pos} e^{i1}..D(e^{ipos})..e^{ik}
        int pos = 0;
        for (int i = 0; i < n; ++i) {
            if (!(m & (Mask(1) << i))) continue;
            Mask before = m & ((Mask(1) << i) - 1);
            Mask after = m & ~((Mask(2) << i) - 1);
            Form term = wedge(wedge(Form::word(n, before), values[i]), Form::word(n, after));
            if ((degree * pos) % 2 != 0) term *= Scalar(-1);
            cols[m] += term;
            ++pos;
        }
    }
    return Operator(n, std::move(cols), degree);
}

Operator algebra_map(const Matrix& m) {
    int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("algebra_map needs a square matrix");
    std::vector<Form> images;
    for (int a = 0; a < n; ++a) {
        Form f(n);
        for (int b = 0; b < n; ++b) f.add(Mask(1) << b, m(a, b));
        images.push_back(f);
    }
    return Operator::from_function(n, 0, [&](Mask w) {
        Form acc = Form::one(n);
        for (int i = 0; i < n; ++i)
            if (w & (Mask(1) << i)) acc = wedge(acc, images[i]);
        return acc;
    });
}

Operator contraction(int n, int i) {
    if (i < 0 || i >= n) throw std::out_of_range("contraction index out of range");
    return Operator::from_function(n, -1, [&](Mask m) {
        Form f(n);
        Mask bit = Mask(1) << i;
        if (m & bit) {
            int before = popcount(m & (bit - 1));
            f.add(m & ~bit, Scalar(before % 2 ? -1 : 1));
        }
        return f;
    });
}

std::string format_operator(const Operator& f, const std::vector<std::string>& labels) {
    std::ostringstream os;
    bool any = false;
    for (Mask m = 0; m < f.size(); ++m) {
        if (f.column(m).is_zero()) continue;
        os << "  " << format_word(m, labels) << " -> " << format_form(f.column(m), labels) << "\n";
        any = true;
    }
    if (!any) os << "  0\n";
    return os.str();
}

}  // namespace bvwb
