#pragma once

#include "bvwb/form.hpp"
#include "bvwb/matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bvwb {

struct Bidegree {
    int p = 0, q = 0;
    friend bool operator==(const Bidegree& a, const Bidegree& b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(const Bidegree& a, const Bidegree& b) { return !(a == b); }
    friend bool operator<(const Bidegree& a, const Bidegree& b) { return a.p != b.p ? a.p < b.p : a.q < b.q; }
    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

class DegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Linear endomorphism of the 2^N-dimensional exterior algebra, stored by columns.
// degree == nullopt means "mixed".
class Operator {
public:
    Operator() : Operator(0, std::optional<int>(0)) {}
    Operator(int n, std::optional<int> degree);
    // Validates every column against the declared degree (if any).
    Operator(int n, std::vector<Form> columns, std::optional<int> degree);

    static Operator zero(int n, int degree) { return Operator(n, degree); }
    static Operator identity(int n);
    static Operator scalar(int n, const Scalar& c);
    // Degree inferred from columns when not declared; zero columns are compatible with anything.
    static Operator from_columns(int n, std::vector<Form> columns);
    static Operator from_function(int n, std::optional<int> degree, const std::function<Form(Mask)>& f);
    // Acts by c_k on degree k.
    static Operator by_degree(int n, const std::function<Scalar(int)>& c);

    int dim() const { return n_; }
    std::size_t size() const { return cols_.size(); }
    const Form& column(Mask m) const { return cols_.at(m); }
    const std::vector<Form>& columns() const { return cols_; }
    std::optional<int> degree() const { return degree_; }
    int require_degree(const char* what) const;
    std::optional<Bidegree> bidegree() const { return bidegree_; }
    Operator with_bidegree(std::optional<Bidegree> b) const;

    Form operator()(const Form& f) const;
    bool is_zero() const;

    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);
    Operator& operator*=(const Scalar& c);
    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, const Scalar& c) { return a *= c; }
    friend Operator operator*(const Scalar& c, Operator a) { return a *= c; }
    Operator operator-() const { return *this * Scalar(-1); }
    // Composition: (f * g)(x) = f(g(x)).
    friend Operator operator*(const Operator& f, const Operator& g);

    // Columns compared canonically; metadata ignored.
    friend bool operator==(const Operator& a, const Operator& b) { return a.n_ == b.n_ && a.cols_ == b.cols_; }
    friend bool operator!=(const Operator& a, const Operator& b) { return !(a == b); }

    // Entrywise conjugate of the matrix (not the real-structure conjugation).
    Operator conj_entries() const;
    // Restriction to the degree-k block as a dense matrix (rows ordered by basis_words(n, k + degree)).
    Matrix block(int from_k, int to_k) const;
    // Largest |coefficient| support description, e.g. for reports.
    std::size_t nnz() const;
    std::size_t hash() const;

private:
    int n_;
    std::vector<Form> cols_;
    std::optional<int> degree_;
    std::optional<Bidegree> bidegree_;
    void check_columns() const;
};

// Assemble an operator of degree p from blocks: block(k) maps Λ^k -> Λ^{k+p}.
Operator from_blocks(int n, int p, const std::function<Matrix(int)>& block);

Operator left_multiplication(const Form& a);
// [f,g] = fg - (-1)^{|f||g|} gf
Operator graded_commutator(const Operator& f, const Operator& g);
// Derivation of degree `degree` (odd or even) with prescribed values on generators.
Operator derivation(int n, int degree, const std::vector<Form>& generator_values);
// Algebra endomorphism sending generator a to sum_b m(a,b) e^b (rows are images).
Operator algebra_map(const Matrix& m);
// Interior product by the i-th frame vector (degree -1).
Operator contraction(int n, int i);

std::string format_operator(const Operator& f, const std::vector<std::string>& labels);

}  // namespace bvwb
