#pragma once

#include "bvwb/grading.hpp"
#include "bvwb/matrix.hpp"
#include "bvwb/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvwb {

using Vec = std::vector<Scalar>;

struct Bracket {
    int i, j;     // i < j
    Form value;   // degree-1 form whose coefficient on e^k is c^k_ij
};

class LieAlgebraSpec {
public:
    LieAlgebraSpec() = default;
    // Vector labels (X, Y, ...) and coframe labels (x, y, ...). Empty coframe labels -> lowercase.
    LieAlgebraSpec(int dim, std::vector<std::string> labels, std::vector<std::string> coframe_labels = {});

    // Sets [X_i, X_j] = value (value over the frame). Reversed order is stored negated.
    void set_bracket(int i, int j, const Vec& value);

    int dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& coframe_labels() const { return coframe_; }
    std::vector<Bracket> brackets() const;
    // c^k_ij for all k.
    Vec bracket(int i, int j) const;
    Vec bracket(const Vec& u, const Vec& v) const;
    bool is_real() const;
    int index_of(const std::string& label) const;  // -1 when absent

    friend bool operator==(const LieAlgebraSpec& a, const LieAlgebraSpec& b);

private:
    int n_ = 0;
    std::vector<std::string> labels_, coframe_;
    std::vector<Vec> table_;  // (i * n + j) -> coefficients, full antisymmetric table
    void check_index(int i) const;
};

struct JacobiViolation {
    int i, j, k;
    Vec jacobiator;
};

struct JacobiReport {
    bool ok = true;
    std::vector<JacobiViolation> violations;
    std::string str(const LieAlgebraSpec& spec) const;
};

class JacobiError : public std::invalid_argument {
public:
    JacobiError(const std::string& what, JacobiReport r) : std::invalid_argument(what), report(std::move(r)) {}
    JacobiReport report;
};

JacobiReport validate_jacobi(const LieAlgebraSpec& spec);
// d e^k = -Σ_{i<j} c^k_ij e^i e^j, extended as a degree +1 derivation.
Operator ce_differential(const LieAlgebraSpec& spec);

// CE model in a (possibly complex) frame F_a = Σ_i P_ia X_i.
struct Presentation {
    LieAlgebraSpec real;     // input algebra in its own basis
    LieAlgebraSpec working;  // structure constants in the frame F
    Matrix frame;            // P
    Matrix coframe;          // Q = P^{-1}; f^a = Σ_i Q_ai x^i
    Operator d;              // CE differential on the working coframe
    Operator conj_map;       // K: conj(u) = K(ū)

    int dim() const { return real.dim(); }
    const std::vector<std::string>& labels() const { return working.coframe_labels(); }
    bool is_identity_frame() const;
    Form conjugate(const Form& u) const;
    Operator conjugate(const Operator& f) const;
    // x^i = Σ_j P_ij f^j
    Form from_real(const Form& real_form) const;
    Form to_real(const Form& working_form) const;
    Operator from_real(const Operator& real_op) const;
    // Matrix M (rows) of a real linear map on vectors acting on the working coframe by α ↦ α∘A.
    Matrix coframe_action(const Matrix& vector_map) const;
};

class SingularFrame : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

Presentation real_presentation(const LieAlgebraSpec& spec);
Presentation complexify(const LieAlgebraSpec& spec, const Matrix& basis_change,
                        std::vector<std::string> vector_labels = {}, std::vector<std::string> coframe_labels = {});

struct CohomologyPiece {
    int degree = 0;
    std::optional<Bidegree> bidegree;
    int dim = 0;
    std::vector<Form> representatives;  // pivot (lexicographic) representatives
    std::vector<Form> harmonic;         // present when an adjoint was supplied
    // harmonic_j ≡ Σ_i change(i, j) representative_i modulo exact forms
    Matrix change;
};

struct CohomologySummary {
    std::vector<CohomologyPiece> pieces;
    const CohomologyPiece* find(int degree) const;
    const CohomologyPiece* find(Bidegree b) const;
    std::vector<int> betti() const;  // total grading
};

class NotADifferential : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Total grading; when `adjoint` is supplied, harmonic representatives ker d ∩ ker adjoint are attached.
CohomologySummary cohomology_basis(const Operator& d, const Operator* adjoint = nullptr);
// Bigraded; d must carry a bidegree (e.g. ∂̄ with (0,1)).
CohomologySummary cohomology_basis(const Operator& d, const Bigrading& grading, const Operator* adjoint = nullptr);

}  // namespace bvwb
