#pragma once

#include "bvwb/lie.hpp"

#include <string>
#include <vector>

namespace bvwb {

class InvalidMetric : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class TopCohomologyError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inner product on the Lie algebra (vectors), orientation = basis order.
struct MetricSpec {
    Matrix gram;

    static MetricSpec identity(int n) { return {Matrix::identity(n)}; }
    static MetricSpec diagonal(const std::vector<Scalar>& entries);
    int dim() const { return gram.rows(); }
    // Symmetric, rational, positive definite, square determinant. Throws InvalidMetric.
    void validate() const;
};

// Pairing on Λ(coframe) induced by a pairing on 1-forms via k x k minors.
class FormPairing {
public:
    FormPairing() = default;
    FormPairing(Matrix one_forms, bool hermitian);

    int dim() const { return n_; }
    bool hermitian() const { return hermitian_; }
    const Matrix& gram(int k) const { return gram_.at(k); }
    const Matrix& gram_inverse(int k) const;
    // Σ u_I M_IJ v_J, with v conjugated in the Hermitian case.
    Scalar pair(const Form& u, const Form& v) const;
    // Unique g with <f a, b> = <a, g b>.
    Operator adjoint(const Operator& f) const;
    // Solves a ∧ ⋆b = B(a, b) · volume · e^{1..N} using the bilinear form (no conjugation).
    Operator star(const Scalar& volume) const;

private:
    int n_ = 0;
    bool hermitian_ = false;
    std::vector<Matrix> gram_;
    mutable std::vector<std::optional<Matrix>> inverse_;
};

// A metric realized on a presentation's working coframe.
class Metric {
public:
    Metric(const MetricSpec& spec, const Presentation& pres);

    const MetricSpec& spec() const { return spec_; }
    const FormPairing& hermitian() const { return herm_; }
    const FormPairing& bilinear() const { return bil_; }
    // Ω = volume() · f^1 ∧ ... ∧ f^N
    const Scalar& volume() const { return volume_; }
    // Vector pairing g(u, v) in the real basis.
    Scalar vectors(const Vec& u, const Vec& v) const;

private:
    MetricSpec spec_;
    FormPairing herm_, bil_;
    Scalar volume_;
};

// Gram matrix on Λ^k (Hermitian on complex coframes).
Matrix induced_pairing(const Metric& metric, int k);
Operator hodge_star(const Metric& metric);
Operator metric_adjoint(const Operator& f, const Metric& metric);

struct HodgePiece {
    int degree = 0;
    Matrix harmonic, exact, coexact;  // column bases in the degree-k monomial basis
};

struct HodgeDecomposition {
    std::vector<HodgePiece> pieces;
};

HodgeDecomposition harmonic_decomposition(const Operator& d, const Metric& metric);

struct DeformationRetract {
    Operator d, iota, rho, h;
    std::vector<std::vector<Form>> harmonic;  // basis per degree
};

DeformationRetract canonical_retract(const Operator& d, const Metric& metric);

struct RetractReport {
    bool axioms_ok = true;  // ρι = 1 and dh + hd = ιρ - 1
    bool side_ok = true;    // h² = 0, hι = 0, ρh = 0
    std::vector<std::string> violated;
    bool ok() const { return axioms_ok && side_ok; }
};

RetractReport validate_retract(const DeformationRetract& r);

// ⟨u,v⟩ Hermitian orthogonal projection matrix onto span of the columns of v, w.r.t. Gram m.
Matrix orthogonal_projection(const Matrix& v, const Matrix& m);

}  // namespace bvwb
