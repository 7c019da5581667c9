#pragma once

#include "bvwb/hodge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvwb {

class InvalidStructure : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// J on the Lie algebra; column j is J X_j.
struct ComplexStructureSpec {
    Matrix j;

    void validate() const;  // J² = -I, N even, rational
    Vec apply(const Vec& v) const;
    bool compatible(const MetricSpec& g) const;  // g(JX, JY) = g(X, Y)
};

// Frame A_k = X_{i_k} - i J X_{i_k} chosen greedily, followed by the conjugates.
Matrix adapted_frame(const ComplexStructureSpec& j);
// α ↦ α∘J on the working coframe, extended as an algebra automorphism.
Operator form_action(const ComplexStructureSpec& j, const Presentation& pres);

struct LagrangianPolarization {
    std::vector<int> lag, lag_prime;
    // Complementary halves; ω (real coframe) vanishes on both.
    void validate(int n, const Form& omega) const;
};

// Coframe must be J-adapted (each generator an eigenvector of the dual action; +i gives type (1,0)).
Bigrading bigrading_projectors(const ComplexStructureSpec& j, const Presentation& pres);
// Real coframe: x^i for i in lag_prime has type (1,0), lag gives (0,1).
Bigrading bigrading_projectors(const LagrangianPolarization& pol, int n);

struct DifferentialComponents {
    Operator mu_bar, del_bar, del, mu;  // bidegrees (-1,2), (0,1), (1,0), (2,-1)
};

DifferentialComponents differential_components(const Operator& d, const Bigrading& bg);

struct NijenhuisEntry {
    int i, j;
    Vec value;
};

struct NijenhuisTable {
    std::vector<NijenhuisEntry> entries;  // every pair i < j
    bool integrable() const;
};

NijenhuisTable nijenhuis_tensor(const ComplexStructureSpec& j, const LieAlgebraSpec& algebra);

// ω(X_i, X_j) = g(J X_i, X_j) in the real coframe.
Form fundamental_form(const ComplexStructureSpec& j, const MetricSpec& g);

struct LefschetzTriple {
    Operator L, Lambda, H;
};

// Asserts H = (k - n) on degree k.
LefschetzTriple lefschetz_triple(const Form& omega, const Metric& metric);

struct TorsionOperators {
    Operator L, Lambda, T, domega, d_c, T_c, domega_c;
    Operator d_c_adj, T_c_adj, domega_c_adj;
    // Present when a bigrading is supplied.
    std::optional<Operator> del, del_bar, lambda, tau, lambda_adj, tau_adj, del_adj, del_bar_adj;
};

TorsionOperators torsion_operators(const ComplexStructureSpec& j, const Metric& metric, const Presentation& pres,
                                   const Bigrading* bg = nullptr);

// Nondegenerate 2-form on the working coframe together with ⟨,⟩_ω and ⋆_ω.
class SymplecticForm {
public:
    explicit SymplecticForm(const Form& omega);

    int dim() const { return omega_.dim(); }
    const Form& omega() const { return omega_; }
    // W_ab = ω(F_a, F_b)
    const Matrix& matrix() const { return w_; }
    const FormPairing& pairing() const { return pairing_; }
    // ω^n / n! = volume() f^1...f^N
    const Scalar& volume() const { return volume_; }
    const Operator& star() const { return star_; }
    const Operator& L() const { return l_; }
    // ⋆_ω L ⋆_ω
    const Operator& Lambda() const { return lambda_; }

private:
    Form omega_;
    Matrix w_;
    FormPairing pairing_;
    Scalar volume_;
    Operator star_, l_, lambda_;
};

Operator symplectic_star(const Form& omega);
// Algebraic adjoint for ⟨,⟩_ω: ⟨f a, b⟩_ω = ⟨a, g b⟩_ω. Defined for every homogeneous operator.
Operator symplectic_adjoint(const Operator& f, const SymplecticForm& w);

enum class StarShape { OrderZero, Differential };
// Closed forms: (-1)^{|φ|(k-|φ|)} ⋆φ⋆ for order 0, (-1)^k ⋆f⋆ for differentials; k is the input degree.
Operator symplectic_adjoint_by_star(const Operator& f, const SymplecticForm& w, StarShape shape);
// δ^ω for a bigraded component δ of `full` with bidegree `b`: adjoint of the mirror component.
// For d this gives ∂^ω = (-1)^k ⋆ ∂̄ ⋆.
Operator polarized_dual(const Operator& full, Bidegree b, const Bigrading& bg, const SymplecticForm& w);

struct PoissonBivector {
    int n = 0;
    Matrix pi;  // antisymmetric, π = Σ_{i<j} pi(i,j) X_i ∧ X_j

    static PoissonBivector from_upper(int n, const std::vector<std::tuple<int, int, Scalar>>& terms);
};

// i_π = Σ_{i<j} π^{ij} ι_j ι_i, so i_{X∧Z}(x∧z) = 1.
Operator poisson_contraction(const PoissonBivector& pi);
// π with π^{ij} = (W^{-1})_{ij}; satisfies i_π = -Λ_ω.
PoissonBivector inverse_bivector(const SymplecticForm& w);
// Δ = [i_π, d] squares to zero
bool poisson_valid(const PoissonBivector& pi, const Operator& d);

enum class LagrangianSide { Lag, LagPrime };
bool lagrangian_integrable(const LagrangianPolarization& pol, const LieAlgebraSpec& algebra, LagrangianSide side);

}  // namespace bvwb
