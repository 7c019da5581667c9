#pragma once

#include "bvwb/geometry.hpp"
#include "bvwb/order.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bvwb {

// Δ_k vanishes for k > ⌊(N+1)/2⌋ by degree.
inline int delta_bound(int n) { return (n + 1) / 2; }

struct Multicomplex {
    std::vector<Operator> deltas;  // Δ_0 .. Δ_m
    int dim() const { return deltas.at(0).dim(); }
    int bound() const { return int(deltas.size()) - 1; }
    // Zero operator of the right degree past the stored range.
    Operator delta(int i) const;
};

struct MulticomplexReport {
    bool ok = true;
    std::optional<int> first_violation;
};

// Re-checks the degree metadata, then Σ_{i=0..n} Δ_i Δ_{n-i} = 0 for n ≤ 2m.
MulticomplexReport validate_multicomplex(const Multicomplex& mc);
// Δ_k = [Λ, Δ_{k-1}] / k, stored up to ⌊(N+1)/2⌋.
Multicomplex delta_tower(const Operator& d, const Operator& lambda_op);

struct OrderBound {
    int i = 0;
    int bound = 0;
    bool ok = false;
    std::optional<int> minimal;
};

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string detail;  // both sides when the check fails
};

struct BvInfinityCert {
    Multicomplex mc;
    std::string flavor;
    MulticomplexReport relations;
    std::vector<OrderBound> orders;
    std::vector<IdentityCheck> identities;
    std::vector<std::string> notes;
    bool ok() const;
};

class BvViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Never throws on order failures; the certificate records them.
BvInfinityCert validate_bv_infinity(const Multicomplex& mc, const std::string& flavor = "");

// Truncated series Σ_k c_k ξ^k with powers 0..max_power.
class OperatorSeries {
public:
    OperatorSeries(int n, int max_power) : n_(n), max_(max_power) {}
    static OperatorSeries constant(const Operator& c, int max_power);
    static OperatorSeries from_list(const std::vector<Operator>& coeffs_from_power1, int max_power);

    int dim() const { return n_; }
    int max_power() const { return max_; }
    // Zero operator of degree -2k (or the stored one).
    Operator coeff(int k) const;
    void set(int k, const Operator& c);
    const std::map<int, Operator>& coeffs() const { return c_; }
    bool has_constant_term() const;

    friend OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b);
    friend OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b);
    friend OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b);
    friend OperatorSeries operator*(const Scalar& s, const OperatorSeries& a);

    OperatorSeries exp() const;    // requires no constant term
    OperatorSeries log1p() const;  // log(1 + X), requires no constant term
    bool operator==(const OperatorSeries& o) const;

private:
    int n_, max_;
    std::map<int, Operator> c_;
};

OperatorSeries conjugate_by_exponential(const Operator& d, const OperatorSeries& phi);

// Δ'_n for n = 1..m (index 0 of the result is Δ'_1).
std::vector<Operator> transferred_deltas(const Multicomplex& mc, const DeformationRetract& r);
bool check_degeneration(const Multicomplex& mc, const DeformationRetract& r);

struct GaugeSolution {
    std::vector<Operator> phis;  // φ_1, φ_2, ...
    OperatorSeries series(int max_power) const;
};

class DegenerationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

GaugeSolution gauge_from_retract(const Multicomplex& mc, const DeformationRetract& r);
bool verify_gauge(const OperatorSeries& phi, const Multicomplex& mc);
bool verify_gauge(const GaugeSolution& g, const Multicomplex& mc);

class NotHomogeneous : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHarmonic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Form m3_cochain(const Operator& phi1, const Form& a, const Form& b, const Form& c);
Form m3_cohomology(const Operator& phi1, const DeformationRetract& r, const Form& a, const Form& b, const Form& c);

}  // namespace bvwb
