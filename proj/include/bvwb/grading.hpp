#pragma once

#include "bvwb/operator.hpp"

#include <map>
#include <vector>

namespace bvwb {

// Family of degree-0 projectors Π^{p,q}. Built by the geometry module; consumed by cohomology.
class Bigrading {
public:
    Bigrading() = default;
    Bigrading(int n, std::map<Bidegree, Operator> projectors);

    // Diagonal bigrading: each coframe generator has type (1,0) or (0,1).
    static Bigrading diagonal(int n, const std::vector<bool>& holomorphic);

    int dim() const { return n_; }
    const std::map<Bidegree, Operator>& projectors() const { return proj_; }
    // Zero operator when (p,q) is out of range.
    Operator projector(Bidegree b) const;
    // Σ_{p,q} Π^{p+r,q+s} f Π^{p,q}
    Operator component(const Operator& f, Bidegree shift) const;
    // All shifts (r,s) with a nonzero component.
    std::vector<Bidegree> shifts(const Operator& f) const;
    // Basis of the image of Π^{p,q}, as columns in the degree p+q monomial basis.
    Matrix subspace(Bidegree b) const;
    // Bidegree of a single monomial when the bigrading is diagonal.
    std::optional<Bidegree> word_bidegree(Mask m) const;
    bool is_diagonal() const { return !types_.empty(); }
    const std::vector<bool>& holomorphic_mask() const { return types_; }

private:
    int n_ = 0;
    std::map<Bidegree, Operator> proj_;
    std::vector<bool> types_;
};

}  // namespace bvwb
