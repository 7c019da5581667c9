#include "bvwb/grading.hpp"

namespace bvwb {

Bigrading::Bigrading(int n, std::map<Bidegree, Operator> projectors) : n_(n), proj_(std::move(projectors)) {
    for (auto& [b, p] : proj_) {
        check_same_dim(p.dim(), n, "bigrading projector");
        if (p.degree() != 0) throw DegreeError("bigrading projector must have degree 0");
    }
}

Bigrading Bigrading::diagonal(int n, const std::vector<bool>& holomorphic) {
    if (int(holomorphic.size()) != n) throw std::invalid_argument("diagonal bigrading needs one type per generator");
    Mask hol = 0;
    for (int i = 0; i < n; ++i)
        if (holomorphic[i]) hol |= Mask(1) << i;
    std::map<Bidegree, Operator> proj;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; p + q <= n; ++q) {
            Operator op = Operator::from_function(n, 0, [&](Mask m) {
                Form f(n);
                if (popcount(m & hol) == p && popcount(m & ~hol) == q) f.add(m, Scalar(1));
                return f;
            });
            if (!op.is_zero()) proj.emplace(Bidegree{p, q}, op.with_bidegree(Bidegree{0, 0}));
        }
    Bigrading g(n, std::move(proj));
    g.types_ = holomorphic;
    return g;
}

Operator Bigrading::projector(Bidegree b) const {
    auto it = proj_.find(b);
    if (it == proj_.end()) return Operator::zero(n_, 0);
    return it->second;
}

Operator Bigrading::component(const Operator& f, Bidegree shift) const {
    if (f.degree() && *f.degree() != shift.p + shift.q) return Operator::zero(n_, shift.p + shift.q);
    Operator out(n_, std::optional<int>(shift.p + shift.q));
    for (auto& [b, p] : proj_) {
        auto it = proj_.find(Bidegree{b.p + shift.p, b.q + shift.q});
        if (it == proj_.end()) continue;
        out += it->second * f * p;
    }
    return Operator(n_, out.columns(), shift.p + shift.q).with_bidegree(shift);
}

std::vector<Bidegree> Bigrading::shifts(const Operator& f) const {
    std::vector<Bidegree> out;
    int d = f.require_degree("bigrading shifts");
    for (int r = -n_; r <= n_; ++r) {
        Bidegree s{r, d - r};
        if (!component(f, s).is_zero()) out.push_back(s);
    }
    return out;
}

Matrix Bigrading::subspace(Bidegree b) const {
    int k = b.p + b.q;
    if (b.p < 0 || b.q < 0 || k > n_) return Matrix(0, 0);
    auto it = proj_.find(b);
    if (it == proj_.end()) return Matrix(int(basis_words(n_, k).size()), 0);
    return column_basis(it->second.block(k, k));
}

std::optional<Bidegree> Bigrading::word_bidegree(Mask m) const {
    if (types_.empty()) return std::nullopt;
    int p = 0, q = 0;
    for (int i = 0; i < n_; ++i)
        if (m & (Mask(1) << i)) (types_[i] ? p : q)++;
    return Bidegree{p, q};
}

}  // namespace bvwb
