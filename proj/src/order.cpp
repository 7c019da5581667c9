#include "bvwb/order.hpp"

namespace bvwb {

bool OrderChecker::at_most(const Operator& f, int r) {
    f.require_degree("algebraic_order_at_most");
    if (r < 0) return f.is_zero();
    if (f.is_zero()) return true;
    // End(Λ V) is spanned by L_a ∘ contractions by at most N vectors.
    if (r >= f.dim()) return true;
    std::size_t key = f.hash() * 131u + std::size_t(r);
    auto& bucket = memo_[key];
    for (auto& e : bucket)
        if (e.r == r && e.op == f) return e.result;

    bool ok = true;
    if (r == 0) {
        ok = f == left_multiplication(f(Form::one(f.dim())));
    } else {
        for (Mask m = 1; m < f.size() && ok; ++m) {
            Operator c = graded_commutator(left_multiplication(Form::word(f.dim(), m)), f);
            ok = at_most(c, r - 1);
        }
    }
    memo_[key].push_back(Entry{f, r, ok});
    ++entries_;
    return ok;
}

std::optional<int> OrderChecker::minimal(const Operator& f, int bound) {
    for (int r = 0; r <= bound; ++r)
        if (at_most(f, r)) return r;
    return std::nullopt;
}

bool algebraic_order_at_most(const Operator& f, int r) {
    OrderChecker c;
    return c.at_most(f, r);
}

}  // namespace bvwb
