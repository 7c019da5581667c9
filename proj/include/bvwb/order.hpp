#pragma once

#include "bvwb/operator.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace bvwb {

// Grothendieck order test with memoization on (operator, r).
class OrderChecker {
public:
    bool at_most(const Operator& f, int r);
    // Smallest r <= bound with order <= r, or nullopt.
    std::optional<int> minimal(const Operator& f, int bound);
    std::size_t memo_size() const { return entries_; }

private:
    struct Entry {
        Operator op;
        int r;
        bool result;
    };
    std::unordered_map<std::size_t, std::vector<Entry>> memo_;
    std::size_t entries_ = 0;
};

bool algebraic_order_at_most(const Operator& f, int r);

}  // namespace bvwb
