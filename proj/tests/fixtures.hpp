#pragma once

#include "bvwb/commands.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace fx {

inline bvwb::Structures catalog(const std::string& name, const std::map<std::string, bvwb::Scalar>& params = {}) {
    bvwb::Scenario s = bvwb::builtin(name);
    return bvwb::instantiate(s, s.parameter_values(params));
}

inline bvwb::Form form(const std::string& expr, const std::vector<std::string>& labels) {
    return bvwb::parse_form_expression(expr, labels, {});
}

inline const std::vector<std::string>& kt_labels() {
    static const std::vector<std::string> l{"x", "y", "z", "t"};
    return l;
}

inline bvwb::Form kt(const std::string& expr) { return form(expr, kt_labels()); }

inline bvwb::Scalar q(long p, long d = 1) { return bvwb::Scalar::rational(p, d); }

}  // namespace fx

namespace bvwb {
// readable gtest diagnostics
inline void PrintTo(const Form& f, std::ostream* os) { *os << format_form(f, default_labels(f.dim())); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.str(); }
}  // namespace bvwb
