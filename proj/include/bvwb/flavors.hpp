#pragma once

#include "bvwb/bv.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bvwb {

enum class Flavor {
    HermitianDolbeault,
    HermitianReal,
    AlmostHermitian,
    AlmostSymplectic,
    SymplecticKoszul,
    LagrangianDolbeault,
    PoissonKoszul,
};

std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);  // throws std::invalid_argument
const std::vector<Flavor>& all_flavors();

// Everything a scenario may carry; forms and bivectors are in the real (input) basis.
struct Structures {
    LieAlgebraSpec algebra;
    std::optional<MetricSpec> metric;
    std::optional<ComplexStructureSpec> j;
    std::optional<Form> omega;
    std::optional<PoissonBivector> pi;
    std::optional<LagrangianPolarization> polarization;
    // Coframe labels for the J-adapted complex frame (holomorphic first, then conjugates).
    std::vector<std::string> complex_labels;
};

class MissingStructure : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Whether the flavor's structural preconditions hold (without building anything).
std::optional<std::string> flavor_unavailable(Flavor f, const Structures& s);

// J-adapted complex presentation used by the Dolbeault flavor and conjugate checks.
Presentation complex_presentation(const Structures& s);

struct BvBuild {
    Flavor flavor;
    Presentation pres;
    Operator delta0, lambda;
    std::optional<Bigrading> bigrading;
    std::optional<Metric> metric;  // for the canonical retract; identity when none supplied
    BvInfinityCert cert;
    std::map<std::string, Operator> named;  // operators for dumps
};

// Assembles the tower and records each closed-form identity as an exact equality.
BvBuild build_bv(Flavor f, const Structures& s);

// Exact operator equality with both sides printed on failure.
IdentityCheck check_equal(const std::string& name, const Operator& lhs, const Operator& rhs,
                          const std::vector<std::string>& labels);

}  // namespace bvwb
