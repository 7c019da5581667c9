#pragma once

#include "bvwb/scenario.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvwb {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class CommandError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CommandOptions {
    std::string command;  // validate | cohomology | bv | transfer | identities
    std::optional<Flavor> flavor;
    std::vector<std::string> m3;  // generator names in the flavor's coframe
    std::map<std::string, Scalar> params;
    bool dolbeault = false;
    bool dump_operators = false;
};

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Report {
    std::string command;
    Json scenario;
    Json result = Json::object();
    std::vector<std::string> lines;  // human-readable body
    std::vector<Check> checks;

    bool ok() const;
    std::string text() const;
    std::string json() const;
};

// Exact JSON encodings: real scalars as "p/q", complex ones as {"re","im"}.
Json scalar_json(const Scalar& c);
Json form_json(const Form& f, const std::vector<std::string>& labels);
Json operator_json(const Operator& f, const std::vector<std::string>& labels);

// Throws CommandError for flavor/structure mismatches and unknown --m3 generators,
// ScenarioError when the data fails validation.
Report run_command(const Scenario& s, const CommandOptions& o);

// m3 on named generators as an affine expression in the scenario parameters.
// Only available when the parameters enter through the Poisson bivector alone.
struct SymbolicM3 {
    std::map<Mask, LinExpr> terms;
    std::string text;  // e.g. "e*x - b*y"
};
std::optional<SymbolicM3> symbolic_m3(const Scenario& s, Flavor f, const std::vector<std::string>& gens,
                                      const std::map<std::string, Scalar>& values);

// Affine expression coefficient times word, in the "e*x - b*y" style.
std::string format_symbolic(const std::map<Mask, LinExpr>& terms, const std::vector<std::string>& labels);

}  // namespace bvwb
