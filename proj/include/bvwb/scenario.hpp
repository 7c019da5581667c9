#pragma once

#include "bvwb/flavors.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvwb {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& msg);
    int line, column;
    std::string message;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Affine expression in named parameters; key "" is the constant part.
using LinExpr = std::map<std::string, Scalar>;

Scalar evaluate(const LinExpr& e, const std::map<std::string, Scalar>& values);
std::string format_linexpr(const LinExpr& e);

// Sparse form (or multivector) whose coefficients may involve parameters.
struct SymForm {
    int n = 0;
    std::map<Mask, LinExpr> terms;

    void add(Mask m, const std::string& param, const Scalar& c);
    Form evaluate(const std::map<std::string, Scalar>& values) const;
    std::optional<int> degree() const;
    bool uses_parameters() const;
    bool operator==(const SymForm& o) const = default;
};

struct Reference {
    std::string flavor;             // flavor whose presentation the labels refer to
    std::string kind;               // "h", "phi1" or "m3"
    std::vector<std::string> args;  // one monomial for h/phi1, three generators for m3
    std::string value;              // expression over the flavor's coframe labels
    bool operator==(const Reference& o) const = default;
};

struct Scenario {
    std::string name, description;
    std::vector<std::string> basis, coframe;
    std::vector<std::pair<std::pair<int, int>, SymForm>> brackets;  // value over basis vectors
    std::optional<std::vector<std::vector<Scalar>>> metric_rows;
    bool metric_diagonal = false;
    std::optional<std::vector<SymForm>> j_columns;  // J X_i over basis vectors
    std::vector<std::string> complex_coframe;
    std::optional<SymForm> omega;  // over the coframe
    std::optional<SymForm> pi;     // over basis vectors
    std::optional<std::pair<std::vector<int>, std::vector<int>>> polarization;
    std::vector<std::pair<std::string, Scalar>> parameters;
    std::vector<Reference> references;

    bool operator==(const Scenario& o) const;
    std::map<std::string, Scalar> parameter_values(const std::map<std::string, Scalar>& overrides = {}) const;
};

// Throws ParseError for syntax problems; semantic checks happen in validate_scenario.
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);

// Numeric structures for the given parameter values. Throws ScenarioError with the owning module's report.
Structures instantiate(const Scenario& s, const std::map<std::string, Scalar>& values);
// Parse + instantiate at default parameters, surfacing semantic failures.
void validate_scenario(const Scenario& s);

// Reference expression over the given coframe labels, parameters substituted.
Form parse_form_expression(const std::string& text, const std::vector<std::string>& labels,
                           const std::map<std::string, Scalar>& params);

// Built-in catalog.
std::vector<std::string> builtin_names();
std::string builtin_text(const std::string& name);
Scenario builtin(const std::string& name);

}  // namespace bvwb
