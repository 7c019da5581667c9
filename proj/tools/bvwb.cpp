#include "bvwb/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace bvwb;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int fail(bool json, const std::string& kind, const std::string& message, std::optional<std::pair<int, int>> pos = {}) {
    std::cerr << "bvwb: " << kind << " error: " << message << "\n";
    if (json) {
        Json e{{"kind", kind}, {"message", message}};
        if (pos) {
            e["line"] = pos->first;
            e["column"] = pos->second;
        }
        Json out{{"schema_version", kSchemaVersion}, {"ok", false}, {"error", e}};
        std::cout << out.dump(2) << "\n";
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact BV-infinity workbench for nilpotent Lie algebra models"};
    std::string command, file, builtin_name, flavor, m3, params;
    bool json = false, dump = false, dolbeault = false, list = false;
    app.add_option("command", command, "validate | cohomology | bv | transfer | identities");
    app.add_option("file", file, "scenario file");
    app.add_option("--builtin", builtin_name, "built-in scenario name");
    app.add_option("--flavor", flavor, "BV flavor for bv/transfer");
    app.add_option("--m3", m3, "three comma-separated generators for m3");
    app.add_option("--param", params, "parameter overrides, e.g. b=1,e=1");
    app.add_flag("--json", json, "machine-readable output");
    app.add_flag("--dump-operators", dump, "print every named operator");
    app.add_flag("--dolbeault", dolbeault, "cohomology: also the Dolbeault table");
    app.add_flag("--list-builtins", list, "print the built-in catalog and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (auto& n : builtin_names()) std::cout << n << "\n";
        return 0;
    }
    if (command.empty()) return fail(json, "usage", "missing command");
    if (file.empty() == builtin_name.empty()) return fail(json, "usage", "give exactly one of <file> or --builtin <name>");

    CommandOptions o;
    o.command = command;
    o.dolbeault = dolbeault;
    o.dump_operators = dump;
    try {
        if (!flavor.empty()) o.flavor = parse_flavor(flavor);
    } catch (const std::invalid_argument&) {
        std::string known;
        for (Flavor f : all_flavors()) known += (known.empty() ? "" : ", ") + flavor_name(f);
        return fail(json, "usage", "unknown flavor '" + flavor + "' (known: " + known + ")");
    }
    if (!m3.empty()) o.m3 = split_commas(m3);
    if (!params.empty()) {
        for (auto& kv : split_commas(params)) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) return fail(json, "usage", "bad --param entry '" + kv + "'");
            try {
                o.params[kv.substr(0, eq)] = Scalar::parse(kv.substr(eq + 1));
            } catch (const std::invalid_argument&) {
                return fail(json, "usage", "bad value in --param entry '" + kv + "'");
            }
        }
    }

    try {
        Scenario s = builtin_name.empty() ? parse_scenario(file) : builtin(builtin_name);
        Report r = run_command(s, o);
        std::cout << (json ? r.json() : r.text());
        return r.ok() ? 0 : 1;
    } catch (const ParseError& e) {
        return fail(json, "parse", e.what(), std::make_pair(e.line, e.column));
    } catch (const ScenarioError& e) {
        return fail(json, "scenario", e.what());
    } catch (const CommandError& e) {
        return fail(json, "command", e.what());
    } catch (const std::exception& e) {
        return fail(json, "internal", e.what());
    }
}
