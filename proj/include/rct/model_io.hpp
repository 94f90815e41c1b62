#pragma once

// Model document I/O. Documents are JSON with "format": "rct/1":
//
// {
//   "format": "rct/1",
//   "variables": [ {"name": "A", "values": ["0", "1"]}, ... ],
//   "laws": [ {"variable": "C", "parents": ["A"],
//              "relation": [["0","none"], ["1","heads"], ["1","tails"]]}, ... ],
//   "team": [ {"A": "1", "C": "heads"}, ... ]
// }
//
// Relation tuples list the parent values in the order of the "parents" array
// followed by the child value. Internally parents are kept sorted by variable
// index; tuples are reordered on load and emitted in sorted order on save.

#include <fstream>

#include <json.hpp>

#include "rct/causes.hpp"
#include "rct/model.hpp"

namespace rct {

class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Signature load_signature(const nlohmann::json& doc) {
    if (!doc.contains("variables") || !doc["variables"].is_array())
        throw DocumentError("document needs a 'variables' array");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> ranges;
    for (const auto& v : doc["variables"]) {
        if (!v.contains("name") || !v.contains("values"))
            throw DocumentError("each variable needs 'name' and 'values'");
        names.push_back(v["name"].get<std::string>());
        ranges.push_back(v["values"].get<std::vector<std::string>>());
    }
    try {
        return Signature(std::move(names), std::move(ranges));
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }
}

inline RelationalCausalTeam load_model(const nlohmann::json& doc,
                                       ValidationReport* report_out = nullptr) {
    if (doc.contains("format") && doc["format"].get<std::string>() != "rct/1")
        throw DocumentError("unsupported document format '" +
                            doc["format"].get<std::string>() + "'");
    Signature sig = load_signature(doc);

    auto var_of = [&](const std::string& name) {
        auto v = sig.var_index(name);
        if (!v) throw DocumentError("unknown variable '" + name + "'");
        return *v;
    };
    auto value_of = [&](VarId v, const std::string& name) {
        auto x = sig.value_index(v, name);
        if (!x)
            throw DocumentError("unknown value '" + name + "' for variable '" +
                                sig.var_name(v) + "'");
        return *x;
    };

    LawComponent laws;
    for (const auto& entry : doc.value("laws", nlohmann::json::array())) {
        VarId child = var_of(entry.at("variable").get<std::string>());
        std::vector<VarId> declared;
        for (const auto& p : entry.at("parents"))
            declared.push_back(var_of(p.get<std::string>()));
        if (laws.has_law(child))
            throw DocumentError("two laws declared for '" + sig.var_name(child) + "'");

        // Reorder tuple columns from declared order to sorted order.
        std::vector<std::size_t> perm(declared.size());
        {
            std::vector<VarId> sorted = declared;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw DocumentError("duplicate parent for '" + sig.var_name(child) + "'");
            for (std::size_t i = 0; i < sorted.size(); ++i)
                perm[i] = std::find(declared.begin(), declared.end(), sorted[i]) -
                          declared.begin();
        }

        Law law;
        law.parents = declared;
        std::sort(law.parents.begin(), law.parents.end());
        for (const auto& tuple : entry.at("relation")) {
            if (tuple.size() != declared.size() + 1)
                throw DocumentError("relation tuple arity mismatch for '" +
                                    sig.var_name(child) + "'");
            std::vector<Value> t(declared.size() + 1);
            for (std::size_t i = 0; i < declared.size(); ++i)
                t[i] = value_of(law.parents[i], tuple[perm[i]].get<std::string>());
            t.back() = value_of(child, tuple[declared.size()].get<std::string>());
            law.tuples.insert(std::move(t));
        }
        laws.set(child, std::move(law));
    }

    std::vector<Assignment> team;
    for (const auto& row : doc.value("team", nlohmann::json::array())) {
        Assignment s(sig.size(), -1);
        for (auto it = row.begin(); it != row.end(); ++it) {
            VarId v = var_of(it.key());
            s[v] = value_of(v, it.value().get<std::string>());
        }
        for (VarId v = 0; v < sig.size(); ++v)
            if (s[v] < 0)
                throw DocumentError("team assignment missing a value for '" + sig.var_name(v) +
                                    "'");
        team.push_back(std::move(s));
    }

    ValidationReport report = validate_model(sig, team, laws);
    if (report_out) *report_out = report;
    if (!report.ok()) {
        std::string what = "invalid model document:";
        for (const auto& e : report.errors) what += "\n  " + e.message;
        throw ModelError(what, std::move(report));
    }
    Team t(team.begin(), team.end());
    return RelationalCausalTeam{std::move(sig), std::move(t), std::move(laws)};
}

inline RelationalCausalTeam load_model_file(const std::string& path,
                                            ValidationReport* report_out = nullptr) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DocumentError(path + ": " + e.what());
    }
    return load_model(doc, report_out);
}

inline Signature load_signature_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DocumentError(path + ": " + e.what());
    }
    return load_signature(doc);
}

inline nlohmann::json save_model(const RelationalCausalTeam& m) {
    nlohmann::json doc;
    doc["format"] = "rct/1";
    doc["variables"] = nlohmann::json::array();
    for (VarId v = 0; v < m.sig.size(); ++v)
        doc["variables"].push_back({{"name", m.sig.var_name(v)}, {"values", m.sig.range(v)}});
    doc["laws"] = nlohmann::json::array();
    for (const auto& [v, law] : m.laws.entries()) {
        nlohmann::json entry;
        entry["variable"] = m.sig.var_name(v);
        entry["parents"] = nlohmann::json::array();
        for (VarId p : law.parents) entry["parents"].push_back(m.sig.var_name(p));
        entry["relation"] = nlohmann::json::array();
        for (const auto& t : law.tuples) {
            nlohmann::json tuple = nlohmann::json::array();
            for (std::size_t i = 0; i < law.parents.size(); ++i)
                tuple.push_back(m.sig.value_name(law.parents[i], t[i]));
            tuple.push_back(m.sig.value_name(v, t.back()));
            entry["relation"].push_back(std::move(tuple));
        }
        doc["laws"].push_back(std::move(entry));
    }
    doc["team"] = nlohmann::json::array();
    for (const auto& s : m.team) {
        nlohmann::json row;
        for (VarId v = 0; v < m.sig.size(); ++v)
            row[m.sig.var_name(v)] = m.sig.value_name(v, s[v]);
        doc["team"].push_back(std::move(row));
    }
    return doc;
}

// DOT export of the causal graph. Declared parent edges that are not
// semantic direct causes are drawn dashed.
inline std::string to_dot(const RelationalCausalTeam& m) {
    Evaluator ev(m);
    std::string out = "digraph causal {\n";
    for (VarId v = 0; v < m.sig.size(); ++v)
        out += "  \"" + m.sig.var_name(v) + "\";\n";
    for (const auto& [child, law] : m.laws.entries()) {
        for (VarId p : law.parents) {
            bool semantic = is_direct_cause(ev, {p, child});
            out += "  \"" + m.sig.var_name(p) + "\" -> \"" + m.sig.var_name(child) + "\"";
            if (!semantic) out += " [style=dashed, label=\"declared only\"]";
            out += ";\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace rct
