#pragma once

// Core model types: signatures, assignments, teams, causal laws and the
// relational causal teams built from them, plus graph/classification helpers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rct {

using VarId = int;
using Value = int;

// Total valuation of all variables, indexed by VarId; values are indices
// into the signature's range lists.
using Assignment = std::vector<Value>;
using Team = std::set<Assignment>;

class Signature {
public:
    Signature() = default;

    Signature(std::vector<std::string> variables,
              std::vector<std::vector<std::string>> ranges)
        : vars_(std::move(variables)), ranges_(std::move(ranges)) {
        if (vars_.size() != ranges_.size())
            throw std::invalid_argument("signature: one range list per variable required");
        std::set<std::string> seen;
        for (const auto& v : vars_) {
            if (v.empty()) throw std::invalid_argument("signature: empty variable name");
            if (!seen.insert(v).second)
                throw std::invalid_argument("signature: duplicate variable '" + v + "'");
        }
        for (std::size_t i = 0; i < ranges_.size(); ++i) {
            if (ranges_[i].empty())
                throw std::invalid_argument("signature: empty range for '" + vars_[i] + "'");
            std::set<std::string> vs;
            for (const auto& val : ranges_[i])
                if (!vs.insert(val).second)
                    throw std::invalid_argument("signature: duplicate value '" + val +
                                                 "' in range of '" + vars_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(vars_.size()); }

    const std::string& var_name(VarId v) const { return vars_.at(v); }
    const std::vector<std::string>& range(VarId v) const { return ranges_.at(v); }
    int range_size(VarId v) const { return static_cast<int>(ranges_.at(v).size()); }
    const std::string& value_name(VarId v, Value x) const { return ranges_.at(v).at(x); }

    std::optional<VarId> var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<VarId>(i);
        return std::nullopt;
    }

    std::optional<Value> value_index(VarId v, const std::string& name) const {
        const auto& r = ranges_.at(v);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] == name) return static_cast<Value>(i);
        return std::nullopt;
    }

    // |A_sigma|, saturating at 2^62 to keep cap arithmetic safe.
    std::uint64_t assignment_count() const {
        std::uint64_t n = 1;
        for (const auto& r : ranges_) {
            n *= r.size();
            if (n > (std::uint64_t{1} << 62)) return std::uint64_t{1} << 62;
        }
        return n;
    }

    // All assignments in mixed-radix order (last variable fastest).
    std::vector<Assignment> all_assignments() const {
        std::vector<Assignment> out;
        Assignment cur(vars_.size(), 0);
        while (true) {
            out.push_back(cur);
            int i = static_cast<int>(vars_.size()) - 1;
            while (i >= 0) {
                if (++cur[i] < range_size(i)) break;
                cur[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
        return out;
    }

    bool operator==(const Signature& o) const {
        return vars_ == o.vars_ && ranges_ == o.ranges_;
    }
    bool operator!=(const Signature& o) const { return !(*this == o); }

private:
    std::vector<std::string> vars_;
    std::vector<std::vector<std::string>> ranges_;
};

// Generating law of one endogenous variable: declared parents (sorted by
// VarId) and the relation as a set of tuples, parent values in parent order
// followed by the child value.
struct Law {
    std::vector<VarId> parents;
    std::set<std::vector<Value>> tuples;

    bool allows(const std::vector<Value>& parent_values, Value child) const {
        std::vector<Value> t = parent_values;
        t.push_back(child);
        return tuples.count(t) != 0;
    }

    std::vector<Value> allowed_values(const std::vector<Value>& parent_values) const {
        std::vector<Value> out;
        for (const auto& t : tuples) {
            if (std::equal(parent_values.begin(), parent_values.end(), t.begin()))
                out.push_back(t.back());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool operator==(const Law& o) const { return parents == o.parents && tuples == o.tuples; }
};

class LawComponent {
public:
    LawComponent() = default;

    void set(VarId v, Law law) {
        std::sort(law.parents.begin(), law.parents.end());
        entries_[v] = std::move(law);
    }

    bool has_law(VarId v) const { return entries_.count(v) != 0; }
    const Law& law(VarId v) const { return entries_.at(v); }
    const std::map<VarId, Law>& entries() const { return entries_; }

    std::vector<VarId> endogenous() const {
        std::vector<VarId> out;
        for (const auto& [v, _] : entries_) out.push_back(v);
        return out;
    }

    // Restriction of the law component to variables outside `removed`.
    LawComponent without(const std::set<VarId>& removed) const {
        LawComponent out;
        for (const auto& [v, law] : entries_)
            if (!removed.count(v)) out.entries_[v] = law;
        return out;
    }

    bool compatible(const Assignment& s) const {
        for (const auto& [v, law] : entries_) {
            std::vector<Value> pa;
            pa.reserve(law.parents.size());
            for (VarId p : law.parents) pa.push_back(s[p]);
            if (!law.allows(pa, s[v])) return false;
        }
        return true;
    }

    bool operator==(const LawComponent& o) const { return entries_ == o.entries_; }

private:
    std::map<VarId, Law> entries_;
};

struct RelationalCausalTeam {
    Signature sig;
    Team team;
    LawComponent laws;

    bool is_endogenous(VarId v) const { return laws.has_law(v); }

    bool operator==(const RelationalCausalTeam& o) const {
        return sig == o.sig && team == o.team && laws == o.laws;
    }
};

struct CausalGraph {
    int vertex_count = 0;
    std::vector<std::set<VarId>> children;  // children[p] = {v : p in PA_v}
};

inline CausalGraph causal_graph(const Signature& sig, const LawComponent& laws) {
    CausalGraph g;
    g.vertex_count = sig.size();
    g.children.resize(sig.size());
    for (const auto& [v, law] : laws.entries())
        for (VarId p : law.parents) g.children.at(p).insert(v);
    return g;
}

inline CausalGraph causal_graph(const RelationalCausalTeam& m) {
    return causal_graph(m.sig, m.laws);
}

// Reflexive-transitive closure of the edge relation starting from `sources`.
inline std::set<VarId> descendants(const CausalGraph& g, const std::set<VarId>& sources) {
    for (VarId v : sources)
        if (v < 0 || v >= g.vertex_count)
            throw std::out_of_range("descendants: unknown variable");
    std::set<VarId> seen;
    std::vector<VarId> stack(sources.begin(), sources.end());
    while (!stack.empty()) {
        VarId v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (VarId c : g.children[v]) stack.push_back(c);
    }
    return seen;
}

inline std::set<VarId> nondescendants(const CausalGraph& g, const std::set<VarId>& sources) {
    std::set<VarId> desc = descendants(g, sources);
    std::set<VarId> out;
    for (VarId v = 0; v < g.vertex_count; ++v)
        if (!desc.count(v)) out.insert(v);
    return out;
}

inline bool graph_acyclic(const CausalGraph& g) {
    // 0 = unseen, 1 = on stack, 2 = done.
    std::vector<int> state(g.vertex_count, 0);
    std::vector<std::pair<VarId, std::set<VarId>::const_iterator>> stack;
    for (VarId start = 0; start < g.vertex_count; ++start) {
        if (state[start]) continue;
        state[start] = 1;
        stack.emplace_back(start, g.children[start].begin());
        while (!stack.empty()) {
            auto& [v, it] = stack.back();
            if (it == g.children[v].end()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            VarId c = *it++;
            if (state[c] == 1) return false;
            if (state[c] == 0) {
                state[c] = 1;
                stack.emplace_back(c, g.children[c].begin());
            }
        }
    }
    return true;
}

struct Classification {
    bool total = true;
    bool deterministic = true;
    bool recursive = true;
};

namespace detail {
// Enumerate Ran(parents) in mixed-radix order, calling fn on each tuple.
template <typename Fn>
void for_each_parent_tuple(const Signature& sig, const std::vector<VarId>& parents, Fn&& fn) {
    std::vector<Value> cur(parents.size(), 0);
    while (true) {
        fn(cur);
        int i = static_cast<int>(parents.size()) - 1;
        while (i >= 0) {
            if (++cur[i] < sig.range_size(parents[i])) break;
            cur[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
}
}  // namespace detail

inline Classification classify(const RelationalCausalTeam& m) {
    Classification c;
    for (const auto& [v, law] : m.laws.entries()) {
        detail::for_each_parent_tuple(m.sig, law.parents, [&](const std::vector<Value>& pa) {
            std::size_t n = law.allowed_values(pa).size();
            if (n == 0) c.total = false;
            if (n > 1) c.deterministic = false;
        });
    }
    c.recursive = graph_acyclic(causal_graph(m));
    return c;
}

// --- validation -------------------------------------------------------------

struct ValidationIssue {
    enum class Code { RangeError, SelfParentError, CompatibilityError, EmptyParentWarning };
    Code code;
    std::string message;
    VarId variable = -1;           // offending variable, when applicable
    std::optional<Assignment> assignment;  // offending team member, when applicable
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    bool ok() const { return errors.empty(); }
};

class ModelError : public std::runtime_error {
public:
    ModelError(std::string what, ValidationReport report)
        : std::runtime_error(std::move(what)), report(std::move(report)) {}
    ValidationReport report;
};

inline ValidationReport validate_model(const Signature& sig,
                                       const std::vector<Assignment>& team,
                                       const LawComponent& laws) {
    ValidationReport rep;
    auto range_err = [&](std::string msg, VarId v) {
        rep.errors.push_back({ValidationIssue::Code::RangeError, std::move(msg), v, {}});
    };

    for (const auto& [v, law] : laws.entries()) {
        if (v < 0 || v >= sig.size()) {
            range_err("law for unknown variable index " + std::to_string(v), v);
            continue;
        }
        if (law.parents.empty())
            rep.warnings.push_back({ValidationIssue::Code::EmptyParentWarning,
                                    "endogenous variable '" + sig.var_name(v) +
                                        "' has an empty parent set",
                                    v,
                                    {}});
        bool parents_ok = true;
        for (VarId p : law.parents) {
            if (p == v) {
                rep.errors.push_back({ValidationIssue::Code::SelfParentError,
                                      "variable '" + sig.var_name(v) + "' listed as its own parent",
                                      v,
                                      {}});
                parents_ok = false;
            } else if (p < 0 || p >= sig.size()) {
                range_err("unknown parent index " + std::to_string(p) + " for '" +
                              sig.var_name(v) + "'",
                          v);
                parents_ok = false;
            }
        }
        if (!parents_ok) continue;
        for (const auto& t : law.tuples) {
            if (t.size() != law.parents.size() + 1) {
                range_err("relation tuple arity mismatch for '" + sig.var_name(v) + "'", v);
                continue;
            }
            for (std::size_t i = 0; i < law.parents.size(); ++i)
                if (t[i] < 0 || t[i] >= sig.range_size(law.parents[i]))
                    range_err("relation tuple value out of range for parent '" +
                                  sig.var_name(law.parents[i]) + "' of '" + sig.var_name(v) + "'",
                              v);
            if (t.back() < 0 || t.back() >= sig.range_size(v))
                range_err("relation tuple value out of range for '" + sig.var_name(v) + "'", v);
        }
    }

    for (const auto& s : team) {
        if (static_cast<int>(s.size()) != sig.size()) {
            range_err("team assignment has wrong arity", -1);
            continue;
        }
        bool in_range = true;
        for (VarId v = 0; v < sig.size(); ++v)
            if (s[v] < 0 || s[v] >= sig.range_size(v)) {
                range_err("team assignment value out of range for '" + sig.var_name(v) + "'", v);
                in_range = false;
            }
        if (!in_range) continue;
        for (const auto& [v, law] : laws.entries()) {
            if (v < 0 || v >= sig.size()) continue;
            bool bad_parent = false;
            for (VarId p : law.parents)
                if (p < 0 || p >= sig.size() || p == v) bad_parent = true;
            if (bad_parent) continue;
            std::vector<Value> pa;
            for (VarId p : law.parents) pa.push_back(s[p]);
            if (!law.allows(pa, s[v])) {
                std::string cells;
                for (VarId w = 0; w < sig.size(); ++w) {
                    if (w) cells += ",";
                    cells += sig.var_name(w) + "=" + sig.value_name(w, s[w]);
                }
                rep.errors.push_back({ValidationIssue::Code::CompatibilityError,
                                      "assignment (" + cells + ") violates the law of '" +
                                          sig.var_name(v) + "'",
                                      v, s});
            }
        }
    }
    return rep;
}

// Validating constructor; duplicate team rows are deduplicated silently.
inline RelationalCausalTeam make_model(Signature sig, const std::vector<Assignment>& team,
                                       LawComponent laws) {
    ValidationReport rep = validate_model(sig, team, laws);
    if (!rep.ok()) {
        std::string what = "invalid model:";
        for (const auto& e : rep.errors) what += "\n  " + e.message;
        throw ModelError(what, std::move(rep));
    }
    Team t(team.begin(), team.end());
    return RelationalCausalTeam{std::move(sig), std::move(t), std::move(laws)};
}

}  // namespace rct
