#pragma once

// Interventions do(X=x) on relational causal teams: the general clause for
// arbitrary (possibly cyclic) models and the per-assignment propagation for
// recursive ones. Both remove the laws of the intervened variables, force the
// intervened values, and preserve the joint nondescendant state.

#include <cstdint>
#include <functional>
#include <utility>

#include "rct/model.hpp"

namespace rct {

class InconsistentIntervention : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotRecursive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SearchSpaceExceeded : public std::runtime_error {
public:
    SearchSpaceExceeded(std::string what, std::uint64_t size)
        : std::runtime_error(std::move(what)), size(size) {}
    std::uint64_t size;
};

// Consistent multiset of basic clauses X=x, stored as a sorted map; duplicate
// clauses with equal values collapse, conflicting values are rejected.
class InterventionSpec {
public:
    InterventionSpec() = default;

    static InterventionSpec of(const std::vector<std::pair<VarId, Value>>& clauses) {
        InterventionSpec spec;
        for (auto [v, x] : clauses) spec.add(v, x);
        return spec;
    }

    void add(VarId v, Value x) {
        for (auto& [w, y] : entries_) {
            if (w == v) {
                if (y != x)
                    throw InconsistentIntervention(
                        "inconsistent intervention: two values for one variable");
                return;
            }
        }
        entries_.emplace_back(v, x);
        std::sort(entries_.begin(), entries_.end());
    }

    InterventionSpec with(VarId v, Value x) const {
        InterventionSpec out = *this;
        out.add(v, x);
        return out;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<std::pair<VarId, Value>>& entries() const { return entries_; }

    bool binds(VarId v) const {
        for (auto& [w, _] : entries_)
            if (w == v) return true;
        return false;
    }

    std::optional<Value> value_of(VarId v) const {
        for (auto& [w, x] : entries_)
            if (w == v) return x;
        return std::nullopt;
    }

    std::set<VarId> variables() const {
        std::set<VarId> out;
        for (auto& [v, _] : entries_) out.insert(v);
        return out;
    }

    bool range_valid(const Signature& sig) const {
        for (auto& [v, x] : entries_)
            if (v < 0 || v >= sig.size() || x < 0 || x >= sig.range_size(v)) return false;
        return true;
    }

    bool operator==(const InterventionSpec& o) const { return entries_ == o.entries_; }
    bool operator<(const InterventionSpec& o) const { return entries_ < o.entries_; }

private:
    std::vector<std::pair<VarId, Value>> entries_;
};

namespace detail {

inline void check_spec(const RelationalCausalTeam& m, const InterventionSpec& iv) {
    if (!iv.range_valid(m.sig))
        throw std::out_of_range("intervention clause out of the signature's range");
}

inline std::vector<Value> project(const Assignment& s, const std::set<VarId>& vars) {
    std::vector<Value> out;
    out.reserve(vars.size());
    for (VarId v : vars) out.push_back(s[v]);
    return out;
}

}  // namespace detail

// General clause: enumerate all assignments of the signature and keep those
// that are law-compatible, match the intervened values, and agree with some
// team member on the joint nondescendant block. Cost is |A_sigma|; the cap
// guards against accidental blowups.
inline RelationalCausalTeam intervene_general(const RelationalCausalTeam& m,
                                              const InterventionSpec& iv,
                                              std::uint64_t max_assignments = std::uint64_t{1}
                                                                              << 20) {
    detail::check_spec(m, iv);
    if (m.sig.assignment_count() > max_assignments)
        throw SearchSpaceExceeded("assignment space too large for the general clause",
                                  m.sig.assignment_count());

    std::set<VarId> xs = iv.variables();
    LawComponent restricted = m.laws.without(xs);
    std::set<VarId> nd = nondescendants(causal_graph(m), xs);

    std::set<std::vector<Value>> nd_projections;
    for (const auto& s : m.team) nd_projections.insert(detail::project(s, nd));

    Team out;
    for (const auto& s : m.sig.all_assignments()) {
        bool pinned = true;
        for (auto [v, x] : iv.entries())
            if (s[v] != x) {
                pinned = false;
                break;
            }
        if (!pinned) continue;
        if (!restricted.compatible(s)) continue;
        if (!nd_projections.count(detail::project(s, nd))) continue;
        out.insert(s);
    }
    return RelationalCausalTeam{m.sig, std::move(out), std::move(restricted)};
}

// Outcome of do(iv) applied to the single assignment s: nondescendants of the
// intervened variables keep their value from s, intervened variables take the
// prescribed values, and the remaining (descendant, endogenous) variables are
// regenerated from their laws in topological order. Branches whose law allows
// no value die. Expects s to be compatible with the laws on nondescendants.
inline Team single_assignment_outcome(const Signature& sig, const Assignment& s,
                                      const LawComponent& laws, const InterventionSpec& iv) {
    CausalGraph g = causal_graph(sig, laws);
    if (!graph_acyclic(g)) throw NotRecursive("single-assignment intervention needs an acyclic graph");

    std::set<VarId> xs = iv.variables();
    std::set<VarId> desc = descendants(g, xs);

    // Variables to regenerate, in a topological order (parents first).
    std::vector<VarId> order;
    {
        std::vector<int> mark(sig.size(), 0);
        std::function<void(VarId)> visit = [&](VarId v) {
            if (mark[v]) return;
            mark[v] = 1;
            if (laws.has_law(v))
                for (VarId p : laws.law(v).parents) visit(p);
            order.push_back(v);
        };
        for (VarId v = 0; v < sig.size(); ++v) visit(v);
    }

    Team out;
    std::vector<Assignment> frontier;
    {
        Assignment base(sig.size(), -1);
        for (VarId v = 0; v < sig.size(); ++v)
            if (!desc.count(v)) base[v] = s[v];
        for (auto [v, x] : iv.entries()) base[v] = x;
        frontier.push_back(std::move(base));
    }
    for (VarId v : order) {
        if (!desc.count(v) || xs.count(v)) continue;  // already pinned
        // v is a descendant of the intervened set and not itself intervened,
        // hence endogenous with a surviving law.
        const Law& law = laws.law(v);
        std::vector<Assignment> next;
        for (const auto& partial : frontier) {
            std::vector<Value> pa;
            pa.reserve(law.parents.size());
            for (VarId p : law.parents) pa.push_back(partial[p]);
            for (Value y : law.allowed_values(pa)) {
                Assignment ext = partial;
                ext[v] = y;
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    for (auto& t : frontier) out.insert(std::move(t));
    return out;
}

inline RelationalCausalTeam intervene_recursive(const RelationalCausalTeam& m,
                                                const InterventionSpec& iv) {
    detail::check_spec(m, iv);
    if (!graph_acyclic(causal_graph(m)))
        throw NotRecursive("recursive intervention applied to a cyclic model");
    std::set<VarId> xs = iv.variables();
    LawComponent restricted = m.laws.without(xs);
    Team out;
    for (const auto& s : m.team) {
        Team one = single_assignment_outcome(m.sig, s, m.laws, iv);
        out.insert(one.begin(), one.end());
    }
    return RelationalCausalTeam{m.sig, std::move(out), std::move(restricted)};
}

// Dispatch: recursive propagation when the graph is acyclic, the general
// clause otherwise. force_general exists for differential testing.
inline RelationalCausalTeam intervene(const RelationalCausalTeam& m, const InterventionSpec& iv,
                                      bool force_general = false,
                                      std::uint64_t max_assignments = std::uint64_t{1} << 20) {
    if (!force_general && graph_acyclic(causal_graph(m))) return intervene_recursive(m, iv);
    return intervene_general(m, iv, max_assignments);
}

}  // namespace rct
