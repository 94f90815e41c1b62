#pragma once

// Definable causal notions: direct cause (X leads Y when some intervention on
// X, in some full context over the remaining variables, changes the set of
// values Y might take), the derived exogenous/endogenous formulas, and the
// generalized-recursivity instances built from them.

#include <functional>

#include "rct/eval.hpp"
#include "rct/formula.hpp"

namespace rct {

struct CauseQuery {
    VarId cause;
    VarId effect;
};

namespace detail {

// All valuations of `vars` (in the given order), mixed-radix, last fastest.
inline std::vector<std::vector<Value>> valuations(const Signature& sig,
                                                  const std::vector<VarId>& vars) {
    std::vector<std::vector<Value>> out;
    std::vector<Value> cur(vars.size(), 0);
    while (true) {
        out.push_back(cur);
        int i = static_cast<int>(vars.size()) - 1;
        while (i >= 0) {
            if (++cur[i] < sig.range_size(vars[i])) break;
            cur[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

inline InterventionSpec spec_of(const std::vector<VarId>& vars, const std::vector<Value>& vals) {
    InterventionSpec spec;
    for (std::size_t i = 0; i < vars.size(); ++i) spec.add(vars[i], vals[i]);
    return spec;
}

}  // namespace detail

// The big disjunction over (z, x, y) of ~(<Z=z,X=x>Y=y <-> <Z=z>Y=y), with
// Z the remaining variables; disjuncts are generated in signature order.
inline Formula direct_cause_formula(const CauseQuery& q, const Signature& sig) {
    if (q.cause == q.effect)
        throw std::invalid_argument("direct cause query needs two distinct variables");
    std::vector<VarId> context;
    for (VarId v = 0; v < sig.size(); ++v)
        if (v != q.cause && v != q.effect) context.push_back(v);

    std::vector<Formula> disjuncts;
    for (const auto& z : detail::valuations(sig, context)) {
        InterventionSpec base = detail::spec_of(context, z);
        for (Value x = 0; x < sig.range_size(q.cause); ++x) {
            InterventionSpec extended = base.with(q.cause, x);
            for (Value y = 0; y < sig.range_size(q.effect); ++y) {
                Formula atom = Formula::atom(q.effect, y);
                disjuncts.push_back(Formula::neg(
                    Formula::iff(Formula::diamond(extended, atom), Formula::diamond(base, atom))));
            }
        }
    }
    return disj_fold(disjuncts);
}

// Semantic shortcut: compare, per full context z, the set of values Y might
// take under do(Z=z) and under do(Z=z, X=x). Equals the evaluation of
// direct_cause_formula by construction.
inline bool is_direct_cause(Evaluator& ev, const CauseQuery& q) {
    const Signature& sig = ev.model().sig;
    if (q.cause == q.effect)
        throw std::invalid_argument("direct cause query needs two distinct variables");
    std::vector<VarId> context;
    for (VarId v = 0; v < sig.size(); ++v)
        if (v != q.cause && v != q.effect) context.push_back(v);

    auto might_range = [&](const InterventionSpec& spec) {
        std::set<Value> out;
        for (const auto& s : ev.intervened_team(spec)) out.insert(s[q.effect]);
        return out;
    };

    for (const auto& z : detail::valuations(sig, context)) {
        InterventionSpec base = detail::spec_of(context, z);
        std::set<Value> base_range = might_range(base);
        for (Value x = 0; x < sig.range_size(q.cause); ++x)
            if (might_range(base.with(q.cause, x)) != base_range) return true;
    }
    return false;
}

inline bool is_direct_cause(const RelationalCausalTeam& model, const CauseQuery& q) {
    Evaluator ev(model);
    return is_direct_cause(ev, q);
}

// Conjunction over all X != V of the negated direct-cause formula; T for a
// one-variable signature.
inline Formula exo_formula(VarId v, const Signature& sig) {
    if (v < 0 || v >= sig.size()) throw std::out_of_range("exo_formula: unknown variable");
    std::vector<Formula> conjuncts;
    for (VarId x = 0; x < sig.size(); ++x)
        if (x != v) conjuncts.push_back(Formula::neg(direct_cause_formula({x, v}, sig)));
    return conj_fold(conjuncts);
}

inline Formula end_formula(VarId v, const Signature& sig) {
    return Formula::neg(exo_formula(v, sig));
}

// All instances of (X1~>X2 & ... & X[n-1]~>Xn) -> ~Xn~>X1 over chains of
// distinct variables with 2 <= n <= n_max.
inline std::vector<Formula> recursivity_instances(const Signature& sig, int n_max) {
    if (n_max < 2) throw std::invalid_argument("recursivity instances need n_max >= 2");
    std::vector<Formula> out;
    std::vector<VarId> chain;
    std::vector<bool> used(sig.size(), false);
    std::function<void()> extend = [&]() {
        if (chain.size() >= 2) {
            std::vector<Formula> links;
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                links.push_back(direct_cause_formula({chain[i], chain[i + 1]}, sig));
            out.push_back(Formula::impl(
                conj_fold(links),
                Formula::neg(direct_cause_formula({chain.back(), chain.front()}, sig))));
        }
        if (static_cast<int>(chain.size()) == n_max) return;
        for (VarId v = 0; v < sig.size(); ++v) {
            if (used[v]) continue;
            used[v] = true;
            chain.push_back(v);
            extend();
            chain.pop_back();
            used[v] = false;
        }
    };
    extend();
    return out;
}

// A declared parent X of V is a dummy argument when, for every fixed tuple of
// the other parents, the allowed value set for V does not depend on X's value.
inline bool is_dummy_argument(const Signature& sig, const Law& law, VarId x) {
    std::size_t xi = law.parents.size();
    for (std::size_t i = 0; i < law.parents.size(); ++i)
        if (law.parents[i] == x) xi = i;
    if (xi == law.parents.size())
        throw std::invalid_argument("is_dummy_argument: not a declared parent");

    std::vector<VarId> others;
    for (VarId p : law.parents)
        if (p != x) others.push_back(p);

    for (const auto& rest : detail::valuations(sig, others)) {
        std::vector<Value> pa(law.parents.size());
        for (std::size_t i = 0, j = 0; i < law.parents.size(); ++i)
            if (i != xi) pa[i] = rest[j++];
        pa[xi] = 0;
        std::vector<Value> first = law.allowed_values(pa);
        for (Value xv = 1; xv < sig.range_size(x); ++xv) {
            pa[xi] = xv;
            if (law.allowed_values(pa) != first) return false;
        }
    }
    return true;
}

inline std::set<VarId> non_dummy_parents(const RelationalCausalTeam& m, VarId v) {
    std::set<VarId> out;
    if (!m.laws.has_law(v)) return out;
    const Law& law = m.laws.law(v);
    for (VarId p : law.parents)
        if (!is_dummy_argument(m.sig, law, p)) out.insert(p);
    return out;
}

inline std::set<VarId> semantic_direct_causes(Evaluator& ev, VarId effect) {
    std::set<VarId> out;
    for (VarId x = 0; x < ev.model().sig.size(); ++x)
        if (x != effect && is_direct_cause(ev, {x, effect})) out.insert(x);
    return out;
}

}  // namespace rct
