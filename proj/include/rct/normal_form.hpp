#pragma once

// Normal-form transformer: rewrites any formula into a Boolean combination of
// might-atoms <X=x>Y=y whose antecedent X and consequent variables Y partition
// the whole domain. The pipeline mirrors the axiomatic derivation: guard
// unguarded basic conjunctions with flatness, turn boxes into negated
// diamonds, put modal operands in disjunctive normal form, expand negated
// atoms over the finite ranges, pad missing variables, distribute the diamond
// over the disjunction, and drop conjuncts already fixed by the antecedent
// (clauses contradicting the antecedent drop out entirely).

#include <cstddef>

#include "rct/formula.hpp"

namespace rct {

struct NormalFormResult {
    Formula formula;
    std::size_t atom_count = 0;
};

namespace nf_detail {

struct Lit {
    VarId var;
    Value val;
    bool positive;
};

using Clause = std::vector<Lit>;

inline std::vector<Clause> dnf(const Formula& f, bool positive) {
    switch (f.kind()) {
        case FKind::Atom:
            return {{Lit{f.var(), f.val(), positive}}};
        case FKind::Neg:
            return dnf(f.operand(), !positive);
        case FKind::Conj: {
            if (positive) {
                auto ls = dnf(f.lhs(), true);
                auto rs = dnf(f.rhs(), true);
                std::vector<Clause> out;
                for (const auto& l : ls)
                    for (const auto& r : rs) {
                        Clause c = l;
                        c.insert(c.end(), r.begin(), r.end());
                        out.push_back(std::move(c));
                    }
                return out;
            }
            auto out = dnf(f.lhs(), false);
            auto rs = dnf(f.rhs(), false);
            out.insert(out.end(), rs.begin(), rs.end());
            return out;
        }
        default:
            throw std::logic_error("normal form: operand not in core fragment");
    }
}

// Valuations of the free (non-antecedent) variables reachable from one DNF
// clause, after range-expanding negative literals, padding unmentioned
// variables and checking antecedent conjuncts. Empty result: dead clause.
inline void clause_valuations(const Signature& sig, const InterventionSpec& iv,
                              const std::vector<VarId>& free_vars, const Clause& clause,
                              std::set<std::vector<Value>>& out) {
    std::vector<std::set<Value>> allowed(sig.size());
    for (VarId v = 0; v < sig.size(); ++v)
        for (Value x = 0; x < sig.range_size(v); ++x) allowed[v].insert(x);
    for (const Lit& lit : clause) {
        if (lit.positive) {
            if (!allowed[lit.var].count(lit.val)) return;  // contradictory conjuncts
            allowed[lit.var] = {lit.val};
        } else {
            allowed[lit.var].erase(lit.val);
            if (allowed[lit.var].empty()) return;
        }
    }
    for (auto [v, x] : iv.entries())
        if (!allowed[v].count(x)) return;  // conjunct contradicts the antecedent

    std::vector<std::vector<Value>> choices;
    for (VarId v : free_vars) choices.emplace_back(allowed[v].begin(), allowed[v].end());
    std::vector<std::size_t> idx(free_vars.size(), 0);
    while (true) {
        std::vector<Value> val(free_vars.size());
        for (std::size_t i = 0; i < free_vars.size(); ++i) val[i] = choices[i][idx[i]];
        out.insert(std::move(val));
        int i = static_cast<int>(free_vars.size()) - 1;
        while (i >= 0) {
            if (++idx[i] < choices[i].size()) break;
            idx[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

inline Formula might_atom(const InterventionSpec& iv, const std::vector<VarId>& free_vars,
                          const std::vector<Value>& vals) {
    if (free_vars.empty()) return Formula::diamond(iv, Formula::top());
    std::vector<Formula> atoms;
    for (std::size_t i = 0; i < free_vars.size(); ++i)
        atoms.push_back(Formula::atom(free_vars[i], vals[i]));
    return Formula::diamond(iv, conj_fold(atoms));
}

// Canonical false in the might-atom basis: a & ~a over the first full
// valuation's diamond atom.
inline Formula false_combo(const Signature& sig, std::size_t& atom_count) {
    std::vector<Formula> atoms;
    for (VarId v = 0; v < sig.size(); ++v) atoms.push_back(Formula::atom(v, 0));
    Formula a = Formula::diamond(InterventionSpec(), conj_fold(atoms));
    atom_count += 2;
    return Formula::conj(a, Formula::neg(a));
}

inline Formula expand_diamond(const Signature& sig, const InterventionSpec& iv,
                              const Formula& operand, std::size_t& atom_count) {
    std::vector<VarId> free_vars;
    for (VarId v = 0; v < sig.size(); ++v)
        if (!iv.binds(v)) free_vars.push_back(v);

    std::set<std::vector<Value>> valuations;
    for (const Clause& c : dnf(operand, true))
        clause_valuations(sig, iv, free_vars, c, valuations);

    if (valuations.empty()) return false_combo(sig, atom_count);
    std::vector<Formula> atoms;
    for (const auto& val : valuations) atoms.push_back(might_atom(iv, free_vars, val));
    atom_count += atoms.size();
    if (atoms.size() == 1) return atoms[0];
    std::vector<Formula> negs;
    for (const auto& a : atoms) negs.push_back(Formula::neg(a));
    return Formula::neg(conj_fold(negs));
}

inline bool basic_conjunction(const Formula& f) {
    switch (f.kind()) {
        case FKind::Atom: return true;
        case FKind::Conj: return basic_conjunction(f.lhs()) && basic_conjunction(f.rhs());
        default: return false;
    }
}

// Replace every maximal unguarded basic conjunction B with the flatness guard
// <>T -> []B (on the desugared level).
inline Formula guard_flat(const Formula& f, const Formula& diamond_top) {
    if (basic_conjunction(f)) {
        Formula boxed = Formula::box(InterventionSpec(), f);
        return Formula::neg(Formula::conj(Formula::neg(Formula::neg(diamond_top)),
                                          Formula::neg(boxed)));
    }
    switch (f.kind()) {
        case FKind::Neg: return Formula::neg(guard_flat(f.operand(), diamond_top));
        case FKind::Conj:
            return Formula::conj(guard_flat(f.lhs(), diamond_top),
                                 guard_flat(f.rhs(), diamond_top));
        case FKind::Box: return f;  // operand atoms are guarded by the modality
        default: throw std::logic_error("normal form: unexpected node after desugaring");
    }
}

inline Formula transform(const Signature& sig, const Formula& f, std::size_t& atom_count) {
    switch (f.kind()) {
        case FKind::Neg: return Formula::neg(transform(sig, f.operand(), atom_count));
        case FKind::Conj:
            return Formula::conj(transform(sig, f.lhs(), atom_count),
                                 transform(sig, f.rhs(), atom_count));
        case FKind::Box:
            return Formula::neg(expand_diamond(sig, f.spec(),
                                               Formula::neg(f.operand()), atom_count));
        default: throw std::logic_error("normal form: unexpected node in skeleton");
    }
}

inline Formula drop_double_negations(const Formula& f) {
    switch (f.kind()) {
        case FKind::Neg: {
            Formula inner = f.operand();
            if (inner.kind() == FKind::Neg) return drop_double_negations(inner.operand());
            return Formula::neg(drop_double_negations(inner));
        }
        case FKind::Conj:
            return Formula::conj(drop_double_negations(f.lhs()), drop_double_negations(f.rhs()));
        default: return f;
    }
}

}  // namespace nf_detail

inline NormalFormResult to_normal_form(const Formula& f, const Signature& sig) {
    Formula core = desugar(f, sig);
    Formula top_core = desugar(Formula::top(), sig);
    Formula diamond_top =
        Formula::neg(Formula::box(InterventionSpec(), Formula::neg(top_core)));
    Formula guarded = nf_detail::guard_flat(core, diamond_top);
    std::size_t atom_count = 0;
    Formula out = nf_detail::transform(sig, guarded, atom_count);
    return {nf_detail::drop_double_negations(out), atom_count};
}

// True iff f is built from might-atoms by strong negation and conjunction
// only. A might-atom is a diamond whose consequent is a conjunction of atoms
// valuating exactly the variables missing from the antecedent (T when the
// antecedent covers the whole domain).
inline bool shape_check(const Formula& f, const Signature& sig) {
    switch (f.kind()) {
        case FKind::Neg: return shape_check(f.operand(), sig);
        case FKind::Conj: return shape_check(f.lhs(), sig) && shape_check(f.rhs(), sig);
        case FKind::Diamond: {
            std::set<VarId> antecedent = f.spec().variables();
            Formula op = f.operand();
            if (op.kind() == FKind::Top)
                return static_cast<int>(antecedent.size()) == sig.size();
            std::set<VarId> seen;
            std::vector<Formula> stack{op};
            while (!stack.empty()) {
                Formula g = stack.back();
                stack.pop_back();
                if (g.kind() == FKind::Conj) {
                    stack.push_back(g.lhs());
                    stack.push_back(g.rhs());
                } else if (g.kind() == FKind::Atom) {
                    if (antecedent.count(g.var())) return false;
                    if (!seen.insert(g.var()).second) return false;
                } else {
                    return false;
                }
            }
            return seen.size() + antecedent.size() == static_cast<std::size_t>(sig.size());
        }
        default: return false;
    }
}

}  // namespace rct
