#pragma once

// Team-semantics evaluator. An atom holds when every team member assigns the
// value; negation flips satisfaction; [X=x] / <X=x> quantify over the members
// of the intervened team, each checked as a singleton. Intervened teams are
// memoized per evaluator, so repeated modalities with the same antecedent are
// computed once.

#include <map>

#include "rct/formula.hpp"
#include "rct/intervention.hpp"
#include "rct/model.hpp"

namespace rct {

namespace detail {

// Satisfaction of a modal-free formula by a single assignment.
inline bool eval_flat(const Assignment& s, const Formula& f) {
    switch (f.kind()) {
        case FKind::Atom: return s.at(f.var()) == f.val();
        case FKind::Neq: return s.at(f.var()) != f.val();
        case FKind::Neg: return !eval_flat(s, f.operand());
        case FKind::Conj: return eval_flat(s, f.lhs()) && eval_flat(s, f.rhs());
        case FKind::Disj: return eval_flat(s, f.lhs()) || eval_flat(s, f.rhs());
        case FKind::Impl: return !eval_flat(s, f.lhs()) || eval_flat(s, f.rhs());
        case FKind::Iff: return eval_flat(s, f.lhs()) == eval_flat(s, f.rhs());
        case FKind::Top: return true;
        case FKind::Bottom: return false;
        case FKind::Box:
        case FKind::Diamond:
            throw std::logic_error("modal operator inside a modal operand");
    }
    throw std::logic_error("eval_flat: unreachable");
}

}  // namespace detail

class Evaluator {
public:
    explicit Evaluator(const RelationalCausalTeam& model, bool force_general = false,
                       std::uint64_t max_assignments = std::uint64_t{1} << 20)
        : model_(model), force_general_(force_general), max_assignments_(max_assignments) {}

    const RelationalCausalTeam& model() const { return model_; }

    bool evaluate(const Formula& f) {
        check(f);
        return eval(f);
    }

    const Team& intervened_team(const InterventionSpec& spec) {
        auto it = cache_.find(spec);
        if (it != cache_.end()) return it->second;
        Team t = intervene(model_, spec, force_general_, max_assignments_).team;
        return cache_.emplace(spec, std::move(t)).first->second;
    }

private:
    bool eval(const Formula& f) {
        switch (f.kind()) {
            case FKind::Atom: {
                for (const auto& s : model_.team)
                    if (s[f.var()] != f.val()) return false;
                return true;
            }
            case FKind::Neq: return !eval(Formula::atom(f.var(), f.val()));
            case FKind::Neg: return !eval(f.operand());
            case FKind::Conj: return eval(f.lhs()) && eval(f.rhs());
            case FKind::Disj: return eval(f.lhs()) || eval(f.rhs());
            case FKind::Impl: return !eval(f.lhs()) || eval(f.rhs());
            case FKind::Iff: return eval(f.lhs()) == eval(f.rhs());
            case FKind::Top: return true;
            case FKind::Bottom: return false;
            case FKind::Box: {
                const Team& t = intervened_team(f.spec());
                for (const auto& s : t)
                    if (!detail::eval_flat(s, f.operand())) return false;
                return true;
            }
            case FKind::Diamond: {
                const Team& t = intervened_team(f.spec());
                for (const auto& s : t)
                    if (detail::eval_flat(s, f.operand())) return true;
                return false;
            }
        }
        throw std::logic_error("eval: unreachable");
    }

    void check(const Formula& f) {
        switch (f.kind()) {
            case FKind::Atom:
            case FKind::Neq:
                if (f.var() < 0 || f.var() >= model_.sig.size() || f.val() < 0 ||
                    f.val() >= model_.sig.range_size(f.var()))
                    throw std::out_of_range("formula does not fit the model's signature");
                return;
            case FKind::Neg: check(f.operand()); return;
            case FKind::Conj:
            case FKind::Disj:
            case FKind::Impl:
            case FKind::Iff:
                check(f.lhs());
                check(f.rhs());
                return;
            case FKind::Box:
            case FKind::Diamond:
                if (!f.spec().range_valid(model_.sig))
                    throw std::out_of_range("intervention clause does not fit the signature");
                check(f.operand());
                return;
            case FKind::Top:
            case FKind::Bottom: return;
        }
    }

    const RelationalCausalTeam& model_;
    bool force_general_;
    std::uint64_t max_assignments_;
    std::map<InterventionSpec, Team> cache_;
};

inline bool evaluate(const RelationalCausalTeam& model, const Formula& f) {
    Evaluator ev(model);
    return ev.evaluate(f);
}

}  // namespace rct
