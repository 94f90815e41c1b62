#pragma once

// Canonical model reconstruction from the theory of a concrete model. The
// team is read off the might-facts over full valuations, parents off the
// might-discrepancy conditions, and laws off the might-facts under
// interventions on everything else; extension independence of the law
// definition is checked rather than assumed.

#include <random>

#include "rct/causes.hpp"
#include "rct/eval.hpp"
#include "rct/random_formula.hpp"

namespace rct {

class WellDefinednessViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Answers membership queries "phi in Gamma?" for Gamma the theory of the
// backing model; evaluations are memoized by printed form.
class TheoryOracle {
public:
    explicit TheoryOracle(const RelationalCausalTeam& model) : eval_(model) {}

    const RelationalCausalTeam& model() const { return eval_.model(); }

    bool contains(const Formula& f) {
        std::string key = to_text(f, eval_.model().sig);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool value = eval_.evaluate(f);
        memo_.emplace(std::move(key), value);
        return value;
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    Evaluator eval_;
    std::map<std::string, bool> memo_;
};

namespace canonical_detail {

inline Formula full_valuation_conj(const Signature& sig, const Assignment& s) {
    std::vector<Formula> atoms;
    for (VarId v = 0; v < sig.size(); ++v) atoms.push_back(Formula::atom(v, s[v]));
    return conj_fold(atoms);
}

}  // namespace canonical_detail

inline RelationalCausalTeam canonical_team(TheoryOracle& oracle, const Signature& sig) {
    // Team: assignments whose full might-description is in the theory.
    std::vector<Assignment> team;
    for (const auto& s : sig.all_assignments()) {
        Formula fact = Formula::diamond(InterventionSpec(),
                                        canonical_detail::full_valuation_conj(sig, s));
        if (oracle.contains(fact)) team.push_back(s);
    }

    // Parents: X joins PA_Y when some full context over the remaining
    // variables shows a might-discrepancy between intervening and not
    // intervening on X.
    std::vector<std::set<VarId>> parents(sig.size());
    for (VarId y = 0; y < sig.size(); ++y) {
        for (VarId x = 0; x < sig.size(); ++x) {
            if (x == y) continue;
            std::vector<VarId> context;
            for (VarId v = 0; v < sig.size(); ++v)
                if (v != x && v != y) context.push_back(v);
            bool discrepancy = false;
            for (const auto& w : detail::valuations(sig, context)) {
                InterventionSpec base = detail::spec_of(context, w);
                for (Value yv = 0; yv < sig.range_size(y) && !discrepancy; ++yv) {
                    Formula atom = Formula::atom(y, yv);
                    bool without = oracle.contains(Formula::diamond(base, atom));
                    for (Value xv = 0; xv < sig.range_size(x) && !discrepancy; ++xv) {
                        bool with = oracle.contains(Formula::diamond(base.with(x, xv), atom));
                        if (with != without) discrepancy = true;
                    }
                }
                if (discrepancy) break;
            }
            if (discrepancy) parents[y].insert(x);
        }
    }

    // Laws: (pa, y) is allowed when the might-fact holds under interventions
    // on everything else, for any (hence all) extensions of pa.
    LawComponent laws;
    for (VarId y = 0; y < sig.size(); ++y) {
        if (parents[y].empty()) continue;
        Law law;
        law.parents.assign(parents[y].begin(), parents[y].end());
        std::vector<VarId> others;
        for (VarId v = 0; v < sig.size(); ++v)
            if (v != y) others.push_back(v);
        detail::for_each_parent_tuple(sig, law.parents, [&](const std::vector<Value>& pa) {
            for (Value yv = 0; yv < sig.range_size(y); ++yv) {
                std::optional<bool> agreed;
                for (const auto& w : detail::valuations(sig, others)) {
                    bool extends = true;
                    for (std::size_t i = 0; i < law.parents.size(); ++i) {
                        std::size_t pos =
                            std::find(others.begin(), others.end(), law.parents[i]) -
                            others.begin();
                        if (w[pos] != pa[i]) extends = false;
                    }
                    if (!extends) continue;
                    bool holds = oracle.contains(
                        Formula::diamond(detail::spec_of(others, w), Formula::atom(y, yv)));
                    if (!agreed)
                        agreed = holds;
                    else if (*agreed != holds)
                        throw WellDefinednessViolation(
                            "law of '" + sig.var_name(y) +
                            "' depends on the context outside its parents");
                }
                if (agreed && *agreed) {
                    std::vector<Value> t = pa;
                    t.push_back(yv);
                    law.tuples.insert(t);
                }
            }
        });
        laws.set(y, std::move(law));
    }

    return make_model(sig, team, laws);
}

inline RelationalCausalTeam canonical_team(const RelationalCausalTeam& model) {
    TheoryOracle oracle(model);
    return canonical_team(oracle, model.sig);
}

struct RoundtripReport {
    std::size_t might_atoms_checked = 0;
    std::size_t random_formulas_checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// All might-atoms over the signature: <X=x>Y=y with X and Y partitioning the
// domain (Y empty gives the <W=w>T atoms, X empty the <>W=w ones).
inline std::vector<Formula> all_might_atoms(const Signature& sig) {
    std::vector<Formula> out;
    int n = sig.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<VarId> xs, ys;
        for (VarId v = 0; v < n; ++v)
            (mask & (std::uint64_t{1} << v) ? xs : ys).push_back(v);
        for (const auto& xv : detail::valuations(sig, xs)) {
            InterventionSpec spec = detail::spec_of(xs, xv);
            if (ys.empty()) {
                out.push_back(Formula::diamond(spec, Formula::top()));
                continue;
            }
            for (const auto& yv : detail::valuations(sig, ys)) {
                std::vector<Formula> atoms;
                for (std::size_t i = 0; i < ys.size(); ++i)
                    atoms.push_back(Formula::atom(ys[i], yv[i]));
                out.push_back(Formula::diamond(spec, conj_fold(atoms)));
            }
        }
    }
    return out;
}

// Rebuilds the canonical model from the theory of the input and compares the
// two on every might-atom (by the normal form, agreement there gives full
// elementary equivalence) plus a budget of random formulas.
inline RoundtripReport truth_lemma_roundtrip(const RelationalCausalTeam& model,
                                             std::size_t random_budget = 0,
                                             unsigned seed = 1) {
    RoundtripReport report;
    RelationalCausalTeam rebuilt = canonical_team(model);
    Evaluator original(model);
    Evaluator canonical(rebuilt);

    for (const auto& atom : all_might_atoms(model.sig)) {
        ++report.might_atoms_checked;
        if (original.evaluate(atom) != canonical.evaluate(atom))
            report.mismatches.push_back(to_text(atom, model.sig));
    }

    std::mt19937 rng(seed);
    for (std::size_t i = 0; i < random_budget; ++i) {
        Formula f = random_formula(rng, model.sig);
        ++report.random_formulas_checked;
        if (original.evaluate(f) != canonical.evaluate(f))
            report.mismatches.push_back(to_text(f, model.sig));
    }
    return report;
}

}  // namespace rct
