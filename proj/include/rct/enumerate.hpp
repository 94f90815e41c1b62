#pragma once

// Exhaustive enumeration of relational causal teams over a signature,
// filtered by model class, with validity and entailment as enumeration
// sweeps. The order is fixed so counterexamples are reproducible: endogenous
// sets by increasing bitmask, parent sets per variable by increasing bitmask
// (empty parent sets are not generated), relations by bitmask over the tuple
// list, teams by bitmask over the compatible assignments.

#include <functional>

#include "rct/eval.hpp"
#include "rct/model.hpp"

namespace rct {

struct ModelClass {
    bool require_recursive = false;
    bool require_total = false;
    bool require_deterministic = false;
};

inline ModelClass parse_model_class(const std::string& text) {
    ModelClass cls;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        std::string part = text.substr(start, end == std::string::npos ? end : end - start);
        if (part == "recursive") cls.require_recursive = true;
        else if (part == "total") cls.require_total = true;
        else if (part == "deterministic") cls.require_deterministic = true;
        else if (part != "all" && !part.empty())
            throw std::invalid_argument("unknown model class '" + part + "'");
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return cls;
}

struct EnumerationCaps {
    // Upper bound on (parent-set functions x relation subsets x team subsets)
    // tolerated before the enumeration aborts.
    std::uint64_t max_search_space = 100'000'000;
    // When nonzero, at most this many models are yielded per (endogenous set,
    // parent function) partition; the run is then reported as truncated.
    std::uint64_t max_models_per_partition = 0;
    std::uint64_t progress_interval = 0;
    bool include_empty_teams = true;
};

struct EnumerationStats {
    std::uint64_t models = 0;
    bool truncated = false;
};

namespace enum_detail {

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

inline std::uint64_t pow2_sat(std::uint64_t bits) {
    return bits >= 62 ? kSaturated : (std::uint64_t{1} << bits);
}

// Number of relation subsets summed over all nonempty parent sets of v.
inline std::uint64_t law_choices(const Signature& sig, VarId v) {
    std::uint64_t total = 0;
    int n = sig.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (mask & (std::uint64_t{1} << v)) continue;
        std::uint64_t tuples = sig.range_size(v);
        for (VarId p = 0; p < n; ++p)
            if (mask & (std::uint64_t{1} << p)) tuples = sat_mul(tuples, sig.range_size(p));
        total = sat_add(total, pow2_sat(tuples));
    }
    return total;
}

}  // namespace enum_detail

// Bound used by the caps: sum over endogenous sets of the product of
// per-variable law choices, times 2^|A_sigma| for the team subsets.
inline std::uint64_t search_space_bound(const Signature& sig) {
    using namespace enum_detail;
    int n = sig.size();
    std::vector<std::uint64_t> per_var(n);
    for (VarId v = 0; v < n; ++v) per_var[v] = law_choices(sig, v);
    std::uint64_t combos = 0;
    for (std::uint64_t endo = 0; endo < (std::uint64_t{1} << n); ++endo) {
        std::uint64_t product = 1;
        for (VarId v = 0; v < n; ++v)
            if (endo & (std::uint64_t{1} << v)) product = sat_mul(product, per_var[v]);
        combos = sat_add(combos, product);
    }
    return sat_mul(combos, pow2_sat(sig.assignment_count()));
}

// Calls fn for every model of the class; fn returns false to stop early.
inline EnumerationStats for_each_model(
    const Signature& sig, const ModelClass& cls, const EnumerationCaps& caps,
    const std::function<bool(const RelationalCausalTeam&)>& fn,
    const std::function<void(std::uint64_t)>& progress = nullptr) {
    std::uint64_t bound = search_space_bound(sig);
    if (bound > caps.max_search_space && caps.max_models_per_partition == 0)
        throw SearchSpaceExceeded(
            "search space bound " + std::to_string(bound) + " exceeds the cap of " +
                std::to_string(caps.max_search_space) +
                " (sum over endogenous sets of per-variable law choices, times team subsets)",
            bound);

    EnumerationStats stats;
    int n = sig.size();
    std::vector<Assignment> space = sig.all_assignments();
    bool stop = false;

    auto report = [&]() {
        if (progress && caps.progress_interval && stats.models % caps.progress_interval == 0)
            progress(stats.models);
    };

    for (std::uint64_t endo_mask = 0; endo_mask < (std::uint64_t{1} << n) && !stop; ++endo_mask) {
        std::vector<VarId> endo;
        for (VarId v = 0; v < n; ++v)
            if (endo_mask & (std::uint64_t{1} << v)) endo.push_back(v);

        // Parent-set options per endogenous variable: nonempty subsets. A
        // one-variable signature has none, so no laws are possible there.
        std::vector<std::vector<std::vector<VarId>>> parent_options(endo.size());
        bool feasible = true;
        for (std::size_t i = 0; i < endo.size(); ++i) {
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                if (mask & (std::uint64_t{1} << endo[i])) continue;
                std::vector<VarId> ps;
                for (VarId p = 0; p < n; ++p)
                    if (mask & (std::uint64_t{1} << p)) ps.push_back(p);
                parent_options[i].push_back(std::move(ps));
            }
            if (parent_options[i].empty()) feasible = false;
        }
        if (!feasible) continue;

        std::vector<std::size_t> pa_idx(endo.size(), 0);
        while (!stop) {
            // One (endogenous set, parent function) partition.
            LawComponent skeleton;
            for (std::size_t i = 0; i < endo.size(); ++i)
                skeleton.set(endo[i], Law{parent_options[i][pa_idx[i]], {}});

            bool class_ok = true;
            if (cls.require_recursive && !graph_acyclic(causal_graph(sig, skeleton)))
                class_ok = false;

            if (class_ok) {
                // Tuple lists per endogenous variable, in mixed-radix order.
                std::vector<std::vector<std::vector<Value>>> tuple_lists(endo.size());
                for (std::size_t i = 0; i < endo.size(); ++i) {
                    const auto& parents = skeleton.law(endo[i]).parents;
                    detail::for_each_parent_tuple(sig, parents, [&](const std::vector<Value>& pa) {
                        for (Value y = 0; y < sig.range_size(endo[i]); ++y) {
                            std::vector<Value> t = pa;
                            t.push_back(y);
                            tuple_lists[i].push_back(std::move(t));
                        }
                    });
                    if (tuple_lists[i].size() >= 62)
                        throw SearchSpaceExceeded("relation bitmask too wide for enumeration",
                                                  enum_detail::kSaturated);
                }

                std::uint64_t partition_models = 0;
                bool partition_done = false;
                std::vector<std::uint64_t> rel_mask(endo.size(), 0);
                while (!stop && !partition_done) {
                    LawComponent laws;
                    bool rel_ok = true;
                    for (std::size_t i = 0; i < endo.size() && rel_ok; ++i) {
                        Law law{skeleton.law(endo[i]).parents, {}};
                        for (std::size_t t = 0; t < tuple_lists[i].size(); ++t)
                            if (rel_mask[i] & (std::uint64_t{1} << t))
                                law.tuples.insert(tuple_lists[i][t]);
                        if (cls.require_total || cls.require_deterministic) {
                            detail::for_each_parent_tuple(
                                sig, law.parents, [&](const std::vector<Value>& pa) {
                                    std::size_t k = law.allowed_values(pa).size();
                                    if (cls.require_total && k == 0) rel_ok = false;
                                    if (cls.require_deterministic && k > 1) rel_ok = false;
                                });
                        }
                        if (rel_ok) laws.set(endo[i], std::move(law));
                    }

                    if (rel_ok) {
                        std::vector<Assignment> compat;
                        for (const auto& s : space)
                            if (laws.compatible(s)) compat.push_back(s);
                        if (compat.size() >= 62)
                            throw SearchSpaceExceeded("team bitmask too wide for enumeration",
                                                      enum_detail::kSaturated);
                        std::uint64_t team_count = std::uint64_t{1} << compat.size();
                        for (std::uint64_t team_mask = caps.include_empty_teams ? 0 : 1;
                             team_mask < team_count; ++team_mask) {
                            Team team;
                            for (std::size_t t = 0; t < compat.size(); ++t)
                                if (team_mask & (std::uint64_t{1} << t)) team.insert(compat[t]);
                            RelationalCausalTeam model{sig, std::move(team), laws};
                            ++stats.models;
                            ++partition_models;
                            report();
                            if (!fn(model)) {
                                stop = true;
                                break;
                            }
                            if (caps.max_models_per_partition &&
                                partition_models >= caps.max_models_per_partition) {
                                stats.truncated = true;
                                partition_done = true;
                                break;
                            }
                        }
                    }

                    // Advance the relation odometer.
                    if (!partition_done) {
                        std::size_t i = 0;
                        for (; i < endo.size(); ++i) {
                            if (++rel_mask[i] < (std::uint64_t{1} << tuple_lists[i].size())) break;
                            rel_mask[i] = 0;
                        }
                        if (i == endo.size()) partition_done = true;
                        if (endo.empty()) partition_done = true;
                    }
                }
            }

            // Advance the parent-function odometer.
            std::size_t i = 0;
            for (; i < endo.size(); ++i) {
                if (++pa_idx[i] < parent_options[i].size()) break;
                pa_idx[i] = 0;
            }
            if (i == endo.size()) break;
        }
    }
    return stats;
}

struct Verdict {
    bool holds = true;
    std::optional<RelationalCausalTeam> counterexample;
    std::uint64_t models_checked = 0;
};

// Validity over the class: no enumerated model falsifies the formula. Runs
// the full enumeration (per-partition truncation is ignored here; a verdict
// from a truncated run would be unsound).
inline Verdict is_valid(const Formula& f, const Signature& sig, const ModelClass& cls,
                        EnumerationCaps caps = {}) {
    caps.max_models_per_partition = 0;
    Verdict verdict;
    for_each_model(sig, cls, caps, [&](const RelationalCausalTeam& m) {
        ++verdict.models_checked;
        if (!evaluate(m, f)) {
            verdict.holds = false;
            verdict.counterexample = m;
            return false;
        }
        return true;
    });
    return verdict;
}

// Entailment: every model of the class satisfying all of gamma satisfies f.
inline Verdict entails(const std::vector<Formula>& gamma, const Formula& f, const Signature& sig,
                       const ModelClass& cls, EnumerationCaps caps = {}) {
    caps.max_models_per_partition = 0;
    Verdict verdict;
    for_each_model(sig, cls, caps, [&](const RelationalCausalTeam& m) {
        Evaluator ev(m);
        for (const auto& g : gamma)
            if (!ev.evaluate(g)) return true;
        ++verdict.models_checked;
        if (!ev.evaluate(f)) {
            verdict.holds = false;
            verdict.counterexample = m;
            return false;
        }
        return true;
    });
    return verdict;
}

}  // namespace rct
