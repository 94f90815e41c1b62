#pragma once

// Instance generators for the axiom schemas, the recursivity and strong
// reversibility families, and the known-failing probe schemas, plus the
// soundness sweep that evaluates every generated instance on every enumerated
// model of the appropriate class.

#include "rct/causes.hpp"
#include "rct/enumerate.hpp"

namespace rct {

// All consistent value assignments to all variable subsets, empty included.
inline std::vector<InterventionSpec> all_specs(const Signature& sig) {
    std::vector<InterventionSpec> out{InterventionSpec()};
    int n = sig.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<VarId> vars;
        for (VarId v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) vars.push_back(v);
        for (const auto& vals : detail::valuations(sig, vars))
            out.push_back(detail::spec_of(vars, vals));
    }
    return out;
}

struct SchemaInstances {
    std::string schema;
    std::vector<Formula> instances;
};

namespace axiom_detail {

inline std::vector<VarId> complement(const Signature& sig, const std::set<VarId>& removed) {
    std::vector<VarId> out;
    for (VarId v = 0; v < sig.size(); ++v)
        if (!removed.count(v)) out.push_back(v);
    return out;
}

inline std::vector<Formula> atom_pool(const Signature& sig) {
    std::vector<Formula> out;
    for (VarId v = 0; v < sig.size(); ++v)
        for (Value x = 0; x < sig.range_size(v); ++x) out.push_back(Formula::atom(v, x));
    return out;
}

}  // namespace axiom_detail

// Tautology instances under no, an empty, and a singleton modality.
inline SchemaInstances gen_I0(const Signature& sig) {
    Formula p = Formula::atom(0, 0);
    Formula q = Formula::atom(sig.size() - 1, sig.range_size(sig.size() - 1) - 1);
    std::vector<Formula> bodies{
        Formula::impl(p, p),
        Formula::neg(Formula::conj(p, Formula::neg(p))),
        Formula::impl(p, Formula::impl(q, p)),
        Formula::impl(Formula::conj(p, Formula::neg(p)), q),
        Formula::impl(Formula::conj(Formula::impl(p, q), p), q),
    };
    SchemaInstances out{"I0", {}};
    InterventionSpec single = InterventionSpec().with(0, 0);
    for (const auto& body : bodies) {
        out.instances.push_back(body);
        out.instances.push_back(Formula::box(InterventionSpec(), body));
        out.instances.push_back(Formula::box(single, body));
    }
    return out;
}

inline SchemaInstances gen_I1(const Signature& sig) {
    SchemaInstances out{"I1", {}};
    for (const auto& iv : all_specs(sig))
        for (VarId y = 0; y < sig.size(); ++y)
            for (Value a = 0; a < sig.range_size(y); ++a)
                for (Value b = 0; b < sig.range_size(y); ++b) {
                    if (a == b) continue;
                    out.instances.push_back(Formula::impl(Formula::box(iv, Formula::atom(y, a)),
                                                          Formula::box(iv, Formula::neq(y, b))));
                }
    return out;
}

inline SchemaInstances gen_I2(const Signature& sig) {
    SchemaInstances out{"I2", {}};
    for (const auto& iv : all_specs(sig))
        for (VarId y = 0; y < sig.size(); ++y) {
            std::vector<Formula> atoms;
            for (Value x = 0; x < sig.range_size(y); ++x) atoms.push_back(Formula::atom(y, x));
            out.instances.push_back(Formula::box(iv, disj_fold(atoms)));
        }
    return out;
}

// Weak composition, with full-valuation and empty consequents. The versions
// with both modalities absent are false on empty teams, so they are not
// generated (nor recognized by the proof checker).
inline SchemaInstances gen_I3(const Signature& sig) {
    SchemaInstances out{"I3", {}};
    for (const auto& iv : all_specs(sig)) {
        std::set<VarId> bound = iv.variables();
        for (VarId z = 0; z < sig.size(); ++z) {
            if (bound.count(z)) continue;
            std::set<VarId> bound_z = bound;
            bound_z.insert(z);
            std::vector<VarId> rest = axiom_detail::complement(sig, bound_z);
            for (Value zv = 0; zv < sig.range_size(z); ++zv) {
                InterventionSpec extended = iv.with(z, zv);
                // Empty consequent tuple.
                out.instances.push_back(
                    Formula::impl(Formula::diamond(iv, Formula::atom(z, zv)),
                                  Formula::diamond(extended, Formula::top())));
                if (rest.empty()) continue;
                for (const auto& vals : detail::valuations(sig, rest)) {
                    std::vector<Formula> atoms{Formula::atom(z, zv)};
                    std::vector<Formula> conseq;
                    for (std::size_t i = 0; i < rest.size(); ++i) {
                        atoms.push_back(Formula::atom(rest[i], vals[i]));
                        conseq.push_back(Formula::atom(rest[i], vals[i]));
                    }
                    out.instances.push_back(
                        Formula::impl(Formula::diamond(iv, conj_fold(atoms)),
                                      Formula::diamond(extended, conj_fold(conseq))));
                }
            }
        }
    }
    return out;
}

inline SchemaInstances gen_I4(const Signature& sig) {
    SchemaInstances out{"I4", {}};
    for (const auto& iv : all_specs(sig)) {
        if (iv.empty()) continue;
        for (auto [v, x] : iv.entries())
            out.instances.push_back(Formula::box(iv, Formula::atom(v, x)));
    }
    return out;
}

inline SchemaInstances gen_I5(const Signature& sig) {
    SchemaInstances out{"I5", {}};
    std::vector<Formula> pool = axiom_detail::atom_pool(sig);
    for (const auto& iv : all_specs(sig))
        for (const auto& psi : pool)
            for (const auto& chi : pool)
                out.instances.push_back(Formula::impl(
                    Formula::conj(Formula::box(iv, psi),
                                  Formula::box(iv, Formula::impl(psi, chi))),
                    Formula::box(iv, chi)));
    // Versions with the modality absent.
    for (const auto& psi : pool)
        for (const auto& chi : pool)
            out.instances.push_back(
                Formula::impl(Formula::conj(psi, Formula::impl(psi, chi)), chi));
    return out;
}

// Weak reversibility: V != Y and the context covers Dom minus the antecedent.
// Instances of this schema are falsifiable: the two might-premises may be
// witnessed by different team members, and re-affirming an indeterministic
// parent re-rolls its children. The generator stays faithful to the schema;
// the sweep reports the violations.
inline SchemaInstances gen_I6(const Signature& sig) {
    SchemaInstances out{"I6", {}};
    for (VarId v = 0; v < sig.size(); ++v)
        for (VarId y = 0; y < sig.size(); ++y) {
            if (v == y) continue;
            std::set<VarId> vy{v, y};
            std::vector<VarId> others = axiom_detail::complement(sig, vy);
            std::uint64_t m = others.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                std::vector<VarId> xs, zs;
                for (std::size_t i = 0; i < m; ++i)
                    (mask & (std::uint64_t{1} << i) ? xs : zs).push_back(others[i]);
                for (const auto& xvals : detail::valuations(sig, xs)) {
                    InterventionSpec base = detail::spec_of(xs, xvals);
                    for (Value vv = 0; vv < sig.range_size(v); ++vv)
                        for (Value yv = 0; yv < sig.range_size(y); ++yv)
                            for (const auto& zvals : detail::valuations(sig, zs)) {
                                std::vector<Formula> zatoms;
                                for (std::size_t i = 0; i < zs.size(); ++i)
                                    zatoms.push_back(Formula::atom(zs[i], zvals[i]));
                                std::vector<Formula> left1{Formula::atom(y, yv)};
                                left1.insert(left1.end(), zatoms.begin(), zatoms.end());
                                std::vector<Formula> left2{Formula::atom(v, vv)};
                                left2.insert(left2.end(), zatoms.begin(), zatoms.end());
                                std::vector<Formula> conseq{Formula::atom(v, vv),
                                                            Formula::atom(y, yv)};
                                conseq.insert(conseq.end(), zatoms.begin(), zatoms.end());
                                out.instances.push_back(Formula::impl(
                                    Formula::conj(
                                        Formula::diamond(base.with(v, vv), conj_fold(left1)),
                                        Formula::diamond(base.with(y, yv), conj_fold(left2))),
                                    Formula::diamond(base, conj_fold(conseq))));
                            }
                }
            }
        }
    return out;
}

inline SchemaInstances gen_I7(const Signature& sig) {
    SchemaInstances out{"I7", {}};
    Formula nonempty = Formula::diamond(InterventionSpec(), Formula::top());
    int n = sig.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<VarId> vars;
        for (VarId v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) vars.push_back(v);
        for (const auto& vals : detail::valuations(sig, vars)) {
            std::vector<Formula> atoms;
            for (std::size_t i = 0; i < vars.size(); ++i)
                atoms.push_back(Formula::atom(vars[i], vals[i]));
            Formula flat = conj_fold(atoms);
            out.instances.push_back(Formula::impl(
                nonempty, Formula::iff(flat, Formula::box(InterventionSpec(), flat))));
        }
    }
    return out;
}

inline SchemaInstances gen_I8(const Signature& sig) {
    SchemaInstances out{"I8", {}};
    for (VarId y = 0; y < sig.size(); ++y) {
        Formula exo = exo_formula(y, sig);
        std::vector<VarId> others = axiom_detail::complement(sig, {y});
        for (const auto& w : detail::valuations(sig, others)) {
            InterventionSpec full = detail::spec_of(others, w);
            for (Value yv = 0; yv < sig.range_size(y); ++yv) {
                Formula atom = Formula::atom(y, yv);
                out.instances.push_back(Formula::impl(
                    exo, Formula::iff(Formula::diamond(full, atom),
                                      Formula::diamond(InterventionSpec(), atom))));
            }
        }
    }
    return out;
}

inline SchemaInstances gen_I9(const Signature& sig) {
    SchemaInstances out{"I9", {}};
    std::vector<VarId> all;
    for (VarId v = 0; v < sig.size(); ++v) all.push_back(v);
    Formula nonempty = Formula::diamond(InterventionSpec(), Formula::top());
    for (const auto& w : detail::valuations(sig, all))
        out.instances.push_back(Formula::iff(
            nonempty, Formula::diamond(detail::spec_of(all, w), Formula::top())));
    return out;
}

inline SchemaInstances gen_R(const Signature& sig) {
    return {"R", recursivity_instances(sig, std::max(2, sig.size()))};
}

// ([X=x,W=w]Y=y & [X=x,Y=y]W=w) -> [X=x]Y=y; a theorem of the total
// recursive class, swept there alongside the axioms.
inline SchemaInstances gen_strong_reversibility(const Signature& sig) {
    SchemaInstances out{"Reversibility", {}};
    for (VarId w = 0; w < sig.size(); ++w)
        for (VarId y = 0; y < sig.size(); ++y) {
            if (w == y) continue;
            std::vector<VarId> others = axiom_detail::complement(sig, {w, y});
            std::uint64_t m = others.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                std::vector<VarId> xs;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask & (std::uint64_t{1} << i)) xs.push_back(others[i]);
                for (const auto& xvals : detail::valuations(sig, xs)) {
                    InterventionSpec base = detail::spec_of(xs, xvals);
                    for (Value wv = 0; wv < sig.range_size(w); ++wv)
                        for (Value yv = 0; yv < sig.range_size(y); ++yv)
                            out.instances.push_back(Formula::impl(
                                Formula::conj(
                                    Formula::box(base.with(w, wv), Formula::atom(y, yv)),
                                    Formula::box(base.with(y, yv), Formula::atom(w, wv))),
                                Formula::box(base, Formula::atom(y, yv))));
                }
            }
        }
    return out;
}

// Known-failing probes: full composition in both forms, and the unguarded
// value-definiteness disjunction.
inline std::vector<SchemaInstances> gen_probes(const Signature& sig) {
    SchemaInstances comp{"Composition", {}};
    for (const auto& iv : all_specs(sig)) {
        std::set<VarId> bound = iv.variables();
        for (VarId y = 0; y < sig.size(); ++y) {
            if (bound.count(y)) continue;
            for (Value yv = 0; yv < sig.range_size(y); ++yv) {
                std::vector<Formula> ante;
                for (auto [v, x] : iv.entries()) ante.push_back(Formula::atom(v, x));
                ante.push_back(Formula::atom(y, yv));
                if (!iv.empty())
                    comp.instances.push_back(Formula::impl(
                        conj_fold(ante), Formula::box(iv, Formula::atom(y, yv))));
                for (VarId w = 0; w < sig.size(); ++w) {
                    if (w == y || bound.count(w)) continue;
                    for (Value wv = 0; wv < sig.range_size(w); ++wv)
                        comp.instances.push_back(Formula::impl(
                            Formula::conj(Formula::box(iv, Formula::atom(w, wv)),
                                          Formula::box(iv, Formula::atom(y, yv))),
                            Formula::box(iv.with(w, wv), Formula::atom(y, yv))));
                }
            }
        }
    }
    SchemaInstances def{"Definiteness-unguarded", {}};
    for (VarId y = 0; y < sig.size(); ++y) {
        std::vector<Formula> atoms;
        for (Value x = 0; x < sig.range_size(y); ++x) atoms.push_back(Formula::atom(y, x));
        def.instances.push_back(disj_fold(atoms));
    }
    return {comp, def};
}

inline std::vector<SchemaInstances> gen_axioms_A(const Signature& sig) {
    return {gen_I0(sig), gen_I1(sig), gen_I2(sig), gen_I3(sig), gen_I4(sig),
            gen_I5(sig), gen_I6(sig), gen_I7(sig), gen_I8(sig), gen_I9(sig)};
}

// --- sweep ------------------------------------------------------------------

struct SweepViolation {
    std::string schema;
    Formula instance;
    RelationalCausalTeam model;
};

struct SweepGroup {
    std::string label;
    ModelClass model_class;
    std::vector<SchemaInstances> schemas;
    std::uint64_t models_checked = 0;
    bool truncated = false;
    std::map<std::string, std::uint64_t> violation_counts;
    std::vector<SweepViolation> sample_violations;  // first few per schema
};

struct SweepReport {
    std::uint64_t search_space_bound = 0;
    std::vector<SweepGroup> groups;

    std::uint64_t violations(const std::string& schema_prefix = "") const {
        std::uint64_t n = 0;
        for (const auto& g : groups)
            for (const auto& [schema, count] : g.violation_counts)
                if (schema.rfind(schema_prefix, 0) == 0) n += count;
        return n;
    }
};

namespace axiom_detail {

inline SweepGroup make_group(std::string label, ModelClass cls,
                             std::vector<SchemaInstances> schemas) {
    SweepGroup g;
    g.label = std::move(label);
    g.model_class = cls;
    g.schemas = std::move(schemas);
    return g;
}

inline void run_group(const Signature& sig, const EnumerationCaps& caps, SweepGroup& group) {
    for (auto& s : group.schemas) group.violation_counts[s.schema] = 0;
    EnumerationStats stats =
        for_each_model(sig, group.model_class, caps, [&](const RelationalCausalTeam& m) {
            Evaluator ev(m);
            for (const auto& s : group.schemas)
                for (const auto& inst : s.instances)
                    if (!ev.evaluate(inst)) {
                        auto& count = group.violation_counts[s.schema];
                        if (count < 3) group.sample_violations.push_back({s.schema, inst, m});
                        ++count;
                    }
            return true;
        });
    group.models_checked = stats.models;
    group.truncated = stats.truncated;
}

}  // namespace axiom_detail

// Evaluates every generated instance of I0..I9 on every model of the base
// class, the recursivity instances on its recursive subclass, and strong
// reversibility on its total recursive subclass. Probes, when requested, run
// over the base class and are expected to produce violations.
inline SweepReport axiom_soundness_sweep(const Signature& sig, const ModelClass& base,
                                         const EnumerationCaps& caps,
                                         bool include_probes = false) {
    SweepReport report;
    report.search_space_bound = search_space_bound(sig);

    SweepGroup axioms = axiom_detail::make_group("axioms", base, gen_axioms_A(sig));
    axiom_detail::run_group(sig, caps, axioms);
    report.groups.push_back(std::move(axioms));

    ModelClass rec = base;
    rec.require_recursive = true;
    SweepGroup recursivity = axiom_detail::make_group("recursivity", rec, {gen_R(sig)});
    axiom_detail::run_group(sig, caps, recursivity);
    report.groups.push_back(std::move(recursivity));

    // The recursivity schema is falsifiable on recursive models with
    // non-total laws (emptied teams revive under intervention, flipping
    // might-facts); the total recursive class is where it is sound.
    ModelClass tot_rec = rec;
    tot_rec.require_total = true;
    SweepGroup recursivity_total =
        axiom_detail::make_group("recursivity-total", tot_rec, {gen_R(sig)});
    axiom_detail::run_group(sig, caps, recursivity_total);
    report.groups.push_back(std::move(recursivity_total));

    SweepGroup reversibility =
        axiom_detail::make_group("reversibility", tot_rec, {gen_strong_reversibility(sig)});
    axiom_detail::run_group(sig, caps, reversibility);
    report.groups.push_back(std::move(reversibility));

    if (include_probes) {
        SweepGroup probes = axiom_detail::make_group("probes", base, gen_probes(sig));
        axiom_detail::run_group(sig, caps, probes);
        report.groups.push_back(std::move(probes));
    }
    return report;
}

}  // namespace rct
