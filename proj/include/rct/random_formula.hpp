#pragma once

// Seeded random formula generator for round-trip and equivalence testing.
// Grammar-directed with a node budget; modal operands stay modal-free.

#include <random>

#include "rct/formula.hpp"

namespace rct {

namespace random_detail {

inline InterventionSpec random_spec(std::mt19937& rng, const Signature& sig, bool allow_empty) {
    InterventionSpec spec;
    std::uniform_int_distribution<int> var_count(allow_empty ? 0 : 1,
                                                 std::max(1, sig.size() / 2 + 1));
    int k = var_count(rng);
    std::vector<VarId> vars(sig.size());
    for (VarId v = 0; v < sig.size(); ++v) vars[v] = v;
    std::shuffle(vars.begin(), vars.end(), rng);
    for (int i = 0; i < k && i < sig.size(); ++i) {
        std::uniform_int_distribution<Value> val(0, sig.range_size(vars[i]) - 1);
        spec.add(vars[i], val(rng));
    }
    return spec;
}

inline Formula random_leaf(std::mt19937& rng, const Signature& sig) {
    std::uniform_int_distribution<int> pick(0, 9);
    int c = pick(rng);
    if (c == 8) return Formula::top();
    if (c == 9) return Formula::bottom();
    std::uniform_int_distribution<VarId> var(0, sig.size() - 1);
    VarId v = var(rng);
    std::uniform_int_distribution<Value> val(0, sig.range_size(v) - 1);
    Value x = val(rng);
    return c < 6 ? Formula::atom(v, x) : Formula::neq(v, x);
}

inline Formula random_modal_free(std::mt19937& rng, const Signature& sig, int budget) {
    if (budget <= 1) return random_leaf(rng, sig);
    std::uniform_int_distribution<int> pick(0, 5);
    switch (pick(rng)) {
        case 0: return random_leaf(rng, sig);
        case 1: return Formula::neg(random_modal_free(rng, sig, budget - 1));
        case 2:
            return Formula::conj(random_modal_free(rng, sig, budget / 2),
                                 random_modal_free(rng, sig, budget / 2));
        case 3:
            return Formula::disj(random_modal_free(rng, sig, budget / 2),
                                 random_modal_free(rng, sig, budget / 2));
        case 4:
            return Formula::impl(random_modal_free(rng, sig, budget / 2),
                                 random_modal_free(rng, sig, budget / 2));
        default:
            return Formula::iff(random_modal_free(rng, sig, budget / 2),
                                random_modal_free(rng, sig, budget / 2));
    }
}

}  // namespace random_detail

inline Formula random_formula(std::mt19937& rng, const Signature& sig, int budget = 12) {
    using namespace random_detail;
    if (budget <= 1) return random_leaf(rng, sig);
    std::uniform_int_distribution<int> pick(0, 7);
    switch (pick(rng)) {
        case 0: return random_leaf(rng, sig);
        case 1: return Formula::neg(random_formula(rng, sig, budget - 1));
        case 2:
            return Formula::conj(random_formula(rng, sig, budget / 2),
                                 random_formula(rng, sig, budget / 2));
        case 3:
            return Formula::disj(random_formula(rng, sig, budget / 2),
                                 random_formula(rng, sig, budget / 2));
        case 4:
            return Formula::impl(random_formula(rng, sig, budget / 2),
                                 random_formula(rng, sig, budget / 2));
        case 5:
            return Formula::iff(random_formula(rng, sig, budget / 2),
                                random_formula(rng, sig, budget / 2));
        case 6:
            return Formula::box(random_detail::random_spec(rng, sig, true),
                                random_modal_free(rng, sig, budget - 2));
        default:
            return Formula::diamond(random_detail::random_spec(rng, sig, true),
                                    random_modal_free(rng, sig, budget - 2));
    }
}

}  // namespace rct
