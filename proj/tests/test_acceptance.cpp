// Acceptance suite: exact reproduction of the worked examples plus the
// property sweeps, one printed verdict line per criterion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rct/rct.hpp"

using namespace rct;
using namespace rct::test;

namespace {

struct Criterion {
    std::string label;
    bool passed = false;
    explicit Criterion(std::string l) : label(std::move(l)) {}
    ~Criterion() {
        std::cout << (passed ? "[PASS] " : "[FAIL] ") << label << std::endl;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("criterion 1: worked examples reproduce exactly") {
    Criterion c("criterion 1: worked examples (game, twocoin, annbob, coin)");

    RelationalCausalTeam game = load_fixture("game.json");
    auto t0 = std::chrono::steady_clock::now();
    Team game_out = intervene(game, parse_intervention("L=1", game.sig)).team;
    REQUIRE(seconds_since(t0) < 1.0);
    REQUIRE(game_out == team_of(game.sig, {{"1", "h", "1", "h"},
                                           {"1", "h", "1", "t"},
                                           {"1", "t", "0", "n"}}));

    RelationalCausalTeam twocoin = load_fixture("twocoin.json");
    t0 = std::chrono::steady_clock::now();
    Team twocoin_out = intervene(twocoin, parse_intervention("B=1", twocoin.sig)).team;
    REQUIRE(seconds_since(t0) < 1.0);
    REQUIRE(twocoin_out == team_of(twocoin.sig, {{"1", "heads"}, {"1", "tails"}}));

    RelationalCausalTeam annbob = load_fixture("annbob.json");
    REQUIRE(intervene_general(annbob, parse_intervention("A=1", annbob.sig)).team ==
            team_of(annbob.sig, {{"1", "1", "heads"}, {"1", "1", "tails"}}));
    RelationalCausalTeam pb = load_fixture("annbob_pb.json");
    REQUIRE(intervene_general(pb, parse_intervention("A=1", pb.sig)).team ==
            team_of(pb.sig, {{"1", "1", "heads"}}));

    RelationalCausalTeam coin = load_fixture("coin.json");
    REQUIRE(evaluate(coin, parse_formula("A=1 & C=heads", coin.sig)));
    REQUIRE_FALSE(evaluate(coin, parse_formula("[A=1]C=heads", coin.sig)));
    REQUIRE(evaluate(coin, parse_formula("<A=1>C=tails", coin.sig)));

    c.passed = true;
}

TEST_CASE("criterion 2: soundness sweep has zero violations") {
    Criterion c("criterion 2: soundness sweep (2x2 exhaustive, 3x2 capped)");

    auto group_violations = [](const SweepReport& r, const std::string& label) {
        std::uint64_t n = 0;
        for (const auto& g : r.groups)
            if (g.label == label)
                for (const auto& [schema, count] : g.violation_counts) n += count;
        return n;
    };

    ModelClass all;
    EnumerationCaps caps;
    SweepReport small = axiom_soundness_sweep(sig2x2(), all, caps);
    for (const auto& g : small.groups) {
        REQUIRE(g.models_checked > 0);
        REQUIRE_FALSE(g.truncated);
    }

    EnumerationCaps capped;
    capped.max_models_per_partition = 24;
    SweepReport big = axiom_soundness_sweep(sig3x2(), all, capped);
    for (const auto& g : big.groups) REQUIRE(g.models_checked > 0);

    // Sound families: zero violations at both scales.
    for (const char* schema : {"I0", "I1", "I2", "I3", "I4", "I5", "I7", "I8", "I9"}) {
        REQUIRE(small.violations(schema) == 0);
        REQUIRE(big.violations(schema) == 0);
    }
    REQUIRE(group_violations(small, "reversibility") == 0);
    REQUIRE(group_violations(big, "reversibility") == 0);
    REQUIRE(group_violations(small, "recursivity") == 0);
    REQUIRE(group_violations(small, "recursivity-total") == 0);
    REQUIRE(group_violations(big, "recursivity-total") == 0);

    // The two remaining checks are stated as zero-violation requirements and
    // fail honestly; the counterexamples are pinned as regression tests in
    // the unit suite.
    //
    // Weak reversibility (I6) as printed is falsifiable: its two might-
    // premises may be witnessed by different team members, and re-affirming
    // an indeterministic parent re-rolls its children, so even a total
    // recursive singleton team breaks an instance with an empty antecedent.
    std::uint64_t i6_small = small.violations("I6"), i6_big = big.violations("I6");
    {
        INFO("weak reversibility violations: " << i6_small << " at 2x2 (exhaustive), "
             << i6_big << " at 3x2 (capped); no model class rescues the schema");
        CHECK(i6_small == 0);
        CHECK(i6_big == 0);
    }
    // Generalized recursivity over the plain recursive class: recursive
    // models with non-total laws falsify it, because an intervention that
    // revives a team emptied by an unsatisfiable law changes another
    // variable's attainable values, closing a cause cycle on an acyclic
    // graph. The schema is sound on the total recursive class (asserted
    // above) and on all of 2x2.
    std::uint64_t r_big = group_violations(big, "recursivity");
    {
        INFO("recursivity violations on the plain recursive class at 3x2: " << r_big
             << "; zero on the total recursive class and at 2x2");
        CHECK(r_big == 0);
    }

    c.passed = i6_small == 0 && i6_big == 0 && r_big == 0;
}

TEST_CASE("criterion 3: known-failure probes produce counterexamples") {
    Criterion c("criterion 3: composition and unguarded definiteness fail as expected");

    ModelClass all;
    EnumerationCaps caps;
    SweepReport report = axiom_soundness_sweep(sig2x2(), all, caps, true);
    REQUIRE(report.violations("Composition") > 0);
    REQUIRE(report.violations("Definiteness-unguarded") > 0);

    RelationalCausalTeam coin = load_fixture("coin.json");
    REQUIRE_FALSE(evaluate(coin, parse_formula("(A=1 & C=heads) -> [A=1]C=heads", coin.sig)));

    c.passed = true;
}

TEST_CASE("criterion 4: oracle equivalences hold on every enumerated model") {
    Criterion c("criterion 4: intervention routes, cause oracle, sandwich inclusions");

    Signature sig = sig2x2();
    std::vector<InterventionSpec> specs = all_specs(sig);
    std::vector<Formula> cause_formulas{direct_cause_formula({0, 1}, sig),
                                        direct_cause_formula({1, 0}, sig)};
    ModelClass all;
    EnumerationCaps caps;
    std::uint64_t models = 0;
    for_each_model(sig, all, caps, [&](const RelationalCausalTeam& m) {
        ++models;
        Evaluator ev(m);
        if (classify(m).recursive) {
            for (const auto& iv : specs)
                REQUIRE(intervene_general(m, iv).team == intervene_recursive(m, iv).team);
        }
        REQUIRE(is_direct_cause(ev, {0, 1}) == ev.evaluate(cause_formulas[0]));
        REQUIRE(is_direct_cause(ev, {1, 0}) == ev.evaluate(cause_formulas[1]));
        for (VarId v = 0; v < sig.size(); ++v) {
            std::set<VarId> declared;
            if (m.laws.has_law(v)) {
                const auto& ps = m.laws.law(v).parents;
                declared.insert(ps.begin(), ps.end());
            }
            std::set<VarId> semantic = semantic_direct_causes(ev, v);
            for (VarId x : semantic) REQUIRE(declared.count(x) == 1);
            // The lower inclusion presumes witnessing members: an empty team
            // has no might-facts, so nothing is a semantic cause there.
            if (!m.team.empty())
                for (VarId x : non_dummy_parents(m, v)) REQUIRE(semantic.count(x) == 1);
        }
        return true;
    });
    REQUIRE(models > 0);

    c.passed = true;
}

TEST_CASE("criterion 5: normal forms are shaped and equivalent") {
    Criterion c("criterion 5: 500 seeded formulas, exhaustive at 2x2, sampled at 3x2");

    Signature sig = sig2x2();
    std::mt19937 rng(20240811);
    std::vector<Formula> originals, normals;
    for (int i = 0; i < 500; ++i) {
        Formula f = random_formula(rng, sig);
        NormalFormResult nf = to_normal_form(f, sig);
        REQUIRE(shape_check(nf.formula, sig));
        originals.push_back(f);
        normals.push_back(nf.formula);
    }
    ModelClass all;
    EnumerationCaps caps;
    for_each_model(sig, all, caps, [&](const RelationalCausalTeam& m) {
        Evaluator ev(m);
        for (std::size_t i = 0; i < originals.size(); ++i)
            REQUIRE(ev.evaluate(originals[i]) == ev.evaluate(normals[i]));
        return true;
    });

    Signature sig3 = sig3x2();
    std::mt19937 rng3(414243);
    std::vector<Formula> originals3, normals3;
    for (int i = 0; i < 500; ++i) {
        Formula f = random_formula(rng3, sig3, 8);
        NormalFormResult nf = to_normal_form(f, sig3);
        REQUIRE(shape_check(nf.formula, sig3));
        originals3.push_back(f);
        normals3.push_back(nf.formula);
    }
    EnumerationCaps capped;
    capped.max_models_per_partition = 4;
    for_each_model(sig3, all, capped, [&](const RelationalCausalTeam& m) {
        Evaluator ev(m);
        for (std::size_t i = 0; i < originals3.size(); ++i)
            REQUIRE(ev.evaluate(originals3[i]) == ev.evaluate(normals3[i]));
        return true;
    });

    c.passed = true;
}

TEST_CASE("criterion 6: truth-lemma round trip over every 2x2 model") {
    Criterion c("criterion 6: canonical reconstruction is elementarily equivalent");

    Signature sig = sig2x2();
    ModelClass all;
    EnumerationCaps caps;
    std::uint64_t models = 0;
    for_each_model(sig, all, caps, [&](const RelationalCausalTeam& m) {
        ++models;
        RoundtripReport r = truth_lemma_roundtrip(m);
        if (!r.ok()) {
            for (const auto& mm : r.mismatches) UNSCOPED_INFO("mismatch: " << mm);
        }
        REQUIRE(r.ok());
        if (classify(m).recursive) REQUIRE(classify(canonical_team(m)).recursive);
        return true;
    });
    REQUIRE(models > 0);

    c.passed = true;
}

TEST_CASE("criterion 7: proof fixtures and the soundness bridge") {
    Criterion c("criterion 7: five positive fixtures, discharge, three rejections");

    RelationalCausalTeam coin = load_fixture("coin.json");
    RelationalCausalTeam game = load_fixture("game.json");
    ModelClass all;
    std::vector<Formula> certified;

    for (const char* name : {"mp_basic.proof", "nec_basic.proof", "item5.proof", "item6.proof"}) {
        auto lines = parse_proof_script(slurp(fixture_path(std::string("proofs/") + name)),
                                        coin.sig);
        ProofCheckResult r = check_proof(lines, {}, coin.sig);
        INFO(name);
        REQUIRE(r.accepted);
        REQUIRE_FALSE(r.uses_assumptions);
        certified.push_back(r.conclusion);
    }

    // The assumption-based fixture, checked and then discharged twice.
    auto gamma_lines =
        parse_proof_script(slurp(fixture_path("proofs/item8_gamma.proof")), coin.sig);
    std::vector<Formula> gamma = assumptions_of(gamma_lines);
    REQUIRE(gamma.size() == 2);
    ProofCheckResult gamma_check = check_proof(gamma_lines, gamma, coin.sig);
    REQUIRE(gamma_check.accepted);
    REQUIRE(gamma_check.uses_assumptions);

    auto once = discharge_assumption(gamma_lines, gamma[1], coin.sig);
    auto twice = discharge_assumption(once, gamma[0], coin.sig);
    ProofCheckResult theorem = check_proof(twice, {}, coin.sig);
    REQUIRE(theorem.accepted);
    REQUIRE_FALSE(theorem.uses_assumptions);
    certified.push_back(theorem.conclusion);

    for (const auto& f : certified) {
        INFO(to_text(f, coin.sig));
        REQUIRE(is_valid(f, coin.sig, all).holds);
    }

    struct Negative {
        const char* file;
        const Signature* sig;
        int line;
        const char* code;
    };
    std::vector<Negative> negatives{
        {"neg_nec_on_assume.proof", &coin.sig, 1, "NECOnAssumption"},
        {"neg_bad_mp.proof", &coin.sig, 2, "NotImplication"},
        {"neg_wrong_i6.proof", &game.sig, 0, "UnrecognizedAxiom"},
    };
    for (const auto& neg : negatives) {
        auto lines =
            parse_proof_script(slurp(fixture_path(std::string("proofs/") + neg.file)), *neg.sig);
        ProofCheckResult r = check_proof(lines, assumptions_of(lines), *neg.sig);
        INFO(neg.file);
        REQUIRE_FALSE(r.accepted);
        REQUIRE(r.lines[neg.line].error_code == neg.code);
    }

    c.passed = true;
}
