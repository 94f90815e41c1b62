#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rct/rct.hpp"

using namespace rct;
using namespace rct::test;

namespace {

InterventionSpec spec(const RelationalCausalTeam& m, const std::string& text) {
    return parse_intervention(text, m.sig);
}

// Exogenous-only clause: pin just the exogenous variables outside the
// intervention. Test-only oracle used to reproduce the known anomaly.
Team exo_only_intervene(const RelationalCausalTeam& m, const InterventionSpec& iv) {
    std::set<VarId> xs = iv.variables();
    LawComponent restricted = m.laws.without(xs);
    Team out;
    for (const auto& member : m.team) {
        for (const auto& s : m.sig.all_assignments()) {
            bool ok = true;
            for (auto [v, x] : iv.entries())
                if (s[v] != x) ok = false;
            for (VarId v = 0; v < m.sig.size() && ok; ++v)
                if (!m.laws.has_law(v) && !xs.count(v) && s[v] != member[v]) ok = false;
            if (ok && restricted.compatible(s)) out.insert(s);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("intervention specs collapse duplicates and reject conflicts") {
    InterventionSpec s = InterventionSpec::of({{0, 1}, {0, 1}});
    CHECK(s.size() == 1);
    CHECK_THROWS_AS(s.with(0, 0), InconsistentIntervention);
}

TEST_CASE("tossing the left coin updates every column") {
    RelationalCausalTeam game = load_fixture("game.json");
    Team expected = team_of(game.sig, {{"1", "h", "1", "h"},
                                       {"1", "h", "1", "t"},
                                       {"1", "t", "0", "n"}});
    CHECK(intervene_recursive(game, spec(game, "L=1")).team == expected);
    CHECK(intervene_general(game, spec(game, "L=1")).team == expected);
}

TEST_CASE("repeating the toss forgets the recorded outcome") {
    RelationalCausalTeam twocoin = load_fixture("twocoin.json");
    Team expected = team_of(twocoin.sig, {{"1", "heads"}, {"1", "tails"}});
    CHECK(intervene_recursive(twocoin, spec(twocoin, "B=1")).team == expected);
    CHECK(intervene_general(twocoin, spec(twocoin, "B=1")).team == expected);
}

TEST_CASE("single-assignment outcomes") {
    RelationalCausalTeam coin = load_fixture("coin.json");
    Team out = single_assignment_outcome(coin.sig, row(coin.sig, {"1", "heads"}), coin.laws,
                                         spec(coin, "A=1"));
    CHECK(out == team_of(coin.sig, {{"1", "heads"}, {"1", "tails"}}));

    RelationalCausalTeam twocoin = load_fixture("twocoin.json");
    Team forced = single_assignment_outcome(twocoin.sig, row(twocoin.sig, {"1", "heads"}),
                                            twocoin.laws, spec(twocoin, "O=tails"));
    CHECK(forced == team_of(twocoin.sig, {{"1", "tails"}}));

    // Empty intervention on a compatible assignment is the identity.
    Team same = single_assignment_outcome(twocoin.sig, row(twocoin.sig, {"1", "heads"}),
                                          twocoin.laws, {});
    CHECK(same == team_of(twocoin.sig, {{"1", "heads"}}));
}

TEST_CASE("declared parents decide what an intervention may disturb") {
    RelationalCausalTeam annbob = load_fixture("annbob.json");
    Team two_rows = team_of(annbob.sig, {{"1", "1", "heads"}, {"1", "1", "tails"}});
    CHECK(intervene_general(annbob, spec(annbob, "A=1")).team == two_rows);

    RelationalCausalTeam pb = load_fixture("annbob_pb.json");
    Team one_row = team_of(pb.sig, {{"1", "1", "heads"}});
    CHECK(intervene_general(pb, spec(pb, "A=1")).team == one_row);
    CHECK(intervene_recursive(pb, spec(pb, "A=1")).team == one_row);
}

TEST_CASE("the exogenous-only clause disturbs a nondescendant") {
    RelationalCausalTeam pb = load_fixture("annbob_pb.json");
    Team anomalous = exo_only_intervene(pb, spec(pb, "A=1"));
    CHECK(anomalous == team_of(pb.sig, {{"1", "1", "heads"}, {"1", "1", "tails"}}));
    CHECK(intervene(pb, spec(pb, "A=1")).team != anomalous);
}

TEST_CASE("an empty law value set kills the branch") {
    RelationalCausalTeam game = load_fixture("game.json");
    VarId CR = *game.sig.var_index("C_R");
    Law law = game.laws.law(CR);
    Law trimmed{law.parents, {}};
    for (const auto& t : law.tuples)
        if (t[0] != *game.sig.value_index(*game.sig.var_index("R"), "1"))
            trimmed.tuples.insert(t);
    LawComponent laws = game.laws;
    laws.set(CR, trimmed);
    RelationalCausalTeam m = make_model(game.sig, {row(game.sig, {"0", "n", "0", "n"})}, laws);
    CHECK(intervene_recursive(m, spec(m, "L=1")).team ==
          team_of(game.sig, {{"1", "t", "0", "n"}}));
}

TEST_CASE("empty interventions return the same team and laws") {
    for (const char* name : {"coin.json", "annbob.json", "twocoin.json", "game.json"}) {
        RelationalCausalTeam m = load_fixture(name);
        RelationalCausalTeam out = intervene_general(m, {});
        CHECK(out.team == m.team);
        CHECK(out.laws == m.laws);
        CHECK(intervene_recursive(m, {}).team == m.team);
    }
}

TEST_CASE("intervening on a variable without a law entry removes nothing") {
    RelationalCausalTeam coin = load_fixture("coin.json");
    RelationalCausalTeam out = intervene(coin, spec(coin, "A=0"));
    CHECK(out.laws == coin.laws);
}

TEST_CASE("general and recursive interventions agree on every recursive model") {
    Signature sig = sig2x2();
    std::vector<InterventionSpec> specs = all_specs(sig);
    ModelClass recursive;
    recursive.require_recursive = true;
    EnumerationCaps caps;
    std::uint64_t checked = 0;
    for_each_model(sig, recursive, caps, [&](const RelationalCausalTeam& m) {
        for (const auto& iv : specs) {
            RelationalCausalTeam a = intervene_general(m, iv);
            RelationalCausalTeam b = intervene_recursive(m, iv);
            REQUIRE(a.team == b.team);
            REQUIRE(a.laws == b.laws);
        }
        ++checked;
        return true;
    });
    CHECK(checked > 0);
}

TEST_CASE("intervention properties on enumerated models") {
    Signature sig = sig2x2();
    std::vector<InterventionSpec> specs = all_specs(sig);
    ModelClass all;
    EnumerationCaps caps;
    for_each_model(sig, all, caps, [&](const RelationalCausalTeam& m) {
        CausalGraph g = causal_graph(m);
        for (const auto& iv : specs) {
            RelationalCausalTeam out = intervene_general(m, iv);

            // Effectiveness: every member takes the prescribed values.
            for (const auto& t : out.team)
                for (auto [v, x] : iv.entries()) REQUIRE(t[v] == x);

            // Nondescendant preservation.
            std::set<VarId> nd = nondescendants(g, iv.variables());
            for (const auto& t : out.team) {
                bool matched = m.team.empty() ? false : [&] {
                    for (const auto& s : m.team) {
                        bool same = true;
                        for (VarId v : nd)
                            if (t[v] != s[v]) same = false;
                        if (same) return true;
                    }
                    return false;
                }();
                REQUIRE(matched);
            }

            // Idempotence.
            RelationalCausalTeam twice = intervene_general(out, iv);
            REQUIRE(twice.team == out.team);
            REQUIRE(twice.laws == out.laws);
        }
        return true;
    });
}

TEST_CASE("single states stay single under deterministic total recursive laws") {
    Signature sig = sig2x2();
    std::vector<InterventionSpec> specs = all_specs(sig);
    ModelClass dtr;
    dtr.require_deterministic = dtr.require_total = dtr.require_recursive = true;
    EnumerationCaps caps;
    for_each_model(sig, dtr, caps, [&](const RelationalCausalTeam& m) {
        if (m.team.size() != 1) return true;
        for (const auto& iv : specs)
            REQUIRE(intervene(m, iv).team.size() == 1);
        return true;
    });
}

TEST_CASE("the general clause aborts past the assignment-space cap") {
    RelationalCausalTeam coin = load_fixture("coin.json");
    CHECK_THROWS_AS(intervene_general(coin, {}, 2), SearchSpaceExceeded);
}

TEST_CASE("forcing the general clause does not change evaluations") {
    RelationalCausalTeam game = load_fixture("game.json");
    Evaluator fast(game);
    Evaluator forced(game, true);
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
        Formula f = random_formula(rng, game.sig);
        REQUIRE(fast.evaluate(f) == forced.evaluate(f));
    }
}
