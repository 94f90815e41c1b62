// Command-line front end: evaluation, interventions, normal forms, validity
// and entailment by enumeration, soundness sweeps, cause graphs, canonical
// reconstruction, proof checking and DOT export.
//
// Exit status: 0 success or true verdict, 1 false verdict or counterexample
// found or rejected proof, 2 usage or validation errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rct/rct.hpp"

namespace {

using namespace rct;

EnumerationCaps default_caps() {
    EnumerationCaps caps;
    if (const char* env = std::getenv("RCT_MAX_SPACE")) {
        try {
            caps.max_search_space = std::stoull(env);
        } catch (...) {
            throw std::invalid_argument("RCT_MAX_SPACE must be an integer");
        }
    }
    return caps;
}

RelationalCausalTeam load_with_warnings(const std::string& path) {
    ValidationReport report;
    RelationalCausalTeam m = load_model_file(path, &report);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w.message << "\n";
    return m;
}

Signature generated_signature(int vars, int range) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> ranges;
    for (int i = 1; i <= vars; ++i) {
        names.push_back("X" + std::to_string(i));
        std::vector<std::string> values;
        for (int v = 0; v < range; ++v) values.push_back(std::to_string(v));
        ranges.push_back(std::move(values));
    }
    return Signature(std::move(names), std::move(ranges));
}

struct SigOptions {
    std::string sig_file;
    int vars = 0;
    int range = 2;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sig", sig_file, "signature from a model document");
        cmd->add_option("--vars", vars, "number of generated binary-style variables");
        cmd->add_option("--range", range, "range size for generated variables")
            ->check(CLI::PositiveNumber);
    }

    Signature resolve() const {
        if (!sig_file.empty()) return load_signature_file(sig_file);
        if (vars > 0) return generated_signature(vars, range);
        throw std::invalid_argument("either --sig FILE or --vars N is required");
    }
};

void print_model(const RelationalCausalTeam& m) {
    std::cout << save_model(m).dump(2) << "\n";
}

int run_eval(const std::string& model_path, const std::string& formula) {
    RelationalCausalTeam m = load_with_warnings(model_path);
    bool verdict = evaluate(m, parse_formula(formula, m.sig));
    std::cout << (verdict ? "true" : "false") << "\n";
    return verdict ? 0 : 1;
}

int run_intervene(const std::string& model_path, const std::string& clauses, bool general,
                  bool recursive) {
    RelationalCausalTeam m = load_with_warnings(model_path);
    InterventionSpec iv = parse_intervention(clauses, m.sig);
    RelationalCausalTeam out = general    ? intervene_general(m, iv)
                               : recursive ? intervene_recursive(m, iv)
                                           : intervene(m, iv);
    print_model(out);
    return 0;
}

int run_normal_form(const SigOptions& sig_opts, const std::string& formula) {
    Signature sig = sig_opts.resolve();
    NormalFormResult nf = to_normal_form(parse_formula(formula, sig), sig);
    std::cout << to_text(nf.formula, sig) << "\n";
    std::cout << "might-atoms: " << nf.atom_count << "\n";
    return 0;
}

int run_valid(const SigOptions& sig_opts, const std::string& formula, const std::string& cls_text,
              std::uint64_t max_space) {
    Signature sig = sig_opts.resolve();
    ModelClass cls = parse_model_class(cls_text);
    EnumerationCaps caps = default_caps();
    if (max_space) caps.max_search_space = max_space;
    Verdict v = is_valid(parse_formula(formula, sig), sig, cls, caps);
    if (v.holds) {
        std::cout << "valid over " << v.models_checked << " models\n";
        return 0;
    }
    std::cout << "counterexample:\n";
    print_model(*v.counterexample);
    return 1;
}

int run_entail(const SigOptions& sig_opts, const std::vector<std::string>& gamma_texts,
               const std::string& formula, const std::string& cls_text, std::uint64_t max_space) {
    Signature sig = sig_opts.resolve();
    ModelClass cls = parse_model_class(cls_text);
    EnumerationCaps caps = default_caps();
    if (max_space) caps.max_search_space = max_space;
    std::vector<Formula> gamma;
    for (const auto& g : gamma_texts) gamma.push_back(parse_formula(g, sig));
    Verdict v = entails(gamma, parse_formula(formula, sig), sig, cls, caps);
    if (v.holds) {
        std::cout << "entailed over " << v.models_checked << " premise models\n";
        return 0;
    }
    std::cout << "counterexample:\n";
    print_model(*v.counterexample);
    return 1;
}

int run_sweep(const SigOptions& sig_opts, const std::string& cls_text, std::uint64_t max_space,
              std::uint64_t per_partition, bool probes, bool as_json) {
    Signature sig = sig_opts.resolve();
    ModelClass cls = parse_model_class(cls_text);
    EnumerationCaps caps = default_caps();
    if (max_space) caps.max_search_space = max_space;
    caps.max_models_per_partition = per_partition;

    SweepReport report = axiom_soundness_sweep(sig, cls, caps, probes);
    std::uint64_t total_violations = 0;

    nlohmann::json doc;
    doc["search_space_bound"] = report.search_space_bound;
    doc["groups"] = nlohmann::json::array();
    for (const auto& g : report.groups) {
        nlohmann::json group;
        group["label"] = g.label;
        group["models_checked"] = g.models_checked;
        group["truncated"] = g.truncated;
        group["violations"] = nlohmann::json::object();
        for (const auto& [schema, count] : g.violation_counts) {
            group["violations"][schema] = count;
            total_violations += count;
        }
        group["samples"] = nlohmann::json::array();
        for (const auto& v : g.sample_violations)
            group["samples"].push_back({{"schema", v.schema},
                                        {"instance", to_text(v.instance, sig)},
                                        {"model", save_model(v.model)}});
        doc["groups"].push_back(std::move(group));
    }

    if (as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "search space bound: " << report.search_space_bound
                  << "  (sum over endogenous sets of products of per-variable law"
                     " choices, times 2^|assignments| team subsets)\n";
        for (const auto& g : report.groups) {
            std::cout << g.label << ": " << g.models_checked << " models"
                      << (g.truncated ? " (truncated)" : "") << "\n";
            for (const auto& [schema, count] : g.violation_counts)
                std::cout << "  " << schema << ": " << count << " violations\n";
        }
        std::cout << (total_violations ? "violations found" : "0 violations") << "\n";
    }
    return total_violations ? 1 : 0;
}

int run_direct_causes(const std::string& model_path) {
    RelationalCausalTeam m = load_with_warnings(model_path);
    Evaluator ev(m);
    std::cout << "variable | declared parents | semantic direct causes\n";
    for (VarId v = 0; v < m.sig.size(); ++v) {
        std::string declared, semantic;
        if (m.laws.has_law(v))
            for (VarId p : m.laws.law(v).parents)
                declared += (declared.empty() ? "" : ",") + m.sig.var_name(p);
        for (VarId x : semantic_direct_causes(ev, v))
            semantic += (semantic.empty() ? "" : ",") + m.sig.var_name(x);
        std::cout << m.sig.var_name(v) << " | {" << declared << "} | {" << semantic << "}\n";
    }
    return 0;
}

int run_canonical(const std::string& model_path, std::size_t roundtrip, unsigned seed) {
    RelationalCausalTeam m = load_with_warnings(model_path);
    RelationalCausalTeam rebuilt = canonical_team(m);
    print_model(rebuilt);
    if (rebuilt == m) {
        std::cout << "diff: none\n";
    } else {
        std::cout << "diff: team " << (rebuilt.team == m.team ? "equal" : "differs")
                  << ", laws " << (rebuilt.laws == m.laws ? "equal" : "differ") << "\n";
    }
    if (roundtrip) {
        RoundtripReport r = truth_lemma_roundtrip(m, roundtrip, seed);
        std::cout << "round trip: " << r.might_atoms_checked << " might-atoms, "
                  << r.random_formulas_checked << " random formulas, " << r.mismatches.size()
                  << " mismatches\n";
        return r.ok() ? 0 : 1;
    }
    return 0;
}

int run_check_proof(const std::string& proof_path, const std::string& model_path,
                    const std::string& system_text) {
    std::ifstream in(proof_path);
    if (!in) throw std::invalid_argument("cannot open '" + proof_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();

    Signature sig = load_signature_file(model_path);
    ProofSystem system = system_text == "AR" ? ProofSystem::AR : ProofSystem::A;
    auto lines = parse_proof_script(buf.str(), sig);
    std::vector<Formula> gamma = assumptions_of(lines);
    ProofCheckResult r = check_proof(lines, gamma, sig, system);

    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::cout << lines[i].number << ". " << to_text(lines[i].formula, sig) << " ; ";
        if (r.lines[i].ok)
            std::cout << "ok\n";
        else
            std::cout << r.lines[i].error_code << ": " << r.lines[i].message << "\n";
    }
    if (!r.accepted) {
        std::cout << "rejected\n";
        return 1;
    }
    std::cout << (r.uses_assumptions ? "accepted: Gamma |- " : "accepted: |- ")
              << to_text(r.conclusion, sig) << "\n";
    return 0;
}

int run_classify(const std::string& model_path) {
    RelationalCausalTeam m = load_with_warnings(model_path);
    Classification c = classify(m);
    std::cout << "total: " << (c.total ? "true" : "false") << "\n"
              << "deterministic: " << (c.deterministic ? "true" : "false") << "\n"
              << "recursive: " << (c.recursive ? "true" : "false") << "\n";
    return 0;
}

int run_graph(const std::string& model_path, bool dot) {
    RelationalCausalTeam m = load_with_warnings(model_path);
    if (!dot) throw std::invalid_argument("graph currently only supports --dot output");
    std::cout << to_dot(m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relational causal team toolkit"};
    app.require_subcommand(1);

    std::string model_path, formula, clauses, proof_path, with_model;
    std::string cls_text = "all", system_text = "A";
    std::vector<std::string> gamma_texts;
    bool general = false, recursive = false, probes = false, as_json = false, dot = false;
    std::uint64_t max_space = 0, per_partition = 0;
    std::size_t roundtrip = 0;
    unsigned seed = 1;
    SigOptions sig_opts, valid_sig, entail_sig, sweep_sig;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula on a model");
    eval_cmd->add_option("model", model_path)->required();
    eval_cmd->add_option("formula", formula)->required();

    auto* intervene_cmd = app.add_subcommand("intervene", "apply do(X=x,...) to a model");
    intervene_cmd->add_option("model", model_path)->required();
    intervene_cmd->add_option("clauses", clauses)->required();
    auto* gflag = intervene_cmd->add_flag("--general", general, "force the general clause");
    intervene_cmd->add_flag("--recursive", recursive, "force the recursive algorithm")
        ->excludes(gflag);

    auto* nf_cmd = app.add_subcommand("normal-form", "rewrite into might-atom normal form");
    sig_opts.attach(nf_cmd);
    nf_cmd->add_option("formula", formula)->required();

    auto* valid_cmd = app.add_subcommand("valid", "decide validity by enumeration");
    valid_sig.attach(valid_cmd);
    valid_cmd->add_option("formula", formula)->required();
    valid_cmd->add_option("--class", cls_text, "all|recursive,total,deterministic");
    valid_cmd->add_option("--max-space", max_space, "search-space cap");

    auto* entail_cmd = app.add_subcommand("entail", "decide entailment by enumeration");
    entail_sig.attach(entail_cmd);
    entail_cmd->add_option("--gamma", gamma_texts, "premise formula (repeatable)");
    entail_cmd->add_option("formula", formula)->required();
    entail_cmd->add_option("--class", cls_text, "model class filter");
    entail_cmd->add_option("--max-space", max_space, "search-space cap");

    auto* sweep_cmd = app.add_subcommand("sweep", "axiom soundness sweep");
    sweep_sig.attach(sweep_cmd);
    sweep_cmd->add_option("--class", cls_text, "base model class");
    sweep_cmd->add_option("--max-space", max_space, "search-space cap");
    sweep_cmd->add_option("--per-partition", per_partition,
                          "truncate each (endogenous set, parent function) partition");
    sweep_cmd->add_flag("--probes", probes, "include known-failing probe schemas");
    sweep_cmd->add_flag("--json", as_json, "emit the report as JSON");

    auto* causes_cmd = app.add_subcommand("direct-causes", "declared vs semantic cause graph");
    causes_cmd->add_option("model", model_path)->required();

    auto* canonical_cmd = app.add_subcommand("canonical", "rebuild the model from its theory");
    canonical_cmd->add_option("model", model_path)->required();
    canonical_cmd->add_option("--roundtrip", roundtrip, "also compare N random formulas");
    canonical_cmd->add_option("--seed", seed, "random formula seed");

    auto* proof_cmd = app.add_subcommand("check-proof", "check a proof script");
    proof_cmd->add_option("proof", proof_path)->required();
    proof_cmd->add_option("--with", with_model, "model or signature document")->required();
    proof_cmd->add_option("--system", system_text, "A or AR")
        ->check(CLI::IsMember({"A", "AR"}));

    auto* classify_cmd = app.add_subcommand("classify", "report total/deterministic/recursive");
    classify_cmd->add_option("model", model_path)->required();

    auto* graph_cmd = app.add_subcommand("graph", "export the causal graph");
    graph_cmd->add_option("model", model_path)->required();
    graph_cmd->add_flag("--dot", dot, "DOT format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(model_path, formula);
        if (intervene_cmd->parsed()) return run_intervene(model_path, clauses, general, recursive);
        if (nf_cmd->parsed()) return run_normal_form(sig_opts, formula);
        if (valid_cmd->parsed()) return run_valid(valid_sig, formula, cls_text, max_space);
        if (entail_cmd->parsed())
            return run_entail(entail_sig, gamma_texts, formula, cls_text, max_space);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_sig, cls_text, max_space, per_partition, probes, as_json);
        if (causes_cmd->parsed()) return run_direct_causes(model_path);
        if (canonical_cmd->parsed()) return run_canonical(model_path, roundtrip, seed);
        if (proof_cmd->parsed()) return run_check_proof(proof_path, with_model, system_text);
        if (classify_cmd->parsed()) return run_classify(model_path);
        if (graph_cmd->parsed()) return run_graph(model_path, dot);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
