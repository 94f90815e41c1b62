#pragma once

// Hilbert-style proof checking for the axiom system of the language (I0-I9,
// rules MP and NEC) and its recursive extension (axiom R). Schema matching is
// syntactic on desugared formulas after antecedent normalization; I0 is
// decided by truth-tabling the finest Boolean abstraction. A proof transform
// implements the deduction theorem so natural assumption-based proofs can be
// discharged into theorems.

#include <functional>
#include <sstream>

#include "rct/causes.hpp"
#include "rct/parser.hpp"

namespace rct {

enum class ProofSystem { A, AR };

class AbstractionTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace proof_detail {

// --- destructuring of desugared shapes --------------------------------------

// phi -> chi desugars to ~(~~phi & ~chi).
inline bool as_impl(const Formula& f, Formula& lhs, Formula& rhs) {
    if (f.kind() != FKind::Neg) return false;
    Formula c = f.operand();
    if (c.kind() != FKind::Conj) return false;
    Formula l = c.lhs(), r = c.rhs();
    if (l.kind() != FKind::Neg || l.operand().kind() != FKind::Neg) return false;
    if (r.kind() != FKind::Neg) return false;
    lhs = l.operand().operand();
    rhs = r.operand();
    return true;
}

// <X=x>psi desugars to ~[X=x]~psi.
inline bool as_diamond(const Formula& f, InterventionSpec& spec, Formula& operand) {
    if (f.kind() != FKind::Neg) return false;
    Formula b = f.operand();
    if (b.kind() != FKind::Box) return false;
    Formula inner = b.operand();
    if (inner.kind() != FKind::Neg) return false;
    spec = b.spec();
    operand = inner.operand();
    return true;
}

// phi <-> chi desugars to (phi -> chi) & (chi -> phi).
inline bool as_iff(const Formula& f, Formula& lhs, Formula& rhs) {
    if (f.kind() != FKind::Conj) return false;
    Formula a1, b1, a2, b2;
    if (!as_impl(f.lhs(), a1, b1) || !as_impl(f.rhs(), a2, b2)) return false;
    if (!(a1 == b2) || !(b1 == a2)) return false;
    lhs = a1;
    rhs = b1;
    return true;
}

inline void flatten_conj(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == FKind::Conj) {
        flatten_conj(f.lhs(), out);
        flatten_conj(f.rhs(), out);
    } else {
        out.push_back(f);
    }
}

// Conjunction of atoms as a value-clause multiset; empty for a lone T.
inline bool as_atom_multiset(const Formula& f, std::vector<std::pair<VarId, Value>>& out) {
    std::vector<Formula> parts;
    flatten_conj(f, parts);
    for (const auto& p : parts) {
        if (p.kind() != FKind::Atom) return false;
        out.emplace_back(p.var(), p.val());
    }
    std::sort(out.begin(), out.end());
    return true;
}

inline bool distinct_vars(const std::vector<std::pair<VarId, Value>>& clauses) {
    for (std::size_t i = 1; i < clauses.size(); ++i)
        if (clauses[i].first == clauses[i - 1].first) return false;
    return true;
}

}  // namespace proof_detail

// Finest Boolean abstraction: maximal subformulas whose head is not strong
// negation or conjunction become propositional atoms, with structurally equal
// subformulas sharing an atom; the abstraction is then truth-tabled.
inline bool is_tautology_instance(const Formula& formula, const Signature& sig,
                                  std::size_t max_atoms = 16) {
    Formula f = desugar(formula, sig);
    std::vector<Formula> atoms;
    std::function<int(const Formula&)> atom_id = [&](const Formula& g) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == g) return static_cast<int>(i);
        atoms.push_back(g);
        if (atoms.size() > max_atoms)
            throw AbstractionTooLarge("tautology check: more than " +
                                      std::to_string(max_atoms) + " distinct atoms");
        return static_cast<int>(atoms.size() - 1);
    };

    std::function<void(const Formula&)> collect = [&](const Formula& g) {
        switch (g.kind()) {
            case FKind::Neg: collect(g.operand()); return;
            case FKind::Conj:
                collect(g.lhs());
                collect(g.rhs());
                return;
            default: atom_id(g); return;
        }
    };
    std::function<bool(const Formula&, std::uint64_t)> eval = [&](const Formula& g,
                                                                  std::uint64_t row) -> bool {
        switch (g.kind()) {
            case FKind::Neg: return !eval(g.operand(), row);
            case FKind::Conj: return eval(g.lhs(), row) && eval(g.rhs(), row);
            default: return (row >> atom_id(g)) & 1;
        }
    };

    collect(f);
    std::uint64_t rows = std::uint64_t{1} << atoms.size();
    for (std::uint64_t row = 0; row < rows; ++row)
        if (!eval(f, row)) return false;
    return true;
}

namespace proof_detail {

inline bool match_I0(const Formula& f, const Signature& sig) {
    if (f.kind() == FKind::Box) return is_tautology_instance(f.operand(), sig);
    return is_tautology_instance(f, sig);
}

inline bool match_I1(const Formula& f, const Signature&) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    if (l.kind() != FKind::Box || r.kind() != FKind::Box) return false;
    if (!(l.spec() == r.spec())) return false;
    Formula a = l.operand(), b = r.operand();
    if (a.kind() != FKind::Atom) return false;
    if (b.kind() != FKind::Neg || b.operand().kind() != FKind::Atom) return false;
    return a.var() == b.operand().var() && a.val() != b.operand().val();
}

inline bool match_I2(const Formula& f, const Signature& sig) {
    if (f.kind() != FKind::Box) return false;
    for (VarId y = 0; y < sig.size(); ++y) {
        std::vector<Formula> atoms;
        for (Value x = 0; x < sig.range_size(y); ++x) atoms.push_back(Formula::atom(y, x));
        if (f.operand() == desugar(disj_fold(atoms), sig)) return true;
    }
    return false;
}

inline bool match_I3(const Formula& f, const Signature& sig) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    InterventionSpec iv, iv2;
    Formula opl, opr;
    if (!as_diamond(l, iv, opl) || !as_diamond(r, iv2, opr)) return false;

    std::vector<std::pair<VarId, Value>> ante;
    if (!as_atom_multiset(opl, ante) || ante.empty() || !distinct_vars(ante)) return false;
    std::vector<std::pair<VarId, Value>> conseq;
    if (opr == desugar(Formula::top(), sig)) {
        // empty consequent tuple
    } else {
        if (!as_atom_multiset(opr, conseq) || !distinct_vars(conseq)) return false;
    }
    // One antecedent conjunct is promoted into the operator; the rest is the
    // consequent, which must not mention intervened variables.
    for (std::size_t i = 0; i < ante.size(); ++i) {
        std::vector<std::pair<VarId, Value>> rest = ante;
        rest.erase(rest.begin() + i);
        if (rest != conseq) continue;
        auto [z, zv] = ante[i];
        InterventionSpec expect;
        try {
            expect = iv.with(z, zv);
        } catch (const InconsistentIntervention&) {
            continue;
        }
        if (!(expect == iv2)) continue;
        bool overlap = false;
        for (auto [v, x] : conseq)
            if (iv2.binds(v)) overlap = true;
        if (!overlap) return true;
    }
    return false;
}

inline bool match_I4(const Formula& f, const Signature&) {
    if (f.kind() != FKind::Box || f.operand().kind() != FKind::Atom) return false;
    auto bound = f.spec().value_of(f.operand().var());
    return bound && *bound == f.operand().val();
}

inline bool match_I5(const Formula& f, const Signature&) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    if (l.kind() != FKind::Conj) return false;
    Formula a = l.lhs(), b = l.rhs();
    // Modal version.
    if (a.kind() == FKind::Box && b.kind() == FKind::Box && r.kind() == FKind::Box &&
        a.spec() == b.spec() && a.spec() == r.spec()) {
        Formula psi2, chi2;
        if (as_impl(b.operand(), psi2, chi2) && psi2 == a.operand() && chi2 == r.operand())
            return true;
    }
    // Version with the modality absent.
    Formula psi2, chi2;
    if (as_impl(b, psi2, chi2) && psi2 == a && chi2 == r) return true;
    return false;
}

inline bool match_I6(const Formula& f, const Signature& sig) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    if (l.kind() != FKind::Conj) return false;
    InterventionSpec iv1, iv2, iv0;
    Formula op1, op2, op0;
    if (!as_diamond(l.lhs(), iv1, op1) || !as_diamond(l.rhs(), iv2, op2) ||
        !as_diamond(r, iv0, op0))
        return false;
    std::vector<std::pair<VarId, Value>> a1, a2, a0;
    if (!as_atom_multiset(op1, a1) || !as_atom_multiset(op2, a2) || !as_atom_multiset(op0, a0))
        return false;
    if (!distinct_vars(a0) || a0.size() < 2) return false;

    // iv1 = iv0 + V=v, iv2 = iv0 + Y=y.
    auto extra = [&](const InterventionSpec& big,
                     std::optional<std::pair<VarId, Value>>& out) -> bool {
        if (big.size() != iv0.size() + 1) return false;
        for (auto [v, x] : big.entries()) {
            auto bound = iv0.value_of(v);
            if (!bound) {
                if (out) return false;
                out = {v, x};
            } else if (*bound != x) {
                return false;
            }
        }
        return out.has_value();
    };
    std::optional<std::pair<VarId, Value>> vclause, yclause;
    if (!extra(iv1, vclause) || !extra(iv2, yclause)) return false;
    auto [v, vv] = *vclause;
    auto [y, yv] = *yclause;
    if (v == y) return false;

    // Consequent = V=v & Y=y & Z=z with Z = Dom minus (X and {V,Y}).
    std::vector<std::pair<VarId, Value>> zpart;
    bool seen_v = false, seen_y = false;
    for (auto [w, x] : a0) {
        if (w == v) {
            if (x != vv) return false;
            seen_v = true;
        } else if (w == y) {
            if (x != yv) return false;
            seen_y = true;
        } else {
            zpart.emplace_back(w, x);
        }
    }
    if (!seen_v || !seen_y) return false;
    std::set<VarId> expect_z;
    for (VarId w = 0; w < sig.size(); ++w)
        if (!iv0.binds(w) && w != v && w != y) expect_z.insert(w);
    std::set<VarId> got_z;
    for (auto [w, x] : zpart) got_z.insert(w);
    if (got_z != expect_z) return false;

    auto with_sorted = [](std::vector<std::pair<VarId, Value>> base,
                          std::pair<VarId, Value> add) {
        base.push_back(add);
        std::sort(base.begin(), base.end());
        return base;
    };
    return a1 == with_sorted(zpart, {y, yv}) && a2 == with_sorted(zpart, {v, vv});
}

inline Formula diamond_top_core(const Signature& sig) {
    return desugar(Formula::diamond(InterventionSpec(), Formula::top()), sig);
}

inline bool match_I7(const Formula& f, const Signature& sig) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    if (!(l == diamond_top_core(sig))) return false;
    Formula flat, boxed;
    if (!as_iff(r, flat, boxed)) return false;
    if (boxed.kind() != FKind::Box || !boxed.spec().empty()) return false;
    if (!(boxed.operand() == flat)) return false;
    std::vector<std::pair<VarId, Value>> atoms;
    return as_atom_multiset(flat, atoms) && !atoms.empty() && distinct_vars(atoms);
}

inline bool match_I8(const Formula& f, const Signature& sig) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    Formula d1, d2;
    if (!as_iff(r, d1, d2)) return false;
    InterventionSpec full, empty;
    Formula a1, a2;
    if (!as_diamond(d1, full, a1) || !as_diamond(d2, empty, a2)) return false;
    if (!empty.empty()) return false;
    if (a1.kind() != FKind::Atom || !(a1 == a2)) return false;
    VarId y = a1.var();
    std::set<VarId> vars = full.variables();
    if (vars.count(y) || static_cast<int>(vars.size()) != sig.size() - 1) return false;
    return l == desugar(exo_formula(y, sig), sig);
}

inline bool match_I9(const Formula& f, const Signature& sig) {
    Formula l, r;
    if (!as_iff(f, l, r)) return false;
    if (!(l == diamond_top_core(sig))) return false;
    InterventionSpec full;
    Formula op;
    if (!as_diamond(r, full, op)) return false;
    return static_cast<int>(full.variables().size()) == sig.size() &&
           op == desugar(Formula::top(), sig);
}

inline bool match_R(const Formula& f, const Signature& sig) {
    Formula l, r;
    if (!as_impl(f, l, r)) return false;
    if (r.kind() != FKind::Neg) return false;

    // Identify conjuncts as direct-cause formulas by structural comparison.
    std::map<std::pair<VarId, VarId>, Formula> dc;
    for (VarId a = 0; a < sig.size(); ++a)
        for (VarId b = 0; b < sig.size(); ++b)
            if (a != b) dc.emplace(std::make_pair(a, b), desugar(direct_cause_formula({a, b}, sig), sig));
    auto identify = [&](const Formula& g) -> std::optional<std::pair<VarId, VarId>> {
        for (const auto& [key, form] : dc)
            if (g == form) return key;
        return std::nullopt;
    };

    std::vector<Formula> links;
    flatten_conj(l, links);
    std::vector<VarId> chain;
    for (std::size_t i = 0; i < links.size(); ++i) {
        auto link = identify(links[i]);
        if (!link) return false;
        if (i == 0) {
            chain.push_back(link->first);
        } else if (chain.back() != link->first) {
            return false;
        }
        chain.push_back(link->second);
    }
    std::set<VarId> uniq(chain.begin(), chain.end());
    if (uniq.size() != chain.size()) return false;
    auto closing = identify(r.operand());
    return closing && closing->first == chain.back() && closing->second == chain.front();
}

}  // namespace proof_detail

inline const std::vector<std::string>& schema_names() {
    static const std::vector<std::string> names{"I0", "I1", "I2", "I3", "I4", "I5",
                                                "I6", "I7", "I8", "I9", "R"};
    return names;
}

inline bool matches_schema(const Formula& formula, const std::string& schema,
                           const Signature& sig) {
    using namespace proof_detail;
    Formula f = desugar(formula, sig);
    if (schema == "I0") return match_I0(f, sig);
    if (schema == "I1") return match_I1(f, sig);
    if (schema == "I2") return match_I2(f, sig);
    if (schema == "I3") return match_I3(f, sig);
    if (schema == "I4") return match_I4(f, sig);
    if (schema == "I5") return match_I5(f, sig);
    if (schema == "I6") return match_I6(f, sig);
    if (schema == "I7") return match_I7(f, sig);
    if (schema == "I8") return match_I8(f, sig);
    if (schema == "I9") return match_I9(f, sig);
    if (schema == "R") return match_R(f, sig);
    throw std::invalid_argument("unknown axiom schema '" + schema + "'");
}

inline std::optional<std::string> match_axiom(const Formula& formula, const Signature& sig,
                                              ProofSystem system = ProofSystem::A) {
    for (const auto& name : schema_names()) {
        if (name == "R" && system != ProofSystem::AR) continue;
        if (matches_schema(formula, name, sig)) return name;
    }
    return std::nullopt;
}

// --- proof scripts and checking ---------------------------------------------

struct Justification {
    enum class Kind { Axiom, Assumption, MP, NEC };
    Kind kind;
    std::string schema;  // Axiom
    int i = -1, j = -1;  // cited line numbers (1-based)
};

struct ProofLine {
    int number = 0;
    Formula formula;
    Justification just;
};

struct LineVerdict {
    bool ok = true;
    std::string error_code;  // BadCitation, NotImplication, MPMismatch,
                             // NECMismatch, NECOnAssumption, UnrecognizedAxiom,
                             // UnknownAssumption
    std::string message;
    bool assumption_free = true;
};

struct ProofCheckResult {
    std::vector<LineVerdict> lines;
    bool accepted = false;
    bool uses_assumptions = false;
    Formula conclusion;
};

class ProofScriptError : public std::runtime_error {
public:
    ProofScriptError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
    int line;
};

// One step per line: `N. FORMULA ; AXIOM I4` | `; ASSUME` | `; MP i j`
// | `; NEC i`. Blank lines and lines starting with '#' are skipped.
inline std::vector<ProofLine> parse_proof_script(const std::string& text, const Signature& sig) {
    std::vector<ProofLine> out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::size_t dot = line.find('.');
        if (dot == std::string::npos) throw ProofScriptError("missing line number", lineno);
        int number;
        try {
            number = std::stoi(line.substr(0, dot));
        } catch (...) {
            throw ProofScriptError("bad line number", lineno);
        }
        std::size_t semi = line.find(';', dot);
        if (semi == std::string::npos)
            throw ProofScriptError("missing ';' before the justification", lineno);

        ProofLine pl;
        pl.number = number;
        try {
            pl.formula = parse_formula(line.substr(dot + 1, semi - dot - 1), sig);
        } catch (const ParseError& e) {
            throw ProofScriptError(std::string("formula: ") + e.what(), lineno);
        }

        std::istringstream just(line.substr(semi + 1));
        std::string kind;
        just >> kind;
        if (kind == "AXIOM") {
            pl.just.kind = Justification::Kind::Axiom;
            just >> pl.just.schema;
            if (pl.just.schema.empty()) throw ProofScriptError("AXIOM needs a schema id", lineno);
        } else if (kind == "ASSUME") {
            pl.just.kind = Justification::Kind::Assumption;
        } else if (kind == "MP") {
            pl.just.kind = Justification::Kind::MP;
            if (!(just >> pl.just.i >> pl.just.j))
                throw ProofScriptError("MP needs two cited lines", lineno);
        } else if (kind == "NEC") {
            pl.just.kind = Justification::Kind::NEC;
            if (!(just >> pl.just.i)) throw ProofScriptError("NEC needs a cited line", lineno);
        } else {
            throw ProofScriptError("unknown justification '" + kind + "'", lineno);
        }
        out.push_back(std::move(pl));
    }
    return out;
}

inline std::vector<Formula> assumptions_of(const std::vector<ProofLine>& lines) {
    std::vector<Formula> out;
    for (const auto& l : lines)
        if (l.just.kind == Justification::Kind::Assumption) {
            bool seen = false;
            for (const auto& g : out)
                if (g == l.formula) seen = true;
            if (!seen) out.push_back(l.formula);
        }
    return out;
}

inline ProofCheckResult check_proof(const std::vector<ProofLine>& lines,
                                    const std::vector<Formula>& gamma, const Signature& sig,
                                    ProofSystem system = ProofSystem::A) {
    ProofCheckResult result;
    result.lines.resize(lines.size());
    bool all_ok = !lines.empty();

    auto fail = [&](std::size_t k, std::string code, std::string msg) {
        result.lines[k].ok = false;
        result.lines[k].error_code = std::move(code);
        result.lines[k].message = std::move(msg);
        all_ok = false;
    };

    for (std::size_t k = 0; k < lines.size(); ++k) {
        const ProofLine& line = lines[k];
        LineVerdict& verdict = result.lines[k];
        if (line.number != static_cast<int>(k) + 1) {
            fail(k, "BadCitation", "lines must be numbered consecutively from 1");
            continue;
        }
        auto cited_ok = [&](int n) { return n >= 1 && n <= static_cast<int>(k); };

        switch (line.just.kind) {
            case Justification::Kind::Axiom: {
                if (line.just.schema == "R" && system != ProofSystem::AR) {
                    fail(k, "UnrecognizedAxiom",
                         "axiom R is only available in the recursive system");
                    break;
                }
                bool known = false;
                for (const auto& n : schema_names()) known = known || n == line.just.schema;
                if (!known) {
                    fail(k, "UnrecognizedAxiom", "no schema named '" + line.just.schema + "'");
                    break;
                }
                if (!matches_schema(line.formula, line.just.schema, sig))
                    fail(k, "UnrecognizedAxiom",
                         "formula is not an instance of " + line.just.schema);
                break;
            }
            case Justification::Kind::Assumption: {
                verdict.assumption_free = false;
                bool found = false;
                for (const auto& g : gamma)
                    if (desugar(g, sig) == desugar(line.formula, sig)) found = true;
                if (!found) fail(k, "UnknownAssumption", "formula is not among the assumptions");
                break;
            }
            case Justification::Kind::MP: {
                if (!cited_ok(line.just.i) || !cited_ok(line.just.j)) {
                    fail(k, "BadCitation", "MP must cite earlier lines");
                    break;
                }
                const ProofLine& prem = lines[line.just.i - 1];
                const ProofLine& imp = lines[line.just.j - 1];
                verdict.assumption_free = result.lines[line.just.i - 1].assumption_free &&
                                          result.lines[line.just.j - 1].assumption_free;
                Formula lhs, rhs;
                if (!proof_detail::as_impl(desugar(imp.formula, sig), lhs, rhs)) {
                    fail(k, "NotImplication",
                         "line " + std::to_string(line.just.j) + " is not an implication");
                    break;
                }
                if (!(desugar(prem.formula, sig) == lhs)) {
                    fail(k, "MPMismatch",
                         "line " + std::to_string(line.just.i) +
                             " does not match the implication's antecedent");
                    break;
                }
                if (!(desugar(line.formula, sig) == rhs))
                    fail(k, "MPMismatch", "conclusion differs from the implication's consequent");
                break;
            }
            case Justification::Kind::NEC: {
                if (!cited_ok(line.just.i)) {
                    fail(k, "BadCitation", "NEC must cite an earlier line");
                    break;
                }
                if (!result.lines[line.just.i - 1].assumption_free) {
                    fail(k, "NECOnAssumption",
                         "necessitation requires an assumption-free premise");
                    break;
                }
                Formula f = desugar(line.formula, sig);
                if (f.kind() != FKind::Box) {
                    fail(k, "NECMismatch", "conclusion of NEC must be a counterfactual");
                    break;
                }
                if (!(f.operand() == desugar(lines[line.just.i - 1].formula, sig)))
                    fail(k, "NECMismatch", "operand differs from the cited line");
                break;
            }
        }
    }

    result.accepted = all_ok;
    if (!lines.empty()) {
        result.conclusion = lines.back().formula;
        result.uses_assumptions = !result.lines.back().assumption_free;
    }
    return result;
}

// Deduction-theorem transform: from a proof of chi using the assumption psi,
// build a proof of psi -> chi that no longer assumes psi. Lines independent
// of psi are replayed and lifted with the tautology phi -> (psi -> phi);
// dependent MP steps go through ((psi->a) -> ((psi->(a->b)) -> (psi->b))).
inline std::vector<ProofLine> discharge_assumption(const std::vector<ProofLine>& lines,
                                                   const Formula& psi, const Signature& sig) {
    Formula psi_core = desugar(psi, sig);
    std::vector<bool> uses(lines.size(), false);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& j = lines[k].just;
        if (j.kind == Justification::Kind::Assumption)
            uses[k] = desugar(lines[k].formula, sig) == psi_core;
        else if (j.kind == Justification::Kind::MP)
            uses[k] = uses[j.i - 1] || uses[j.j - 1];
        else if (j.kind == Justification::Kind::NEC)
            uses[k] = uses[j.i - 1];
    }

    std::vector<ProofLine> out;
    auto emit = [&](Formula f, Justification j) {
        out.push_back(ProofLine{static_cast<int>(out.size()) + 1, std::move(f), std::move(j)});
        return static_cast<int>(out.size());
    };
    auto axiom = [&](Formula f, const std::string& schema) {
        return emit(std::move(f), Justification{Justification::Kind::Axiom, schema, -1, -1});
    };
    auto mp = [&](Formula f, int i, int j) {
        return emit(std::move(f), Justification{Justification::Kind::MP, "", i, j});
    };

    std::vector<int> replay(lines.size(), 0);  // new index of the replayed line
    std::vector<int> lifted(lines.size(), 0);  // new index of psi -> line

    for (std::size_t k = 0; k < lines.size(); ++k) {
        const ProofLine& line = lines[k];
        if (!uses[k]) {
            Justification j = line.just;
            if (j.kind == Justification::Kind::MP) {
                j.i = replay[j.i - 1];
                j.j = replay[j.j - 1];
            } else if (j.kind == Justification::Kind::NEC) {
                j.i = replay[j.i - 1];
            }
            replay[k] = emit(line.formula, j);
            int tk = axiom(Formula::impl(line.formula, Formula::impl(psi, line.formula)), "I0");
            lifted[k] = mp(Formula::impl(psi, line.formula), replay[k], tk);
            continue;
        }
        if (line.just.kind == Justification::Kind::Assumption) {
            lifted[k] = axiom(Formula::impl(psi, psi), "I0");
            continue;
        }
        if (line.just.kind == Justification::Kind::MP) {
            const Formula& a = lines[line.just.i - 1].formula;
            const Formula& b = line.formula;
            Formula pa = Formula::impl(psi, a);
            Formula pab = Formula::impl(psi, lines[line.just.j - 1].formula);
            Formula pb = Formula::impl(psi, b);
            int tk = axiom(Formula::impl(pa, Formula::impl(pab, pb)), "I0");
            int step = mp(Formula::impl(pab, pb), lifted[line.just.i - 1], tk);
            lifted[k] = mp(pb, lifted[line.just.j - 1], step);
            continue;
        }
        throw std::invalid_argument(
            "discharge: necessitation may not depend on the discharged assumption");
    }
    return out;
}

}  // namespace rct
