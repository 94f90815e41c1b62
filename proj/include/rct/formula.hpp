#pragma once

// Formula AST for the counterfactual language: value atoms, strong (team
// level) negation, conjunction and intervention modalities over consistent
// clause multisets, plus the usual derived connectives as sugar nodes.
// Modal operands are modal-free; the factories enforce this at construction.

#include <memory>
#include <string>

#include "rct/intervention.hpp"
#include "rct/model.hpp"

namespace rct {

enum class FKind {
    Atom,     // X = x
    Neg,      // ~phi          (strong negation)
    Conj,     // phi & psi
    Box,      // [X=x] eta     (empty spec prints as [])
    Diamond,  // <X=x> eta     (sugar for ~[X=x]~eta)
    Disj,     // phi | psi     (sugar)
    Impl,     // phi -> psi    (sugar)
    Iff,      // phi <-> psi   (sugar)
    Top,      // T             (sugar)
    Bottom,   // F             (sugar)
    Neq,      // X != x        (sugar for ~X=x)
};

class NestedModal : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Formula {
    struct Node {
        FKind kind;
        VarId var = -1;
        Value val = -1;
        InterventionSpec spec;
        std::shared_ptr<const Node> a, b;
        bool has_modal = false;
    };
    using NodePtr = std::shared_ptr<const Node>;

public:
    Formula() = default;

    static Formula atom(VarId v, Value x) {
        auto n = std::make_shared<Node>();
        n->kind = FKind::Atom;
        n->var = v;
        n->val = x;
        return Formula(std::move(n));
    }

    static Formula neq(VarId v, Value x) {
        auto n = std::make_shared<Node>();
        n->kind = FKind::Neq;
        n->var = v;
        n->val = x;
        return Formula(std::move(n));
    }

    static Formula neg(Formula f) { return unary(FKind::Neg, std::move(f)); }

    static Formula conj(Formula l, Formula r) { return binary(FKind::Conj, std::move(l), std::move(r)); }
    static Formula disj(Formula l, Formula r) { return binary(FKind::Disj, std::move(l), std::move(r)); }
    static Formula impl(Formula l, Formula r) { return binary(FKind::Impl, std::move(l), std::move(r)); }
    static Formula iff(Formula l, Formula r) { return binary(FKind::Iff, std::move(l), std::move(r)); }

    static Formula box(InterventionSpec spec, Formula operand) {
        return modal(FKind::Box, std::move(spec), std::move(operand));
    }
    static Formula diamond(InterventionSpec spec, Formula operand) {
        return modal(FKind::Diamond, std::move(spec), std::move(operand));
    }

    static Formula top() {
        auto n = std::make_shared<Node>();
        n->kind = FKind::Top;
        return Formula(std::move(n));
    }

    static Formula bottom() {
        auto n = std::make_shared<Node>();
        n->kind = FKind::Bottom;
        return Formula(std::move(n));
    }

    bool valid() const { return n_ != nullptr; }
    FKind kind() const { return n_->kind; }
    VarId var() const { return n_->var; }
    Value val() const { return n_->val; }
    const InterventionSpec& spec() const { return n_->spec; }
    Formula lhs() const { return Formula(n_->a); }
    Formula rhs() const { return Formula(n_->b); }
    Formula operand() const { return Formula(n_->a); }
    bool has_modal() const { return n_->has_modal; }

    bool operator==(const Formula& o) const { return equal(n_, o.n_); }
    bool operator!=(const Formula& o) const { return !(*this == o); }

private:
    explicit Formula(NodePtr n) : n_(std::move(n)) {}

    static Formula unary(FKind k, Formula f) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = f.n_;
        n->has_modal = f.n_ && f.n_->has_modal;
        return Formula(std::move(n));
    }

    static Formula binary(FKind k, Formula l, Formula r) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = l.n_;
        n->b = r.n_;
        n->has_modal = (l.n_ && l.n_->has_modal) || (r.n_ && r.n_->has_modal);
        return Formula(std::move(n));
    }

    static Formula modal(FKind k, InterventionSpec spec, Formula operand) {
        if (operand.n_ && operand.n_->has_modal)
            throw NestedModal("modal operand must not contain a modal operator");
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->spec = std::move(spec);
        n->a = operand.n_;
        n->has_modal = true;
        return Formula(std::move(n));
    }

    static bool equal(const NodePtr& x, const NodePtr& y) {
        if (x == y) return true;
        if (!x || !y) return false;
        if (x->kind != y->kind || x->var != y->var || x->val != y->val) return false;
        if ((x->kind == FKind::Box || x->kind == FKind::Diamond) && !(x->spec == y->spec))
            return false;
        return equal(x->a, y->a) && equal(x->b, y->b);
    }

    NodePtr n_;
};

// Left fold of a conjunction list; the empty fold is T.
inline Formula conj_fold(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::top();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
    return acc;
}

// Left fold of a disjunction list; the empty fold is F.
inline Formula disj_fold(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::bottom();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
    return acc;
}

// Rewrites a formula into the core fragment (Atom, Neg, Conj, Box). Bottom
// expands with the signature's first variable and first value.
inline Formula desugar(const Formula& f, const Signature& sig) {
    switch (f.kind()) {
        case FKind::Atom:
            return f;
        case FKind::Neg:
            return Formula::neg(desugar(f.operand(), sig));
        case FKind::Conj:
            return Formula::conj(desugar(f.lhs(), sig), desugar(f.rhs(), sig));
        case FKind::Box:
            return Formula::box(f.spec(), desugar(f.operand(), sig));
        case FKind::Diamond:
            return Formula::neg(
                Formula::box(f.spec(), Formula::neg(desugar(f.operand(), sig))));
        case FKind::Disj: {
            Formula l = desugar(f.lhs(), sig), r = desugar(f.rhs(), sig);
            return Formula::neg(Formula::conj(Formula::neg(l), Formula::neg(r)));
        }
        case FKind::Impl: {
            Formula l = desugar(f.lhs(), sig), r = desugar(f.rhs(), sig);
            return Formula::neg(
                Formula::conj(Formula::neg(Formula::neg(l)), Formula::neg(r)));
        }
        case FKind::Iff:
            return desugar(
                Formula::conj(Formula::impl(f.lhs(), f.rhs()), Formula::impl(f.rhs(), f.lhs())),
                sig);
        case FKind::Bottom: {
            Formula a = Formula::atom(0, 0);
            return Formula::conj(a, Formula::neg(a));
        }
        case FKind::Top:
            return Formula::neg(desugar(Formula::bottom(), sig));
        case FKind::Neq:
            return Formula::neg(Formula::atom(f.var(), f.val()));
    }
    throw std::logic_error("desugar: unreachable");
}

// --- printing ---------------------------------------------------------------

namespace detail {

inline std::string spec_text(const InterventionSpec& spec, const Signature& sig) {
    std::string out;
    for (std::size_t i = 0; i < spec.entries().size(); ++i) {
        auto [v, x] = spec.entries()[i];
        if (i) out += ",";
        out += sig.var_name(v) + "=" + sig.value_name(v, x);
    }
    return out;
}

// Precedence: <-> 1, -> 2, | 3, & 4, unary 5, atoms 6. -> and <-> associate
// to the right, & and | to the left.
inline int precedence(FKind k) {
    switch (k) {
        case FKind::Iff: return 1;
        case FKind::Impl: return 2;
        case FKind::Disj: return 3;
        case FKind::Conj: return 4;
        case FKind::Neg:
        case FKind::Box:
        case FKind::Diamond: return 5;
        default: return 6;
    }
}

inline void print_rec(const Formula& f, const Signature& sig, int min_prec, std::string& out) {
    int prec = precedence(f.kind());
    bool parens = prec < min_prec;
    if (parens) out += "(";
    switch (f.kind()) {
        case FKind::Atom:
            out += sig.var_name(f.var()) + "=" + sig.value_name(f.var(), f.val());
            break;
        case FKind::Neq:
            out += sig.var_name(f.var()) + "!=" + sig.value_name(f.var(), f.val());
            break;
        case FKind::Top: out += "T"; break;
        case FKind::Bottom: out += "F"; break;
        case FKind::Neg:
            out += "~";
            print_rec(f.operand(), sig, prec, out);
            break;
        case FKind::Box:
            out += "[" + spec_text(f.spec(), sig) + "]";
            print_rec(f.operand(), sig, prec, out);
            break;
        case FKind::Diamond:
            out += "<" + spec_text(f.spec(), sig) + ">";
            print_rec(f.operand(), sig, prec, out);
            break;
        case FKind::Conj:
        case FKind::Disj: {
            print_rec(f.lhs(), sig, prec, out);
            out += f.kind() == FKind::Conj ? " & " : " | ";
            print_rec(f.rhs(), sig, prec + 1, out);
            break;
        }
        case FKind::Impl:
        case FKind::Iff: {
            print_rec(f.lhs(), sig, prec + 1, out);
            out += f.kind() == FKind::Impl ? " -> " : " <-> ";
            print_rec(f.rhs(), sig, prec, out);
            break;
        }
    }
    if (parens) out += ")";
}

}  // namespace detail

inline std::string to_text(const Formula& f, const Signature& sig) {
    std::string out;
    detail::print_rec(f, sig, 0, out);
    return out;
}

}  // namespace rct
